#include "cotwist/h1.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "cotwist/ff.hpp"
#include "cotwist/numtheory.hpp"
#include "cotwist/parallel.hpp"

namespace cotwist::h1 {

struct TwistedSetting::Cache {
  std::mutex mu;
  std::optional<std::vector<Index>> ext_labels;
  std::map<std::uint64_t, std::shared_ptr<const std::vector<Index>>> twisted;
};

TwistedSetting::TwistedSetting(GroupPtr group, GroupAut alpha)
    : group_(std::move(group)), alpha_(std::move(alpha)), cache_(std::make_shared<Cache>()) {
  if (alpha_.table().size() != group_->order() || !alpha_.verify()) {
    throw Error(ErrorCode::NotAnAutomorphism, "alpha is not an automorphism of " + group_->label());
  }
  alpha_order_ = alpha_.order();
  ext_ = std::make_shared<const groups::Semidirect>(group_, alpha_, std::uint32_t(alpha_order_));
}

const std::vector<Index>& TwistedSetting::extension_labels() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->ext_labels) cache_->ext_labels = ext_->conjugacy_labels();
  return *cache_->ext_labels;
}

const std::vector<Index>& TwistedSetting::twisted_labels(std::uint64_t d) const {
  const std::uint64_t key = d % alpha_order_;
  {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto it = cache_->twisted.find(key);
    if (it != cache_->twisted.end()) return *it->second;
  }
  const auto& g = *group_;
  const auto ad = alpha_.power(key);
  const auto n = Index(g.order());
  constexpr Index kUnset = ~Index{0};
  auto labels = std::make_shared<std::vector<Index>>(n, kUnset);
  for (Index a = 0; a < n; ++a) {
    if ((*labels)[a] != kUnset) continue;
    for (Index c = 0; c < n; ++c) (*labels)[g.mul(g.mul(g.inv(c), a), ad(c))] = a;
  }
  std::lock_guard<std::mutex> lock(cache_->mu);
  return *cache_->twisted.emplace(key, std::move(labels)).first->second;
}

Index twisted_power(const TwistedSetting& st, Index g, std::uint64_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidInput, "twisted power needs m >= 1");
  const auto& G = st.group();
  Index acc = g, cur = g;
  for (std::uint64_t i = 1; i < m; ++i) {
    cur = st.alpha()(cur);
    acc = G.mul(acc, cur);
  }
  return acc;
}

namespace {

std::optional<Index> twisted_conjugator(const groups::Group& g, const GroupAut& a, Index x, Index y) {
  const auto n = Index(g.order());
  for (Index c = 0; c < n; ++c) {
    if (g.mul(g.mul(g.inv(c), x), a(c)) == y) return c;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Index> cohomologous(const TwistedSetting& st, Index a, Index b) {
  return twisted_conjugator(st.group(), st.alpha(), a, b);
}

std::optional<Index> restriction_agrees(const TwistedSetting& st, Index x, Index y, std::uint64_t d) {
  if (d == 0) throw Error(ErrorCode::InvalidInput, "restriction degree must be positive");
  const auto ad = st.alpha().power(d % st.alpha_order());
  return twisted_conjugator(st.group(), ad, twisted_power(st, x, d), twisted_power(st, y, d));
}

bool semidirect_equiv(const TwistedSetting& st, Index x, Index y, std::uint64_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidInput, "m must be positive");
  const auto& a = st.extension();
  const std::uint32_t e = st.alpha_order() > 1 ? 1 : 0;
  const Index xm = a.pow(a.pair(x, e), std::int64_t(m));
  const Index ym = a.pow(a.pair(y, e), std::int64_t(m));
  const auto& labels = st.extension_labels();
  return labels[xm] == labels[ym];
}

std::vector<std::uint64_t> relevant_divisors(std::uint64_t r, std::uint64_t s) {
  std::set<std::uint64_t> ds;
  for (auto d : nt::divisors(r)) ds.insert(d);
  for (auto d : nt::divisors(s)) ds.insert(d);
  return {ds.begin(), ds.end()};
}

namespace {

void check_rs(const TwistedSetting& st, std::uint64_t r, std::uint64_t s) {
  if (r < 2 || s < 2 || std::gcd(r, s) != 1) {
    throw Error(ErrorCode::InvalidInput, "r and s must be coprime and greater than 1");
  }
  if (st.group().order() > default_config().max_group) {
    throw Error(ErrorCode::GroupTooLarge, "pair sweep over order " + std::to_string(st.group().order()));
  }
}

PairWitness make_witness(const TwistedSetting& st, Index x, Index y, std::uint64_t r, std::uint64_t s,
                         const std::vector<std::uint64_t>& ds) {
  PairWitness w{x, y, r, s, {}};
  for (auto d : ds) {
    auto c = restriction_agrees(st, x, y, d);
    w.divisors.push_back(DivisorEntry{d, c.has_value(), c});
  }
  return w;
}

}  // namespace

PairSearch find_pair_witnesses(const TwistedSetting& st, std::uint64_t r, std::uint64_t s,
                               std::uint64_t limit, int workers) {
  check_rs(st, r, s);
  const auto ds = relevant_divisors(r, s);
  const auto n = Index(st.group().order());
  // cls[k][x]: twisted class of the degree-ds[k] twisted power of x.
  std::vector<std::vector<Index>> cls(ds.size(), std::vector<Index>(n));
  for (std::size_t k = 0; k < ds.size(); ++k) {
    const auto& labels = st.twisted_labels(ds[k]);
    for (Index x = 0; x < n; ++x) cls[k][x] = labels[twisted_power(st, x, ds[k])];
  }
  std::vector<bool> must_agree(ds.size());
  for (std::size_t k = 0; k < ds.size(); ++k) must_agree[k] = ds[k] == r || ds[k] == s;

  const int nw = std::max(1, workers);
  std::vector<std::vector<std::pair<Index, Index>>> found(std::size_t(std::min<std::uint64_t>(nw, n)));
  parallelize(n, nw, [&](std::size_t w, std::size_t begin, std::size_t end) {
    for (auto x = Index(begin); x < end; ++x) {
      for (Index y = 0; y < n; ++y) {
        bool ok = true;
        for (std::size_t k = 0; k < ds.size() && ok; ++k) ok = (cls[k][x] == cls[k][y]) == must_agree[k];
        if (ok) found[w].emplace_back(x, y);
      }
    }
  });
  PairSearch out;
  out.pairs_swept = std::uint64_t(n) * n;
  for (const auto& part : found) {
    for (const auto& [x, y] : part) {
      if (limit && out.witnesses.size() >= limit) break;
      out.witnesses.push_back(make_witness(st, x, y, r, s, ds));
    }
  }
  return out;
}

PairSearch find_pair_witnesses_serial(const TwistedSetting& st, std::uint64_t r, std::uint64_t s,
                                      std::uint64_t limit) {
  check_rs(st, r, s);
  const auto ds = relevant_divisors(r, s);
  const auto n = Index(st.group().order());
  PairSearch out;
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) {
      ++out.pairs_swept;
      bool ok = true;
      for (auto d : ds) {
        const bool agree = restriction_agrees(st, x, y, d).has_value();
        if (agree != (d == r || d == s)) {
          ok = false;
          break;
        }
      }
      if (ok && (!limit || out.witnesses.size() < limit)) out.witnesses.push_back(make_witness(st, x, y, r, s, ds));
    }
  }
  return out;
}

std::vector<PairWitness> distinct_classes(const TwistedSetting& st, const std::vector<PairWitness>& ws) {
  const auto& labels = st.twisted_labels(1);
  std::set<std::pair<Index, Index>> seen;
  std::vector<PairWitness> out;
  for (const auto& w : ws) {
    if (seen.emplace(labels[w.x], labels[w.y]).second) out.push_back(w);
  }
  return out;
}

bool ConstraintReport::pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return !c.applies || c.pass; });
}

namespace {

json clauses_json(const std::vector<Clause>& cs) {
  json arr = json::array();
  for (const auto& c : cs) {
    arr.push_back(json{{"name", c.name}, {"applies", c.applies}, {"pass", c.pass}, {"detail", c.detail}});
  }
  return arr;
}

std::vector<Clause> order_clauses(const TwistedSetting& st, std::uint64_t r, std::uint64_t s) {
  const std::uint64_t n = st.group().order(), rs = r * s;
  const std::string order = "|G| = " + std::to_string(n);
  std::vector<Clause> cs;
  cs.push_back({"rs_divides_order", true, n % rs == 0, order + ", rs = " + std::to_string(rs)});
  cs.push_back({"order_not_rs", true, n != rs, order});
  cs.push_back({"2rs_divides_order", rs % 4 == 2, n % (2 * rs) == 0, order + ", 2rs = " + std::to_string(2 * rs)});
  cs.push_back({"order_not_2rs", st.alpha().is_identity() && rs % 2 == 0, n != 2 * rs, order});
  return cs;
}

bool predicate_holds(const TwistedSetting& st, const PairWitness& w) {
  for (auto d : relevant_divisors(w.r, w.s)) {
    if (restriction_agrees(st, w.x, w.y, d).has_value() != (d == w.r || d == w.s)) return false;
  }
  return true;
}

}  // namespace

json ConstraintReport::to_json() const { return json{{"pass", pass()}, {"clauses", clauses_json(clauses)}}; }

ConstraintReport theorem_constraint_report(const TwistedSetting& st, const PairWitness& w) {
  ConstraintReport rep;
  rep.clauses.push_back({"witness_predicate", true, predicate_holds(st, w),
                         "x = " + std::to_string(w.x) + ", y = " + std::to_string(w.y)});
  for (auto& c : order_clauses(st, w.r, w.s)) rep.clauses.push_back(std::move(c));
  return rep;
}

ConstraintReport theorem_constraint_report(const TwistedSetting& st, std::uint64_t r, std::uint64_t s,
                                           const std::vector<PairWitness>& ws) {
  ConstraintReport rep;
  if (ws.empty()) {
    rep.clauses.push_back({"vacuous", true, true, "no witnesses"});
    return rep;
  }
  std::size_t bad = 0;
  for (const auto& w : ws) bad += predicate_holds(st, w) ? 0 : 1;
  rep.clauses.push_back({"witness_predicate", true, bad == 0,
                         std::to_string(ws.size() - bad) + " of " + std::to_string(ws.size()) + " witnesses recheck"});
  for (auto& c : order_clauses(st, r, s)) rep.clauses.push_back(std::move(c));
  return rep;
}

json witness_to_json(const TwistedSetting& st, const PairWitness& w) {
  const auto& g = st.group();
  json divs = json::object();
  for (const auto& e : w.divisors) {
    divs[std::to_string(e.d)] =
        json{{"agrees", e.agrees}, {"witness", e.witness ? g.describe(*e.witness) : json(nullptr)}};
  }
  return json{{"x", g.describe(w.x)}, {"x_index", w.x}, {"y", g.describe(w.y)},
              {"y_index", w.y}, {"r", w.r}, {"s", w.s}, {"divisors", divs}};
}

DihedralExample dihedral_example(std::uint64_t r, std::uint64_t s) {
  if (r < 2 || s < 2 || std::gcd(r, s) != 1) throw Error(ErrorCode::InvalidInput, "r, s must be coprime and > 1");
  DihedralExample ex;
  ex.group = std::make_shared<const groups::Dihedral>(std::uint32_t(r * s));
  const auto& d = *ex.group;
  auto alpha = GroupAut::from_generators(ex.group, {d.u(), d.v()}, {d.inv(d.u()), d.mul(d.u(), d.v())}, "flip");
  ex.setting = std::make_shared<TwistedSetting>(ex.group, alpha);
  ex.m = ff::crt({0, 1}, {r, s});
  ex.x = d.mul(d.u(), d.v());
  ex.y = d.elem(std::int64_t(ex.m), 1);
  return ex;
}

bool ModularReport::pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return !c.applies || c.pass; });
}

json ModularReport::to_json() const {
  return json{{"n", n}, {"r", r}, {"s", s}, {"mu", mu}, {"m", m}, {"pass", pass()}, {"clauses", clauses_json(clauses)}};
}

namespace {

std::uint64_t unit_order(std::uint64_t a, std::uint64_t n) {
  std::uint64_t k = 1;
  for (std::uint64_t x = a % n; x != 1 % n; x = nt::mulmod(x, a, n)) {
    if (++k > n) return 0;
  }
  return k;
}

}  // namespace

std::optional<std::uint64_t> find_modular_mu(std::uint64_t n, std::uint64_t r, std::uint64_t s) {
  for (std::uint64_t mu = 2; mu < n; ++mu) {
    if (std::gcd(mu, n) != 1) continue;
    if (unit_order(mu, n) == 2 * r * s && nt::powmod(mu, r * s, n) != n - 1) return mu;
  }
  return std::nullopt;
}

std::uint64_t modular_m(std::uint64_t r, std::uint64_t s) {
  if (std::gcd(r, 2 * s) != 1) throw Error(ErrorCode::PreconditionFailed, "r must be odd and coprime to s");
  return ff::crt({1, -1}, {r, 2 * s});
}

ModularReport verify_modular_elements(std::uint64_t n, std::uint64_t r, std::uint64_t s, std::uint64_t mu,
                                      std::uint64_t m) {
  auto fail = [](const std::string& why) { throw Error(ErrorCode::PreconditionFailed, why); };
  if (r < 2 || s < 2 || std::gcd(r, s) != 1) fail("r and s must be coprime and greater than 1");
  if (n < 3 || std::gcd(mu % n, n) != 1) fail("mu must be a unit mod n");
  if (unit_order(mu, n) != 2 * r * s) fail("mu does not have order 2rs");
  if (nt::powmod(mu, r * s, n) == n - 1) fail("mu^{rs} = -1");
  if (m % r != 1 % r) fail("m is not 1 mod r");
  if ((m + 1) % (2 * s) != 0) fail("m is not -1 mod 2s");

  ModularReport rep{n, r, s, mu, m, {}};
  const groups::SL2 g(std::uint32_t(n), true);
  auto diag = [&](std::uint64_t e) {
    const std::uint64_t a = nt::powmod(mu, e % (2 * r * s), n);
    return g.index_of({std::uint32_t(a), 0, 0, std::uint32_t(*nt::modinv(a, n))});
  };
  const Index x = diag(1), y = diag(m);
  const Index v = g.index_of({0, 1, std::uint32_t(n - 1), 0});
  const bool dihedral = g.element_order(x) == 2 * r * s && g.element_order(v) == 2 && g.conj(x, v) == g.inv(x);
  rep.clauses.push_back({"dihedral_subgroup", true, dihedral, "<u, v> has order " + std::to_string(4 * r * s)});

  auto eig = [&](std::uint64_t e) {
    const std::uint64_t a = nt::powmod(mu, e % (2 * r * s), n);
    return std::set<std::uint64_t>{a, *nt::modinv(a, n)};
  };
  auto negate = [&](const std::set<std::uint64_t>& st) {
    std::set<std::uint64_t> out;
    for (auto a : st) out.insert((n - a) % n);
    return out;
  };
  std::set<std::uint64_t> proper;
  for (auto d : nt::divisors(r)) if (d < r) proper.insert(d);
  for (auto d : nt::divisors(s)) if (d < s) proper.insert(d);
  for (auto d : proper) {
    const auto ex = eig(d), ey = eig(m * d);
    const bool distinct = ex != ey && ex != negate(ey);
    const bool swept = !g.are_conjugate(g.pow(x, std::int64_t(d)), g.pow(y, std::int64_t(d))).has_value();
    rep.clauses.push_back({"not_conjugate_d" + std::to_string(d), true, distinct && swept,
                           std::string("eigenvalue sets ") + (distinct ? "differ" : "agree") + " up to sign; " +
                               "full conjugation sweep over " + std::to_string(g.order()) + " elements " +
                               (swept ? "finds none" : "finds a conjugator")});
  }
  for (auto d : {r, s}) {
    const Index xd = g.pow(x, std::int64_t(d)), yd = g.pow(y, std::int64_t(d));
    std::optional<std::string> found;
    for (std::uint64_t i = 0; i < 2 * r * s && !found; ++i) {
      for (int j = 0; j < 2 && !found; ++j) {
        const Index c = j ? g.mul(g.pow(x, std::int64_t(i)), v) : g.pow(x, std::int64_t(i));
        if (g.conj(xd, c) == yd) found = "u^" + std::to_string(i) + (j ? " v" : "");
      }
    }
    rep.clauses.push_back({"conjugate_d" + std::to_string(d), true, found.has_value(),
                           found ? "conjugator " + *found : "no conjugator in <u, v>"});
  }
  return rep;
}

}  // namespace cotwist::h1
