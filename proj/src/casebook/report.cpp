#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "common.hpp"

namespace cotwist::casebook {

bool CaseReport::pass() const {
  return !claims.empty() && std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

void CaseReport::add(std::string anchor, std::string statement, bool ok, json witness) {
  claims.push_back(Claim{std::move(anchor), std::move(statement), ok, std::move(witness)});
}

json CaseReport::to_json() const {
  json cs = json::array();
  for (const auto& c : claims)
    cs.push_back({{"anchor", c.anchor}, {"statement", c.statement}, {"verdict", c.pass ? "pass" : "fail"},
                  {"witness", c.witness}});
  return {{"case", id}, {"field", field}, {"claims", cs}, {"verdict", pass() ? "pass" : "fail"}};
}

namespace detail {

std::pair<std::uint64_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) throw Error(ErrorCode::InvalidInput, "q must be a prime power");
  const auto ps = nt::prime_factors(q);
  if (ps.size() != 1) throw Error(ErrorCode::InvalidInput, std::to_string(q) + " is not a prime power");
  std::uint32_t k = 0;
  for (std::uint64_t r = q; r > 1; r /= ps[0]) ++k;
  return {ps[0], k};
}

FieldPtr field_of_size(std::uint64_t q) {
  const auto [p, k] = prime_power(q);
  return ff::build_field(p, k);
}

Poly poly(const FieldPtr& f, const std::vector<std::int64_t>& coeffs) {
  std::vector<Elem> c;
  c.reserve(coeffs.size());
  for (auto v : coeffs) c.push_back(f->from_int(v));
  return Poly(f, std::move(c));
}

FieldPtr ext(const FieldPtr& f, std::uint32_t d) { return curves::extension(f, d, kArithmeticFieldLimit); }

namespace {

// Naive enumeration where the square of the field size is small, else the
// tabulated count.
std::uint64_t oracle_count(const CurveModel& c, std::uint32_t deg) {
  const auto qd = nt::bounded_pow(c.base()->q(), deg, 2'000);
  if (qd) return curves::count_points_naive(c, deg);
  return curves::count_points_tabulated(c, deg);
}

}  // namespace

json count_pair(const CurveModel& c, const CurveModel& d, std::uint32_t deg, bool& ok, int workers) {
  const auto nc = curves::count_points(c, deg, workers), nd = curves::count_points(d, deg, workers);
  const auto oc = oracle_count(c, deg), od = oracle_count(d, deg);
  if (nc != oc || nd != od) ok = false;
  return {{"degree", deg}, {"C", nc}, {"D", nd}, {"oracle", {oc, od}}};
}

Elem first_trace_nonzero(const ff::Field& f) {
  for (Elem a = 1; a < f.q(); ++a)
    if (f.absolute_trace(a) != 0) return a;
  throw Error(ErrorCode::PreconditionFailed, "no element of nonzero trace");
}

json search_json(const curves::IsoSearch& s) {
  return {{"candidates", s.candidates}, {"witness", s.witness ? s.witness->to_json() : json(nullptr)}};
}

Poly form_pullback(const Poly& f, const std::array<Elem, 4>& m, int n) {
  const auto& K = f.field();
  const Poly num(K, {m[1], m[0]}), den(K, {m[3], m[2]});
  Poly out(K);
  for (int i = 0; i <= f.degree(); ++i)
    if (f[std::size_t(i)] != 0)
      out = out + (num.pow(std::uint64_t(i)) * den.pow(std::uint64_t(n - i))).scaled(f[std::size_t(i)]);
  return out;
}

std::optional<Elem> pullback_scale(const Poly& src, const Poly& dst, const std::array<Elem, 4>& m, int n) {
  const Poly g = form_pullback(dst, m, n);
  if (g.degree() != src.degree()) return std::nullopt;
  const Elem lambda = src.F().div(g.lead(), src.lead());
  if (g != src.scaled(lambda)) return std::nullopt;
  return lambda;
}

void sextic_pair_claims(CaseReport& rep, const FieldPtr& K, Elem g, const std::string& prefix, int workers) {
  const auto& F = *K;
  const auto C = CurveModel::scaled_sextic(K, 1, g);
  const auto D = CurveModel::scaled_sextic(K, g, g);

  const auto s1 = curves::hyperelliptic_search(C, D, K, workers);
  rep.add(prefix + ".base_nonisomorphic", "complete sweep finds no isomorphism over the base", !s1.witness,
          search_json(s1));

  const auto K2 = ext(K, 2);
  const auto& F2 = *K2;
  const auto r2 = F2.sqrt(ff::embed(K, K2).apply(g));
  const auto m2 = IsoMap::make(K2, 1, 0, 0, 1, F2.inv(*r2), 3);
  rep.add(prefix + ".quadratic_witness", "(x, y) -> (x, y / g^(1/2)) over the quadratic extension",
          curves::check_iso(m2, C, D), {{"map", m2.to_json()}});

  const auto K3 = ext(K, 3);
  const auto r3 = ff::nth_roots(*K3, ff::embed(K, K3).apply(g), 3);
  bool cub_ok = !r3.empty();
  json cub;
  if (cub_ok) {
    const auto m3 = IsoMap::make(K3, 0, r3.front(), 1, 0, 1, 3);
    cub_ok = curves::check_iso(m3, C, D);
    cub = {{"map", m3.to_json()}};
  }
  rep.add(prefix + ".cubic_witness", "(x, y) -> (g^(1/3) / x, y / x^3) over the cubic extension", cub_ok, cub);

  bool ok = true, agree = true;
  json rows = json::array();
  for (std::uint32_t d : {2u, 3u}) {
    if (!nt::bounded_pow(F.q(), d, default_config().max_field)) continue;
    auto row = count_pair(C, D, d, ok, workers);
    agree = agree && row["C"] == row["D"];
    rows.push_back(std::move(row));
  }
  rep.add(prefix + ".counts_agree", "point counts agree over the quadratic and cubic extensions", ok && agree, rows);
}

}  // namespace detail

std::vector<std::uint64_t> weierstrass_orbits(const curves::CurveModel& c, std::uint32_t t) {
  if (!c.is_double_cover()) throw Error(ErrorCode::ShapeMismatch, "not a double cover");
  const auto& base = c.base();
  const ff::Poly f = c.double_cover_f(base);
  const auto deg = static_cast<std::uint32_t>(f.degree());
  // N_e = roots in the degree-e extension; irreducible factor counts by
  // Moebius-style peeling over divisors.
  std::vector<std::uint64_t> roots_at(deg + 1, 0), factors(deg + 1, 0);
  for (std::uint32_t e = 1; e <= deg; ++e) {
    const auto F = detail::ext(base, e);
    roots_at[e] = ff::roots(c.double_cover_f(F)).size();
    std::uint64_t rest = roots_at[e];
    for (std::uint32_t d = 1; d < e; ++d)
      if (e % d == 0) rest -= d * factors[d];
    factors[e] = rest / e;
  }
  std::vector<std::uint64_t> out;
  for (std::uint32_t d = 1; d <= deg; ++d) {
    const auto g = std::gcd<std::uint64_t>(d, t);
    for (std::uint64_t i = 0; i < factors[d] * g; ++i) out.push_back(d / g);
  }
  if (deg % 2 == 1) out.push_back(1);
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<std::string>& case_ids() {
  static const std::vector<std::string> ids{"genus1-char3", "genus1-char2", "genus1-groups", "genus2-f5",
                                            "genus2bigger", "d6",           "d6-char2",      "d12",
                                            "s4",           "s5",           "char3"};
  return ids;
}

std::vector<std::uint64_t> suite_sizes(const std::string& id) {
  static const std::map<std::string, std::vector<std::uint64_t>> sizes{
      {"genus1-char3", {3, 27}}, {"genus1-char2", {2, 8}},
      {"genus1-groups", {0}},    {"genus2-f5", {5}},
      {"genus2bigger", {5}},     {"d6", {5, 7, 11, 13, 17, 19, 23}},
      {"d6-char2", {2, 8}},      {"d12", {7, 11}},
      {"s4", {7, 11}},           {"s5", {25}},
      {"char3", {3, 27}}};
  const auto it = sizes.find(id);
  if (it == sizes.end()) throw Error(ErrorCode::InvalidInput, "unknown case id " + id);
  return it->second;
}

CaseReport run_case(const std::string& id, std::optional<std::uint64_t> q, int workers) {
  const std::uint64_t Q = q.value_or(suite_sizes(id).front());
  if (id == "genus1-char3") return genus1_char3(Q, workers);
  if (id == "genus1-char2") {
    const auto [p, k] = detail::prime_power(Q);
    if (p != 2) throw Error(ErrorCode::PreconditionFailed, "genus1-char2 needs q a power of 2");
    return genus1_char2(k, workers);
  }
  if (id == "genus1-groups") return genus1_group_exclusions(workers);
  if (id == "genus2-f5") {
    if (q && *q != 5) throw Error(ErrorCode::PreconditionFailed, "genus2-f5 runs over F5 only");
    return genus2_f5_catalog(workers);
  }
  if (id == "genus2bigger") return genus2bigger_family(Q, 0, workers);
  if (id == "d6") return d6_cocycle_case(Q);
  if (id == "d6-char2") return d6_char2_case(Q);
  if (id == "d12") return d12_case(Q, workers);
  if (id == "s4") return s4_case(Q);
  if (id == "s5") return s5_case(Q, workers);
  if (id == "char3") return char3_case(Q);
  throw Error(ErrorCode::InvalidInput, "unknown case id " + id);
}

std::vector<CaseReport> run_all(int workers) {
  std::vector<CaseReport> out;
  for (const auto& id : case_ids())
    for (auto q : suite_sizes(id)) out.push_back(run_case(id, id == "genus1-groups" ? std::nullopt : std::optional(q), workers));
  return out;
}

std::string summary_tsv(const std::vector<CaseReport>& reports) {
  std::ostringstream os;
  os << "case\tq\tclaims\tpassed\tverdict\n";
  for (const auto& r : reports) {
    const auto passed = std::count_if(r.claims.begin(), r.claims.end(), [](const Claim& c) { return c.pass; });
    os << r.id << '\t' << (r.field.contains("q") ? r.field["q"].dump() : "-") << '\t' << r.claims.size() << '\t'
       << passed << '\t' << (r.pass() ? "pass" : "fail") << '\n';
  }
  return os.str();
}

}  // namespace cotwist::casebook
