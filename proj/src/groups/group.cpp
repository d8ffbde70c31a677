#include <algorithm>
#include <numeric>

#include "cotwist/groups.hpp"
#include "cotwist/numtheory.hpp"

namespace cotwist::groups {

Index Group::pow(Index a, std::int64_t e) const {
  Index base = e < 0 ? inv(a) : a;
  std::uint64_t n = e < 0 ? std::uint64_t(-(e + 1)) + 1 : std::uint64_t(e);
  Index r = identity();
  while (n) {
    if (n & 1) r = mul(r, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return r;
}

std::uint64_t Group::element_order(Index a) const {
  std::uint64_t n = 1;
  for (Index x = a; x != identity(); x = mul(x, a)) ++n;
  return n;
}

std::optional<Index> Group::are_conjugate(Index a, Index b) const {
  const auto n = Index(order());
  for (Index c = 0; c < n; ++c) {
    if (conj(a, c) == b) return c;
  }
  return std::nullopt;
}

std::vector<Index> Group::conjugacy_labels() const {
  const auto n = Index(order());
  constexpr Index kUnset = ~Index{0};
  std::vector<Index> label(n, kUnset);
  for (Index a = 0; a < n; ++a) {
    if (label[a] != kUnset) continue;
    // a is the smallest unlabeled element, hence the smallest in its class.
    for (Index c = 0; c < n; ++c) label[conj(a, c)] = a;
  }
  return label;
}

TableGroup::TableGroup(std::string label, std::vector<Index> table, std::vector<json> payloads)
    : label_(std::move(label)), n_(payloads.size()), table_(std::move(table)),
      inv_(n_, 0), payloads_(std::move(payloads)) {
  if (table_.size() != n_ * n_) throw Error(ErrorCode::InvalidInput, "table size mismatch");
  for (Index a = 0; a < n_; ++a) {
    for (Index b = 0; b < n_; ++b) {
      if (table_[a * n_ + b] == 0) {
        inv_[a] = b;
        break;
      }
    }
  }
}

std::shared_ptr<const TableGroup> TableGroup::from(const Group& g, std::uint64_t limit) {
  const std::uint64_t n = g.order();
  if (n > limit) throw Error(ErrorCode::GroupTooLarge, "table for order " + std::to_string(n));
  std::vector<Index> table(n * n);
  std::vector<json> payloads(n);
  for (Index a = 0; a < n; ++a) {
    payloads[a] = g.describe(a);
    for (Index b = 0; b < n; ++b) table[a * n + b] = g.mul(a, b);
  }
  return std::make_shared<const TableGroup>(g.label(), std::move(table), std::move(payloads));
}

Dihedral::Dihedral(std::uint32_t n) : n_(n) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "dihedral N must be positive");
}

Index Dihedral::elem(std::int64_t i, int j) const {
  return Index(nt::mod(i, n_)) + n_ * Index(j & 1);
}

// u^i v^j u^k v^l = u^{i + (-1)^j k} v^{j + l}
Index Dihedral::mul(Index a, Index b) const {
  const auto [i, j] = parts(a);
  const auto [k, l] = parts(b);
  const std::int64_t e = j ? std::int64_t(i) - k : std::int64_t(i) + k;
  return elem(e, j ^ l);
}

Index Dihedral::inv(Index a) const {
  const auto [i, j] = parts(a);
  return j ? a : elem(-std::int64_t(i), 0);
}

json Dihedral::describe(Index a) const {
  const auto [i, j] = parts(a);
  return json{{"i", i}, {"j", j}};
}

Cyclic::Cyclic(std::uint32_t n) : n_(n) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "cyclic order must be positive");
}

VectorGroup::VectorGroup(std::uint32_t p, std::uint32_t n) : p_(p), n_(n), size_(1) {
  if (p < 2) throw Error(ErrorCode::InvalidInput, "vector group needs p >= 2");
  for (std::uint32_t i = 0; i < n; ++i) size_ *= p;
}

std::vector<std::uint32_t> VectorGroup::coords(Index a) const {
  std::vector<std::uint32_t> c(n_);
  for (auto& x : c) {
    x = a % p_;
    a /= p_;
  }
  return c;
}

Index VectorGroup::from_coords(const std::vector<std::uint32_t>& c) const {
  Index r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * p_ + c[i] % p_;
  return r;
}

Index VectorGroup::mul(Index a, Index b) const {
  Index r = 0, scale = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Index VectorGroup::inv(Index a) const {
  Index r = 0, scale = 1;
  for (std::uint32_t i = 0; i < n_; ++i) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

std::string VectorGroup::label() const {
  return "F_" + std::to_string(p_) + "^" + std::to_string(n_);
}

std::uint64_t sl2_order_formula(std::uint64_t n) {
  std::uint64_t r = n * n * n;
  for (auto p : nt::prime_factors(n)) r = r / (p * p) * (p * p - 1);
  return r;
}

SL2::SL2(std::uint32_t n, bool projective, std::uint64_t max_order) : n_(n), proj_(projective) {
  if (n < 2) throw Error(ErrorCode::InvalidInput, "sl2 needs n >= 2");
  std::uint64_t expect = sl2_order_formula(n);
  if (proj_ && n > 2) expect /= 2;
  if (expect > max_order) {
    throw Error(ErrorCode::GroupTooLarge, "SL2 order " + std::to_string(expect));
  }
  const std::uint64_t codes = std::uint64_t(n) * n * n * n;
  code_to_index_.assign(codes, ~std::uint32_t{0});
  elems_.push_back(Mat{1, 0, 0, 1});
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t d = 0; d < n; ++d) {
          if ((std::uint64_t(a) * d + std::uint64_t(n - b) * c) % n != 1) continue;
          const Mat m{a, b, c, d};
          if (normalize(m) != m) continue;
          if (m == elems_[0]) continue;
          elems_.push_back(m);
        }
  for (std::uint32_t i = 0; i < elems_.size(); ++i) {
    const Mat& m = elems_[i];
    code_to_index_[((std::uint64_t(m[0]) * n + m[1]) * n + m[2]) * n + m[3]] = i;
  }
}

SL2::Mat SL2::normalize(Mat m) const {
  for (auto& v : m) v %= n_;
  if (!proj_) return m;
  Mat neg;
  for (int i = 0; i < 4; ++i) neg[i] = (n_ - m[i]) % n_;
  return std::min(m, neg);
}

Index SL2::index_of(const Mat& m) const {
  const Mat r = normalize(m);
  const Index i = code_to_index_[((std::uint64_t(r[0]) * n_ + r[1]) * n_ + r[2]) * n_ + r[3]];
  if (i == ~Index{0}) throw Error(ErrorCode::InvalidInput, "matrix not in SL2");
  return i;
}

Index SL2::mul(Index x, Index y) const {
  const Mat& a = elems_[x];
  const Mat& b = elems_[y];
  const std::uint64_t n = n_;
  return index_of(Mat{std::uint32_t((std::uint64_t(a[0]) * b[0] + std::uint64_t(a[1]) * b[2]) % n),
                      std::uint32_t((std::uint64_t(a[0]) * b[1] + std::uint64_t(a[1]) * b[3]) % n),
                      std::uint32_t((std::uint64_t(a[2]) * b[0] + std::uint64_t(a[3]) * b[2]) % n),
                      std::uint32_t((std::uint64_t(a[2]) * b[1] + std::uint64_t(a[3]) * b[3]) % n)});
}

Index SL2::inv(Index x) const {
  const Mat& a = elems_[x];
  return index_of(Mat{a[3], (n_ - a[1]) % n_, (n_ - a[2]) % n_, a[0]});
}

std::string SL2::label() const {
  return (proj_ ? "PSL_2(Z/" : "SL_2(Z/") + std::to_string(n_) + ")";
}

json SL2::describe(Index x) const {
  const Mat& a = elems_[x];
  return json{{"matrix", {{a[0], a[1]}, {a[2], a[3]}}}};
}

Index DirectProduct::mul(Index x, Index y) const {
  const Index na = Index(a_->order());
  return pair(a_->mul(x % na, y % na), b_->mul(x / na, y / na));
}

Index DirectProduct::inv(Index x) const {
  const Index na = Index(a_->order());
  return pair(a_->inv(x % na), b_->inv(x / na));
}

json DirectProduct::describe(Index x) const {
  const Index na = Index(a_->order());
  return json::array({a_->describe(x % na), b_->describe(x / na)});
}

GroupAut::GroupAut(GroupPtr g, std::vector<Index> table, std::string label)
    : g_(std::move(g)), table_(std::move(table)), label_(std::move(label)) {
  if (table_.size() != g_->order()) throw Error(ErrorCode::InvalidInput, "aut table size mismatch");
}

GroupAut GroupAut::identity(GroupPtr g) {
  std::vector<Index> t(g->order());
  std::iota(t.begin(), t.end(), Index{0});
  return GroupAut(std::move(g), std::move(t), "id");
}

GroupAut GroupAut::from_generators(GroupPtr g, const std::vector<Index>& gens,
                                   const std::vector<Index>& images, std::string label) {
  if (gens.size() != images.size()) throw Error(ErrorCode::InvalidInput, "generator/image mismatch");
  const std::size_t n = g->order();
  constexpr Index kUnset = ~Index{0};
  std::vector<Index> t(n, kUnset);
  std::vector<Index> queue{0};
  t[0] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const Index e = queue[h];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Index ne = g->mul(e, gens[i]);
      const Index img = g->mul(t[e], images[i]);
      if (t[ne] == kUnset) {
        t[ne] = img;
        queue.push_back(ne);
      } else if (t[ne] != img) {
        throw Error(ErrorCode::NotAnAutomorphism, "images do not define a homomorphism");
      }
    }
  }
  if (queue.size() != n) throw Error(ErrorCode::NotAnAutomorphism, "generators do not generate");
  GroupAut a(std::move(g), std::move(t), std::move(label));
  if (!a.verify()) throw Error(ErrorCode::NotAnAutomorphism, "map is not bijective");
  return a;
}

GroupAut GroupAut::inner(GroupPtr g, Index c) {
  std::vector<Index> t(g->order());
  for (Index a = 0; a < t.size(); ++a) t[a] = g->conj(a, c);
  return GroupAut(std::move(g), std::move(t), "inner:" + std::to_string(c));
}

GroupAut GroupAut::compose(const GroupAut& other) const {
  std::vector<Index> t(table_.size());
  for (std::size_t a = 0; a < t.size(); ++a) t[a] = table_[other.table_[a]];
  return GroupAut(g_, std::move(t));
}

GroupAut GroupAut::power(std::uint64_t k) const {
  GroupAut r = identity(g_), b = *this;
  while (k) {
    if (k & 1) r = r.compose(b);
    k >>= 1;
    if (k) b = b.compose(b);
  }
  return r;
}

bool GroupAut::is_identity() const {
  for (std::size_t a = 0; a < table_.size(); ++a) {
    if (table_[a] != a) return false;
  }
  return true;
}

std::uint64_t GroupAut::order() const {
  GroupAut cur = *this;
  for (std::uint64_t k = 1;; ++k) {
    if (cur.is_identity()) return k;
    cur = cur.compose(*this);
  }
}

bool GroupAut::verify() const {
  const std::size_t n = table_.size();
  std::vector<bool> hit(n, false);
  for (Index v : table_) {
    if (v >= n || hit[v]) return false;
    hit[v] = true;
  }
  auto check = [&](Index a, Index b) { return table_[g_->mul(a, b)] == g_->mul(table_[a], table_[b]); };
  if (n <= 200) {
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        if (!check(a, b)) return false;
    return true;
  }
  // Deterministic sample: every element against a spread of partners.
  for (Index a = 0; a < n; ++a) {
    for (std::uint64_t s = 1; s <= 8; ++s) {
      if (!check(a, Index((a * 7919ull + s * 104729ull) % n))) return false;
    }
  }
  return true;
}

Semidirect::Semidirect(GroupPtr g, const GroupAut& alpha, std::uint32_t k)
    : g_(std::move(g)), n_(g_->order()), k_(k), alabel_(alpha.label()) {
  if (k == 0) throw Error(ErrorCode::InvalidInput, "k must be positive");
  if (!alpha.power(k).is_identity()) {
    throw Error(ErrorCode::AutOrderMismatch, "alpha^" + std::to_string(k) + " is not the identity");
  }
  apow_.push_back(GroupAut::identity(g_).table());
  for (std::uint32_t i = 1; i < k; ++i) {
    std::vector<Index> t(n_);
    for (std::size_t a = 0; a < n_; ++a) t[a] = alpha(apow_.back()[a]);
    apow_.push_back(std::move(t));
  }
}

Index Semidirect::mul(Index a, Index b) const {
  const Index g1 = a % n_, g2 = b % n_;
  const std::uint32_t i = a / n_, j = b / n_;
  return pair(g_->mul(g1, apow_[i][g2]), (i + j) % k_);
}

Index Semidirect::inv(Index a) const {
  const Index g = a % n_;
  const std::uint32_t i = a / n_;
  const std::uint32_t ni = (k_ - i) % k_;
  return pair(apow_[ni][g_->inv(g)], ni);
}

std::string Semidirect::label() const {
  return g_->label() + " x| <" + (alabel_.empty() ? "alpha" : alabel_) + "> (k=" + std::to_string(k_) + ")";
}

json Semidirect::describe(Index a) const {
  return json{{"g", g_->describe(a % n_)}, {"k", a / n_}};
}

}  // namespace cotwist::groups
