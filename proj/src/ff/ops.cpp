#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "cotwist/ff.hpp"
#include "cotwist/linalg.hpp"
#include "cotwist/poly.hpp"

namespace cotwist::ff {

std::optional<LinearSolution> solve_mod_p(std::vector<std::vector<std::uint64_t>> a,
                                          std::vector<std::uint64_t> b, std::uint64_t p) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::swap(b[piv], b[r]);
    const std::uint64_t inv = *nt::modinv(a[r][c] % p, p);
    for (auto& v : a[r]) v = nt::mulmod(v % p, inv, p);
    b[r] = nt::mulmod(b[r] % p, inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] % p == 0) continue;
      const std::uint64_t f = a[i][c] % p;
      for (std::size_t j = 0; j < cols; ++j) {
        a[i][j] = (a[i][j] % p + p - nt::mulmod(f, a[r][j], p)) % p;
      }
      b[i] = (b[i] % p + p - nt::mulmod(f, b[r], p)) % p;
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] % p != 0) return std::nullopt;
  }
  LinearSolution sol;
  sol.particular.assign(cols, 0);
  for (std::size_t i = 0; i < r; ++i) sol.particular[pivot_col[i]] = b[i] % p;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  for (std::size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<std::uint64_t> v(cols, 0);
    v[fc] = 1;
    for (std::size_t i = 0; i < r; ++i) v[pivot_col[i]] = (p - a[i][fc] % p) % p;
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

Elem SubfieldEmbedding::apply(Elem a) const {
  const Field& S = *source;
  const Field& T = *target;
  Elem r = 0;
  for (std::size_t i = 0; a != 0; ++i) {
    r = T.add(r, T.scale(a % S.p(), basis_images[i]));
    a /= S.p();
  }
  return r;
}

std::optional<Elem> SubfieldEmbedding::preimage(Elem b) const {
  const Field& S = *source;
  const Field& T = *target;
  std::vector<std::vector<std::uint64_t>> m(T.k(), std::vector<std::uint64_t>(S.k()));
  for (std::uint32_t j = 0; j < S.k(); ++j) {
    const auto col = T.coeffs(basis_images[j]);
    for (std::uint32_t i = 0; i < T.k(); ++i) m[i][j] = col[i];
  }
  const auto sol = solve_mod_p(std::move(m), T.coeffs(b), T.p());
  if (!sol) return std::nullopt;
  return S.from_coeffs(sol->particular);
}

namespace {

std::string spec_key(const FieldSpec& s) {
  std::string key = std::to_string(s.p) + ":" + std::to_string(s.k) + ":";
  for (auto c : s.modulus) key += std::to_string(c) + ",";
  return key;
}

}  // namespace

SubfieldEmbedding embed(const FieldPtr& sub, const FieldPtr& sup) {
  if (sub->p() != sup->p() || sup->k() % sub->k() != 0) {
    throw Error(ErrorCode::NoSubfieldRelation, sub->name() + " does not embed in " + sup->name());
  }
  static std::mutex mu;
  static std::map<std::string, Elem> cache;
  const std::string key = spec_key(sub->spec()) + "|" + spec_key(sup->spec());
  SubfieldEmbedding e{sub, sup, 0, {}};
  bool cached = false;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) {
      e.generator_image = it->second;
      cached = true;
    }
  }
  if (!cached) {
    if (sub->spec() == sup->spec()) {
      e.generator_image = sub->x();
    } else if (sub->k() == 1) {
      e.generator_image = 0;  // root of the modulus x
    } else {
      const auto& m = sub->spec().modulus;
      const auto rs = roots(Poly(sup, {m.begin(), m.end()}));
      if (rs.empty()) throw Error(ErrorCode::NoSubfieldRelation, "modulus has no root");
      e.generator_image = rs.front();
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, e.generator_image);
  }
  e.basis_images.resize(sub->k());
  Elem cur = 1;
  for (std::uint32_t i = 0; i < sub->k(); ++i) {
    e.basis_images[i] = cur;
    cur = sup->mul(cur, e.generator_image);
  }
  return e;
}

Elem primitive_element(const Field& f) { return f.generator(); }

bool is_mth_power(const Field& f, Elem a, std::uint64_t m) {
  if (a == 0) return true;
  const std::uint64_t g = std::gcd(m, f.q() - 1);
  return f.pow(a, (f.q() - 1) / g) == 1;
}

std::uint64_t mth_power_class_order(const Field& f, Elem a, std::uint64_t m) {
  if (a == 0) throw Error(ErrorCode::ZeroElement, "class order of zero");
  if (m == 0) throw Error(ErrorCode::InvalidInput, "m must be positive");
  for (std::uint64_t t : nt::divisors(m)) {
    if (is_mth_power(f, f.pow(a, t), m)) return t;
  }
  return m;
}

Elem trace_to(const Field& sub, const Field& f, Elem a) {
  if (sub.p() != f.p() || f.k() % sub.k() != 0) {
    throw Error(ErrorCode::NoSubfieldRelation, sub.name() + " is not a subfield of " + f.name());
  }
  const std::uint32_t n = f.k() / sub.k();
  Elem acc = 0, y = a;
  for (std::uint32_t i = 0; i < n; ++i) {
    acc = f.add(acc, y);
    y = f.frobenius(y, sub.k());
  }
  return acc;
}

std::vector<Elem> solve_additive(const Field& f, std::uint64_t q0, Elem c) {
  std::uint32_t j = 0;
  for (std::uint64_t t = 1; t < q0; t *= f.p()) ++j;
  if (j == 0 || *nt::bounded_pow(f.p(), j, kArithmeticFieldLimit) != q0 || f.k() % j != 0) {
    throw Error(ErrorCode::NoSubfieldRelation, "q0 is not the size of a subfield");
  }
  const std::uint32_t k = f.k();
  std::vector<std::vector<std::uint64_t>> m(k, std::vector<std::uint64_t>(k));
  Elem xi = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto col = f.coeffs(f.sub(f.frobenius(xi, j), xi));
    for (std::uint32_t r = 0; r < k; ++r) m[r][i] = col[r];
    xi = k == 1 ? xi : f.mul(xi, f.x());
  }
  const auto sol = solve_mod_p(std::move(m), f.coeffs(c), f.p());
  std::vector<Elem> out;
  if (!sol) return out;
  const Elem z0 = f.from_coeffs(sol->particular);
  std::vector<Elem> kernel{0};
  for (const auto& v : sol->kernel) {
    const Elem b = f.from_coeffs(v);
    std::vector<Elem> next;
    for (std::uint64_t t = 0; t < f.p(); ++t) {
      for (Elem e : kernel) next.push_back(f.add(e, f.scale(t, b)));
    }
    kernel = std::move(next);
  }
  for (Elem e : kernel) out.push_back(f.add(z0, e));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> solve_artin_schreier(const Field& f, Elem c) { return solve_additive(f, f.p(), c); }

std::optional<Elem> sqrt_or_none(const Field& f, Elem a) { return f.sqrt(a); }

bool is_square(const Field& f, Elem a) { return f.is_square(a); }

std::vector<Elem> nth_roots(const Field& f, Elem a, std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "n must be positive");
  if (a == 0) return {0};
  std::vector<Elem> out;
  if (f.has_tables()) {
    const std::uint64_t qm = f.q() - 1, g = std::gcd(n, qm), la = f.log(a);
    if (la % g != 0) return out;
    const std::uint64_t mod = qm / g;
    const std::uint64_t l0 = nt::mulmod(la / g, *nt::modinv((n / g) % mod, mod), mod);
    for (std::uint64_t t = 0; t < g; ++t) out.push_back(f.exp(l0 + t * mod));
  } else {
    if (!is_mth_power(f, a, n)) return out;
    const std::uint64_t g = std::gcd(n, f.q() - 1);
    // x^n = a has the same unit solutions as x^g = a^{n'} with n n' = g mod q-1.
    const std::uint64_t m = (f.q() - 1);
    std::uint64_t e = 1;
    if (g != n) {
      const auto inv = nt::modinv((n / g) % (m / g), m / g);
      e = *inv;
    }
    const Elem b = f.pow(a, e);
    std::vector<Elem> c(g + 1, 0);
    c[0] = f.neg(b);
    c[g] = 1;
    for (Elem r : roots(Poly(f.shared_from_this(), c))) {
      if (f.pow(r, n) == a) out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t crt(const std::vector<std::int64_t>& residues, const std::vector<std::uint64_t>& moduli) {
  if (residues.size() != moduli.size()) throw Error(ErrorCode::InvalidInput, "length mismatch");
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] == 0) throw Error(ErrorCode::InvalidInput, "modulus must be positive");
    for (std::size_t j = i + 1; j < moduli.size(); ++j) {
      if (std::gcd(moduli[i], moduli[j]) != 1) {
        throw Error(ErrorCode::ModuliNotCoprime,
                    std::to_string(moduli[i]) + " and " + std::to_string(moduli[j]));
      }
    }
  }
  unsigned __int128 x = 0, big_m = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const std::uint64_t m = moduli[i];
    const std::uint64_t r = nt::mod(residues[i], m);
    const std::uint64_t xm = static_cast<std::uint64_t>(x % m);
    const std::uint64_t diff = (r + m - xm) % m;
    const std::uint64_t t = nt::mulmod(diff, *nt::modinv(static_cast<std::uint64_t>(big_m % m), m), m);
    x += big_m * t;
    big_m *= m;
  }
  return static_cast<std::uint64_t>(x);
}

json to_json(const FieldSpec& spec) {
  return json{{"p", spec.p}, {"k", spec.k}, {"modulus", spec.modulus}};
}

FieldSpec spec_from_json(const json& j) {
  try {
    return FieldSpec{j.at("p").get<std::uint64_t>(), j.at("k").get<std::uint32_t>(),
                     j.at("modulus").get<std::vector<std::uint64_t>>()};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("bad field spec: ") + e.what());
  }
}

json elem_to_json(const Field& f, Elem a) { return json{{"coeffs", f.coeffs(a)}}; }

Elem elem_from_json(const Field& f, const json& j) {
  try {
    const auto c = j.at("coeffs").get<std::vector<std::uint64_t>>();
    for (auto v : c) {
      if (v >= f.p()) throw Error(ErrorCode::InvalidInput, "coefficient out of range");
    }
    return f.from_coeffs(c);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("bad field element: ") + e.what());
  }
}

}  // namespace cotwist::ff
