#include <algorithm>
#include <numeric>

#include "cotwist/curves.hpp"
#include "cotwist/parallel.hpp"
#include "internal.hpp"

namespace cotwist::curves {

namespace {

constexpr std::uint64_t kEllipticFieldLimit = 10'000;
constexpr std::uint64_t kHyperellipticBudget = 100'000'000;

using Sextic = std::array<Elem, 7>;

Sextic sextic_of(const CurveModel& c, const FieldPtr& f) {
  if (!c.is_double_cover() || c.family() == Family::WeierstrassShort) {
    throw Error(ErrorCode::ShapeMismatch, std::string(family_name(c.family())) + " is not a genus-2 double cover");
  }
  const Poly p = c.double_cover_f(f);
  if (p.degree() != 5 && p.degree() != 6) throw Error(ErrorCode::ShapeMismatch, "genus-2 search needs deg f in {5, 6}");
  Sextic s{};
  for (int i = 0; i <= p.degree(); ++i) s[std::size_t(i)] = p[std::size_t(i)];
  return s;
}

void check_genus2_search(const CurveModel& c1, const CurveModel& c2, const FieldPtr& f) {
  if (f->p() == 2) {
    throw Error(ErrorCode::UnsupportedCharacteristic, "genus-2 isomorphism search is not implemented in characteristic 2");
  }
  const std::uint64_t q = f->q();
  if (q > 1000 || pgl2_size(q) * q > kHyperellipticBudget) {
    throw Error(ErrorCode::FieldTooLarge, "PGL2(" + f->name() + ") sweep exceeds the search budget");
  }
  (void)c1, (void)c2;
}

// Sum_i f_i (a x + b)^i (c x + d)^(6 - i), coefficients low to high.
Sextic transform(const ff::Field& F, const Sextic& f, const std::array<Elem, 4>& m) {
  std::array<std::array<Elem, 7>, 7> np{}, dp{};
  np[0][0] = dp[0][0] = 1;
  for (int i = 1; i <= 6; ++i)
    for (int j = 0; j <= i; ++j) {
      const Elem lo_n = j < i ? F.mul(np[i - 1][j], m[1]) : 0, hi_n = j > 0 ? F.mul(np[i - 1][j - 1], m[0]) : 0;
      np[i][j] = F.add(lo_n, hi_n);
      const Elem lo_d = j < i ? F.mul(dp[i - 1][j], m[3]) : 0, hi_d = j > 0 ? F.mul(dp[i - 1][j - 1], m[2]) : 0;
      dp[i][j] = F.add(lo_d, hi_d);
    }
  Sextic out{};
  for (int i = 0; i <= 6; ++i) {
    if (f[i] == 0) continue;
    for (int u = 0; u <= i; ++u) {
      if (np[i][u] == 0) continue;
      const Elem cu = F.mul(f[i], np[i][u]);
      for (int v = 0; v <= 6 - i; ++v) out[u + v] = F.add(out[u + v], F.mul(cu, dp[6 - i][v]));
    }
  }
  return out;
}

// lambda with t = lambda s, if any.
std::optional<Elem> proportion(const ff::Field& F, const Sextic& t, const Sextic& s) {
  int j0 = 6;
  while (j0 >= 0 && s[j0] == 0) --j0;
  if (j0 < 0 || t[j0] == 0) return std::nullopt;
  const Elem lam = F.div(t[j0], s[j0]);
  for (int i = 0; i <= 6; ++i)
    if (t[i] != F.mul(lam, s[i])) return std::nullopt;
  return lam;
}

// Isomorphisms c1 -> c2 over f in Mobius index order, both scales per Mobius.
std::vector<IsoMap> genus2_isos(const CurveModel& c1, const CurveModel& c2, const FieldPtr& f, bool first_only,
                                int workers) {
  check_genus2_search(c1, c2, f);
  const auto& F = *f;
  const Sextic s1 = sextic_of(c1, f), s2 = sextic_of(c2, f);
  const std::uint64_t n = pgl2_size(F.q());
  const int nw = std::max(1, workers);
  std::vector<std::vector<IsoMap>> found(static_cast<std::size_t>(nw));
  parallelize(n, nw, [&](std::size_t w, std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const auto m = pgl2_element(F, idx);
      const auto lam = proportion(F, transform(F, s2, m), s1);
      if (!lam) continue;
      const auto r = F.sqrt(*lam);
      if (!r) continue;
      const Elem e1 = std::min(*r, F.neg(*r)), e2 = std::max(*r, F.neg(*r));
      found[w].push_back(IsoMap::make(f, m[0], m[1], m[2], m[3], e1, 3));
      if (first_only) break;
      found[w].push_back(IsoMap::make(f, m[0], m[1], m[2], m[3], e2, 3));
    }
  });
  std::vector<IsoMap> out;
  for (auto& v : found) {
    for (auto& m : v) {
      out.push_back(std::move(m));
      if (first_only) return out;
    }
  }
  return out;
}

std::vector<IsoMap> elliptic_isos(const CurveModel& e1, const CurveModel& e2, const FieldPtr& f, bool first_only,
                                  std::uint64_t* candidates) {
  if (e1.family() != e2.family() ||
      (e1.family() != Family::WeierstrassShort && e1.family() != Family::WeierstrassChar2)) {
    throw Error(ErrorCode::ShapeMismatch, "elliptic search needs two Weierstrass models of one family");
  }
  if (f->q() > kEllipticFieldLimit) throw Error(ErrorCode::FieldTooLarge, f->name() + " exceeds 10^4 elements");
  const auto& F = *f;
  const auto m1 = ff::embed(e1.base(), f), m2 = ff::embed(e2.base(), f);
  std::vector<IsoMap> out;
  if (e1.family() == Family::WeierstrassShort) {
    const Elem a1 = m1.apply(e1.coeff("c4")), b1 = m1.apply(e1.coeff("c6"));
    const Elem a2 = m2.apply(e2.coeff("c4")), b2 = m2.apply(e2.coeff("c6"));
    const Elem three = F.from_int(3);
    if (candidates) *candidates = (F.q() - 1) * F.q();
    for (Elem u = 1; u < F.q(); ++u) {
      const Elem u2 = F.mul(u, u), u4 = F.mul(u2, u2), u6 = F.mul(u4, u2);
      for (Elem r = 0; r < F.q(); ++r) {
        if (F.mul(three, F.mul(u4, r)) != 0) continue;
        const Elem r2 = F.mul(r, r);
        if (F.add(F.mul(three, F.mul(u2, r2)), F.mul(a2, u2)) != F.mul(u6, a1)) continue;
        if (F.add(F.add(F.mul(r2, r), F.mul(a2, r)), b2) != F.mul(u6, b1)) continue;
        out.push_back(IsoMap::make(f, u2, r, 0, 1, F.mul(u2, u), 0));
        if (first_only) return out;
      }
    }
    return out;
  }
  // Characteristic 2: u^3 = 1, r = s^2, t from an Artin-Schreier equation.
  const Elem c1 = m1.apply(e1.coeff("c1")), c0 = m1.apply(e1.coeff("c0"));
  const Elem d1 = m2.apply(e2.coeff("c1")), d0 = m2.apply(e2.coeff("c0"));
  const detail::AdditiveSolver as(f, 2);
  std::uint64_t cubes = 0;
  for (Elem u = 1; u < F.q(); ++u) cubes += F.pow(u, 3) == 1;
  if (candidates) *candidates = cubes * F.q() * F.q();
  for (Elem u = 1; u < F.q(); ++u) {
    if (F.pow(u, 3) != 1) continue;
    const Elem u2 = F.mul(u, u);
    for (Elem s = 0; s < F.q(); ++s) {
      const Elem r = F.mul(s, s), r2 = F.mul(r, r);
      if (F.add(F.add(F.mul(s, u2), F.mul(u2, r2)), F.add(F.mul(d1, u2), c1)) != 0) continue;
      const Elem rhs = F.add(F.add(c0, F.mul(r2, r)), F.add(F.mul(d1, r), d0));
      for (Elem t : as.solve(rhs)) {
        out.push_back(IsoMap::make(f, u2, r, 0, 1, 1, 0, {t, F.mul(s, u2)}));
        if (first_only) return out;
      }
    }
  }
  return out;
}

}  // namespace

std::uint64_t pgl2_size(std::uint64_t q) { return q * q * q - q; }

std::array<Elem, 4> pgl2_element(const ff::Field& F, std::uint64_t idx) {
  const std::uint64_t q = F.q();
  if (idx < q * (q - 1)) return {0, 1, Elem(1 + idx / q), Elem(idx % q)};
  idx -= q * (q - 1);
  const Elem b = idx / (q * (q - 1));
  const std::uint64_t rem = idx % (q * (q - 1));
  const Elem c = rem / (q - 1);
  const Elem bc = F.mul(b, c);
  Elem d = rem % (q - 1);
  if (d >= bc) ++d;
  return {1, b, c, d};
}

IsoSearch elliptic_search(const CurveModel& e1, const CurveModel& e2, const FieldPtr& field) {
  IsoSearch out;
  auto v = elliptic_isos(e1, e2, field, true, &out.candidates);
  if (!v.empty()) out.witness = v.front();
  return out;
}

std::optional<IsoMap> elliptic_isomorphic(const CurveModel& e1, const CurveModel& e2, const FieldPtr& field) {
  return elliptic_search(e1, e2, field).witness;
}

IsoSearch hyperelliptic_search(const CurveModel& c1, const CurveModel& c2, const FieldPtr& field, int workers) {
  IsoSearch out;
  auto v = genus2_isos(c1, c2, field, true, workers);
  out.candidates = pgl2_size(field->q()) * (field->q() - 1);
  if (!v.empty()) out.witness = v.front();
  return out;
}

IsoSearch hyperelliptic_search_serial(const CurveModel& c1, const CurveModel& c2, const FieldPtr& field) {
  check_genus2_search(c1, c2, field);
  sextic_of(c1, field), sextic_of(c2, field);
  const auto& F = *field;
  const auto p = c1.double_cover_f(field);
  const std::vector<Poly> src{-p, Poly(field), Poly::constant(field, 1)};
  const auto q2 = c2.double_cover_f(field);
  const std::vector<Poly> dst{-q2, Poly(field), Poly::constant(field, 1)};
  IsoSearch out;
  out.candidates = pgl2_size(F.q()) * (F.q() - 1);
  for (std::uint64_t idx = 0; idx < pgl2_size(F.q()); ++idx) {
    const auto m = pgl2_element(F, idx);
    for (Elem e = 1; e < F.q(); ++e) {
      const IsoMap cand = IsoMap::make(field, m[0], m[1], m[2], m[3], e, 3);
      const auto r = substitute(cand, dst);
      // y^2 coefficient is e^2, so proportionality means r_0 = e^2 * (-f1).
      if (r.size() == 3 && r[1].is_zero() && r[0] == src[0].scaled(r[2][0]) && r[2].degree() == 0) {
        out.witness = cand;
        return out;
      }
    }
  }
  return out;
}

std::optional<IsoMap> hyperelliptic_isomorphic(const CurveModel& c1, const CurveModel& c2, const FieldPtr& field,
                                               int workers) {
  return hyperelliptic_search(c1, c2, field, workers).witness;
}

std::optional<groups::Index> AutGroup::find(const IsoMap& m) const {
  const std::string k = m.key();
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (maps[i].key() == k) return groups::Index(i);
  return std::nullopt;
}

AutGroup closure_of_maps(const std::vector<IsoMap>& gens, const std::string& label, std::uint64_t limit) {
  if (gens.empty()) throw Error(ErrorCode::InvalidInput, "closure needs at least one generator");
  auto [g, elems] = groups::closure<IsoMap>(
      IsoMap::identity(gens.front().field, gens.front().k), gens,
      [](const IsoMap& x, const IsoMap& y) { return x.compose(y); }, [](const IsoMap& x) { return x.key(); },
      [](const IsoMap& x) { return x.to_json(); }, label, limit);
  return AutGroup{g, std::move(elems)};
}

AutGroup rational_automorphisms(const CurveModel& c, const FieldPtr& field, int workers) {
  std::vector<IsoMap> all;
  if (c.family() == Family::WeierstrassShort || c.family() == Family::WeierstrassChar2) {
    all = elliptic_isos(c, c, field, false, nullptr);
  } else {
    all = genus2_isos(c, c, field, false, workers);
  }
  AutGroup g = closure_of_maps(all, "Aut(" + c.describe() + ")/" + field->name());
  if (g.maps.size() != all.size()) {
    throw Error(ErrorCode::ClosureTooLarge, "self-isomorphisms are not closed under composition");
  }
  return g;
}

groups::GroupAut frobenius_action(const AutGroup& g, std::uint32_t t) {
  std::vector<groups::Index> table(g.maps.size());
  for (std::size_t i = 0; i < g.maps.size(); ++i) {
    const auto j = g.find(g.maps[i].frobenius(t));
    if (!j) throw Error(ErrorCode::NotAnAutomorphism, "Frobenius image leaves the group");
    table[i] = *j;
  }
  groups::GroupAut a(g.group, std::move(table), "frob^" + std::to_string(t));
  if (!a.verify()) throw Error(ErrorCode::NotAnAutomorphism, "Frobenius action is not an automorphism");
  return a;
}

std::string Rational::str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

Rational add(Rational x, Rational y) {
  const std::uint64_t l = std::lcm(x.den, y.den);
  Rational r{x.num * (l / x.den) + y.num * (l / y.den), l};
  const std::uint64_t g = std::gcd(r.num, r.den);
  if (g > 1) r.num /= g, r.den /= g;
  if (r.num == 0) r.den = 1;
  return r;
}

Rational mass_check(const std::vector<CurveModel>& twists, const FieldPtr& field, int workers) {
  Rational total{0, 1};
  for (const auto& c : twists) total = add(total, Rational{1, rational_automorphisms(c, field, workers).maps.size()});
  return total;
}

bool is_scaling_shape(const std::array<Elem, 4>& m) { return (m[1] == 0 && m[2] == 0) || (m[0] == 0 && m[3] == 0); }

namespace {

void check_kummer(std::uint64_t m, const ff::Field& F) {
  if (m <= 2) throw Error(ErrorCode::PreconditionFailed, "m must exceed 2");
  if (m % F.p() == 0) throw Error(ErrorCode::PreconditionFailed, "characteristic divides m");
  if (pgl2_size(F.q()) > 50'000'000) throw Error(ErrorCode::FieldTooLarge, "PGL2 census too large");
}

// C(m, i) u^i v^(m - i) for i = 0..m.
std::vector<Elem> binomial_expand(const ff::Field& F, const std::vector<std::vector<std::uint64_t>>& bin, std::uint64_t m,
                                  Elem u, Elem v) {
  std::vector<Elem> out(m + 1);
  for (std::uint64_t i = 0; i <= m; ++i) {
    out[i] = F.mul(F.scale(bin[m][i], 1), F.mul(F.pow(u, i), F.pow(v, m - i)));
  }
  return out;
}

}  // namespace

std::vector<std::array<Elem, 4>> kummer_map_census(std::uint64_t m, Elem a, Elem b, const FieldPtr& field) {
  const auto& F = *field;
  check_kummer(m, F);
  if (a == 0 || b == 0) throw Error(ErrorCode::PreconditionFailed, "a and b must be nonzero");
  const auto bin = detail::binomials_mod(m, F.p());
  std::vector<std::array<Elem, 4>> out;
  for (std::uint64_t idx = 0; idx < pgl2_size(F.q()); ++idx) {
    const auto mm = pgl2_element(F, idx);
    const auto p = binomial_expand(F, bin, m, mm[0], mm[1]), q = binomial_expand(F, bin, m, mm[2], mm[3]);
    bool ok = true;
    for (std::uint64_t i = 1; i < m && ok; ++i) ok = p[i] == F.mul(b, q[i]);
    if (!ok) continue;
    const Elem lam = F.sub(p[m], F.mul(b, q[m]));
    if (lam == 0) continue;
    if (F.sub(p[0], F.mul(b, q[0])) == F.neg(F.mul(lam, a))) out.push_back(mm);
  }
  return out;
}

std::vector<KummerEntry> kummer_census_all(std::uint64_t m, const FieldPtr& field, int workers) {
  const auto& F = *field;
  check_kummer(m, F);
  const auto bin = detail::binomials_mod(m, F.p());
  const int nw = std::max(1, workers);
  std::vector<std::vector<KummerEntry>> part(static_cast<std::size_t>(nw));
  parallelize(pgl2_size(F.q()), nw, [&](std::size_t w, std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const auto mm = pgl2_element(F, idx);
      const auto p = binomial_expand(F, bin, m, mm[0], mm[1]), q = binomial_expand(F, bin, m, mm[2], mm[3]);
      std::optional<Elem> forced;
      for (std::uint64_t i = 1; i < m; ++i)
        if (q[i] != 0) {
          forced = F.div(p[i], q[i]);
          break;
        }
      auto try_b = [&](Elem b) {
        if (b == 0) return;
        for (std::uint64_t i = 1; i < m; ++i)
          if (p[i] != F.mul(b, q[i])) return;
        const Elem lam = F.sub(p[m], F.mul(b, q[m]));
        if (lam == 0) return;
        const Elem a = F.neg(F.div(F.sub(p[0], F.mul(b, q[0])), lam));
        if (a == 0) return;
        part[w].push_back(KummerEntry{a, b, mm});
      };
      if (forced) {
        try_b(*forced);
      } else {
        for (Elem b = 1; b < F.q(); ++b) try_b(b);
      }
    }
  });
  std::vector<KummerEntry> out;
  for (auto& v : part) out.insert(out.end(), v.begin(), v.end());
  std::stable_sort(out.begin(), out.end(), [](const KummerEntry& x, const KummerEntry& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  return out;
}

}  // namespace cotwist::curves
