#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cotwist/casebook.hpp"
#include "cotwist/numtheory.hpp"

namespace cotwist::casebook::detail {

using curves::CurveModel;
using curves::IsoMap;
using ff::Elem;
using ff::FieldPtr;
using ff::Poly;

/// Largest field swept by the Weierstrass isomorphism search.
inline constexpr std::uint64_t kEllipticSearchLimit = 10'000;

/// F_q for a prime power q within the enumeration bound.
FieldPtr field_of_size(std::uint64_t q);
std::pair<std::uint64_t, std::uint32_t> prime_power(std::uint64_t q);

Poly poly(const FieldPtr& f, const std::vector<std::int64_t>& coeffs);

/// Degree-d extension of f for arithmetic only.
FieldPtr ext(const FieldPtr& f, std::uint32_t d);

/// Counts of c and d over the degree-deg extension, each from the fast path
/// and from the tabulated oracle; ok is cleared on any oracle mismatch.
json count_pair(const CurveModel& c, const CurveModel& d, std::uint32_t deg, bool& ok, int workers = 1);

/// Smallest element (index order) with nonzero absolute trace.
Elem first_trace_nonzero(const ff::Field& f);

json search_json(const curves::IsoSearch& s);

/// q-power Frobenius on an extension of F_q, as a coefficient action.
inline std::uint32_t q_power(const ff::Field& base) { return base.k(); }

struct ExclusionResult {
  std::uint64_t swept = 0;
  std::uint64_t premise = 0;  // pairs with conjugate squares and cubes
  std::vector<std::pair<groups::Index, groups::Index>> counterexamples;
};

/// Over all pairs (u, v) of g with u^2 ~ v^2 and u^3 ~ v^3, whether u ~ v.
/// `keep(u)` restricts u and v to a subset (for cosets).
template <class Keep>
ExclusionResult exclusion_sweep(const groups::Group& g, Keep keep) {
  const auto labels = g.conjugacy_labels();
  ExclusionResult out;
  const auto n = static_cast<groups::Index>(g.order());
  for (groups::Index u = 0; u < n; ++u) {
    if (!keep(u)) continue;
    const auto u2 = labels[g.pow(u, 2)], u3 = labels[g.pow(u, 3)];
    for (groups::Index v = 0; v < n; ++v) {
      if (!keep(v)) continue;
      ++out.swept;
      if (labels[g.pow(v, 2)] != u2 || labels[g.pow(v, 3)] != u3) continue;
      ++out.premise;
      if (labels[u] != labels[v]) out.counterexamples.emplace_back(u, v);
    }
  }
  return out;
}

/// F(x) = sum f_i (a x + b)^i (c x + d)^(n - i), the degree-n pullback of f by m.
Poly form_pullback(const Poly& f, const std::array<Elem, 4>& m, int n = 6);
/// lambda with form_pullback(dst, m) = lambda * src, if any.
std::optional<Elem> pullback_scale(const Poly& src, const Poly& dst, const std::array<Elem, 4>& m, int n = 6);

/// The pair y^2 = x^6 + g, g y^2 = x^6 + g: explicit quadratic and cubic
/// witnesses, base non-isomorphism and extension counts.
void sextic_pair_claims(CaseReport& rep, const FieldPtr& K, Elem g, const std::string& prefix, int workers);

/// The abstract order-12 cocycle computation shared by the D6 cases.
void d6_group_claims(CaseReport& rep);

}  // namespace cotwist::casebook::detail
