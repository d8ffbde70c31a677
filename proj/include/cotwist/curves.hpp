#pragma once

// Plane-model curve families, point counting over extensions, explicit
// isomorphism maps and brute-force isomorphism search.
//
// Every curve is a bivariate equation sum_j P_j(x) y^j = 0 over its base
// field. Coefficients are embedded into larger fields with ff::embed from the
// base directly, so all maps over a given extension share one embedding.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cotwist/ff.hpp"
#include "cotwist/groups.hpp"
#include "cotwist/poly.hpp"

namespace cotwist::curves {

using ff::Elem;
using ff::FieldPtr;
using ff::Poly;
using json = nlohmann::json;

enum class Family {
  EvenSuperelliptic,       // z^2 = f(w), deg f even
  OddDegreeHyperelliptic,  // y^2 = f(x), deg f odd
  ASRational,              // z^2 + z = a / (w^rs + a), char 2
  ASAdditive,              // v^q0 - v = a u^s - 1
  WeierstrassShort,        // y^2 = x^3 + c4 x + c6, odd char
  WeierstrassChar2,        // y^2 + y = x^3 + c1 x + c0
  ScaledSextic,            // lambda y^2 = x^6 + g, odd char
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

class CurveModel {
 public:
  /// Even or odd family by deg f. f must be separable, char odd, deg >= 3.
  static CurveModel superelliptic(const Poly& f);
  static CurveModel as_rational(FieldPtr base, Elem a, std::uint64_t rs);
  static CurveModel as_additive(FieldPtr base, std::uint64_t q0, std::uint64_t s, Elem a);
  static CurveModel weierstrass_short(FieldPtr base, Elem c4, Elem c6);
  static CurveModel weierstrass_char2(FieldPtr base, Elem c1, Elem c0);
  static CurveModel scaled_sextic(FieldPtr base, Elem lambda, Elem g);

  Family family() const { return family_; }
  const FieldPtr& base() const { return base_; }
  const std::map<std::string, Elem>& coeffs() const { return coeffs_; }
  const std::map<std::string, std::uint64_t>& params() const { return params_; }
  Elem coeff(const std::string& name) const;
  std::uint64_t param(const std::string& name) const;

  /// True for the families of the form c y^2 = f(x) in odd characteristic.
  bool is_double_cover() const;
  /// f with y^2 = f(x) over `field` (ScaledSextic divided by lambda).
  Poly double_cover_f(const FieldPtr& field) const;
  /// P_0, P_1, ... with sum_j P_j(x) y^j = 0, coefficients embedded in `field`.
  std::vector<Poly> equation(const FieldPtr& field) const;
  std::uint64_t genus() const;
  CurveModel base_change(const FieldPtr& ext) const;
  std::string describe() const;

  json to_json() const;
  static CurveModel from_json(const json& j);
  bool operator==(const CurveModel& o) const;

 private:
  CurveModel(Family f, FieldPtr base) : family_(f), base_(std::move(base)) {}
  void validate() const;

  Family family_;
  FieldPtr base_;
  std::map<std::string, Elem> coeffs_;
  std::map<std::string, std::uint64_t> params_;
};

/// (x, y) -> ((a x + b)/(c x + d), (e y + h(x)) / (c x + d)^k).
struct IsoMap {
  FieldPtr field;
  Elem a = 1, b = 0, c = 0, d = 1;
  Elem e = 1;
  Poly h;
  std::uint32_t k = 0;

  static IsoMap identity(FieldPtr f, std::uint32_t k = 0);
  static IsoMap make(FieldPtr f, Elem a, Elem b, Elem c, Elem d, Elem e, std::uint32_t k,
                     std::vector<Elem> h = {});

  Elem det() const;
  /// this after `inner`: (this o inner)(P) = this(inner(P)). Needs equal k.
  IsoMap compose(const IsoMap& inner) const;
  IsoMap inverse() const;
  /// First nonzero matrix entry 1.
  IsoMap normalized() const;
  /// Applies a -> a^(p^t) to every coefficient.
  IsoMap frobenius(std::uint32_t t) const;
  std::optional<std::pair<Elem, Elem>> apply(Elem x, Elem y) const;
  /// Equality of normalized forms.
  std::string key() const;
  bool operator==(const IsoMap& o) const { return key() == o.key(); }

  json to_json() const;
  static IsoMap from_json(const json& j);
};

struct IsoCheck {
  bool symbolic = false;
  bool pointwise = false;
  std::uint64_t points_checked = 0;
  bool ok() const { return symbolic && pointwise; }
};

/// Whether m carries src onto dst over m.field. Throws ShapeMismatch when the
/// equations cannot match (different y-degree, incompatible y_shift).
IsoCheck check_iso_detail(const IsoMap& m, const CurveModel& src, const CurveModel& dst);
bool check_iso(const IsoMap& m, const CurveModel& src, const CurveModel& dst);

/// Substituted destination equation, cleared of denominators, as P_j(x) y^j.
std::vector<Poly> substitute(const IsoMap& m, const std::vector<Poly>& dst_eq);
/// Symbolic test on raw equations over m.field (plane models outside the families).
bool maps_equation(const IsoMap& m, const std::vector<Poly>& src_eq, const std::vector<Poly>& dst_eq);
/// The same map over a field containing m.field.
IsoMap embed_map(const IsoMap& m, const FieldPtr& sup);

/// Affine y with (x, y) on the curve, over `field`.
std::vector<Elem> affine_ys(const CurveModel& c, const FieldPtr& field, Elem x);

/// Degree-1 places over the degree-d extension of the base.
std::uint64_t count_points(const CurveModel& c, std::uint32_t d, int workers = 1,
                           std::uint64_t bound = default_config().max_field);
/// Reference count by enumerating all (x, y) pairs.
std::uint64_t count_points_naive(const CurveModel& c, std::uint32_t d);
/// Reference count from a table of y-side values: G(y) = H(x) with
/// #{y : G(y) = v} tabulated once. No square roots or traces involved.
std::uint64_t count_points_tabulated(const CurveModel& c, std::uint32_t d,
                                     std::uint64_t bound = default_config().max_field);
/// Points over the smooth model not seen by the affine plane model.
std::uint64_t points_at_infinity(const CurveModel& c, const FieldPtr& field);
/// ASAdditive counts use "affine + 1" at every degree.
bool count_is_comparative(const CurveModel& c);

using Fingerprint = std::vector<std::pair<std::uint32_t, std::uint64_t>>;
Fingerprint fingerprint(const CurveModel& c, const std::vector<std::uint32_t>& degrees, int workers = 1);

/// Extension of the base of the given degree (the base itself for degree 1).
FieldPtr extension(const FieldPtr& base, std::uint32_t degree,
                   std::uint64_t bound = default_config().max_field);

/// Projective linear group: normalized representatives, a = 0 block first.
std::uint64_t pgl2_size(std::uint64_t q);
std::array<Elem, 4> pgl2_element(const ff::Field& f, std::uint64_t index);

struct IsoSearch {
  std::optional<IsoMap> witness;
  std::uint64_t candidates = 0;
};

/// Weierstrass coordinate changes x -> u^2 x + r, y -> u^3 y + s u^2 x + t.
IsoSearch elliptic_search(const CurveModel& e1, const CurveModel& e2, const FieldPtr& field);
std::optional<IsoMap> elliptic_isomorphic(const CurveModel& e1, const CurveModel& e2, const FieldPtr& field);

/// Sweep of PGL2(field) x field* with k = 3; minimal Mobius index wins.
IsoSearch hyperelliptic_search(const CurveModel& c1, const CurveModel& c2, const FieldPtr& field,
                               int workers = 1);
/// Reference sweep testing every (Mobius, scale) candidate with substitute().
IsoSearch hyperelliptic_search_serial(const CurveModel& c1, const CurveModel& c2, const FieldPtr& field);
std::optional<IsoMap> hyperelliptic_isomorphic(const CurveModel& c1, const CurveModel& c2,
                                               const FieldPtr& field, int workers = 1);

struct AutGroup {
  std::shared_ptr<const groups::TableGroup> group;
  std::vector<IsoMap> maps;  // maps[i] is group element i
  std::optional<groups::Index> find(const IsoMap& m) const;
};

/// Closure under composition; group multiplication is a * b = a o b.
AutGroup closure_of_maps(const std::vector<IsoMap>& gens, const std::string& label,
                         std::uint64_t limit = default_config().max_closure);
/// Every self-isomorphism over `field` (pointed ones for elliptic models).
AutGroup rational_automorphisms(const CurveModel& c, const FieldPtr& field, int workers = 1);
/// Coefficientwise a -> a^(p^t) as an automorphism of the group.
groups::GroupAut frobenius_action(const AutGroup& g, std::uint32_t t);

struct Rational {
  std::uint64_t num = 0, den = 1;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  std::string str() const;
};
Rational add(Rational x, Rational y);

/// Sum of 1/#Aut over the list.
Rational mass_check(const std::vector<CurveModel>& twists, const FieldPtr& field, int workers = 1);

/// Normalized Mobius maps over `field` taking the roots of x^m - a onto those
/// of x^m - b: (alpha x + beta)^m - b (gamma x + delta)^m = lambda (x^m - a).
std::vector<std::array<Elem, 4>> kummer_map_census(std::uint64_t m, Elem a, Elem b, const FieldPtr& field);

/// All (a, b, map) triples at once; one pass over PGL2.
struct KummerEntry {
  Elem a = 0, b = 0;
  std::array<Elem, 4> map{};
};
std::vector<KummerEntry> kummer_census_all(std::uint64_t m, const FieldPtr& field, int workers = 1);

bool is_scaling_shape(const std::array<Elem, 4>& m);

/// Named curves for group specs "curveaut:<id>:<q>".
CurveModel named_curve(const std::string& id, const FieldPtr& base);
/// Group of rational automorphisms of a named curve over F_q; the curve is
/// defined over the prime field.
AutGroup curve_aut_group(const std::string& id, std::uint64_t q);
/// parse_basic_group plus "curveaut:<id>:<q>".
groups::GroupPtr parse_group(const std::string& spec);
/// parse_aut plus "frob" on curveaut groups (a -> a^p on coefficients).
groups::GroupAut parse_group_aut(const groups::GroupPtr& g, const std::string& spec);

}  // namespace cotwist::curves
