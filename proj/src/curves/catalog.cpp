#include "cotwist/curves.hpp"

namespace cotwist::curves {

namespace {

std::pair<std::uint64_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) throw Error(ErrorCode::InvalidInput, "field size must be a prime power");
  const auto ps = nt::prime_factors(q);
  if (ps.size() != 1) throw Error(ErrorCode::InvalidInput, std::to_string(q) + " is not a prime power");
  std::uint32_t k = 0;
  for (std::uint64_t t = q; t > 1; t /= ps[0]) ++k;
  return {ps[0], k};
}

}  // namespace

CurveModel named_curve(const std::string& id, const FieldPtr& base) {
  const auto& F = *base;
  auto c = [&](std::int64_t v) { return F.from_int(v); };
  if (id == "x5-x") return CurveModel::superelliptic(Poly(base, {0, c(-1), 0, 0, 0, 1}));
  if (id == "x6+1") return CurveModel::superelliptic(Poly(base, {1, 0, 0, 0, 0, 0, 1}));
  if (id == "s4sextic") return CurveModel::superelliptic(Poly(base, {1, 0, c(-5), 0, c(-5), 0, 1}));
  if (id == "j0char2") return CurveModel::weierstrass_char2(base, 0, 0);
  if (id == "j0char3") return CurveModel::weierstrass_short(base, c(-1), 0);
  throw Error(ErrorCode::InvalidInput, "unknown curve id '" + id + "' (x5-x, x6+1, s4sextic, j0char2, j0char3)");
}

AutGroup curve_aut_group(const std::string& id, std::uint64_t q) {
  const auto [p, k] = prime_power(q);
  const FieldPtr fp = ff::build_field(p, 1);
  const FieldPtr fq = ff::build_field(p, k);
  const AutGroup g = rational_automorphisms(named_curve(id, fp), fq);
  return closure_of_maps(g.maps, "curveaut:" + id + ":" + std::to_string(q));
}

groups::GroupPtr parse_group(const std::string& spec) {
  const std::string prefix = "curveaut:";
  if (spec.rfind(prefix, 0) == 0) {
    const auto rest = spec.substr(prefix.size());
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos) throw Error(ErrorCode::InvalidInput, "expected curveaut:<id>:<q>");
    std::uint64_t q = 0;
    try {
      q = std::stoull(rest.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "bad field size in '" + spec + "'");
    }
    return curve_aut_group(rest.substr(0, colon), q).group;
  }
  return groups::parse_basic_group(spec);
}

groups::GroupAut parse_group_aut(const groups::GroupPtr& g, const std::string& spec) {
  if (spec == "frob" && g->label().rfind("curveaut:", 0) == 0) {
    AutGroup ag;
    ag.group = std::dynamic_pointer_cast<const groups::TableGroup>(g);
    for (groups::Index i = 0; i < g->order(); ++i) ag.maps.push_back(IsoMap::from_json(g->describe(i)));
    return frobenius_action(ag, 1);
  }
  return groups::parse_aut(g, spec);
}

}  // namespace cotwist::curves
