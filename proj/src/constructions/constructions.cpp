#include "cotwist/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "cotwist/numtheory.hpp"

namespace cotwist::constructions {

namespace {

using ff::Field;

std::int64_t as_signed(std::uint64_t v) { return static_cast<std::int64_t>(v); }

std::uint64_t smallest_power(std::uint64_t base, std::uint64_t modulus, std::uint32_t& k) {
  std::uint64_t q = base;
  for (k = 1; k <= 64; ++k) {
    if ((q - 1) % modulus == 0) return q;
    const auto next = nt::bounded_pow(base, k + 1, kArithmeticFieldLimit);
    if (!next) break;
    q = *next;
  }
  throw Error(ErrorCode::UnsupportedCombination, "no admissible field size below 2^62");
}

std::uint32_t degree_of(std::uint64_t p, std::uint64_t q) {
  std::uint32_t k = 0;
  for (std::uint64_t t = 1; t < q; t *= p) ++k;
  return k;
}

bool is_prime_to(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b) == 1; }

void check_variant(Variant v, std::uint64_t p, std::uint64_t r, std::uint64_t s) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::UnsupportedCombination,
                std::string(variant_name(v)) + " needs " + why + " (p=" + std::to_string(p) + ", r=" +
                    std::to_string(r) + ", s=" + std::to_string(s) + ")");
  };
  switch (v) {
    case Variant::PrsOdd:
      if (p == 2 || r % p == 0 || s % p == 0) fail("p odd and prime to rs");
      if (r % 2 == 0 && s % 2 == 0) fail("one of r, s odd");
      break;
    case Variant::PrsEven:
      if (p != 2 || r % 2 == 0 || s % 2 == 0) fail("p = 2 and r, s odd");
      break;
    case Variant::PS: {
      const bool rp = r == p && nt::is_prime(s) && s != p;
      const bool sp = s == p && nt::is_prime(r) && r != p;
      if (!rp && !sp) fail("one of r, s equal to p and the other a prime different from p");
      break;
    }
  }
}

struct Built {
  std::uint64_t L = 0, M = 0;
  std::optional<CurveModel> C, D;
  IsoMap iso_L, iso_M;
};

Elem root_in(const FieldPtr& ext, Elem v, std::uint64_t n) {
  const auto rts = ff::nth_roots(*ext, v, n);
  if (rts.empty()) throw Error(ErrorCode::PreconditionFailed, "missing root in " + ext->name());
  return rts.front();
}

}  // namespace

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::PrsOdd:
      return "PrsOdd";
    case Variant::PrsEven:
      return "PrsEven";
    case Variant::PS:
      return "PS";
  }
  return "?";
}

Variant variant_from_name(const std::string& name) {
  std::string n;
  for (char ch : name) n.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (n == "prsodd") return Variant::PrsOdd;
  if (n == "prseven") return Variant::PrsEven;
  if (n == "ps") return Variant::PS;
  throw Error(ErrorCode::InvalidInput, "unknown variant '" + name + "' (prsodd, prseven, ps)");
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Skipped:
      return "skipped";
  }
  return "?";
}

Variant select_variant(std::uint64_t p, std::uint64_t r, std::uint64_t s) {
  if (!nt::is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (r < 2 || s < 2) throw Error(ErrorCode::InvalidInput, "r and s must exceed 1");
  if (!is_prime_to(r, s)) throw Error(ErrorCode::ModuliNotCoprime, "r and s must be coprime");
  if ((r == p && nt::is_prime(s)) || (s == p && nt::is_prime(r))) return Variant::PS;
  if (p != 2 && r % p != 0 && s % p != 0) return Variant::PrsOdd;
  if (p == 2 && r % 2 == 1 && s % 2 == 1) return Variant::PrsEven;
  throw Error(ErrorCode::UnsupportedCombination,
              "p divides rs with a composite cofactor (p=" + std::to_string(p) + ", r=" + std::to_string(r) +
                  ", s=" + std::to_string(s) + ")");
}

std::uint64_t choose_q(Variant v, std::uint64_t p, std::uint64_t r, std::uint64_t s) {
  std::uint32_t k = 0;
  switch (v) {
    case Variant::PrsOdd:
      return smallest_power(p, 4 * r * s, k);
    case Variant::PrsEven:
      return smallest_power(4, r * s, k);
    case Variant::PS:
      return smallest_power(p, r == p ? s : r, k);
  }
  return 0;
}

std::uint64_t TwistPairBundle::genus() const {
  if (params.variant == Variant::PS) return (params.q - 1) * (M_degree - 1) / 2;
  return L_degree * M_degree - 1;
}

TwistPairBundle construct(std::uint64_t p, std::uint64_t r, std::uint64_t s, std::optional<Variant> variant) {
  const Variant v = variant ? *variant : select_variant(p, r, s);
  if (variant) {
    if (!nt::is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (r < 2 || s < 2) throw Error(ErrorCode::InvalidInput, "r and s must exceed 1");
    if (!is_prime_to(r, s)) throw Error(ErrorCode::ModuliNotCoprime, "r and s must be coprime");
  }
  check_variant(v, p, r, s);

  ConstructionParams par;
  par.p = p;
  par.r = r;
  par.s = s;
  par.variant = v;
  std::uint64_t R = r, S = s;
  if ((v == Variant::PrsOdd && r % 2 == 0) || (v == Variant::PS && s == p)) {
    std::swap(R, S);
    par.swapped = true;
  }
  par.q = choose_q(v, p, R, S);
  const FieldPtr K = ff::build_field(p, degree_of(p, par.q), kArithmeticFieldLimit);
  const Field& F = *K;
  const Elem a = ff::primitive_element(F);
  par.a = a;
  auto ext = [&](std::uint64_t d) { return ff::build_field(p, F.k() * static_cast<std::uint32_t>(d), kArithmeticFieldLimit); };

  Built bl;
  bl.L = R;
  bl.M = S;
  switch (v) {
    case Variant::PrsOdd: {
      const std::uint64_t rs = R * S, two_s = 2 * S;
      const bool s_odd = S % 2 == 1;
      const std::int64_t ri = 1, rj = -1, si = s_odd ? as_signed(S + 1) : 1;
      par.i = as_signed(ff::crt({ri, si}, {R, two_s}));
      par.j = as_signed(ff::crt({rj, si}, {R, two_s}));
      auto poly = [&](Elem c0) {
        std::vector<Elem> co(2 * rs + 1, 0);
        co[0] = c0;
        co[2 * rs] = 1;
        return ff::Poly(K, co);
      };
      bl.C = CurveModel::superelliptic(poly(F.pow(a, std::uint64_t(par.i))));
      bl.D = CurveModel::superelliptic(poly(F.pow(a, std::uint64_t(par.j))));

      const FieldPtr Lf = ext(R), Mf = ext(S);
      const Elem aL = ff::embed(K, Lf).apply(a), aM = ff::embed(K, Mf).apply(a);
      const Elem eL = root_in(Lf, aL, R);
      const Elem cL = Lf->pow_signed(eL, (par.j - par.i) / as_signed(two_s));
      const Elem dL = Lf->pow(cL, rs);
      bl.iso_L = IsoMap::make(Lf, cL, 0, 0, 1, dL, static_cast<std::uint32_t>(rs));

      const Elem eM = root_in(Mf, aM, S);
      const Elem cM = Mf->pow_signed(eM, (par.j + par.i) / as_signed(2 * R));
      const Elem dM = Mf->pow_signed(eM, as_signed(S) * par.j / 2);
      bl.iso_M = IsoMap::make(Mf, 0, cM, 1, 0, dM, static_cast<std::uint32_t>(rs));

      par.derived = {{"e_L", ff::elem_to_json(*Lf, eL)}, {"c_L", ff::elem_to_json(*Lf, cL)},
                     {"d_L", ff::elem_to_json(*Lf, dL)}, {"e_M", ff::elem_to_json(*Mf, eM)},
                     {"c_M", ff::elem_to_json(*Mf, cM)}, {"d_M", ff::elem_to_json(*Mf, dM)},
                     {"minus_one_is_2rs_power", ff::is_mth_power(F, F.neg(1), 2 * rs)},
                     {"has_4rs_roots_of_unity", (par.q - 1) % (4 * rs) == 0}};
      break;
    }
    case Variant::PrsEven: {
      const std::uint64_t rs = R * S;
      par.m = as_signed(ff::crt({-1, 1}, {R, S}));
      const Elem am = F.pow(a, std::uint64_t(par.m));
      bl.C = CurveModel::as_rational(K, a, rs);
      bl.D = CurveModel::as_rational(K, am, rs);

      const FieldPtr Lf = ext(R), Mf = ext(S);
      const Elem eL = root_in(Lf, ff::embed(K, Lf).apply(a), R);
      const Elem cL = Lf->pow(eL, std::uint64_t(par.m - 1) / S);
      bl.iso_L = IsoMap::make(Lf, cL, 0, 0, 1, 1, 0);

      const Elem eM = root_in(Mf, ff::embed(K, Mf).apply(a), S);
      const Elem cM = Mf->pow(eM, std::uint64_t(par.m + 1) / R);
      const auto omegas = ff::solve_artin_schreier(*Mf, 1);
      if (omegas.empty()) throw Error(ErrorCode::PreconditionFailed, "omega^2 + omega = 1 has no root");
      bl.iso_M = IsoMap::make(Mf, 0, cM, 1, 0, 1, 0, {omegas.front()});

      par.derived = {{"e_L", ff::elem_to_json(*Lf, eL)}, {"c_L", ff::elem_to_json(*Lf, cL)},
                     {"e_M", ff::elem_to_json(*Mf, eM)}, {"c_M", ff::elem_to_json(*Mf, cM)},
                     {"omega", ff::elem_to_json(*Mf, omegas.front())}};
      break;
    }
    case Variant::PS: {
      bl.C = CurveModel::as_additive(K, par.q, S, 1);
      bl.D = CurveModel::as_additive(K, par.q, S, a);
      const FieldPtr Lf = ext(R), Mf = ext(S);
      const Elem aL = ff::embed(K, Lf).apply(a);
      const auto es = ff::solve_additive(*Lf, par.q, Lf->sub(aL, 1));
      if (es.empty()) throw Error(ErrorCode::PreconditionFailed, "e^q - e = a - 1 has no root");
      bl.iso_L = IsoMap::make(Lf, 1, 0, 0, 1, aL, 0, {es.front()});
      const Elem eM = root_in(Mf, ff::embed(K, Mf).apply(a), S);
      bl.iso_M = IsoMap::make(Mf, Mf->inv(eM), 0, 0, 1, 1, 0);
      par.derived = {{"e_L", ff::elem_to_json(*Lf, es.front())}, {"e_M", ff::elem_to_json(*Mf, eM)}};
      break;
    }
  }
  if (*bl.C == *bl.D) throw Error(ErrorCode::PreconditionFailed, "C and D coincide");
  return TwistPairBundle{K, *bl.C, *bl.D, bl.L, bl.M, bl.iso_L, bl.iso_M, par};
}

std::optional<Elem> kummer_obstruction(const Field& N, Elem a, std::int64_t diff, std::uint64_t power,
                                       std::uint64_t bound) {
  if (a == 0) throw Error(ErrorCode::ZeroElement, "a must be nonzero");
  if (N.q() > bound) throw Error(ErrorCode::FieldTooLarge, N.name() + " exceeds the sweep bound");
  const Elem target = N.pow_signed(a, diff);
  for (Elem c = 1; c < N.q(); ++c)
    if (N.pow(c, power) == target) return c;
  return std::nullopt;
}

bool VerificationReport::pass() const {
  return std::none_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.status == Status::Fail; });
}

bool VerificationReport::fully_green() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.status == Status::Pass; });
}

json VerificationReport::to_json() const {
  json vs = json::array();
  for (const auto& v : verdicts) vs.push_back({{"name", v.name}, {"status", status_name(v.status)}, {"detail", v.detail}});
  return {{"verdicts", vs}, {"pass", pass()}, {"fully_green", fully_green()}};
}

namespace {

// Kummer test over N: exhaustive when N is enumerable, by root extraction otherwise.
json kummer_check(const FieldPtr& N, Elem aN, std::int64_t diff, std::uint64_t power, std::uint64_t bound,
                  bool& solvable) {
  json out{{"exponent_diff", diff}, {"power", power}};
  if (N->q() <= bound) {
    const auto c = kummer_obstruction(*N, aN, diff, power, bound);
    solvable = c.has_value();
    out["method"] = "sweep";
    out["swept"] = N->q() - 1;
    if (c) out["witness"] = ff::elem_to_json(*N, *c);
  } else {
    const auto rts = ff::nth_roots(*N, N->pow_signed(aN, diff), power);
    solvable = !rts.empty();
    out["method"] = "root-extraction";
    if (solvable) out["witness"] = ff::elem_to_json(*N, rts.front());
  }
  out["solvable"] = solvable;
  return out;
}

}  // namespace

VerificationReport verify_bundle(const TwistPairBundle& b, std::uint32_t max_ext, int workers, std::uint64_t bound) {
  VerificationReport rep;
  const auto& par = b.params;
  const FieldPtr& K = b.K;
  const auto kdeg = K->k();
  if (max_ext == 0) max_ext = static_cast<std::uint32_t>(std::max(b.L_degree, b.M_degree));

  {
    Verdict v{"isomorphisms", Status::Pass, json::object()};
    for (const auto& [name, m, deg] : {std::tuple{"iso_L", &b.iso_L, b.L_degree}, std::tuple{"iso_M", &b.iso_M, b.M_degree}}) {
      json d{{"degree", deg}, {"field", m->field->name()}};
      if (m->field->p() != K->p() || m->field->k() != kdeg * deg) {
        d["error"] = "map field is not the degree-" + std::to_string(deg) + " extension";
        v.status = Status::Fail;
      } else {
        const auto chk = curves::check_iso_detail(*m, b.C, b.D);
        d["symbolic"] = chk.symbolic;
        d["pointwise"] = chk.pointwise;
        d["points_checked"] = chk.points_checked;
        if (!chk.ok()) v.status = Status::Fail;
      }
      v.detail[name] = d;
    }
    rep.verdicts.push_back(v);
  }

  {
    Verdict v{"subextensions", Status::Pass, json::array()};
    std::vector<std::uint64_t> ds;
    for (auto deg : {b.L_degree, b.M_degree})
      for (auto d : nt::divisors(deg))
        if (d < deg) ds.push_back(d);
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    for (auto d : ds) {
      const FieldPtr N = ff::build_field(K->p(), kdeg * static_cast<std::uint32_t>(d), kArithmeticFieldLimit);
      json e{{"d", d}, {"field", N->name()}};
      bool nonisomorphic = false;
      if (par.variant == Variant::PS) {
        if (N->q() > bound) {
          e["status"] = "field too large";
          v.status = v.status == Status::Fail ? Status::Fail : Status::Skipped;
          v.detail.push_back(e);
          continue;
        }
        const auto nc = curves::count_points(b.C, static_cast<std::uint32_t>(d), workers, bound);
        const auto nd = curves::count_points(b.D, static_cast<std::uint32_t>(d), workers, bound);
        e["criterion"] = "point counts";
        e["counts"] = {nc, nd};
        e["comparative"] = curves::count_is_comparative(b.C);
        nonisomorphic = nc != nd;
      } else {
        const Elem aN = ff::embed(K, N).apply(par.a);
        const std::uint64_t rs = b.L_degree * b.M_degree;
        std::int64_t d1, d2;
        std::uint64_t power;
        if (par.variant == Variant::PrsOdd) {
          d1 = par.j - par.i;
          d2 = par.j + par.i;
          power = 2 * rs;
        } else {
          d1 = par.m - 1;
          d2 = par.m + 1;
          power = rs;
        }
        bool s1 = false, s2 = false;
        e["criterion"] = "kummer";
        e["shape_cx"] = kummer_check(N, aN, d1, power, bound, s1);
        e["shape_c_over_x"] = kummer_check(N, aN, d2, power, bound, s2);
        nonisomorphic = !s1 && !s2;
      }
      e["nonisomorphic"] = nonisomorphic;
      if (!nonisomorphic) v.status = Status::Fail;
      v.detail.push_back(e);
    }
    rep.verdicts.push_back(v);
  }

  {
    Verdict v{"fingerprints", Status::Pass, json::array()};
    std::vector<std::uint64_t> ds;
    for (std::uint64_t d = 1; d <= max_ext; ++d)
      if (d % b.L_degree == 0 || d % b.M_degree == 0) ds.push_back(d);
    std::size_t counted = 0;
    for (auto d : ds) {
      const auto qd = nt::bounded_pow(K->q(), d, bound);
      json e{{"d", d}};
      if (!qd) {
        e["status"] = "field too large";
        v.detail.push_back(e);
        continue;
      }
      const auto nc = curves::count_points(b.C, static_cast<std::uint32_t>(d), workers, bound);
      const auto nd = curves::count_points(b.D, static_cast<std::uint32_t>(d), workers, bound);
      e["counts"] = {nc, nd};
      e["agree"] = nc == nd;
      if (nc != nd) v.status = Status::Fail;
      ++counted;
      v.detail.push_back(e);
    }
    if (counted == 0 && v.status != Status::Fail) v.status = Status::Skipped;
    rep.verdicts.push_back(v);
  }

  {
    const std::uint64_t g = b.genus();
    const std::uint64_t gc = b.C.genus(), gd = b.D.genus();
    rep.verdicts.push_back(Verdict{"genus", g == gc && g == gd ? Status::Pass : Status::Fail,
                                   json{{"formula", g}, {"C", gc}, {"D", gd}}});
  }
  return rep;
}

json TwistPairBundle::to_json() const {
  const auto& F = *K;
  json pj{{"p", params.p},
          {"r", params.r},
          {"s", params.s},
          {"variant", variant_name(params.variant)},
          {"swapped", params.swapped},
          {"q", params.q},
          {"a", ff::elem_to_json(F, params.a)},
          {"derived", params.derived}};
  if (params.variant == Variant::PrsOdd) {
    pj["i"] = params.i;
    pj["j"] = params.j;
  }
  if (params.variant == Variant::PrsEven) pj["m"] = params.m;
  return json{{"K", ff::to_json(F.spec())},
              {"C", C.to_json()},
              {"D", D.to_json()},
              {"L_degree", L_degree},
              {"M_degree", M_degree},
              {"iso_L", iso_L.to_json()},
              {"iso_M", iso_M.to_json()},
              {"genus", genus()},
              {"params", pj}};
}

TwistPairBundle TwistPairBundle::from_json(const json& j) {
  try {
    const FieldPtr K = ff::field_from_spec(ff::spec_from_json(j.at("K")), kArithmeticFieldLimit);
    const auto& pj = j.at("params");
    ConstructionParams par;
    par.p = pj.at("p").get<std::uint64_t>();
    par.r = pj.at("r").get<std::uint64_t>();
    par.s = pj.at("s").get<std::uint64_t>();
    par.variant = variant_from_name(pj.at("variant").get<std::string>());
    par.swapped = pj.at("swapped").get<bool>();
    par.q = pj.at("q").get<std::uint64_t>();
    par.a = ff::elem_from_json(*K, pj.at("a"));
    if (pj.contains("i")) par.i = pj.at("i").get<std::int64_t>();
    if (pj.contains("j")) par.j = pj.at("j").get<std::int64_t>();
    if (pj.contains("m")) par.m = pj.at("m").get<std::int64_t>();
    if (pj.contains("derived")) par.derived = pj.at("derived");
    if (par.q != K->q()) throw Error(ErrorCode::InvalidInput, "q does not match K");
    TwistPairBundle b{K,
                      CurveModel::from_json(j.at("C")),
                      CurveModel::from_json(j.at("D")),
                      j.at("L_degree").get<std::uint64_t>(),
                      j.at("M_degree").get<std::uint64_t>(),
                      IsoMap::from_json(j.at("iso_L")),
                      IsoMap::from_json(j.at("iso_M")),
                      par};
    if (std::gcd(b.L_degree, b.M_degree) != 1) throw Error(ErrorCode::InvalidInput, "L and M degrees not coprime");
    return b;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("bad bundle JSON: ") + e.what());
  }
}

}  // namespace cotwist::constructions
