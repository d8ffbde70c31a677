#include <algorithm>
#include <set>

#include "common.hpp"

namespace cotwist::casebook {

using namespace detail;

CaseReport genus2_f5_catalog(int workers) {
  const auto K = ff::build_field(5, 1);
  const std::vector<std::pair<std::string, std::vector<std::int64_t>>> table{
      {"x^5-x", {0, -1, 0, 0, 0, 1}},     {"x^5-2x", {0, -2, 0, 0, 0, 1}},  {"x^5+x", {0, 1, 0, 0, 0, 1}},
      {"x^5-x+1", {1, -1, 0, 0, 0, 1}},   {"x^5-x+2", {2, -1, 0, 0, 0, 1}}, {"x^6-2", {-2, 0, 0, 0, 0, 0, 1}},
      {"x^6-x+1", {1, -1, 0, 0, 0, 0, 1}}, {"x^6-x+2", {2, -1, 0, 0, 0, 0, 1}}};
  std::vector<CurveModel> cs;
  for (const auto& [name, c] : table) cs.push_back(CurveModel::superelliptic(poly(K, c)));
  const auto n = cs.size();
  CaseReport rep{"genus2-f5", {{"p", 5}, {"q", 5}}, {}};

  {
    bool none = true;
    std::uint64_t swept = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto s = curves::hyperelliptic_search(cs[i], cs[j], K, workers);
        none = none && !s.witness;
        swept += s.candidates;
      }
    rep.add("f5.pairwise_nonisomorphic", "the eight curves are pairwise nonisomorphic over F5", none,
            {{"pairs", n * (n - 1) / 2}, {"candidates_swept", swept}});
  }

  {
    json auts = json::object();
    for (std::size_t i = 0; i < n; ++i)
      auts[table[i].first] = curves::rational_automorphisms(cs[i], K, workers).maps.size();
    const auto mass = curves::mass_check(cs, K, workers);
    rep.add("f5.mass", "sum of 1/#Aut over the eight curves equals 1", mass == curves::Rational{1, 1},
            {{"mass", mass.str()}, {"aut_orders", auts}});
  }

  const auto K25 = ext(K, 2);
  std::vector<std::pair<std::size_t, std::size_t>> iso25;
  {
    json pairs = json::array();
    bool witnesses_ok = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto s = curves::hyperelliptic_search(cs[i], cs[j], K25, workers);
        if (!s.witness) continue;
        iso25.emplace_back(i, j);
        witnesses_ok = witnesses_ok && curves::check_iso(*s.witness, cs[i], cs[j]);
        pairs.push_back({{"pair", {table[i].first, table[j].first}}, {"map", s.witness->to_json()}});
      }
    rep.add("f5.f25_pairs", "complete F25 sweep of every pair; each found isomorphism verified", witnesses_ok,
            {{"isomorphic_pairs", pairs}});
  }

  {
    // Isomorphic curves have equal Frobenius orbit structure on Weierstrass points.
    json orbits = json::object();
    std::vector<std::vector<std::uint64_t>> o2(n), o3(n);
    for (std::size_t i = 0; i < n; ++i) {
      o2[i] = weierstrass_orbits(cs[i], 2);
      o3[i] = weierstrass_orbits(cs[i], 3);
      orbits[table[i].first] = {{"F25", o2[i]}, {"F125", o3[i]}};
    }
    std::vector<std::pair<std::size_t, std::size_t>> compatible, survivors;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (o2[i] == o2[j] && o3[i] == o3[j]) compatible.emplace_back(i, j);
    for (const auto& pr : iso25)
      if (std::find(compatible.begin(), compatible.end(), pr) != compatible.end()) survivors.push_back(pr);
    json surv = json::array(), comp = json::array();
    for (auto [i, j] : compatible) comp.push_back({table[i].first, table[j].first});
    for (auto [i, j] : survivors) surv.push_back({table[i].first, table[j].first});
    const bool unique = survivors.size() == 1 && survivors[0] == std::pair<std::size_t, std::size_t>{3, 4};
    rep.add("f5.weierstrass_filter",
            "among F25-isomorphic pairs only {x^5-x+1, x^5-x+2} has compatible Weierstrass orbits over F125", unique,
            {{"orbits", orbits}, {"weierstrass_compatible", comp}, {"survivors", surv}});
  }

  {
    bool ok = true;
    const auto row = count_pair(cs[3], cs[4], 3, ok, workers);
    rep.add("f5.f125_counts", "x^5-x+1 and x^5-x+2 have different point counts over F125", ok && row["C"] != row["D"],
            row);
  }
  return rep;
}

CaseReport genus2bigger_family(std::uint64_t q, Elem a, int workers) {
  const auto [p, k] = prime_power(q);
  if (p != 5 || k % 2 == 0) throw Error(ErrorCode::PreconditionFailed, "q must be an odd power of 5");
  if (q != 5) throw Error(ErrorCode::FieldTooLarge, "complete sweeps over F_q and F_q^2 are run for q = 5 only");
  const auto K = field_of_size(q);
  const auto& F = *K;
  if (a == 0) a = first_trace_nonzero(F);
  if (a >= F.q() || F.absolute_trace(a) == 0) throw Error(ErrorCode::PreconditionFailed, "a must have nonzero trace");
  const auto C = CurveModel::superelliptic(Poly(K, {a, F.neg(1), 0, 0, 0, 1}));
  const auto D = CurveModel::superelliptic(Poly(K, {F.add(a, a), F.neg(1), 0, 0, 0, 1}));
  const auto X = CurveModel::superelliptic(Poly(K, {0, F.neg(1), 0, 0, 0, 1}));
  CaseReport rep{"genus2bigger", {{"p", p}, {"q", q}, {"a", ff::elem_to_json(F, a)}}, {}};

  const auto s1 = curves::hyperelliptic_search(C, D, K, workers);
  rep.add("bigger.base_nonisomorphic", "complete sweep finds no isomorphism over the base", !s1.witness, search_json(s1));

  const auto K2 = ext(K, 2);
  const auto s2 = curves::hyperelliptic_search(C, D, K2, workers);
  rep.add("bigger.quadratic_witness", "complete sweep over the quadratic extension finds a verified isomorphism",
          s2.witness && curves::check_iso(*s2.witness, C, D), search_json(s2));

  const auto K5 = ext(K, 5);
  const auto& F5 = *K5;
  const Elem a5 = ff::embed(K, K5).apply(a);
  const auto bs = ff::solve_artin_schreier(F5, a5);
  json trans;
  bool trans_ok = !bs.empty();
  if (trans_ok) {
    const Elem b = bs.front();
    const auto fwd = IsoMap::make(K5, 1, F5.neg(b), 0, 1, 1, 3);  // C -> D
    const auto back = IsoMap::make(K5, 1, b, 0, 1, 1, 3);         // D -> C
    const auto d1 = curves::check_iso_detail(fwd, C, D), d2 = curves::check_iso_detail(back, D, C);
    trans_ok = d1.ok() && d2.ok();
    trans = {{"b", ff::elem_to_json(F5, b)},
             {"C_to_D", fwd.to_json()},
             {"D_to_C", back.to_json()},
             {"symbolic", d1.symbolic && d2.symbolic}};
  }
  rep.add("bigger.translation", "x -> x + b with b^5 - b = a relates C and D over the degree-5 extension", trans_ok, trans);

  // C -> X by x -> x + b; its cocycle m^phi o m^-1 is translation by b^q - b.
  json coc = json::array();
  bool coc_ok = true;
  const auto tr = F5.from_int(std::int64_t(F.absolute_trace(a)));
  for (std::uint64_t mult : {1u, 2u}) {
    const Elem c = F5.scale(mult, a5);
    const auto roots = ff::solve_artin_schreier(F5, c);
    if (roots.empty()) {
      coc_ok = false;
      continue;
    }
    const auto m = IsoMap::make(K5, 1, roots.front(), 0, 1, 1, 3);
    const auto& twist = mult == 1 ? C : D;
    const bool iso = curves::check_iso(m, twist, X);
    const auto xi = m.frobenius(q_power(F)).compose(m.inverse());
    const auto want = IsoMap::make(K5, 1, F5.scale(mult, tr), 0, 1, 1, 3);
    coc_ok = coc_ok && iso && xi == want;
    coc.push_back({{"twist", mult == 1 ? "C" : "D"}, {"cocycle", xi.normalized().to_json()}, {"translation", mult * F.absolute_trace(a) % 5}});
  }
  rep.add("bigger.cocycles", "the twists correspond to translations by Tr(a) and 2 Tr(a) on y^2 = x^5 - x", coc_ok, coc);
  return rep;
}

CaseReport s5_case(std::uint64_t q, int workers) {
  const auto [p, k] = prime_power(q);
  if (p != 5 || k % 2 == 1) throw Error(ErrorCode::PreconditionFailed, "q must be an even power of 5");
  if (q != 25) throw Error(ErrorCode::FieldTooLarge, "only q = 25 is swept");
  const auto K = field_of_size(q);
  const auto& F = *K;
  const Elem g = F.generator();
  const auto C = CurveModel::scaled_sextic(K, 1, g);
  const auto D = CurveModel::scaled_sextic(K, g, g);
  CaseReport rep{"s5", {{"p", p}, {"q", q}, {"g", ff::elem_to_json(F, g)}}, {}};

  sextic_pair_claims(rep, K, g, "s5", workers);

  // Both are twists of y^2 = x^5 - x: C, D -> y^2 = x^6 + 1 by scaling x,
  // then a Moebius map over F_q onto y^2 = x^5 - x.
  const auto X6 = CurveModel::superelliptic(Poly(K, {1, 0, 0, 0, 0, 0, 1}));
  const auto X = CurveModel::superelliptic(Poly(K, {0, F.neg(1), 0, 0, 0, 1}));
  const Poly f6 = X6.double_cover_f(K), f5 = X.double_cover_f(K);
  std::optional<std::pair<std::array<Elem, 4>, Elem>> mob;
  std::uint64_t swept = 0;
  for (std::uint64_t idx = 0; idx < curves::pgl2_size(q) && !mob; ++idx, ++swept) {
    const auto m = curves::pgl2_element(F, idx);
    if (auto lam = pullback_scale(f6, f5, m)) mob = {m, *lam};
  }
  json geo{{"mobius_candidates", swept}};
  bool geo_ok = mob.has_value();
  if (mob) {
    const auto L = ext(K, 6);
    const auto& FL = *L;
    const auto emb = ff::embed(K, L);
    const Elem gL = emb.apply(g);
    const auto rho = ff::nth_roots(FL, gL, 6).front();
    const Elem rho3 = FL.pow(rho, 3);
    const auto toX6_C = IsoMap::make(L, 1, 0, 0, rho, 1, 3);
    const auto toX6_D = IsoMap::make(L, 1, 0, 0, rho, rho3, 3);
    const auto& [m, lam] = *mob;
    const Elem e = *FL.sqrt(emb.apply(lam));
    const auto toX = IsoMap::make(L, emb.apply(m[0]), emb.apply(m[1]), emb.apply(m[2]), emb.apply(m[3]), e, 3);
    const auto cX = toX.compose(toX6_C), dX = toX.compose(toX6_D);
    const bool steps = curves::check_iso(toX6_C, C, X6) && curves::check_iso(toX6_D, D, X6) && curves::check_iso(toX, X6, X);
    const bool whole = curves::check_iso(cX, C, X) && curves::check_iso(dX, D, X);
    geo_ok = steps && whole;
    geo["field_degree"] = FL.k();
    geo["C_to_X"] = cX.to_json();
    geo["D_to_X"] = dX.to_json();
  }
  rep.add("s5.twists_of_x5_minus_x", "C and D are geometrically isomorphic to y^2 = x^5 - x, by explicit composed maps",
          geo_ok, geo);
  return rep;
}

CaseReport char3_case(std::uint64_t q) {
  const auto [p, k] = prime_power(q);
  if (p != 3 || q > 729) throw Error(ErrorCode::PreconditionFailed, "q must be 3^d <= 3^6");
  const auto K = field_of_size(q);
  const auto& F = *K;
  std::vector<Elem> ts;
  for (Elem t = 1; t < q; ++t)
    if (t != F.neg(1)) ts.push_back(t);
  if (q > 81) {
    std::vector<Elem> sample;
    for (std::size_t i = 0; i < 20; ++i) sample.push_back(ts[i * ts.size() / 20]);
    ts = std::move(sample);
  }
  CaseReport rep{"char3", {{"p", 3}, {"q", q}, {"t_count", ts.size()}}, {}};

  std::vector<IsoMap> maps;
  for (int s : {1, -1})
    for (std::int64_t a = 0; a < 3; ++a)
      for (int e : {1, -1}) maps.push_back(IsoMap::make(K, F.from_int(s), F.from_int(a), 0, 1, F.from_int(e), 3));
  std::set<std::string> keys;
  for (const auto& m : maps) keys.insert(m.key());
  const auto closed = curves::closure_of_maps(maps, "char3");
  rep.add("char3.maps_form_group", "the 12 maps (+-x + a, +-y) are distinct and closed under composition",
          keys.size() == 12 && closed.group->order() == 12, {{"closure_order", closed.group->order()}});

  json failures = json::array(), checked = json::array();
  for (Elem t : ts) {
    const Elem cube_root = F.pow(t, q / 3);  // inverse Frobenius
    // (x^3 - x)^2 - t^(1/3) = x^6 - 2x^4 + x^2 - t^(1/3)
    const Poly f(K, {F.neg(cube_root), 0, 1, 0, F.neg(F.from_int(2)), 0, 1});
    const auto X = CurveModel::superelliptic(f);
    std::size_t ok = 0;
    for (const auto& m : maps) ok += curves::check_iso(m, X, X);
    checked.push_back(ff::elem_to_json(F, t));
    if (ok != maps.size() || F.pow(cube_root, 3) != t) failures.push_back({{"t", ff::elem_to_json(F, t)}, {"verified", ok}});
  }
  rep.add("char3.twelve_automorphisms", "all 12 maps are rational automorphisms of y^2 = (x^3 - x)^2 - t^(1/3)",
          failures.empty(), {{"t_values", checked}, {"failures", failures}});
  return rep;
}

}  // namespace cotwist::casebook
