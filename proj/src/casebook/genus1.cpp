#include "common.hpp"

namespace cotwist::casebook {

using namespace detail;

CaseReport genus1_char3(std::uint64_t q, int workers) {
  const auto [p, k] = prime_power(q);
  if (p != 3 || k % 2 == 0 || q > 10'000) throw Error(ErrorCode::PreconditionFailed, "q must be 3^d, d odd, q <= 10^4");
  const auto K = field_of_size(q);
  const auto& F = *K;
  const Elem a = first_trace_nonzero(F);
  const auto C = CurveModel::weierstrass_short(K, F.neg(1), F.neg(a));
  const auto D = CurveModel::weierstrass_short(K, F.neg(1), a);

  CaseReport rep{"genus1-char3", {{"p", p}, {"q", q}, {"a", ff::elem_to_json(F, a)}}, {}};

  bool oracle_ok = true;
  const json base_counts = count_pair(C, D, 1, oracle_ok, workers);
  rep.add("genus1.counts_base", "point counts over the base field, fast path against enumeration oracle", oracle_ok,
          base_counts);

  const auto s1 = elliptic_search(C, D, K);
  rep.add("genus1.base_nonisomorphic", "no Weierstrass coordinate change over the base carries C to D",
          !s1.witness.has_value(), search_json(s1));

  // Quadratic map (x, y) -> (-x, i y).
  const auto K2 = ext(K, 2);
  const auto& F2 = *K2;
  const auto i = F2.sqrt(F2.neg(1));
  bool quad_ok = i.has_value();
  json quad;
  if (i) {
    const auto m = IsoMap::make(K2, F2.neg(1), 0, 0, 1, *i, 0);
    quad_ok = curves::check_iso(m, C, D);
    quad = {{"map", m.to_json()}};
  }
  if (nt::bounded_pow(q, 2, kEllipticSearchLimit)) {
    const auto s2 = elliptic_search(C, D, K2);
    quad["search"] = search_json(s2);
    quad_ok = quad_ok && s2.witness && curves::check_iso(*s2.witness, C, D);
  }
  rep.add("genus1.quadratic_witness", "(x, y) -> (-x, i y) with i^2 = -1 is an isomorphism over the quadratic extension",
          quad_ok, quad);

  // Cubic map (x, y) -> (x + alpha, y) with alpha^3 - alpha = a.
  const auto K3 = ext(K, 3);
  const auto& F3 = *K3;
  const Elem a3 = ff::embed(K, K3).apply(a);
  const auto alphas = ff::solve_artin_schreier(F3, a3);
  bool cub_ok = !alphas.empty();
  json cub;
  if (cub_ok) {
    const auto m = IsoMap::make(K3, 1, alphas.front(), 0, 1, 1, 0);
    cub_ok = curves::check_iso(m, C, D);
    cub = {{"alpha", ff::elem_to_json(F3, alphas.front())}, {"map", m.to_json()}};
  }
  if (nt::bounded_pow(q, 3, kEllipticSearchLimit)) {
    const auto s3 = elliptic_search(C, D, K3);
    cub["search"] = search_json(s3);
    cub_ok = cub_ok && s3.witness && curves::check_iso(*s3.witness, C, D);
  }
  rep.add("genus1.cubic_witness", "(x, y) -> (x + alpha, y) with alpha^3 - alpha = a is an isomorphism over the cubic extension",
          cub_ok, cub);

  bool agree = true, ok = true;
  json ext_counts = json::array();
  for (std::uint32_t d : {2u, 3u}) {
    if (!nt::bounded_pow(q, d, default_config().max_field)) continue;
    auto row = count_pair(C, D, d, ok, workers);
    agree = agree && row["C"] == row["D"];
    ext_counts.push_back(std::move(row));
  }
  rep.add("genus1.counts_agree", "point counts agree over the quadratic and cubic extensions", agree && ok, ext_counts);
  return rep;
}

CaseReport genus1_char2(std::uint32_t d, int workers) {
  if (d % 2 == 0) throw Error(ErrorCode::PreconditionFailed, "exponent must be odd");
  if (!nt::bounded_pow(2, 3 * std::uint64_t(d), 10'000'000))
    throw Error(ErrorCode::FieldTooLarge, "2^(3d) exceeds 10^7");
  const auto K = ff::build_field(2, d);
  const auto K3 = ext(K, 3);
  const std::vector<CurveModel> E{CurveModel::weierstrass_char2(K, 0, 0), CurveModel::weierstrass_char2(K, 1, 0),
                                  CurveModel::weierstrass_char2(K, 1, 1)};
  CaseReport rep{"genus1-char2", {{"p", 2}, {"q", K->q()}, {"d", d}}, {}};

  bool ok = true;
  json counts = json::array();
  std::vector<std::uint64_t> n1, n3;
  for (const auto& e : E) {
    const auto c1 = curves::count_points(e, 1, workers), c3 = curves::count_points(e, 3, workers);
    const auto o1 = curves::count_points_tabulated(e, 1), o3 = curves::count_points_tabulated(e, 3);
    ok = ok && c1 == o1 && c3 == o3;
    n1.push_back(c1);
    n3.push_back(c3);
    counts.push_back({{"curve", e.describe()}, {"base", c1}, {"cubic", c3}});
  }
  rep.add("genus1.char2_counts", "point counts over the base and cubic extension match the tabulated oracle", ok, counts);

  for (const auto& [L, label] : {std::pair{K, std::string("base")}, std::pair{K3, std::string("cubic")}}) {
    bool none = true;
    json pairs = json::array();
    for (std::size_t i = 0; i < E.size(); ++i)
      for (std::size_t j = i + 1; j < E.size(); ++j) {
        const auto& n = label == "base" ? n1 : n3;
        json row{{"pair", {i + 1, j + 1}}, {"counts_separate", n[i] != n[j]}};
        if (L->q() <= kEllipticSearchLimit) {
          const auto s = elliptic_search(E[i], E[j], L);
          none = none && !s.witness;
          row["candidates"] = s.candidates;
          row["isomorphic"] = s.witness.has_value();
        } else {
          // Beyond the search range, distinct counts are the certificate.
          none = none && n[i] != n[j];
        }
        pairs.push_back(std::move(row));
      }
    rep.add("genus1.char2_distinct_" + label, "the three curves are pairwise nonisomorphic over the " + label + " field",
            none, pairs);
  }

  json auts = json::array();
  for (const auto& e : E) auts.push_back(curves::rational_automorphisms(e, K, workers).maps.size());
  const auto mass = curves::mass_check(E, K, workers);
  rep.add("genus1.char2_mass", "sum of 1/#Aut over pointed automorphisms equals 1", mass == curves::Rational{1, 1},
          {{"mass", mass.str()}, {"aut_orders", auts}});
  return rep;
}

CaseReport genus1_group_exclusions(int workers) {
  CaseReport rep{"genus1-groups", json::object(), {}};
  const auto sweep = [&](const std::string& spec, const std::string& anchor, const std::string& what) {
    const auto g = groups::parse_basic_group(spec);
    const h1::TwistedSetting st(g, groups::GroupAut::identity(g));
    const auto r = h1::find_pair_witnesses(st, 2, 3, 0, workers);
    const auto n = g->order();
    rep.add(anchor, what + ": no pair agrees exactly at degrees 2 and 3 under the trivial action",
            r.witnesses.empty() && r.pairs_swept == n * n,
            {{"group", g->label()}, {"order", n}, {"pairs_swept", r.pairs_swept}, {"witnesses", r.witnesses.size()}});
  };
  sweep("sl2:3", "genus1.exclusion_sl2", "SL2(F3)");
  sweep("c3c4", "genus1.exclusion_c3c4", "C3 x| C4");

  const auto ex = h1::dihedral_example(3, 2);
  const auto r = h1::find_pair_witnesses(*ex.setting, 3, 2, 0, workers);
  bool found = false;
  for (const auto& w : r.witnesses) found = found || (w.x == ex.x && w.y == ex.y);
  rep.add("genus1.positive_control", "the dihedral example of order 12 does produce a witness pair", found,
          {{"pairs_swept", r.pairs_swept}, {"witnesses", r.witnesses.size()}, {"x", ex.x}, {"y", ex.y}});
  return rep;
}

}  // namespace cotwist::casebook
