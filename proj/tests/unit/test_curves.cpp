#include <doctest.h>

#include <algorithm>
#include <set>

#include "cotwist/curves.hpp"

using namespace cotwist;
using namespace cotwist::curves;
using ff::build_field;
using ff::Field;

namespace {

Poly P(const FieldPtr& f, std::vector<std::int64_t> c) {
  std::vector<Elem> v;
  for (auto x : c) v.push_back(f->from_int(x));
  return Poly(f, v);
}

CurveModel hyper(const FieldPtr& f, std::vector<std::int64_t> c) { return CurveModel::superelliptic(P(f, std::move(c))); }

// Points of y^2 = f(x) over F_p by integer arithmetic only.
std::uint64_t brute_prime_count(std::uint64_t p, const std::vector<std::int64_t>& f) {
  auto ev = [&](std::int64_t x) {
    std::int64_t acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = ((acc * x + *it) % std::int64_t(p) + std::int64_t(p)) % std::int64_t(p);
    return acc;
  };
  std::uint64_t n = 0;
  for (std::uint64_t x = 0; x < p; ++x)
    for (std::uint64_t y = 0; y < p; ++y)
      if (std::int64_t(y * y % p) == ev(std::int64_t(x))) ++n;
  return n;
}

std::optional<Elem> mobius_apply(const Field& F, const std::array<Elem, 4>& m, Elem x) {
  const Elem den = F.add(F.mul(m[2], x), m[3]);
  if (den == 0) return std::nullopt;
  return F.div(F.add(F.mul(m[0], x), m[1]), den);
}

// Root sets of x^m - a and x^m - b in a splitting extension, compared under the map.
bool sends_roots(const FieldPtr& f, std::uint64_t m, Elem a, Elem b, const std::array<Elem, 4>& mm) {
  FieldPtr e;
  std::vector<Elem> ra, rb;
  const ff::SubfieldEmbedding* emb = nullptr;
  ff::SubfieldEmbedding hold;
  for (std::uint32_t k = 1; k <= 12; ++k) {
    e = build_field(f->p(), f->k() * k, kArithmeticFieldLimit);
    hold = ff::embed(f, e);
    emb = &hold;
    ra = ff::nth_roots(*e, emb->apply(a), m);
    rb = ff::nth_roots(*e, emb->apply(b), m);
    if (ra.size() == m && rb.size() == m) break;
  }
  REQUIRE(ra.size() == m);
  const std::array<Elem, 4> me{emb->apply(mm[0]), emb->apply(mm[1]), emb->apply(mm[2]), emb->apply(mm[3])};
  std::set<Elem> img;
  for (Elem r : ra) {
    const auto v = mobius_apply(*e, me, r);
    if (!v || !std::binary_search(rb.begin(), rb.end(), *v)) return false;
    img.insert(*v);
  }
  return img.size() == m;
}

IsoMap X(const FieldPtr& f, Elem a, Elem b, Elem c, Elem d, Elem e, std::uint32_t k, std::vector<Elem> h = {}) {
  return IsoMap::make(f, a, b, c, d, e, k, std::move(h));
}

}  // namespace

TEST_CASE("point counts: Artin-Schreier pair over F4") {
  const auto f4 = build_field(2, 2);
  const Elem a = f4->generator();
  const auto c = CurveModel::as_additive(f4, 4, 3, 1);
  const auto d = CurveModel::as_additive(f4, 4, 3, a);
  CHECK(count_points(c, 1) == 13);
  CHECK(count_points(d, 1) == 1);
  CHECK(count_points_naive(c, 1) == 13);
  CHECK(count_points_naive(d, 1) == 1);
  CHECK(count_points(c, 2) == count_points_naive(c, 2));
  CHECK(count_is_comparative(c));
  CHECK(c.genus() == 3);
}

TEST_CASE("point counts: genus-1 pair over F3") {
  const auto f3 = build_field(3, 1);
  const auto c = CurveModel::weierstrass_short(f3, f3->from_int(-1), f3->from_int(-1));
  const auto d = CurveModel::weierstrass_short(f3, f3->from_int(-1), 1);
  CHECK(count_points(c, 1) == 1);
  CHECK(count_points(d, 1) == 7);
  CHECK(brute_prime_count(3, {-1, -1, 0, 1}) + 1 == 1);
  CHECK(brute_prime_count(3, {1, -1, 0, 1}) + 1 == 7);
  for (std::uint32_t d2 : {2u, 3u}) CHECK(count_points(c, d2) == count_points(d, d2));
  CHECK(count_points(c, 2) == 7);
  CHECK(count_points(c, 3) == 28);
}

TEST_CASE("fast counts match pair enumeration") {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, std::uint32_t>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}}) {
    const auto f = build_field(p, k);
    const std::vector<std::vector<std::int64_t>> polys{{1, 0, 0, 0, 0, 0, 1}, {0, -1, 0, 0, 0, 1}, {2, 1, 0, 1},
                                                       {1, 2, 0, 1, 0, 3}, {-1, 2, -2, 0, -3, 1, 1}};
    for (const auto& cf : polys) {
      const Poly pf = P(f, cf);
      if (!ff::poly_discriminant_nonzero(pf) || pf.degree() < 3) continue;
      const auto c = CurveModel::superelliptic(pf);
      for (std::uint32_t d : {1u, 2u}) {
        if (nt::bounded_pow(f->q(), d, 100) == std::nullopt) continue;
        INFO(c.describe() << " d=" << d);
        CHECK(count_points(c, d, 3) == count_points_naive(c, d));
      }
      if (k == 1) CHECK(count_points(c, 1) == brute_prime_count(p, cf) + points_at_infinity(c, f));
    }
  }
  const auto f2 = build_field(2, 1), f4 = build_field(2, 2), f8 = build_field(2, 3);
  for (const auto& base : {f2, f4, f8}) {
    for (Elem c1 = 0; c1 < base->q(); ++c1) {
      const auto e = CurveModel::weierstrass_char2(base, c1, 1);
      CHECK(count_points(e, 1) == count_points_naive(e, 1));
    }
    const auto as = CurveModel::as_rational(base, base->generator() == 0 ? 1 : base->generator(), 3);
    CHECK(count_points(as, 1) == count_points_naive(as, 1));
    if (base->q() <= 4) CHECK(count_points(as, 2) == count_points_naive(as, 2));
  }
}

TEST_CASE("even superelliptic counts follow the character sum") {
  const auto f = build_field(7, 1);
  const auto c = hyper(f, {3, 0, 0, 0, 0, 0, 1});
  std::uint64_t sum = 0;
  for (Elem x = 0; x < 7; ++x) {
    const Elem v = P(f, {3, 0, 0, 0, 0, 0, 1}).eval(x);
    sum += v == 0 ? 1 : (f->is_square(v) ? 2 : 0);
  }
  CHECK(count_points(c, 1) == sum + 2);
  const auto s = CurveModel::scaled_sextic(f, 3, 3);
  CHECK(points_at_infinity(s, f) == (f->is_square(f->inv(3)) ? 2 : 0));
}

TEST_CASE("genus-1 pair: explicit maps and elliptic search") {
  const auto f3 = build_field(3, 1);
  const auto c = CurveModel::weierstrass_short(f3, f3->from_int(-1), f3->from_int(-1));
  const auto d = CurveModel::weierstrass_short(f3, f3->from_int(-1), 1);
  CHECK(check_iso(IsoMap::identity(f3), c, c));
  CHECK_FALSE(elliptic_isomorphic(c, d, f3).has_value());
  CHECK(elliptic_search(c, d, f3).candidates == 6);

  const auto f9 = build_field(3, 2);
  const Elem i = *f9->sqrt(f9->from_int(-1));
  const IsoMap m2 = X(f9, f9->from_int(-1), 0, 0, 1, i, 0);
  CHECK(check_iso(m2, c, d));
  CHECK_FALSE(check_iso(X(f9, 1, 0, 0, 1, i, 0), c, d));
  const auto w9 = elliptic_isomorphic(c, d, f9);
  REQUIRE(w9.has_value());
  CHECK(check_iso(*w9, c, d));

  const auto f27 = build_field(3, 3);
  const auto alphas = ff::solve_artin_schreier(*f27, 1);
  REQUIRE(alphas.size() == 3);
  const IsoMap m3 = X(f27, 1, alphas[0], 0, 1, 1, 0);
  CHECK(check_iso(m3, c, d));
  const auto w27 = elliptic_isomorphic(c, d, f27);
  REQUIRE(w27.has_value());
  CHECK(check_iso(*w27, c, d));
}

TEST_CASE("elliptic search agrees with point counts as a necessary condition") {
  const auto f5 = build_field(5, 1);
  std::vector<CurveModel> es;
  for (Elem a = 0; a < 5; ++a)
    for (Elem b = 0; b < 5; ++b) {
      try {
        es.push_back(CurveModel::weierstrass_short(f5, a, b));
      } catch (const Error&) {
      }
    }
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = 0; j < es.size(); ++j) {
      const auto w = elliptic_isomorphic(es[i], es[j], f5);
      if (!w) continue;
      CHECK(check_iso(*w, es[i], es[j]));
      for (std::uint32_t d : {1u, 2u, 3u}) CHECK(count_points(es[i], d) == count_points(es[j], d));
    }
}

TEST_CASE("char-2 elliptic triple") {
  const auto f2 = build_field(2, 1), f8 = build_field(2, 3);
  const std::vector<CurveModel> e{CurveModel::weierstrass_char2(f2, 0, 0), CurveModel::weierstrass_char2(f2, 1, 0),
                                  CurveModel::weierstrass_char2(f2, 1, 1)};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(elliptic_isomorphic(e[i], e[j], f2).has_value() == (i == j));
      CHECK(elliptic_isomorphic(e[i], e[j], f8).has_value() == (i == j));
    }
  const auto mass = mass_check(e, f2);
  CHECK(mass == Rational{1, 1});
  CHECK(mass_check({e[0], e[1]}, f2).num < mass_check({e[0], e[1]}, f2).den);
  for (const auto& c : e) {
    const auto g = rational_automorphisms(c, f2);
    for (const auto& m : g.maps) CHECK(check_iso(m, c, c));
  }
}

TEST_CASE("isomap algebra") {
  const auto f = build_field(7, 2);
  const Elem g = f->generator();
  const std::vector<IsoMap> maps{X(f, 1, 2, 3, g, g, 3), X(f, 0, 1, 1, 0, 1, 3), X(f, g, 0, 0, 1, f->neg(1), 3),
                                 X(f, 1, 0, g, 1, 2, 3, {1, g, 0, 3})};
  for (const auto& m : maps) {
    CHECK(m.compose(m.inverse()) == IsoMap::identity(f, 3));
    CHECK(m.inverse().compose(m) == IsoMap::identity(f, 3));
    CHECK(IsoMap::from_json(m.to_json()) == m);
    for (Elem x = 0; x < 10; ++x)
      for (Elem y = 0; y < 5; ++y) {
        const auto img = m.apply(x, y);
        if (!img) continue;
        const auto back = m.inverse().apply(img->first, img->second);
        if (!back) continue;
        CHECK(back->first == x);
        CHECK(back->second == y);
      }
    for (const auto& n : maps) {
      for (Elem x = 0; x < 8; ++x) {
        const auto a = n.apply(x, 3);
        if (!a) continue;
        const auto b = m.apply(a->first, a->second);
        const auto c = m.compose(n).apply(x, 3);
        if (!b || !c) continue;
        CHECK(*b == *c);
      }
    }
  }
  const IsoMap e1 = X(f, 1, 2, 0, 1, 3, 0, {4, 5});
  CHECK(e1.compose(e1.inverse()) == IsoMap::identity(f, 0));
  CHECK_THROWS_AS(maps[0].compose(e1), Error);
}

TEST_CASE("curve JSON round trip and validation") {
  const auto f = build_field(5, 2);
  const std::vector<CurveModel> cs{hyper(f, {1, 0, 0, 0, 0, 0, 1}), CurveModel::scaled_sextic(f, f->generator(), 2),
                                   CurveModel::weierstrass_short(f, 1, 1)};
  for (const auto& c : cs) CHECK(CurveModel::from_json(c.to_json()) == c);
  const auto f4 = build_field(2, 2);
  const auto as = CurveModel::as_additive(f4, 4, 3, f4->generator());
  CHECK(CurveModel::from_json(as.to_json()) == as);
  CHECK_THROWS_AS(hyper(f, {0, 0, 1, 0, 1}), Error);
  CHECK_THROWS_AS(CurveModel::weierstrass_char2(f, 1, 1), Error);
  CHECK_THROWS_AS(CurveModel::as_rational(f4, 1, 4), Error);
}

TEST_CASE("pgl2 enumeration") {
  for (std::uint64_t q : {3u, 4u, 5u, 9u}) {
    const auto [p, k] = q == 4 ? std::pair<std::uint64_t, std::uint32_t>{2, 2}
                        : q == 9 ? std::pair<std::uint64_t, std::uint32_t>{3, 2}
                                 : std::pair<std::uint64_t, std::uint32_t>{q, 1};
    const auto f = build_field(p, k);
    std::set<std::array<Elem, 4>> seen;
    for (std::uint64_t i = 0; i < pgl2_size(q); ++i) {
      const auto m = pgl2_element(*f, i);
      CHECK(f->sub(f->mul(m[0], m[3]), f->mul(m[1], m[2])) != 0);
      CHECK((m[0] == 1 || (m[0] == 0 && m[1] == 1)));
      seen.insert(m);
    }
    CHECK(seen.size() == q * q * q - q);
  }
}

TEST_CASE("genus-2 search over F5") {
  const auto f5 = build_field(5, 1);
  const auto c = hyper(f5, {1, -1, 0, 0, 0, 1});
  const auto d = hyper(f5, {2, -1, 0, 0, 0, 1});
  const auto s = hyperelliptic_search(c, d, f5);
  CHECK_FALSE(s.witness.has_value());
  CHECK(s.candidates == 480);
  CHECK(hyperelliptic_isomorphic(c, c, f5).has_value());
  CHECK(check_iso(*hyperelliptic_isomorphic(c, c, f5), c, c));

  const std::vector<CurveModel> cat{hyper(f5, {0, -1, 0, 0, 0, 1}), hyper(f5, {0, -2, 0, 0, 0, 1}),
                                    hyper(f5, {0, 1, 0, 0, 0, 1}),  hyper(f5, {1, -1, 0, 0, 0, 1}),
                                    hyper(f5, {-2, 0, 0, 0, 0, 0, 1}), hyper(f5, {1, -1, 0, 0, 0, 0, 1})};
  for (const auto& a : cat)
    for (const auto& b : cat) {
      const auto fast = hyperelliptic_search(a, b, f5, 3);
      const auto ref = hyperelliptic_search_serial(a, b, f5);
      REQUIRE(fast.witness.has_value() == ref.witness.has_value());
      if (!fast.witness) continue;
      CHECK(*fast.witness == *ref.witness);
      CHECK(check_iso(*fast.witness, a, b));
      CHECK(check_iso(fast.witness->inverse(), b, a));
      CHECK(hyperelliptic_isomorphic(b, a, f5).has_value());
    }
}

TEST_CASE("sextic pair y^2 = x^6 + g and g y^2 = x^6 + g") {
  const auto f7 = build_field(7, 1);
  const Elem g = 3;
  const auto c = hyper(f7, {3, 0, 0, 0, 0, 0, 1});
  const auto d = CurveModel::scaled_sextic(f7, g, g);
  CHECK_FALSE(hyperelliptic_isomorphic(c, d, f7).has_value());
  const auto f49 = build_field(7, 2);
  const auto w = hyperelliptic_isomorphic(c, d, f49, 2);
  REQUIRE(w.has_value());
  CHECK(check_iso(*w, c, d));
  const auto e49 = ff::embed(f7, f49);
  const Elem sg = *f49->sqrt(e49.apply(g));
  CHECK(check_iso(X(f49, 1, 0, 0, 1, f49->inv(sg), 3), c, d));
  const auto f343 = build_field(7, 3);
  const auto e343 = ff::embed(f7, f343);
  const auto cr = ff::nth_roots(*f343, e343.apply(g), 3);
  REQUIRE(!cr.empty());
  CHECK(check_iso(X(f343, 0, cr[0], 1, 0, 1, 3), c, d));
  CHECK_FALSE(check_iso(X(f343, 0, 1, 1, 0, 1, 3), c, d));
  for (std::uint32_t k : {2u, 3u, 6u}) CHECK(count_points(c, k) == count_points(d, k));
}

TEST_CASE("automorphism groups") {
  const auto f5 = build_field(5, 1);
  CHECK(rational_automorphisms(hyper(f5, {1, -1, 0, 2, 0, 1}), f5).maps.size() % 2 == 0);
  const auto f7 = build_field(7, 1);
  const auto generic = hyper(f7, {1, 2, 0, 3, 0, 1});
  CHECK(rational_automorphisms(generic, f7).maps.size() == 2);

  const auto f49 = build_field(7, 2);
  const auto x61 = hyper(f7, {1, 0, 0, 0, 0, 0, 1});
  const auto g24 = rational_automorphisms(x61, f49);
  CHECK(g24.maps.size() == 24);
  const Elem w = ff::nth_roots(*f49, 1, 3).back();
  REQUIRE(w != 1);
  const auto gen = closure_of_maps({X(f49, w, 0, 0, 1, 1, 3), X(f49, 0, 1, 1, 0, 1, 3), X(f49, f49->neg(1), 0, 0, 1, 1, 3),
                                    X(f49, 1, 0, 0, 1, f49->neg(1), 3)},
                                   "d12");
  CHECK(gen.maps.size() == 24);
  for (const auto& m : gen.maps) CHECK(g24.find(m).has_value());
  for (groups::Index x = 0; x < 24; ++x)
    for (groups::Index y = 0; y < 24; ++y) CHECK(gen.maps[gen.group->mul(x, y)] == gen.maps[x].compose(gen.maps[y]));
  // 7 = 1 mod 3, so every map is already defined over F_7.
  CHECK(frobenius_action(gen, 1).is_identity());
  const auto f25 = build_field(5, 2);
  const auto g25 = rational_automorphisms(hyper(build_field(5, 1), {1, 0, 0, 0, 0, 0, 1}), f25);
  // x^6 + 1 = x^(5+1) + 1 in characteristic 5: PGU(2, 5) times the involution.
  CHECK(g25.maps.size() == 240);
  const auto frob = frobenius_action(g25, 1);
  CHECK(frob.order() == 2);
  CHECK(frob.verify());

  const auto x5 = hyper(f7, {0, -1, 0, 0, 0, 1});
  const auto g48 = rational_automorphisms(x5, f49, 2);
  CHECK(g48.maps.size() == 48);

  // (x^3 - x)^2 - 1 over F3 carries the twelve maps (+-x + a, +-y).
  const auto f3 = build_field(3, 1);
  const auto c3 = hyper(f3, {-1, 0, 1, 0, -2, 0, 1});
  const auto a3 = rational_automorphisms(c3, f3);
  for (Elem s : {Elem(1), Elem(2)})
    for (Elem a = 0; a < 3; ++a)
      for (Elem e : {Elem(1), Elem(2)}) {
        const auto m = X(f3, s, a, 0, 1, e, 3);
        CHECK(check_iso(m, c3, c3));
        CHECK(a3.find(m).has_value());
      }
}

TEST_CASE("kummer census") {
  const auto f13 = build_field(13, 1);
  std::vector<Elem> non4;
  for (Elem a = 1; a < 13; ++a)
    if (!ff::is_mth_power(*f13, a, 4)) non4.push_back(a);
  for (Elem a : {non4.front(), non4.back()})
    for (Elem b : {Elem(1), Elem(2), a}) {
      const auto census = kummer_map_census(4, a, b, f13);
      std::size_t oracle = 0;
      for (std::uint64_t i = 0; i < pgl2_size(13); ++i) {
        const auto m = pgl2_element(*f13, i);
        const bool hit = sends_roots(f13, 4, a, b, m);
        oracle += hit;
        if (hit) CHECK(std::find(census.begin(), census.end(), m) != census.end());
      }
      CHECK(census.size() == oracle);
      for (const auto& m : census) CHECK(is_scaling_shape(m));
      if (a == b) CHECK(std::find(census.begin(), census.end(), std::array<Elem, 4>{1, 0, 0, 1}) != census.end());
    }

  const auto f5 = build_field(5, 1);
  const auto rem = kummer_map_census(6, 1, 1, f5);
  const std::array<Elem, 4> non_scaling{1, 2, 2, 1};
  CHECK(std::find(rem.begin(), rem.end(), non_scaling) != rem.end());
  CHECK_FALSE(is_scaling_shape(non_scaling));
  CHECK(sends_roots(f5, 6, 1, 1, non_scaling));

  // The one-pass census agrees with per-(a, b) censuses.
  const auto f7 = build_field(7, 1);
  const auto all = kummer_census_all(3, f7, 2);
  for (Elem a = 1; a < 7; ++a)
    for (Elem b = 1; b < 7; ++b) {
      std::vector<std::array<Elem, 4>> sub;
      for (const auto& e : all)
        if (e.a == a && e.b == b) sub.push_back(e.map);
      CHECK(sub == kummer_map_census(3, a, b, f7));
    }
  CHECK_THROWS_AS(kummer_map_census(2, 1, 1, f7), Error);
  CHECK_THROWS_AS(kummer_map_census(7, 1, 1, f7), Error);
}

TEST_CASE("named curve groups and specs") {
  const auto g = parse_group("curveaut:x6+1:25");
  CHECK(g->order() == 240);
  const auto fr = parse_group_aut(g, "frob");
  CHECK(fr.order() == 2);
  CHECK(parse_group("dihedral:6")->order() == 12);
  CHECK_THROWS_AS(parse_group("curveaut:nope:7"), Error);
}

TEST_CASE("tabulated counts agree with the fast path") {
  const auto f5 = build_field(5, 1), f4 = build_field(2, 2), f3 = build_field(3, 1);
  std::vector<CurveModel> cs{hyper(f5, {1, -1, 0, 0, 0, 1}), hyper(f5, {-2, 0, 0, 0, 0, 0, 1}),
                             CurveModel::scaled_sextic(f5, 2, 2), CurveModel::weierstrass_short(f3, 2, 1),
                             CurveModel::weierstrass_char2(f4, 1, f4->generator()),
                             CurveModel::as_rational(f4, f4->generator(), 3), CurveModel::as_additive(f4, 4, 3, 2)};
  for (const auto& c : cs)
    for (std::uint32_t d : {1u, 2u, 3u}) {
      INFO(c.describe() << " d=" << d);
      CHECK(count_points_tabulated(c, d) == count_points(c, d));
    }
}

TEST_CASE("raw equation maps and embedding") {
  const auto f4 = build_field(2, 2), f16 = build_field(2, 4);
  const Elem a = f4->generator();
  // x(x+1)(y^2 + y) = a (x^3 + x^2 + 1)
  const std::vector<Poly> eq{Poly(f4, {a, 0, a, a}), Poly(f4, {0, 1, 1}), Poly(f4, {0, 1, 1})};
  CHECK(maps_equation(X(f4, 0, 1, 1, 1, 1, 0), eq, eq));
  CHECK_FALSE(maps_equation(X(f4, 1, 1, 0, 1, 1, 0), eq, eq));
  const auto e = ff::embed(f4, f16);
  std::vector<Poly> eq16;
  for (const auto& p : eq) {
    std::vector<Elem> co;
    for (Elem c : p.coeffs()) co.push_back(e.apply(c));
    eq16.emplace_back(f16, co);
  }
  for (Elem b = 0; b < 16; ++b) {
    const bool lifts = maps_equation(X(f16, 1, 1, 0, 1, 1, 0, {b}), eq16, eq16);
    CHECK(lifts == (f16->add(f16->mul(b, b), b) == e.apply(a)));
  }
  const auto m = X(f4, a, 1, 0, 1, a, 3, {1, a});
  const auto m16 = embed_map(m, f16);
  CHECK(m16.field == f16);
  CHECK(m16.a == e.apply(a));
  CHECK(m16.h.coeffs()[1] == e.apply(a));
}
