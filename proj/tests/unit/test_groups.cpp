#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "cotwist/groups.hpp"
#include "cotwist/numtheory.hpp"

using namespace cotwist;
using namespace cotwist::groups;

namespace {

// Brute-force class labels by a full conjugation table, independent of
// conjugacy_labels.
bool conj_brute(const Group& g, Index a, Index b) {
  for (Index c = 0; c < g.order(); ++c) {
    if (g.mul(g.mul(g.inv(c), a), c) == b) return true;
  }
  return false;
}

// |SL2(Z/n)| by counting solutions of ad - bc = 1 one residue at a time.
std::uint64_t sl2_count(std::uint32_t n) {
  std::uint64_t count = 0;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t d = 0; d < n; ++d)
          if ((a * d + n * n - b * c) % n == 1) ++count;
  return count;
}

void check_group_axioms(const Group& g) {
  const auto n = Index(g.order());
  for (Index a = 0; a < n; ++a) {
    CHECK(g.mul(a, g.identity()) == a);
    CHECK(g.mul(g.identity(), a) == a);
    CHECK(g.mul(a, g.inv(a)) == g.identity());
    CHECK(n % g.element_order(a) == 0);
  }
  for (Index s = 0; s < 300; ++s) {
    const Index a = (s * 37) % n, b = (s * 101 + 7) % n, c = (s * 211 + 3) % n;
    CHECK(g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)));
  }
  for (Index a = 0; a < n; ++a) {
    std::set<Index> row;
    for (Index b = 0; b < n; ++b) row.insert(g.mul(a, b));
    CHECK(row.size() == n);
  }
}

}  // namespace

TEST_CASE("dihedral groups follow the presentation") {
  Dihedral d1(1);
  CHECK(d1.order() == 2);
  Dihedral d(12);
  CHECK(d.order() == 24);
  CHECK(d.label() == "D_24");
  CHECK(d.element_order(d.u()) == 12);
  CHECK(d.element_order(d.identity()) == 1);
  CHECK(d.mul(d.mul(d.v(), d.u()), d.v()) == d.inv(d.u()));
  CHECK(d.are_conjugate(d.elem(3, 0), d.elem(9, 0)).has_value());
  CHECK_FALSE(d.are_conjugate(d.elem(3, 0), d.elem(4, 0)).has_value());
  CHECK(d.are_conjugate(d.u(), d.elem(11, 0)).has_value());
  CHECK(*d.are_conjugate(d.identity(), d.identity()) == d.identity());
}

TEST_CASE("dihedral classes match the closed form for N <= 60") {
  for (std::uint32_t n = 1; n <= 60; ++n) {
    Dihedral d(n);
    const auto labels = d.conjugacy_labels();
    auto closed = [&](Index a, Index b) {
      const auto [i, j] = d.parts(a);
      const auto [k, l] = d.parts(b);
      if (j != l) return false;
      if (j == 0) return (i + k) % n == 0 || i == k;
      return n % 2 == 1 || i % 2 == k % 2;
    };
    for (Index a = 0; a < d.order(); ++a)
      for (Index b = 0; b < d.order(); ++b) REQUIRE((labels[a] == labels[b]) == closed(a, b));
  }
}

TEST_CASE("SL2 orders agree with enumeration and the order formula") {
  CHECK(SL2(2, false).order() == 6);
  CHECK(SL2(3, false).order() == 24);
  CHECK(SL2(3, true).order() == 12);
  for (std::uint32_t n : {2u, 3u, 4u, 5u, 6u, 12u, 13u}) CHECK(sl2_order_formula(n) == sl2_count(n));
  // 39 = 3 * 13 and the count is multiplicative.
  CHECK(sl2_count(3) * sl2_count(13) == 52416);
  SL2 g(39, false), pg(39, true);
  CHECK(g.order() == 52416);
  CHECK(pg.order() == 26208);
  CHECK(sl2_order_formula(39) == 52416);
  CHECK_THROWS_AS(SL2(39, false, 1000), Error);
}

TEST_CASE("SL2 elements are normalized determinant-one matrices") {
  for (bool proj : {false, true}) {
    SL2 g(6, proj);
    CHECK(g.matrix(0) == SL2::Mat{1, 0, 0, 1});
    for (Index a = 0; a < g.order(); ++a) {
      const auto& m = g.matrix(a);
      CHECK((m[0] * m[3] + 36 - m[1] * m[2]) % 6 == 1);
      if (proj) {
        const SL2::Mat neg{(6 - m[0]) % 6, (6 - m[1]) % 6, (6 - m[2]) % 6, (6 - m[3]) % 6};
        CHECK(m <= neg);
      }
    }
    check_group_axioms(g);
  }
}

TEST_CASE("projective quotient map is 2-to-1 for n <= 15") {
  for (std::uint32_t n = 3; n <= 15; ++n) {
    SL2 g(n, false), pg(n, true);
    REQUIRE(pg.order() * 2 == g.order());
    std::vector<int> fibre(pg.order(), 0);
    std::vector<Index> image(g.order());
    for (Index a = 0; a < g.order(); ++a) ++fibre[image[a] = pg.index_of(g.matrix(a))];
    CHECK(std::all_of(fibre.begin(), fibre.end(), [](int c) { return c == 2; }));
    for (Index s = 0; s < 200; ++s) {
      const Index a = (s * 7919) % g.order(), b = (s * 104729 + 11) % g.order();
      CHECK(image[g.mul(a, b)] == pg.mul(image[a], image[b]));
    }
  }
}

TEST_CASE("SL2(F3) upper and lower unipotents are not conjugate") {
  SL2 g(3, false);
  const Index up = g.index_of({1, 1, 0, 1}), low = g.index_of({1, 0, 1, 1});
  CHECK_FALSE(g.are_conjugate(up, low).has_value());
  CHECK_FALSE(conj_brute(g, up, low));
  CHECK(g.element_order(up) == 3);
  CHECK(g.element_order(low) == 3);
}

TEST_CASE("conjugacy is an equivalence relation") {
  std::vector<GroupPtr> groups{parse_basic_group("dihedral:12"), parse_basic_group("sl2:3"),
                               parse_basic_group("c3c4"), parse_basic_group("group108"),
                               parse_basic_group("psl2:5"), parse_basic_group("d6c2")};
  for (const auto& g : groups) {
    INFO(g->label());
    const auto n = Index(g->order());
    REQUIRE(n <= 200);
    const auto labels = g->conjugacy_labels();
    for (Index a = 0; a < n; ++a) {
      CHECK(g->are_conjugate(a, a).has_value());
      for (Index b = 0; b < n; ++b) {
        const bool ab = g->are_conjugate(a, b).has_value();
        REQUIRE(ab == g->are_conjugate(b, a).has_value());
        REQUIRE(ab == (labels[a] == labels[b]));
        REQUIRE(ab == conj_brute(*g, a, b));
      }
    }
    for (Index s = 0; s < 500; ++s) {
      const Index a = (s * 13) % n, b = (s * 29 + 1) % n, c = (s * 53 + 2) % n;
      if (g->are_conjugate(a, b) && g->are_conjugate(b, c)) CHECK(g->are_conjugate(a, c).has_value());
    }
  }
}

TEST_CASE("cataloged groups satisfy the group axioms and Lagrange") {
  for (const char* spec : {"dihedral:1", "dihedral:7", "cyclic:9", "sl2:4", "psl2:7", "group108", "c3c4",
                           "d6c2", "sd:dihedral:6:flip:2", "sd:cyclic:5:inv:2"}) {
    INFO(spec);
    check_group_axioms(*parse_basic_group(spec));
  }
  CHECK(parse_basic_group("group108")->order() == 108);
  CHECK(parse_basic_group("sd:dihedral:6:flip:2")->order() == 24);
  CHECK(parse_basic_group("sd:dihedral:6:pow:5:0:2")->order() == 24);
  CHECK(parse_basic_group("sd:dihedral:6:inner:1:3")->order() == 36);
  CHECK_THROWS_AS(parse_basic_group("nonsense:3"), Error);
  CHECK_THROWS_AS(parse_basic_group("dihedral:x"), Error);
}

TEST_CASE("semidirect products") {
  auto c3 = std::make_shared<const Cyclic>(3);
  const auto inv = parse_aut(c3, "inv");
  Semidirect s(c3, inv, 2);
  Dihedral d(3);
  // (g, i) <-> u^g v^i share the index g + 3 i.
  for (Index a = 0; a < 6; ++a)
    for (Index b = 0; b < 6; ++b) CHECK(s.mul(a, b) == d.mul(a, b));

  auto d6 = std::make_shared<const Dihedral>(6);
  Semidirect trivial(d6, GroupAut::identity(d6), 1);
  for (Index a = 0; a < 12; ++a)
    for (Index b = 0; b < 12; ++b) CHECK(trivial.mul(a, b) == d6->mul(a, b));

  CHECK_THROWS_AS(Semidirect(c3, inv, 3), Error);
  try {
    Semidirect(c3, inv, 3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AutOrderMismatch);
  }
}

TEST_CASE("automorphisms") {
  auto d = std::make_shared<const Dihedral>(6);
  const auto flip = parse_aut(d, "flip");
  CHECK(flip.verify());
  CHECK(flip.order() == 2);
  CHECK(flip(d->u()) == d->inv(d->u()));
  CHECK(flip(d->v()) == d->mul(d->u(), d->v()));
  CHECK(parse_aut(d, "pow:5:0").order() == 2);
  CHECK(GroupAut::inner(d, d->u()).verify());
  CHECK_THROWS_AS(GroupAut::from_generators(d, {d->u(), d->v()}, {d->v(), d->v()}), Error);
  CHECK_THROWS_AS(parse_aut(d, "inv"), Error);
  const auto sq = flip.compose(flip);
  CHECK(sq.is_identity());
  CHECK(flip.power(3).table() == flip.table());
}

TEST_CASE("order-108 example group") {
  const auto g108 = group_108();
  const auto& g = *g108.group;
  CHECK(g.order() == 108);
  CHECK(g.element_order(g108.alpha) == 3);
  CHECK(g.pow(g108.x, 2) == g.pow(g108.y, 2));
  const Index x3 = g.pow(g108.x, 3), y3 = g.pow(g108.y, 3);
  const bool by_alpha = g.conj(y3, g108.alpha) == x3 || g.conj(y3, g.inv(g108.alpha)) == x3;
  CHECK(by_alpha);
  CHECK_FALSE(g.are_conjugate(g108.x, g108.y).has_value());
  CHECK_FALSE(conj_brute(g, g108.x, g108.y));
}

TEST_CASE("d6 x c2 with its Frobenius action") {
  const auto d = d6_c2();
  const auto& g = *d.group;
  CHECK(g.order() == 12);
  CHECK(g.element_order(d.alpha) == 2);
  CHECK(g.element_order(d.beta) == 3);
  CHECK(g.element_order(d.iota) == 2);
  CHECK(d.frobenius(d.alpha) == g.mul(d.iota, d.alpha));
  CHECK(d.frobenius(d.beta) == d.beta);
  CHECK(d.frobenius.order() == 2);
  CHECK(parse_aut(d.group, "frob").table() == d.frobenius.table());
}

TEST_CASE("closure from generators") {
  using Perm = std::vector<int>;
  auto compose = [](const Perm& a, const Perm& b) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
  };
  auto key = [](const Perm& p) {
    std::string s;
    for (int v : p) s += char('0' + v);
    return s;
  };
  auto describe = [](const Perm& p) { return json(p); };
  const Perm id{0, 1, 2, 3};
  auto [s4, elems] = closure(id, {{1, 0, 2, 3}, {1, 2, 3, 0}}, compose, key, describe, "S4");
  CHECK(s4->order() == 24);
  CHECK(elems.front() == id);
  check_group_axioms(*s4);
  auto [c2, e2] = closure(id, {{1, 0, 2, 3}}, compose, key, describe, "C2");
  CHECK(c2->order() == 2);
  CHECK_THROWS_AS(closure(id, {{1, 0, 2, 3}, {1, 2, 3, 0}}, compose, key, describe, "S4", 10), Error);
  const auto t = TableGroup::from(Dihedral(5));
  CHECK(t->order() == 10);
  CHECK(t->mul(3, 7) == Dihedral(5).mul(3, 7));
}
