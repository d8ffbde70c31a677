#include <doctest.h>

#include "cotwist/h1.hpp"

using namespace cotwist;
using namespace cotwist::groups;
using namespace cotwist::h1;

namespace {

std::vector<TwistedSetting> small_settings() {
  std::vector<TwistedSetting> out;
  for (std::uint32_t n : {3u, 4u, 5u, 6u, 10u}) {
    auto d = std::make_shared<const Dihedral>(n);
    out.emplace_back(d, GroupAut::identity(d));
    out.emplace_back(d, parse_aut(d, "flip"));
  }
  auto d7 = std::make_shared<const Dihedral>(7);
  out.emplace_back(d7, parse_aut(d7, "pow:2:1"));
  for (const char* spec : {"c3c4", "sl2:3", "cyclic:12"}) {
    auto g = parse_basic_group(spec);
    out.emplace_back(g, GroupAut::identity(g));
  }
  auto c12 = parse_basic_group("cyclic:12");
  out.emplace_back(c12, parse_aut(c12, "inv"));
  auto sl = parse_basic_group("sl2:3");
  out.emplace_back(sl, GroupAut::inner(sl, 5));
  const auto d6 = d6_c2();
  out.emplace_back(d6.group, d6.frobenius);
  return out;
}

// Twisted power by direct definition, independent of the library loop.
Index twisted_power_ref(const TwistedSetting& st, Index g, std::uint64_t m) {
  Index acc = st.group().identity();
  for (std::uint64_t i = 0; i < m; ++i) acc = st.group().mul(acc, st.alpha().power(i)(g));
  return acc;
}

}  // namespace

TEST_CASE("twisted powers") {
  for (const auto& st : small_settings()) {
    const auto& g = st.group();
    for (Index a = 0; a < g.order(); ++a) {
      CHECK(twisted_power(st, a, 1) == a);
      for (std::uint64_t m = 1; m <= 6; ++m) {
        CHECK(twisted_power(st, a, m) == twisted_power_ref(st, a, m));
        if (st.alpha().is_identity()) CHECK(twisted_power(st, a, m) == g.pow(a, std::int64_t(m)));
      }
    }
  }
}

TEST_CASE("cocycle composition law") {
  for (const auto& st : small_settings()) {
    const auto& g = st.group();
    for (Index x = 0; x < g.order(); ++x)
      for (std::uint64_t a = 1; a <= 5; ++a)
        for (std::uint64_t b = 1; b <= 5; ++b) {
          const Index lhs = twisted_power(st, x, a + b);
          const Index rhs = g.mul(twisted_power(st, x, a), st.alpha().power(a)(twisted_power(st, x, b)));
          REQUIRE(lhs == rhs);
        }
  }
}

TEST_CASE("dihedral example twisted powers follow the closed forms") {
  for (auto [r, s] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{3, 2}, {5, 2}, {5, 4}, {3, 4}}) {
    const auto ex = dihedral_example(r, s);
    const auto& d = *ex.group;
    const auto m = std::int64_t(ex.m);
    CHECK(ex.m % r == 0);
    CHECK(ex.m % s == 1);
    for (std::int64_t k = 1; k <= std::int64_t(2 * r * s); ++k) {
      const Index xe = k % 2 == 0 ? d.elem(k / 2, 0) : d.elem((k + 1) / 2, 1);
      const Index ye = k % 2 == 0 ? d.elem(k * m - k / 2, 0) : d.elem(k * m - (k - 1) / 2, 1);
      CHECK(twisted_power(*ex.setting, ex.x, k) == xe);
      CHECK(twisted_power(*ex.setting, ex.y, k) == ye);
      const bool expect = k % std::int64_t(r) == 0 || k % std::int64_t(s) == 0;
      CHECK(restriction_agrees(*ex.setting, ex.x, ex.y, k).has_value() == expect);
    }
  }
}

TEST_CASE("cohomologous") {
  for (const auto& st : small_settings()) {
    const auto& g = st.group();
    for (Index a = 0; a < g.order(); ++a) {
      CHECK(*cohomologous(st, a, a) == g.identity());
      for (Index c0 = 0; c0 < g.order(); c0 += 3) {
        const Index b = g.mul(g.mul(g.inv(c0), a), st.alpha()(c0));
        const auto c = cohomologous(st, a, b);
        REQUIRE(c.has_value());
        CHECK(g.mul(g.mul(g.inv(*c), a), st.alpha()(*c)) == b);
      }
    }
  }
  // Trivial action: twisted conjugacy is conjugacy.
  for (const char* spec : {"dihedral:12", "group108", "psl2:5"}) {
    auto g = parse_basic_group(spec);
    TwistedSetting st(g, GroupAut::identity(g));
    for (Index a = 0; a < g->order(); ++a)
      for (Index b = 0; b < g->order(); ++b)
        REQUIRE(cohomologous(st, a, b).has_value() == g->are_conjugate(a, b).has_value());
  }
}

TEST_CASE("d6 cocycles beta and beta^2") {
  const auto d6 = d6_c2();
  TwistedSetting st(d6.group, d6.frobenius);
  const auto& g = *d6.group;
  const Index b1 = d6.beta, b2 = g.mul(d6.beta, d6.beta);
  CHECK_FALSE(cohomologous(st, b1, b2).has_value());
  CHECK_FALSE(restriction_agrees(st, b1, b2, 1).has_value());
  CHECK(restriction_agrees(st, b1, b2, 2).has_value());
  CHECK(restriction_agrees(st, b1, b2, 3).has_value());
  // beta^2 = alpha^-1 beta alpha^{phi^2} with phi^2 acting trivially.
  const auto phi2 = d6.frobenius.power(2);
  CHECK(phi2.is_identity());
  CHECK(g.mul(g.mul(g.inv(d6.alpha), b1), phi2(d6.alpha)) == b2);
  CHECK(twisted_power(st, b1, 3) == g.identity());
  CHECK(twisted_power(st, b2, 3) == g.identity());
}

TEST_CASE("restriction properties") {
  for (const auto& st : small_settings()) {
    const auto& g = st.group();
    for (Index x = 0; x < g.order(); ++x)
      for (Index y = 0; y < g.order(); ++y) {
        CHECK(restriction_agrees(st, x, y, 1) == cohomologous(st, x, y));
        for (std::uint64_t d1 = 1; d1 <= 4; ++d1) {
          if (!restriction_agrees(st, x, y, d1)) continue;
          for (std::uint64_t d2 = 2 * d1; d2 <= 12; d2 += d1) REQUIRE(restriction_agrees(st, x, y, d2).has_value());
        }
      }
  }
}

TEST_CASE("semidirect criterion matches restriction on all pairs") {
  for (const auto& st : small_settings()) {
    const auto& g = st.group();
    REQUIRE(g.order() <= 60);
    for (Index x = 0; x < g.order(); ++x)
      for (Index y = 0; y < g.order(); ++y)
        for (std::uint64_t m = 1; m <= 12; ++m)
          REQUIRE(semidirect_equiv(st, x, y, m) == restriction_agrees(st, x, y, m).has_value());
  }
}

TEST_CASE("pair search: parallel kernel equals the serial reference") {
  std::vector<TwistedSetting> settings = small_settings();
  auto g108 = group_108().group;
  settings.emplace_back(g108, GroupAut::identity(g108));
  for (const auto& st : settings) {
    for (auto [r, s] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{3, 2}, {2, 3}, {5, 2}, {3, 4}}) {
      INFO(st.group().label() << " r=" << r << " s=" << s);
      const auto fast = find_pair_witnesses(st, r, s, 0, 3);
      const auto ref = find_pair_witnesses_serial(st, r, s);
      REQUIRE(fast.witnesses.size() == ref.witnesses.size());
      CHECK(fast.pairs_swept == st.group().order() * st.group().order());
      for (std::size_t i = 0; i < ref.witnesses.size(); ++i) {
        CHECK(fast.witnesses[i].x == ref.witnesses[i].x);
        CHECK(fast.witnesses[i].y == ref.witnesses[i].y);
      }
      for (const auto& w : fast.witnesses) CHECK(theorem_constraint_report(st, w).pass());
      CHECK(theorem_constraint_report(st, r, s, fast.witnesses).pass());
      const auto lim = find_pair_witnesses(st, r, s, 2, 1);
      CHECK(lim.witnesses.size() == std::min<std::size_t>(2, ref.witnesses.size()));
    }
  }
}

TEST_CASE("pair search examples") {
  auto sl = parse_basic_group("sl2:3");
  const auto e1 = find_pair_witnesses(TwistedSetting(sl, GroupAut::identity(sl)), 2, 3);
  CHECK(e1.witnesses.empty());
  CHECK(e1.pairs_swept == 24 * 24);
  auto c = parse_basic_group("c3c4");
  const auto e2 = find_pair_witnesses(TwistedSetting(c, GroupAut::identity(c)), 2, 3);
  CHECK(e2.witnesses.empty());
  CHECK(e2.pairs_swept == 12 * 12);

  const auto ex = dihedral_example(3, 2);
  const auto found = find_pair_witnesses(*ex.setting, 3, 2);
  bool has = false;
  for (const auto& w : found.witnesses) has = has || (w.x == ex.x && w.y == ex.y);
  CHECK(has);
  const auto rep = theorem_constraint_report(*ex.setting, 3, 2, found.witnesses);
  CHECK(rep.pass());
  CHECK(rep.clauses.at(3).applies);  // rs = 6 = 2 mod 4
  CHECK(theorem_constraint_report(*ex.setting, 3, 2, {}).pass());
  const auto distinct = distinct_classes(*ex.setting, found.witnesses);
  CHECK(!distinct.empty());
  CHECK(distinct.size() <= found.witnesses.size());

  const auto g108 = group_108();
  TwistedSetting st108(g108.group, GroupAut::identity(g108.group));
  const auto w108 = find_pair_witnesses(st108, 3, 2);
  has = false;
  for (const auto& w : w108.witnesses) has = has || (w.x == g108.x && w.y == g108.y);
  CHECK(has);
  CHECK(semidirect_equiv(st108, g108.x, g108.y, 3));
  CHECK(semidirect_equiv(st108, g108.x, g108.y, 2));
  CHECK_FALSE(semidirect_equiv(st108, g108.x, g108.y, 1));
  CHECK(theorem_constraint_report(st108, 3, 2, w108.witnesses).pass());

  CHECK_THROWS_AS(find_pair_witnesses(st108, 2, 4), Error);
}

TEST_CASE("modular diagonal elements") {
  CHECK(modular_m(3, 2) == 7);
  const auto mu = find_modular_mu(39, 3, 2);
  REQUIRE(mu.has_value());
  const auto rep = verify_modular_elements(39, 3, 2, *mu, 7);
  CHECK(rep.pass());
  CHECK(rep.to_json()["pass"] == true);
  // Modulo 13 every unit of order 12 has 6th power -1; 2 is one.
  CHECK_FALSE(find_modular_mu(13, 3, 2).has_value());
  try {
    verify_modular_elements(13, 3, 2, 2, 7);
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
  CHECK_THROWS_AS(verify_modular_elements(39, 3, 2, *mu, 5), Error);
}
