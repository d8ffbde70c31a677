// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
// Each check carries its own runtime budget.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cotwist/casebook.hpp"
#include "cotwist/constructions.hpp"
#include "cotwist/curves.hpp"
#include "cotwist/h1.hpp"
#include "cotwist/numtheory.hpp"

namespace {

using namespace cotwist;
using groups::GroupAut;
using groups::Index;

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << " [" << what << "]";
    }
  }
};

int workers = 1;

const constructions::Verdict* verdict(const constructions::VerificationReport& r, const std::string& name) {
  for (const auto& v : r.verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

bool verdict_passes(const constructions::VerificationReport& r, const std::string& name) {
  const auto* v = verdict(r, name);
  return v && v->status == constructions::Status::Pass;
}

const casebook::Claim* claim(const casebook::CaseReport& r, const std::string& anchor) {
  for (const auto& c : r.claims)
    if (c.anchor == anchor) return &c;
  return nullptr;
}

bool claim_passes(const casebook::CaseReport& r, const std::string& anchor) {
  const auto* c = claim(r, anchor);
  return c && c->pass;
}

void c1_ps(Outcome& o) {
  const auto b = constructions::construct(2, 2, 3);
  o.require(b.params.variant == constructions::Variant::PS && b.params.q == 4, "PS over F4");
  o.require(curves::count_points(b.C, 1) == 13 && curves::count_points_naive(b.C, 1) == 13, "#C(F4) = 13");
  o.require(curves::count_points(b.D, 1) == 1 && curves::count_points_naive(b.D, 1) == 1, "#D(F4) = 1");
  o.require(b.L_degree == 2 && b.M_degree == 3, "degrees 2, 3");
  o.require(curves::check_iso(b.iso_L, b.C, b.D), "iso over degree 2");
  o.require(curves::check_iso(b.iso_M, b.C, b.D), "iso over degree 3");
  const auto rep = constructions::verify_bundle(b, 0, workers);
  o.require(rep.fully_green(), "verify_bundle green");
}

void c2_prsodd(Outcome& o) {
  const auto b = constructions::construct(5, 3, 2);
  o.require(b.params.variant == constructions::Variant::PrsOdd && b.params.q == 25, "PrsOdd over F25");
  const auto rep = constructions::verify_bundle(b, 0, workers);
  o.require(rep.fully_green(), "verify_bundle green");
  o.require(verdict_passes(rep, "isomorphisms"), "isomorphisms");
  const auto* sub = verdict(rep, "subextensions");
  bool kummer_empty = sub != nullptr && sub->status == constructions::Status::Pass;
  if (sub)
    for (const auto& row : sub->detail)
      kummer_empty = kummer_empty && row["criterion"] == "kummer" && row["shape_cx"]["solvable"] == false &&
                     row["shape_c_over_x"]["solvable"] == false;
  o.require(kummer_empty, "Kummer obstruction empty over F25");
}

void c3_prseven(Outcome& o) {
  const auto b = constructions::construct(2, 3, 5);
  o.require(b.params.variant == constructions::Variant::PrsEven && b.params.q == 16, "PrsEven over F16");
  o.require(constructions::verify_bundle(b, 0, workers).fully_green(), "verify_bundle green");
}

void c4_semidirect(Outcome& o) {
  std::vector<h1::TwistedSetting> settings;
  for (std::uint32_t n = 1; 2 * n <= 60; ++n) {
    auto d = std::make_shared<const groups::Dihedral>(n);
    settings.emplace_back(d, GroupAut::identity(d));
    if (n >= 3) settings.emplace_back(d, groups::parse_aut(d, "flip"));
    // A non-inner twist whenever (Z/n)* has an element other than +-1.
    for (std::uint32_t k = 2; k + 1 < n; ++k)
      if (std::gcd(k, n) == 1) {
        settings.emplace_back(d, groups::parse_aut(d, "pow:" + std::to_string(k) + ":1"));
        break;
      }
  }
  const auto g108 = groups::group_108().group;
  settings.emplace_back(g108, GroupAut::identity(g108));
  settings.emplace_back(g108, GroupAut::inner(g108, groups::group_108().alpha));

  std::uint64_t checks = 0, mismatches = 0;
  for (const auto& st : settings) {
    const auto n = static_cast<Index>(st.group().order());
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        for (std::uint64_t m = 1; m <= 12; ++m) {
          ++checks;
          if (h1::semidirect_equiv(st, x, y, m) != h1::restriction_agrees(st, x, y, m).has_value()) ++mismatches;
        }
  }
  o.note << " settings=" << settings.size() << " checks=" << checks;
  o.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
}

void c5_dihedral(Outcome& o) {
  for (auto [r, s] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{3, 2}, {5, 2}, {5, 4}, {3, 4}}) {
    const auto ex = h1::dihedral_example(r, s);
    const auto tag = "(" + std::to_string(r) + "," + std::to_string(s) + ")";
    const auto found = h1::find_pair_witnesses(*ex.setting, r, s, 0, workers);
    bool has = false;
    for (const auto& w : found.witnesses) has = has || (w.x == ex.x && w.y == ex.y);
    o.require(has, tag + " pair returned");
    for (std::uint64_t d = 1; d <= 2 * r * s; ++d) {
      const bool agrees = h1::restriction_agrees(*ex.setting, ex.x, ex.y, d).has_value();
      o.require(agrees == (d % r == 0 || d % s == 0), tag + " d=" + std::to_string(d));
    }
  }
}

void c6_group108(Outcome& o) {
  const auto g = groups::group_108();
  const h1::TwistedSetting st(g.group, GroupAut::identity(g.group));
  const auto found = h1::find_pair_witnesses(st, 3, 2, 0, workers);
  const h1::PairWitness* hit = nullptr;
  for (const auto& w : found.witnesses)
    if (w.x == g.x && w.y == g.y) hit = &w;
  o.require(hit != nullptr, "(x, y) is a witness");
  if (hit) o.require(h1::theorem_constraint_report(st, *hit).pass(), "constraint report");
  o.require(h1::theorem_constraint_report(st, 3, 2, found.witnesses).pass(), "constraint report over the search");
  const auto n = g.group->order();
  o.require(n == 108 && n % 12 == 0 && n != 6, "12 | 108, 108 != 6");
}

void c7_genus1_groups(Outcome& o) {
  for (const char* spec : {"sl2:3", "c3c4"}) {
    const auto g = groups::parse_basic_group(spec);
    const auto r = h1::find_pair_witnesses(h1::TwistedSetting(g, GroupAut::identity(g)), 2, 3, 0, workers);
    o.require(r.witnesses.empty(), std::string(spec) + " empty");
    o.require(r.pairs_swept == g->order() * g->order(), std::string(spec) + " exhaustive");
  }
  o.require(groups::parse_basic_group("sl2:3")->order() == 24, "|SL2(F3)| = 24");
  o.require(groups::parse_basic_group("c3c4")->order() == 12, "|C3 x| C4| = 12");
}

void c8_genus1_char3(Outcome& o) {
  const auto r = casebook::genus1_char3(3, workers);
  o.require(r.pass(), "all claims");
  const auto* base = claim(r, "genus1.counts_base");
  o.require(base && base->witness["C"] == 1 && base->witness["D"] == 7 &&
                base->witness["oracle"] == nlohmann::json::array({1, 7}),
            "counts (1, 7) with oracle");
  const auto* q = claim(r, "genus1.quadratic_witness");
  const auto* c = claim(r, "genus1.cubic_witness");
  o.require(q && q->pass && !q->witness["search"]["witness"].is_null(), "search witness over F9");
  o.require(c && c->pass && !c->witness["search"]["witness"].is_null(), "search witness over F27");
  o.require(claim_passes(r, "genus1.base_nonisomorphic"), "none over F3");
  o.require(claim_passes(r, "genus1.counts_agree"), "equal counts over F9, F27");
}

void c9_genus1_char2(Outcome& o) {
  const auto r = casebook::genus1_char2(1, workers);
  o.require(claim_passes(r, "genus1.char2_distinct_base"), "distinct over F2");
  o.require(claim_passes(r, "genus1.char2_distinct_cubic"), "distinct over F8");
  const auto* m = claim(r, "genus1.char2_mass");
  o.require(m && m->pass && m->witness["mass"] == "1", "mass = 1");
}

void c10_genus2_f5(Outcome& o) {
  const auto r = casebook::genus2_f5_catalog(workers);
  o.require(r.pass(), "all claims");
  const auto* m = claim(r, "f5.mass");
  o.require(m && m->witness["mass"] == "1", "mass = 1");
  const auto* f = claim(r, "f5.weierstrass_filter");
  o.require(f && f->witness["survivors"] == nlohmann::json::array({nlohmann::json::array({"x^5-x+1", "x^5-x+2"})}),
            "unique pair");
  const auto* c = claim(r, "f5.f125_counts");
  o.require(c && c->pass && c->witness["C"] != c->witness["D"], "F125 counts differ");
}

void c11_genus2bigger(Outcome& o) {
  const auto r = casebook::genus2bigger_family(5, 1, workers);
  const auto* base = claim(r, "bigger.base_nonisomorphic");
  o.require(base && base->pass && base->witness["candidates"] == 480, "480 candidates, none over F5");
  const auto* quad = claim(r, "bigger.quadratic_witness");
  o.require(quad && quad->pass && !quad->witness["witness"].is_null(), "witness over F25");
  o.require(claim_passes(r, "bigger.translation"), "translation over degree 5");
  o.require(r.pass(), "all claims");
}

void c12_casebook(Outcome& o) {
  const std::vector<std::pair<std::string, std::vector<std::uint64_t>>> plan{
      {"d6", {5, 7, 11, 13, 17, 19, 23}}, {"d6-char2", {2, 8}}, {"d12", {7, 11}},
      {"s4", {7, 11}},                    {"s5", {25}},         {"char3", {3, 27}}};
  std::size_t cases = 0;
  for (const auto& [id, qs] : plan)
    for (auto q : qs) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto r = casebook::run_case(id, q, workers);
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      const auto tag = id + " q=" + std::to_string(q);
      o.require(r.pass(), tag);
      o.require(dt.count() < 300, tag + " over 5 min");
      ++cases;
    }
  o.note << " cases=" << cases;
}

void c13_kummer(Outcome& o) {
  std::uint64_t fields = 0, entries = 0;
  for (std::uint64_t q = 2; q <= 49; ++q) {
    const auto ps = nt::prime_factors(q);
    if (ps.size() != 1) continue;
    const auto p = ps[0];
    std::uint32_t k = 0;
    for (auto t = q; t > 1; t /= p) ++k;
    const auto F = ff::build_field(p, k);
    for (std::uint64_t m : {3, 4, 6}) {
      if (m % p == 0 || (q - 1) % m != 0) continue;
      ++fields;
      for (const auto& e : curves::kummer_census_all(m, F, workers)) {
        if (ff::is_mth_power(*F, e.a, m)) continue;
        ++entries;
        if (!curves::is_scaling_shape(e.map))
          o.require(false, "F" + std::to_string(q) + " m=" + std::to_string(m) + " non-scaling map");
      }
    }
  }
  const auto f5 = ff::build_field(5, 1);
  const auto rem = curves::kummer_map_census(6, 1, 1, f5);
  const std::array<ff::Elem, 4> non_scaling{1, 2, 2, 1};  // (x + 2) / (2x + 1)
  o.require(std::find(rem.begin(), rem.end(), non_scaling) != rem.end(), "F5 non-scaling map");
  o.note << " fields=" << fields << " maps=" << entries;
}

void c14_modular(Outcome& o) {
  const auto m = h1::modular_m(3, 2);
  const auto mu = h1::find_modular_mu(39, 3, 2);
  o.require(mu.has_value(), "mu exists mod 39");
  if (mu) o.require(h1::verify_modular_elements(39, 3, 2, *mu, m).pass(), "full pass");
}

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--only", only, "Run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "PS (2,3,4) counts and isomorphisms", 1, c1_ps},
      {2, "PrsOdd (5,3,2) q=25 bundle", 10, c2_prsodd},
      {3, "PrsEven (2,3,5) q=16 bundle", 30, c3_prseven},
      {4, "semidirect criterion equals restriction", 300, c4_semidirect},
      {5, "dihedral example witnesses and agreement pattern", 60, c5_dihedral},
      {6, "order-108 witness and constraint report", 60, c6_group108},
      {7, "genus-1 group exclusions", 1, c7_genus1_groups},
      {8, "genus-1 F3 pair", 1, c8_genus1_char3},
      {9, "genus-1 char-2 triple", 1, c9_genus1_char2},
      {10, "genus-2 F5 catalog", 120, c10_genus2_f5},
      {11, "genus2bigger q=5", 600, c11_genus2bigger},
      {12, "casebook cocycle cases", 6 * 300, c12_casebook},
      {13, "Kummer map census", 600, c13_kummer},
      {14, "modular elements n=39", 60, c14_modular},
  };

  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    if (dt.count() >= c.budget_s) o.require(false, "over budget");
    std::ostringstream secs;
    secs.precision(3);
    secs << std::fixed << dt.count();
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << secs.str() << " s)"
              << o.note.str() << std::endl;
    failed += !o.ok;
  }
  return failed ? 1 : 0;
}
