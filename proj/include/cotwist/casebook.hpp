#pragma once

// Finite verifications of the genus-1 classification and the genus-2
// examples and exclusions, each as a list of claims with witnesses.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cotwist/curves.hpp"
#include "cotwist/h1.hpp"

namespace cotwist::casebook {

using json = nlohmann::json;

struct Claim {
  std::string anchor;     // short stable id, e.g. "genus1.base_nonisomorphic"
  std::string statement;  // what was checked
  bool pass = false;
  json witness = json::object();  // maps, conjugators or sweep sizes
};

struct CaseReport {
  std::string id;
  json field = json::object();
  std::vector<Claim> claims;

  bool pass() const;
  json to_json() const;
  void add(std::string anchor, std::string statement, bool pass, json witness = json::object());
};

CaseReport genus1_char3(std::uint64_t q = 3, int workers = 1);
CaseReport genus1_char2(std::uint32_t d = 1, int workers = 1);
CaseReport genus1_group_exclusions(int workers = 1);
CaseReport genus2_f5_catalog(int workers = 1);
/// a = 0 picks the smallest element of nonzero absolute trace.
CaseReport genus2bigger_family(std::uint64_t q = 5, ff::Elem a = 0, int workers = 1);
CaseReport d6_cocycle_case(std::uint64_t q = 7);
CaseReport d6_char2_case(std::uint64_t q = 2);
CaseReport d12_case(std::uint64_t q = 7, int workers = 1);
CaseReport s4_case(std::uint64_t q = 7);
CaseReport s5_case(std::uint64_t q = 25, int workers = 1);
CaseReport char3_case(std::uint64_t q = 3);

/// Case ids in suite order.
const std::vector<std::string>& case_ids();
/// Field sizes run by `casebook all` for each id.
std::vector<std::uint64_t> suite_sizes(const std::string& id);
/// q = nullopt uses the first suite size.
CaseReport run_case(const std::string& id, std::optional<std::uint64_t> q = std::nullopt, int workers = 1);
std::vector<CaseReport> run_all(int workers = 1);

/// One row per case: id, q, claims, passed, verdict.
std::string summary_tsv(const std::vector<CaseReport>& reports);

/// Frobenius orbit lengths on the Weierstrass points of y^2 = f over the
/// degree-t extension of the base, sorted.
std::vector<std::uint64_t> weierstrass_orbits(const curves::CurveModel& c, std::uint32_t t);

}  // namespace cotwist::casebook
