#pragma once

// Explicit pairs of curves over F_q that become isomorphic over the
// extensions of degrees r and s but over no proper subextension of either.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cotwist/curves.hpp"

namespace cotwist::constructions {

using curves::CurveModel;
using curves::IsoMap;
using ff::Elem;
using ff::FieldPtr;
using json = nlohmann::json;

enum class Variant { PrsOdd, PrsEven, PS };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct ConstructionParams {
  std::uint64_t p = 0, r = 0, s = 0;  // as requested
  Variant variant = Variant::PrsOdd;
  bool swapped = false;               // r and s exchanged before building
  std::uint64_t q = 0;
  Elem a = 0;
  std::int64_t i = 0, j = 0;  // PrsOdd
  std::int64_t m = 0;         // PrsEven
  json derived = json::object();
};

struct TwistPairBundle {
  FieldPtr K;
  CurveModel C, D;
  std::uint64_t L_degree = 0, M_degree = 0;
  IsoMap iso_L, iso_M;
  ConstructionParams params;

  std::uint64_t genus() const;
  json to_json() const;
  static TwistPairBundle from_json(const json& j);
};

/// Variant chosen by construct; throws UnsupportedCombination.
Variant select_variant(std::uint64_t p, std::uint64_t r, std::uint64_t s);

/// Smallest admissible q for the variant (after any swap).
std::uint64_t choose_q(Variant v, std::uint64_t p, std::uint64_t r, std::uint64_t s);

TwistPairBundle construct(std::uint64_t p, std::uint64_t r, std::uint64_t s,
                          std::optional<Variant> variant = std::nullopt);

/// Smallest c in N* (index order) with a^diff = c^power, by sweeping N*.
std::optional<Elem> kummer_obstruction(const ff::Field& N, Elem a, std::int64_t diff, std::uint64_t power,
                                       std::uint64_t bound = default_config().max_field);

enum class Status { Pass, Fail, Skipped };
const char* status_name(Status s);

struct Verdict {
  std::string name;
  Status status = Status::Pass;
  json detail = json::object();
};

struct VerificationReport {
  std::vector<Verdict> verdicts;
  bool pass() const;  // no verdict failed
  bool fully_green() const;  // every verdict passed
  json to_json() const;
};

/// max_ext = 0 means max(L_degree, M_degree).
VerificationReport verify_bundle(const TwistPairBundle& b, std::uint32_t max_ext = 0, int workers = 1,
                                 std::uint64_t bound = default_config().max_field);

}  // namespace cotwist::constructions
