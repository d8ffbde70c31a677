#pragma once

// Gaussian elimination over F_p for small dense systems.

#include <cstdint>
#include <optional>
#include <vector>

namespace cotwist::ff {

struct LinearSolution {
  std::vector<std::uint64_t> particular;
  std::vector<std::vector<std::uint64_t>> kernel;  // basis
};

/// Solves A z = b over F_p with A given row-major (rows x cols).
/// Free variables are set to zero in the particular solution.
std::optional<LinearSolution> solve_mod_p(std::vector<std::vector<std::uint64_t>> a,
                                          std::vector<std::uint64_t> b, std::uint64_t p);

}  // namespace cotwist::ff
