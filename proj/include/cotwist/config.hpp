#pragma once

#include <cstdint>

namespace cotwist {

/// Enumeration bounds and worker count shared by every sweep.
struct RunConfig {
  std::uint64_t max_field = 10'000'000;
  std::uint64_t max_group = 100'000;
  std::uint64_t max_closure = 10'000;
  int workers = 1;
};

/// Fields up to this size get exponent/log tables.
inline constexpr std::uint64_t kTableFieldLimit = std::uint64_t{1} << 21;

/// Fields used only for exact arithmetic (never enumerated) may go up to here.
inline constexpr std::uint64_t kArithmeticFieldLimit = std::uint64_t{1} << 62;

inline const RunConfig& default_config() {
  static const RunConfig cfg{};
  return cfg;
}

}  // namespace cotwist
