#pragma once

// Integer helpers on 64-bit values.

#include <cstdint>
#include <optional>
#include <vector>

namespace cotwist::nt {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
/// Deterministic for all 64-bit inputs.
bool is_prime(std::uint64_t n);
/// Distinct prime factors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
/// All positive divisors, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);
/// Inverse of a mod m, if gcd(a, m) = 1.
std::optional<std::uint64_t> modinv(std::uint64_t a, std::uint64_t m);
/// base^exp, or nullopt if it exceeds bound.
std::optional<std::uint64_t> bounded_pow(std::uint64_t base, std::uint64_t exp,
                                         std::uint64_t bound);
/// Nonnegative residue of a mod m.
inline std::uint64_t mod(std::int64_t a, std::uint64_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  std::int64_t r = a % mm;
  return static_cast<std::uint64_t>(r < 0 ? r + mm : r);
}

}  // namespace cotwist::nt
