#pragma once

// Dense univariate polynomials over a Field. Coefficients low to high, no
// trailing zeros, so the zero polynomial has an empty vector.

#include <cstdint>
#include <utility>
#include <vector>

#include "cotwist/ff.hpp"

namespace cotwist::ff {

class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr f) : f_(std::move(f)) {}
  Poly(FieldPtr f, std::vector<Elem> c);

  static Poly constant(FieldPtr f, Elem c);
  static Poly monomial(FieldPtr f, Elem c, std::size_t deg);
  static Poly x(FieldPtr f) { return monomial(std::move(f), 1, 1); }

  const FieldPtr& field() const { return f_; }
  const Field& F() const { return *f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<Elem>& coeffs() const { return c_; }

  Elem eval(Elem x) const;
  Poly derivative() const;
  Poly monic() const;
  Poly scaled(Elem s) const;
  Poly shifted(std::size_t n) const;  // times x^n

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const { return scaled(f_->neg(1)); }
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly pow(std::uint64_t e) const;
  /// this^e mod m.
  Poly pow_mod(std::uint64_t e, const Poly& m) const;
  /// Polynomial composition this(g).
  Poly compose(const Poly& g) const;

 private:
  void trim();
  FieldPtr f_;
  std::vector<Elem> c_;
};

/// Monic gcd (zero if both are zero).
Poly gcd(Poly a, Poly b);
/// True iff gcd(f, f') is constant.
bool poly_discriminant_nonzero(const Poly& f);
/// Distinct roots in the coefficient field, sorted by index.
std::vector<Elem> roots(const Poly& f);
/// Rabin test over the prime field (f must be over a prime field).
bool is_irreducible(const Poly& f);

}  // namespace cotwist::ff
