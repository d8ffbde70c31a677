#pragma once

/// Exact arithmetic in finite fields F_{p^k}.
///
/// An element is stored as an integer index: the coefficient vector
/// (c_0, ..., c_{k-1}) of its polynomial representative read as base-p digits
/// with c_0 least significant. Index order is the canonical element order, and
/// every "smallest element" tie-break in the library means smallest index.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cotwist/config.hpp"
#include "cotwist/error.hpp"
#include "cotwist/numtheory.hpp"

namespace cotwist::ff {

using Elem = std::uint64_t;
using json = nlohmann::json;

/// A finite field given by characteristic, degree and monic modulus
/// (coefficients low to high). For k = 1 the modulus is x.
struct FieldSpec {
  std::uint64_t p = 0;
  std::uint32_t k = 0;
  std::vector<std::uint64_t> modulus;

  std::uint64_t size() const;
  bool operator==(const FieldSpec&) const = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field : public std::enable_shared_from_this<Field> {
 public:
  Field(std::uint64_t p, std::uint32_t k, std::vector<std::uint64_t> modulus);

  std::uint64_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint64_t q() const { return q_; }
  const FieldSpec& spec() const { return spec_; }
  std::string name() const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t c) const;
  Elem from_coeffs(const std::vector<std::uint64_t>& coeffs) const;
  std::vector<std::uint64_t> coeffs(Elem a) const;
  /// The class of x modulo the modulus (0 for prime fields).
  Elem x() const { return k_ == 1 ? 0 : p_; }

  Elem add(Elem a, Elem b) const {
    if (p_ == 2) return a ^ b;
    if (k_ == 1) {
      const Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_digits(a, b);
  }
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) return exp_[log_[a] + log_[b]];
    return mul_slow(a, b);
  }
  Elem scale(std::uint64_t c, Elem a) const;  // c in F_p
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem pow_signed(Elem a, std::int64_t e) const;
  Elem frobenius(Elem a, std::uint32_t times = 1) const;

  bool has_tables() const { return !log_.empty(); }
  /// Discrete log base generator(); only valid when has_tables() and a != 0.
  std::uint64_t log(Elem a) const { return log_[a]; }
  Elem exp(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }

  bool is_square(Elem a) const;
  /// Smaller (by index) square root, if any.
  std::optional<Elem> sqrt(Elem a) const;
  /// Tr_{F/F_p}(a) as an integer in [0, p).
  std::uint64_t absolute_trace(Elem a) const;
  /// Smallest multiplicative generator.
  Elem generator() const;
  std::uint64_t order_of(Elem a) const;
  /// Distinct prime factors of q - 1.
  const std::vector<std::uint64_t>& unit_primes() const;

 private:
  Elem add_digits(Elem a, Elem b) const;
  Elem mul_slow(Elem a, Elem b) const;
  Elem pow_slow(Elem a, std::uint64_t e) const;
  void build_tables();

  std::uint64_t p_;
  std::uint32_t k_;
  std::uint64_t q_;
  FieldSpec spec_;
  std::vector<std::uint64_t> ppow_;
  std::vector<std::uint64_t> trace_basis_;
  std::vector<std::uint64_t> unit_primes_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
  mutable std::once_flag gen_once_;
  mutable Elem generator_ = 0;
};

/// Field with the smallest monic irreducible modulus of degree k (polynomials
/// ordered by the integer whose base-p digits are c_0..c_{k-1}). Cached.
FieldPtr build_field(std::uint64_t p, std::uint32_t k,
                     std::uint64_t bound = default_config().max_field);
/// Reconstructs a field from a serialized spec; the modulus must be irreducible.
FieldPtr field_from_spec(const FieldSpec& spec,
                         std::uint64_t bound = kArithmeticFieldLimit);

/// Value type pairing a field with one of its elements.
class FieldElem {
 public:
  FieldElem() = default;
  FieldElem(FieldPtr f, Elem v) : f_(std::move(f)), v_(v) {}

  const FieldPtr& field() const { return f_; }
  Elem value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  FieldElem operator+(const FieldElem& o) const { return {f_, f_->add(v_, o.v_)}; }
  FieldElem operator-(const FieldElem& o) const { return {f_, f_->sub(v_, o.v_)}; }
  FieldElem operator*(const FieldElem& o) const { return {f_, f_->mul(v_, o.v_)}; }
  FieldElem operator/(const FieldElem& o) const { return {f_, f_->div(v_, o.v_)}; }
  FieldElem operator-() const { return {f_, f_->neg(v_)}; }
  FieldElem pow(std::int64_t e) const { return {f_, f_->pow_signed(v_, e)}; }
  bool operator==(const FieldElem& o) const { return v_ == o.v_; }
  bool operator!=(const FieldElem& o) const { return v_ != o.v_; }

 private:
  FieldPtr f_;
  Elem v_ = 0;
};

struct SubfieldEmbedding {
  FieldPtr source;
  FieldPtr target;
  Elem generator_image = 0;
  /// generator_image^i for i < source degree.
  std::vector<Elem> basis_images;

  Elem apply(Elem a) const;
  /// Inverse on the image; none if b is not in the image.
  std::optional<Elem> preimage(Elem b) const;
};

/// Sends the source generator to the smallest root of the source modulus.
SubfieldEmbedding embed(const FieldPtr& sub, const FieldPtr& sup);

Elem primitive_element(const Field& f);
std::uint64_t mth_power_class_order(const Field& f, Elem a, std::uint64_t m);
bool is_mth_power(const Field& f, Elem a, std::uint64_t m);
/// Sum of the conjugates a^{q0^i} over the relative degree; lies in sub's image.
Elem trace_to(const Field& sub, const Field& f, Elem a);
/// All z with z^p - z = c, sorted.
std::vector<Elem> solve_artin_schreier(const Field& f, Elem c);
/// All z with z^{q0} - z = c for q0 = p^j dividing the field, sorted.
std::vector<Elem> solve_additive(const Field& f, std::uint64_t q0, Elem c);
std::optional<Elem> sqrt_or_none(const Field& f, Elem a);
bool is_square(const Field& f, Elem a);
/// All n-th roots of a, sorted.
std::vector<Elem> nth_roots(const Field& f, Elem a, std::uint64_t n);
std::uint64_t crt(const std::vector<std::int64_t>& residues,
                  const std::vector<std::uint64_t>& moduli);

json to_json(const FieldSpec& spec);
FieldSpec spec_from_json(const json& j);
json elem_to_json(const Field& f, Elem a);
Elem elem_from_json(const Field& f, const json& j);

}  // namespace cotwist::ff
