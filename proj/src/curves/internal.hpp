#pragma once

#include <cstdint>
#include <vector>

#include "cotwist/curves.hpp"

namespace cotwist::curves::detail {

/// Solves z^q0 - z = c over a fixed field by one precomputed elimination.
class AdditiveSolver {
 public:
  AdditiveSolver(FieldPtr field, std::uint64_t q0);
  /// All solutions, sorted; empty when c is outside the image.
  std::vector<Elem> solve(Elem c) const;
  bool solvable(Elem c) const;

 private:
  std::vector<std::uint64_t> reduce(Elem c) const;

  FieldPtr f_;
  std::uint32_t k_ = 0, rank_ = 0;
  std::vector<std::vector<std::uint64_t>> t_;  // row operations
  std::vector<std::uint32_t> pivots_;          // pivot column per row
  std::vector<Elem> kernel_;                   // the subfield of size q0
};

/// Polynomial evaluation that uses x^e lookups when few terms are nonzero.
class FastEval {
 public:
  FastEval() = default;
  explicit FastEval(const Poly& p);
  Elem operator()(Elem x) const;

 private:
  Poly dense_;
  const ff::Field* f_ = nullptr;
  std::vector<std::pair<std::uint64_t, Elem>> terms_;
  bool sparse_ = false;
};

/// Tr_{F/F_q0} as a linear form on base-p digits; values are digit vectors
/// packed into an Elem of F.
class LinearTrace {
 public:
  LinearTrace() = default;
  LinearTrace(const ff::Field& sub, const FieldPtr& f);
  Elem operator()(Elem a) const;

 private:
  FieldPtr f_;
  std::vector<Elem> basis_trace_;
};

/// Affine y-values of a curve over one field, with equation and solvers
/// prepared once.
class PointSolver {
 public:
  PointSolver(const CurveModel& c, FieldPtr field);
  std::vector<Elem> ys(Elem x) const;
  /// Number of affine y over x, without producing them.
  std::uint64_t count(Elem x) const;
  const std::vector<Poly>& equation() const { return eq_; }

 private:
  Family fam_;
  FieldPtr f_;
  std::vector<Poly> eq_;
  Poly rhs_;  // f, g or a u^s - 1 depending on family
  Poly den_;  // ASRational: w^rs + a
  FastEval rhs_eval_, den_eval_;
  LinearTrace trace_;
  Elem a_ = 0;
  std::uint64_t q0_ = 0;
  std::shared_ptr<AdditiveSolver> solver_;
  FieldPtr sub_;  // ASAdditive: the subfield of size q0
};

/// Binomial coefficients mod p, rows 0..n.
std::vector<std::vector<std::uint64_t>> binomials_mod(std::uint64_t n, std::uint64_t p);

/// sum_i h_i N^i D^(k-i); negative powers of D only when D is constant.
Poly homogenize(const Poly& h, const Poly& n, const Poly& d, std::uint32_t k);

/// Evaluates sum_j eq[j](x) y^j.
Elem eval_equation(const std::vector<Poly>& eq, Elem x, Elem y);

}  // namespace cotwist::curves::detail
