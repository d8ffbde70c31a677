#include <algorithm>

#include "cotwist/curves.hpp"
#include "cotwist/parallel.hpp"
#include "internal.hpp"

namespace cotwist::curves {

namespace detail {

AdditiveSolver::AdditiveSolver(FieldPtr field, std::uint64_t q0) : f_(std::move(field)), k_(f_->k()) {
  const auto& F = *f_;
  const std::uint64_t p = F.p();
  std::uint32_t j = 0;
  for (std::uint64_t t = 1; t < q0; t *= p) ++j;
  if (j == 0 || k_ % j != 0) throw Error(ErrorCode::NoSubfieldRelation, "q0 is not the size of a subfield");
  std::vector<std::vector<std::uint64_t>> m(k_, std::vector<std::uint64_t>(k_));
  Elem xi = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    const auto col = F.coeffs(F.sub(F.frobenius(xi, j), xi));
    for (std::uint32_t r = 0; r < k_; ++r) m[r][i] = col[r];
    xi = k_ == 1 ? xi : F.mul(xi, F.x());
  }
  t_.assign(k_, std::vector<std::uint64_t>(k_, 0));
  for (std::uint32_t i = 0; i < k_; ++i) t_[i][i] = 1;
  auto axpy = [p](std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src, std::uint64_t s) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = (dst[i] + s * src[i]) % p;
  };
  for (std::uint32_t col = 0; col < k_ && rank_ < k_; ++col) {
    std::uint32_t piv = rank_;
    while (piv < k_ && m[piv][col] == 0) ++piv;
    if (piv == k_) continue;
    std::swap(m[piv], m[rank_]);
    std::swap(t_[piv], t_[rank_]);
    const std::uint64_t inv = *nt::modinv(m[rank_][col], p);
    for (auto& v : m[rank_]) v = v * inv % p;
    for (auto& v : t_[rank_]) v = v * inv % p;
    for (std::uint32_t r = 0; r < k_; ++r) {
      if (r == rank_ || m[r][col] == 0) continue;
      const std::uint64_t s = p - m[r][col];
      axpy(m[r], m[rank_], s);
      axpy(t_[r], t_[rank_], s);
    }
    pivots_.push_back(col);
    ++rank_;
  }
  std::vector<std::uint32_t> free_cols;
  for (std::uint32_t c = 0, r = 0; c < k_; ++c) {
    if (r < rank_ && pivots_[r] == c) {
      ++r;
    } else {
      free_cols.push_back(c);
    }
  }
  kernel_ = {0};
  for (std::uint32_t fc : free_cols) {
    std::vector<std::uint64_t> v(k_, 0);
    v[fc] = 1;
    for (std::uint32_t r = 0; r < rank_; ++r) v[pivots_[r]] = (p - m[r][fc]) % p;
    const Elem b = F.from_coeffs(v);
    std::vector<Elem> next;
    for (std::uint64_t t = 0; t < p; ++t)
      for (Elem e : kernel_) next.push_back(F.add(e, F.scale(t, b)));
    kernel_ = std::move(next);
  }
}

std::vector<std::uint64_t> AdditiveSolver::reduce(Elem c) const {
  const std::uint64_t p = f_->p();
  const auto cv = f_->coeffs(c);
  std::vector<std::uint64_t> v(k_, 0);
  for (std::uint32_t r = 0; r < k_; ++r) {
    std::uint64_t acc = 0;
    for (std::uint32_t i = 0; i < k_; ++i) acc = (acc + t_[r][i] * cv[i]) % p;
    v[r] = acc;
  }
  return v;
}

bool AdditiveSolver::solvable(Elem c) const {
  const auto v = reduce(c);
  for (std::uint32_t r = rank_; r < k_; ++r)
    if (v[r] != 0) return false;
  return true;
}

std::vector<Elem> AdditiveSolver::solve(Elem c) const {
  const auto v = reduce(c);
  for (std::uint32_t r = rank_; r < k_; ++r)
    if (v[r] != 0) return {};
  std::vector<std::uint64_t> z(k_, 0);
  for (std::uint32_t r = 0; r < rank_; ++r) z[pivots_[r]] = v[r];
  const Elem z0 = f_->from_coeffs(z);
  std::vector<Elem> out;
  out.reserve(kernel_.size());
  for (Elem e : kernel_) out.push_back(f_->add(z0, e));
  std::sort(out.begin(), out.end());
  return out;
}

FastEval::FastEval(const Poly& p) : dense_(p), f_(p.field().get()) {
  const auto& c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) terms_.emplace_back(i, c[i]);
  sparse_ = f_->has_tables() && terms_.size() * 4 <= c.size() + 3;
}

Elem FastEval::operator()(Elem x) const {
  if (!sparse_) return dense_.eval(x);
  const auto& F = *f_;
  Elem acc = 0;
  for (const auto& [e, c] : terms_) acc = F.add(acc, e == 0 ? c : F.mul(c, F.pow(x, e)));
  return acc;
}

LinearTrace::LinearTrace(const ff::Field& sub, const FieldPtr& f) : f_(f) {
  const auto& F = *f_;
  for (std::uint32_t i = 0; i < F.k(); ++i) {
    std::vector<std::uint64_t> digits(F.k(), 0);
    digits[i] = 1;
    basis_trace_.push_back(ff::trace_to(sub, F, F.from_coeffs(digits)));
  }
}

Elem LinearTrace::operator()(Elem a) const {
  const auto& F = *f_;
  const std::uint64_t p = F.p();
  Elem acc = 0;
  for (std::uint32_t i = 0; a != 0; ++i, a /= p) {
    const std::uint64_t d = a % p;
    if (d != 0) acc = F.add(acc, d == 1 ? basis_trace_[i] : F.scale(d, basis_trace_[i]));
  }
  return acc;
}

PointSolver::PointSolver(const CurveModel& c, FieldPtr field) : fam_(c.family()), f_(std::move(field)) {
  eq_ = c.equation(f_);
  const auto e = ff::embed(c.base(), f_);
  switch (fam_) {
    case Family::EvenSuperelliptic:
    case Family::OddDegreeHyperelliptic:
    case Family::WeierstrassShort:
    case Family::ScaledSextic:
      rhs_ = c.double_cover_f(f_);
      break;
    case Family::WeierstrassChar2:
      rhs_ = eq_[0];
      q0_ = 2;
      break;
    case Family::ASRational:
      a_ = e.apply(c.coeff("a"));
      den_ = eq_[1];
      q0_ = 2;
      break;
    case Family::ASAdditive: {
      q0_ = c.param("q0");
      rhs_ = -eq_[0];
      std::uint32_t j = 0;
      for (std::uint64_t t = 1; t < q0_; t *= f_->p()) ++j;
      sub_ = ff::build_field(f_->p(), j, kArithmeticFieldLimit);
      break;
    }
  }
  if (q0_ != 0) solver_ = std::make_shared<AdditiveSolver>(f_, q0_);
  if (!rhs_.is_zero()) rhs_eval_ = FastEval(rhs_);
  if (!den_.is_zero()) den_eval_ = FastEval(den_);
  if (fam_ == Family::ASAdditive) trace_ = LinearTrace(*sub_, f_);
}

std::vector<Elem> PointSolver::ys(Elem x) const {
  const auto& F = *f_;
  switch (fam_) {
    case Family::WeierstrassChar2:
      return solver_->solve(rhs_.eval(x));
    case Family::ASRational: {
      const Elem dv = den_.eval(x);
      if (dv == 0) return {};
      return solver_->solve(F.div(a_, dv));
    }
    case Family::ASAdditive:
      return solver_->solve(rhs_.eval(x));
    default: {
      const Elem v = rhs_.eval(x);
      if (v == 0) return {0};
      const auto s = F.sqrt(v);
      if (!s) return {};
      const Elem t = F.neg(*s);
      return {std::min(*s, t), std::max(*s, t)};
    }
  }
}

std::uint64_t PointSolver::count(Elem x) const {
  const auto& F = *f_;
  switch (fam_) {
    case Family::WeierstrassChar2:
      return F.absolute_trace(rhs_eval_(x)) == 0 ? 2 : 0;
    case Family::ASRational: {
      const Elem dv = den_eval_(x);
      if (dv == 0) return 0;
      return F.absolute_trace(F.div(a_, dv)) == 0 ? 2 : 0;
    }
    case Family::ASAdditive:
      return trace_(rhs_eval_(x)) == 0 ? q0_ : 0;
    default: {
      const Elem v = rhs_eval_(x);
      if (v == 0) return 1;
      return F.is_square(v) ? 2 : 0;
    }
  }
}

}  // namespace detail

std::vector<Elem> affine_ys(const CurveModel& c, const FieldPtr& field, Elem x) {
  return detail::PointSolver(c, field).ys(x);
}

FieldPtr extension(const FieldPtr& base, std::uint32_t degree, std::uint64_t bound) {
  if (degree == 0) throw Error(ErrorCode::InvalidInput, "extension degree must be positive");
  if (degree == 1) return base;
  const auto q = nt::bounded_pow(base->q(), degree, std::min(bound, kArithmeticFieldLimit));
  if (!q) {
    throw Error(ErrorCode::FieldTooLarge,
                base->name() + " to degree " + std::to_string(degree) + " exceeds " + std::to_string(bound));
  }
  return ff::build_field(base->p(), base->k() * degree, kArithmeticFieldLimit);
}

std::uint64_t points_at_infinity(const CurveModel& c, const FieldPtr& field) {
  switch (c.family()) {
    case Family::EvenSuperelliptic:
    case Family::ScaledSextic:
      return field->is_square(c.double_cover_f(field).lead()) ? 2 : 0;
    case Family::ASRational: {
      const auto e = ff::embed(c.base(), field);
      return 2 + ff::nth_roots(*field, e.apply(c.coeff("a")), c.param("rs")).size();
    }
    default:
      return 1;
  }
}

bool count_is_comparative(const CurveModel& c) { return c.family() == Family::ASAdditive; }

std::uint64_t count_points(const CurveModel& c, std::uint32_t d, int workers, std::uint64_t bound) {
  const FieldPtr f = extension(c.base(), d, bound);
  if (f->q() > bound) throw Error(ErrorCode::FieldTooLarge, f->name() + " exceeds the enumeration bound");
  const detail::PointSolver solver(c, f);
  const int nw = std::max(1, workers);
  std::vector<std::uint64_t> part(std::size_t(nw), 0);
  parallelize(f->q(), nw, [&](std::size_t w, std::size_t begin, std::size_t end) {
    std::uint64_t acc = 0;
    for (std::size_t x = begin; x < end; ++x) acc += solver.count(Elem(x));
    part[w] = acc;
  });
  std::uint64_t total = points_at_infinity(c, f);
  for (auto v : part) total += v;
  return total;
}

std::uint64_t count_points_naive(const CurveModel& c, std::uint32_t d) {
  const FieldPtr f = extension(c.base(), d, 100'000);
  const auto eq = c.equation(f);
  std::uint64_t total = points_at_infinity(c, f);
  for (Elem x = 0; x < f->q(); ++x)
    for (Elem y = 0; y < f->q(); ++y)
      if (detail::eval_equation(eq, x, y) == 0) ++total;
  return total;
}

std::uint64_t count_points_tabulated(const CurveModel& c, std::uint32_t d, std::uint64_t bound) {
  const FieldPtr f = extension(c.base(), d, bound);
  if (f->q() > bound) throw Error(ErrorCode::FieldTooLarge, f->name() + " exceeds the enumeration bound");
  const auto& F = *f;
  const auto eq = c.equation(f);
  // Every family has P_j = g_j A(x) for j >= 1 with constants g_j.
  std::size_t ja = 1;
  while (ja < eq.size() && eq[ja].is_zero()) ++ja;
  const Poly& A = eq.at(ja);
  const Elem lead = A.lead();
  std::vector<Elem> g(eq.size(), 0);
  for (std::size_t j = 1; j < eq.size(); ++j) {
    g[j] = F.div(eq[j].lead(), lead);
    if (eq[j] != A.scaled(g[j])) throw Error(ErrorCode::ShapeMismatch, "y-side does not factor as G(y) A(x)");
  }
  std::vector<std::uint32_t> table(F.q(), 0);
  for (Elem y = 0; y < F.q(); ++y) {
    Elem v = 0, yp = 1;
    for (std::size_t j = 1; j < eq.size(); ++j) {
      yp = F.mul(yp, y);
      v = F.add(v, F.mul(g[j], yp));
    }
    ++table[v];
  }
  std::uint64_t total = points_at_infinity(c, f);
  for (Elem x = 0; x < F.q(); ++x) {
    const Elem ax = A.eval(x);
    if (ax == 0) {
      if (eq[0].eval(x) == 0) total += F.q();
      continue;
    }
    total += table[F.neg(F.div(eq[0].eval(x), ax))];
  }
  return total;
}

Fingerprint fingerprint(const CurveModel& c, const std::vector<std::uint32_t>& degrees, int workers) {
  Fingerprint out;
  for (auto d : degrees) out.emplace_back(d, count_points(c, d, workers));
  return out;
}

}  // namespace cotwist::curves
