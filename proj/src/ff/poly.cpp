#include "cotwist/poly.hpp"

#include <algorithm>

namespace cotwist::ff {

Poly::Poly(FieldPtr f, std::vector<Elem> c) : f_(std::move(f)), c_(std::move(c)) { trim(); }

Poly Poly::constant(FieldPtr f, Elem c) { return Poly(std::move(f), {c}); }

Poly Poly::monomial(FieldPtr f, Elem c, std::size_t deg) {
  std::vector<Elem> v(deg + 1, 0);
  v[deg] = c;
  return Poly(std::move(f), std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Elem Poly::eval(Elem x) const {
  const Field& F = *f_;
  Elem r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = F.add(F.mul(r, x), *it);
  return r;
}

Poly Poly::derivative() const {
  std::vector<Elem> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(f_->scale(i % f_->p(), c_[i]));
  return Poly(f_, std::move(d));
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return scaled(f_->inv(lead()));
}

Poly Poly::scaled(Elem s) const {
  std::vector<Elem> d(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) d[i] = f_->mul(c_[i], s);
  return Poly(f_, std::move(d));
}

Poly Poly::shifted(std::size_t n) const {
  if (c_.empty()) return *this;
  std::vector<Elem> d(n, 0);
  d.insert(d.end(), c_.begin(), c_.end());
  return Poly(f_, std::move(d));
}

Poly Poly::operator+(const Poly& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  std::vector<Elem> d(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = f->add((*this)[i], o[i]);
  return Poly(f, std::move(d));
}

Poly Poly::operator-(const Poly& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  std::vector<Elem> d(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = f->sub((*this)[i], o[i]);
  return Poly(f, std::move(d));
}

Poly Poly::operator*(const Poly& o) const {
  const FieldPtr& f = f_ ? f_ : o.f_;
  if (c_.empty() || o.c_.empty()) return Poly(f);
  std::vector<Elem> d(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      d[i + j] = f->add(d[i + j], f->mul(c_[i], o.c_[j]));
    }
  }
  return Poly(f, std::move(d));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw Error(ErrorCode::ZeroElement, "polynomial division by zero");
  const Field& F = *d.f_;
  if (degree() < d.degree()) return {Poly(d.f_), *this};
  std::vector<Elem> r = c_;
  std::vector<Elem> q(c_.size() - d.c_.size() + 1, 0);
  const Elem li = F.inv(d.lead());
  const std::size_t dn = d.c_.size() - 1;
  for (std::size_t i = r.size(); i-- > dn;) {
    if (!r[i]) continue;
    const Elem t = F.mul(r[i], li);
    q[i - dn] = t;
    for (std::size_t j = 0; j <= dn; ++j) r[i - dn + j] = F.sub(r[i - dn + j], F.mul(t, d.c_[j]));
  }
  r.resize(dn);
  return {Poly(d.f_, std::move(q)), Poly(d.f_, std::move(r))};
}

Poly Poly::pow(std::uint64_t e) const {
  Poly r = constant(f_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Poly Poly::pow_mod(std::uint64_t e, const Poly& m) const {
  Poly r = constant(f_, 1) % m, b = *this % m;
  while (e) {
    if (e & 1) r = (r * b) % m;
    e >>= 1;
    if (e) b = (b * b) % m;
  }
  return r;
}

Poly Poly::compose(const Poly& g) const {
  Poly r(f_);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * g + constant(f_, *it);
  return r;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

bool poly_discriminant_nonzero(const Poly& f) {
  if (f.degree() < 1) throw Error(ErrorCode::InvalidInput, "degree must be at least 1");
  return gcd(f, f.derivative()).degree() == 0;
}

namespace {

void split_roots(const Poly& g, std::vector<Elem>& out) {
  const Field& F = g.F();
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(F.neg(F.div(g[0], g[1])));
    return;
  }
  const Poly x = Poly::x(g.field());
  for (Elem delta = (F.p() == 2 ? 1 : 0); delta < F.q(); ++delta) {
    Poly h(g.field());
    if (F.p() == 2) {
      // Trace map; in characteristic 2 it takes values 0 and 1 and splits g.
      Poly y = x.scaled(delta) % g, acc = y;
      for (std::uint32_t i = 1; i < F.k(); ++i) {
        y = (y * y) % g;
        acc = acc + y;
      }
      h = gcd(g, acc);
    } else {
      const Poly lin = x + Poly::constant(g.field(), delta);
      h = gcd(g, lin.pow_mod((F.q() - 1) / 2, g) - Poly::constant(g.field(), 1));
    }
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_roots(h, out);
      split_roots(g / h, out);
      return;
    }
  }
  throw Error(ErrorCode::InvalidInput, "root splitting failed");
}

}  // namespace

std::vector<Elem> roots(const Poly& f) {
  if (f.is_zero()) throw Error(ErrorCode::InvalidInput, "roots of the zero polynomial");
  const Field& F = f.F();
  std::vector<Elem> out;
  if (f.degree() == 0) return out;
  if (F.q() <= (std::uint64_t{1} << 16)) {
    for (Elem z = 0; z < F.q(); ++z) {
      if (f.eval(z) == 0) out.push_back(z);
    }
    return out;
  }
  const Poly m = f.monic();
  const Poly x = Poly::x(f.field());
  const Poly g = gcd(m, x.pow_mod(F.q(), m) - x);
  split_roots(g, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_irreducible(const Poly& f) {
  const Field& F = f.F();
  if (F.k() != 1) throw Error(ErrorCode::InvalidInput, "irreducibility test needs a prime field");
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly m = f.monic();
  const Poly x = Poly::x(f.field());
  std::vector<Poly> frob{x % m};  // frob[j] = x^{p^j} mod m
  for (int j = 1; j <= n; ++j) frob.push_back(frob.back().pow_mod(F.p(), m));
  if (frob[n] != frob[0]) return false;
  for (std::uint64_t l : nt::prime_factors(static_cast<std::uint64_t>(n))) {
    if (gcd(m, frob[n / l] - x).degree() != 0) return false;
  }
  return true;
}

}  // namespace cotwist::ff
