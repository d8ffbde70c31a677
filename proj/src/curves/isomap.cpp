#include <algorithm>
#include <sstream>

#include "cotwist/curves.hpp"
#include "internal.hpp"

namespace cotwist::curves {

namespace detail {

std::vector<std::vector<std::uint64_t>> binomials_mod(std::uint64_t n, std::uint64_t p) {
  std::vector<std::vector<std::uint64_t>> c(n + 1);
  for (std::uint64_t i = 0; i <= n; ++i) {
    c[i].assign(i + 1, 1);
    for (std::uint64_t j = 1; j < i; ++j) c[i][j] = (c[i - 1][j - 1] + c[i - 1][j]) % p;
  }
  return c;
}

Poly homogenize(const Poly& h, const Poly& n, const Poly& d, std::uint32_t k) {
  const FieldPtr& f = n.field();
  Poly out(f);
  if (h.is_zero()) return out;
  const bool const_d = d.degree() <= 0;
  if (h.degree() > int(k) && !const_d) {
    throw Error(ErrorCode::ShapeMismatch, "y_shift degree exceeds denom_exp");
  }
  if (d.is_zero() && h.degree() > 0) throw Error(ErrorCode::ShapeMismatch, "zero denominator");
  Poly npow = Poly::constant(f, 1);
  for (int i = 0; i <= h.degree(); ++i) {
    if (h[std::size_t(i)] != 0) {
      Poly term = npow.scaled(h[std::size_t(i)]);
      if (const_d) {
        term = term.scaled(f->pow_signed(d[0], std::int64_t(k) - i));
      } else {
        term = term * d.pow(k - std::uint32_t(i));
      }
      out = out + term;
    }
    npow = npow * n;
  }
  return out;
}

Elem eval_equation(const std::vector<Poly>& eq, Elem x, Elem y) {
  const ff::Field& F = eq.front().F();
  Elem acc = 0;
  for (auto it = eq.rbegin(); it != eq.rend(); ++it) acc = F.add(F.mul(acc, y), it->eval(x));
  return acc;
}

}  // namespace detail

using detail::homogenize;

IsoMap IsoMap::identity(FieldPtr f, std::uint32_t k) { return make(std::move(f), 1, 0, 0, 1, 1, k); }

IsoMap IsoMap::make(FieldPtr f, Elem a, Elem b, Elem c, Elem d, Elem e, std::uint32_t k, std::vector<Elem> h) {
  IsoMap m;
  m.field = f;
  m.a = a, m.b = b, m.c = c, m.d = d, m.e = e, m.k = k;
  m.h = Poly(f, std::move(h));
  return m;
}

Elem IsoMap::det() const {
  const auto& F = *field;
  return F.sub(F.mul(a, d), F.mul(b, c));
}

IsoMap IsoMap::compose(const IsoMap& in) const {
  if (!(field->spec() == in.field->spec())) throw Error(ErrorCode::ShapeMismatch, "maps over different fields");
  if (k != in.k) throw Error(ErrorCode::ShapeMismatch, "maps with different denom_exp");
  const auto& F = *field;
  IsoMap r;
  r.field = field;
  r.k = k;
  r.a = F.add(F.mul(a, in.a), F.mul(b, in.c));
  r.b = F.add(F.mul(a, in.b), F.mul(b, in.d));
  r.c = F.add(F.mul(c, in.a), F.mul(d, in.c));
  r.d = F.add(F.mul(c, in.b), F.mul(d, in.d));
  r.e = F.mul(e, in.e);
  const Poly n1(field, {in.b, in.a}), d1(field, {in.d, in.c});
  r.h = in.h.scaled(e) + homogenize(h, n1, d1, k);
  return r.normalized();
}

IsoMap IsoMap::inverse() const {
  const auto& F = *field;
  const Elem dt = det();
  if (dt == 0 || e == 0) throw Error(ErrorCode::ShapeMismatch, "degenerate map has no inverse");
  IsoMap r;
  r.field = field;
  r.k = k;
  r.a = d, r.b = F.neg(b), r.c = F.neg(c), r.d = a;
  r.e = F.div(F.pow(dt, k), e);
  const Poly n(field, {F.neg(b), d}), den(field, {a, F.neg(c)});
  r.h = homogenize(h, n, den, k).scaled(F.neg(F.inv(e)));
  return r.normalized();
}

IsoMap IsoMap::normalized() const {
  const auto& F = *field;
  const Elem lam = a != 0 ? a : b != 0 ? b : c != 0 ? c : d;
  if (lam == 0 || lam == 1) return *this;
  const Elem li = F.inv(lam), lk = F.inv(F.pow(lam, k));
  IsoMap r = *this;
  r.a = F.mul(a, li), r.b = F.mul(b, li), r.c = F.mul(c, li), r.d = F.mul(d, li);
  r.e = F.mul(e, lk);
  r.h = h.scaled(lk);
  return r;
}

IsoMap IsoMap::frobenius(std::uint32_t t) const {
  const auto& F = *field;
  IsoMap r = *this;
  r.a = F.frobenius(a, t), r.b = F.frobenius(b, t), r.c = F.frobenius(c, t), r.d = F.frobenius(d, t);
  r.e = F.frobenius(e, t);
  std::vector<Elem> hc;
  for (Elem x : h.coeffs()) hc.push_back(F.frobenius(x, t));
  r.h = Poly(field, std::move(hc));
  return r;
}

std::optional<std::pair<Elem, Elem>> IsoMap::apply(Elem x, Elem y) const {
  const auto& F = *field;
  const Elem den = F.add(F.mul(c, x), d);
  if (den == 0) return std::nullopt;
  const Elem X = F.div(F.add(F.mul(a, x), b), den);
  const Elem Y = F.div(F.add(F.mul(e, y), h.is_zero() ? 0 : h.eval(x)), F.pow(den, k));
  return std::make_pair(X, Y);
}

std::string IsoMap::key() const {
  const IsoMap n = normalized();
  std::ostringstream os;
  os << n.a << ',' << n.b << ',' << n.c << ',' << n.d << '|' << n.e << '|' << n.k << '|';
  for (Elem x : n.h.coeffs()) os << x << ',';
  return os.str();
}

json IsoMap::to_json() const {
  const auto& F = *field;
  json hj = json::array();
  for (Elem x : h.coeffs()) hj.push_back(ff::elem_to_json(F, x));
  return json{{"field", ff::to_json(F.spec())},
              {"mobius", {ff::elem_to_json(F, a), ff::elem_to_json(F, b), ff::elem_to_json(F, c), ff::elem_to_json(F, d)}},
              {"y_scale", ff::elem_to_json(F, e)},
              {"y_shift", hj},
              {"denom_exp", k}};
}

IsoMap IsoMap::from_json(const json& j) {
  try {
    const FieldPtr f = ff::field_from_spec(ff::spec_from_json(j.at("field")));
    const auto& mob = j.at("mobius");
    if (mob.size() != 4) throw Error(ErrorCode::InvalidInput, "mobius needs four entries");
    std::vector<Elem> h;
    for (const auto& x : j.at("y_shift")) h.push_back(ff::elem_from_json(*f, x));
    return make(f, ff::elem_from_json(*f, mob[0]), ff::elem_from_json(*f, mob[1]), ff::elem_from_json(*f, mob[2]),
                ff::elem_from_json(*f, mob[3]), ff::elem_from_json(*f, j.at("y_scale")),
                j.at("denom_exp").get<std::uint32_t>(), std::move(h));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("bad map JSON: ") + e.what());
  }
}

std::vector<Poly> substitute(const IsoMap& m, const std::vector<Poly>& q) {
  const FieldPtr& f = m.field;
  const auto& F = *f;
  const std::size_t ny = q.size();
  int dtot = 0;
  for (std::size_t j = 0; j < ny; ++j)
    if (!q[j].is_zero()) dtot = std::max(dtot, q[j].degree() + int(m.k * j));
  const Poly n(f, {m.b, m.a}), den(f, {m.d, m.c});
  std::vector<Poly> npow{Poly::constant(f, 1)}, dpow{Poly::constant(f, 1)};
  for (int i = 1; i <= dtot; ++i) {
    npow.push_back(npow.back() * n);
    dpow.push_back(dpow.back() * den);
  }
  std::vector<Poly> hpow{Poly::constant(f, 1)};
  std::vector<Elem> epow{1};
  for (std::size_t i = 1; i < ny; ++i) {
    hpow.push_back(hpow.back() * m.h);
    epow.push_back(F.mul(epow.back(), m.e));
  }
  const auto binom = detail::binomials_mod(ny ? ny - 1 : 0, F.p());
  std::vector<Poly> r(ny, Poly(f));
  for (std::size_t j = 0; j < ny; ++j) {
    if (q[j].is_zero()) continue;
    Poly sj(f);
    for (int i = 0; i <= q[j].degree(); ++i) {
      const Elem qi = q[j][std::size_t(i)];
      if (qi == 0) continue;
      sj = sj + (npow[std::size_t(i)] * dpow[std::size_t(dtot - i - int(m.k * j))]).scaled(qi);
    }
    for (std::size_t t = 0; t <= j; ++t) {
      const std::uint64_t bc = binom[j][t];
      if (bc == 0) continue;
      if (t < j && m.h.is_zero()) continue;
      r[t] = r[t] + (sj * hpow[j - t]).scaled(F.mul(F.scale(bc, 1), epow[t]));
    }
  }
  return r;
}

namespace {

constexpr std::uint64_t kPointwiseCap = std::uint64_t{1} << 16;
// Fields without tables pay a polynomial multiplication per product.
constexpr std::uint64_t kPointwiseCapSlow = std::uint64_t{1} << 10;

bool proportional(const std::vector<Poly>& r, const std::vector<Poly>& p) {
  if (r.size() != p.size()) return false;
  std::size_t j0 = p.size();
  for (std::size_t j = p.size(); j-- > 0;)
    if (!p[j].is_zero()) {
      j0 = j;
      break;
    }
  if (j0 == p.size() || r[j0].is_zero()) return false;
  for (std::size_t t = 0; t < p.size(); ++t)
    if (r[t] * p[j0] != p[t] * r[j0]) return false;
  return true;
}

}  // namespace

IsoCheck check_iso_detail(const IsoMap& m, const CurveModel& src, const CurveModel& dst) {
  const FieldPtr& f = m.field;
  const auto p = src.equation(f);
  const auto q = dst.equation(f);
  if (p.size() != q.size()) {
    throw Error(ErrorCode::ShapeMismatch, std::string(family_name(src.family())) + " vs " + family_name(dst.family()));
  }
  IsoCheck out;
  if (m.det() == 0 || m.e == 0) return out;
  out.symbolic = proportional(substitute(m, q), p);

  const detail::PointSolver solver(src, f);
  const std::uint64_t nx = std::min<std::uint64_t>(f->q(), f->has_tables() ? kPointwiseCap : kPointwiseCapSlow);
  out.pointwise = true;
  for (Elem x = 0; x < nx && out.pointwise; ++x) {
    for (Elem y : solver.ys(x)) {
      const auto img = m.apply(x, y);
      if (!img) continue;
      ++out.points_checked;
      if (detail::eval_equation(q, img->first, img->second) != 0) {
        out.pointwise = false;
        break;
      }
    }
  }
  return out;
}

bool maps_equation(const IsoMap& m, const std::vector<Poly>& src_eq, const std::vector<Poly>& dst_eq) {
  if (src_eq.size() != dst_eq.size()) throw Error(ErrorCode::ShapeMismatch, "equations of different y-degree");
  if (m.det() == 0 || m.e == 0) return false;
  return proportional(substitute(m, dst_eq), src_eq);
}

IsoMap embed_map(const IsoMap& m, const FieldPtr& sup) {
  const auto e = ff::embed(m.field, sup);
  std::vector<Elem> h;
  for (Elem c : m.h.coeffs()) h.push_back(e.apply(c));
  return IsoMap::make(sup, e.apply(m.a), e.apply(m.b), e.apply(m.c), e.apply(m.d), e.apply(m.e), m.k, std::move(h));
}

bool check_iso(const IsoMap& m, const CurveModel& src, const CurveModel& dst) {
  return check_iso_detail(m, src, dst).ok();
}

}  // namespace cotwist::curves
