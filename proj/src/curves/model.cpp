#include <sstream>

#include "cotwist/curves.hpp"
#include "internal.hpp"

namespace cotwist::curves {

namespace {

constexpr std::pair<Family, const char*> kNames[] = {
    {Family::EvenSuperelliptic, "EvenSuperelliptic"},
    {Family::OddDegreeHyperelliptic, "OddDegreeHyperelliptic"},
    {Family::ASRational, "ASRational"},
    {Family::ASAdditive, "ASAdditive"},
    {Family::WeierstrassShort, "WeierstrassShort"},
    {Family::WeierstrassChar2, "WeierstrassChar2"},
    {Family::ScaledSextic, "ScaledSextic"},
};

std::string elem_str(const ff::Field& f, Elem a) {
  if (f.k() == 1) return std::to_string(a);
  std::ostringstream os;
  os << "[";
  const auto c = f.coeffs(a);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << "]";
  return os.str();
}

std::string poly_str(const Poly& p, const char* var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Elem c = p[std::size_t(i)];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (c != 1 || i == 0) os << elem_str(p.F(), c);
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

}  // namespace

const char* family_name(Family f) {
  for (const auto& [fam, name] : kNames)
    if (fam == f) return name;
  return "?";
}

Family family_from_name(const std::string& name) {
  for (const auto& [fam, n] : kNames)
    if (name == n) return fam;
  throw Error(ErrorCode::InvalidInput, "unknown curve family '" + name + "'");
}

Elem CurveModel::coeff(const std::string& name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? 0 : it->second;
}

std::uint64_t CurveModel::param(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end()) throw Error(ErrorCode::InvalidInput, "curve has no parameter '" + name + "'");
  return it->second;
}

CurveModel CurveModel::superelliptic(const Poly& f) {
  if (f.degree() < 3) throw Error(ErrorCode::InvalidInput, "superelliptic model needs deg f >= 3");
  CurveModel c(f.degree() % 2 == 0 ? Family::EvenSuperelliptic : Family::OddDegreeHyperelliptic, f.field());
  c.params_["deg"] = std::uint64_t(f.degree());
  for (int i = 0; i <= f.degree(); ++i)
    if (f[std::size_t(i)] != 0) c.coeffs_["f" + std::to_string(i)] = f[std::size_t(i)];
  c.validate();
  return c;
}

CurveModel CurveModel::as_rational(FieldPtr base, Elem a, std::uint64_t rs) {
  CurveModel c(Family::ASRational, std::move(base));
  c.coeffs_["a"] = a;
  c.params_["rs"] = rs;
  c.validate();
  return c;
}

CurveModel CurveModel::as_additive(FieldPtr base, std::uint64_t q0, std::uint64_t s, Elem a) {
  CurveModel c(Family::ASAdditive, std::move(base));
  c.coeffs_["a"] = a;
  c.params_["q0"] = q0;
  c.params_["s"] = s;
  c.validate();
  return c;
}

CurveModel CurveModel::weierstrass_short(FieldPtr base, Elem c4, Elem c6) {
  CurveModel c(Family::WeierstrassShort, std::move(base));
  c.coeffs_["c4"] = c4;
  c.coeffs_["c6"] = c6;
  c.validate();
  return c;
}

CurveModel CurveModel::weierstrass_char2(FieldPtr base, Elem c1, Elem c0) {
  CurveModel c(Family::WeierstrassChar2, std::move(base));
  c.coeffs_["c1"] = c1;
  c.coeffs_["c0"] = c0;
  c.validate();
  return c;
}

CurveModel CurveModel::scaled_sextic(FieldPtr base, Elem lambda, Elem g) {
  CurveModel c(Family::ScaledSextic, std::move(base));
  c.coeffs_["lambda"] = lambda;
  c.coeffs_["g"] = g;
  c.validate();
  return c;
}

void CurveModel::validate() const {
  const auto& F = *base_;
  const bool odd = F.p() != 2;
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InvalidInput, what);
  };
  auto need_char = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::UnsupportedCharacteristic, what);
  };
  switch (family_) {
    case Family::EvenSuperelliptic:
    case Family::OddDegreeHyperelliptic:
      need_char(odd, "double cover models need odd characteristic");
      need(double_cover_f(base_).degree() == int(param("deg")), "deg does not match f");
      need((param("deg") % 2 == 0) == (family_ == Family::EvenSuperelliptic), "family does not match deg f");
      need(ff::poly_discriminant_nonzero(double_cover_f(base_)), "f is not separable");
      break;
    case Family::ScaledSextic:
      need_char(odd, "double cover models need odd characteristic");
      need(coeff("lambda") != 0, "lambda must be nonzero");
      need(ff::poly_discriminant_nonzero(double_cover_f(base_)), "x^6 + g is not separable");
      break;
    case Family::WeierstrassShort:
      need_char(odd, "short Weierstrass model needs odd characteristic");
      need(ff::poly_discriminant_nonzero(double_cover_f(base_)), "singular Weierstrass cubic");
      break;
    case Family::WeierstrassChar2:
      need_char(!odd, "y^2 + y model needs characteristic 2");
      break;
    case Family::ASRational:
      need_char(!odd, "ASRational needs characteristic 2");
      need(coeff("a") != 0, "a must be nonzero");
      need(param("rs") % 2 == 1, "rs must be odd");
      break;
    case Family::ASAdditive: {
      const std::uint64_t q0 = param("q0"), s = param("s");
      std::uint32_t j = 0;
      std::uint64_t t = 1;
      while (t < q0) t *= F.p(), ++j;
      need(q0 > 1 && t == q0 && F.k() % j == 0, "q0 must be the size of a subfield of the base");
      need(s >= 1 && s % F.p() != 0, "s must be prime to p");
      need(coeff("a") != 0, "a must be nonzero");
      break;
    }
  }
}

bool CurveModel::is_double_cover() const {
  return family_ == Family::EvenSuperelliptic || family_ == Family::OddDegreeHyperelliptic ||
         family_ == Family::WeierstrassShort || family_ == Family::ScaledSextic;
}

Poly CurveModel::double_cover_f(const FieldPtr& field) const {
  const auto e = ff::embed(base_, field);
  const auto& F = *field;
  switch (family_) {
    case Family::EvenSuperelliptic:
    case Family::OddDegreeHyperelliptic: {
      std::vector<Elem> c(param("deg") + 1, 0);
      for (const auto& [name, v] : coeffs_) c[std::stoul(name.substr(1))] = e.apply(v);
      return Poly(field, std::move(c));
    }
    case Family::WeierstrassShort:
      return Poly(field, {e.apply(coeff("c6")), e.apply(coeff("c4")), 0, 1});
    case Family::ScaledSextic: {
      const Elem li = F.inv(e.apply(coeff("lambda")));
      return Poly(field, {F.mul(li, e.apply(coeff("g"))), 0, 0, 0, 0, 0, li});
    }
    default:
      throw Error(ErrorCode::ShapeMismatch, std::string(family_name(family_)) + " is not a double cover model");
  }
}

std::vector<Poly> CurveModel::equation(const FieldPtr& field) const {
  const auto e = ff::embed(base_, field);
  const auto& F = *field;
  switch (family_) {
    case Family::EvenSuperelliptic:
    case Family::OddDegreeHyperelliptic:
    case Family::WeierstrassShort:
      return {-double_cover_f(field), Poly(field), Poly::constant(field, 1)};
    case Family::ScaledSextic:
      return {Poly(field, {F.neg(e.apply(coeff("g"))), 0, 0, 0, 0, 0, F.neg(1)}), Poly(field),
              Poly::constant(field, e.apply(coeff("lambda")))};
    case Family::WeierstrassChar2:
      return {Poly(field, {e.apply(coeff("c0")), e.apply(coeff("c1")), 0, 1}), Poly::constant(field, 1),
              Poly::constant(field, 1)};
    case Family::ASRational: {
      const Elem a = e.apply(coeff("a"));
      const Poly big = Poly::monomial(field, 1, param("rs")) + Poly::constant(field, a);
      return {Poly::constant(field, a), big, big};
    }
    case Family::ASAdditive: {
      const std::uint64_t q0 = param("q0");
      std::vector<Poly> eq(q0 + 1, Poly(field));
      eq[0] = Poly::constant(field, 1) - Poly::monomial(field, e.apply(coeff("a")), param("s"));
      eq[1] = Poly::constant(field, F.neg(1));
      eq[q0] = Poly::constant(field, 1);
      return eq;
    }
  }
  return {};
}

std::uint64_t CurveModel::genus() const {
  switch (family_) {
    case Family::EvenSuperelliptic:
    case Family::OddDegreeHyperelliptic:
      return (param("deg") - 1) / 2;
    case Family::ScaledSextic:
      return 2;
    case Family::WeierstrassShort:
    case Family::WeierstrassChar2:
      return 1;
    case Family::ASRational:
      return param("rs") - 1;
    case Family::ASAdditive:
      return (param("q0") - 1) * (param("s") - 1) / 2;
  }
  return 0;
}

CurveModel CurveModel::base_change(const FieldPtr& ext) const {
  const auto e = ff::embed(base_, ext);
  CurveModel c(family_, ext);
  c.params_ = params_;
  for (const auto& [name, v] : coeffs_) c.coeffs_[name] = e.apply(v);
  c.validate();
  return c;
}

std::string CurveModel::describe() const {
  const auto& F = *base_;
  std::ostringstream os;
  auto co = [&](const char* n) { return elem_str(F, coeff(n)); };
  switch (family_) {
    case Family::EvenSuperelliptic:
    case Family::OddDegreeHyperelliptic:
    case Family::WeierstrassShort:
      os << "y^2 = " << poly_str(double_cover_f(base_), "x");
      break;
    case Family::ScaledSextic:
      os << co("lambda") << " y^2 = x^6 + " << co("g");
      break;
    case Family::WeierstrassChar2:
      os << "y^2 + y = " << poly_str(Poly(base_, {coeff("c0"), coeff("c1"), 0, 1}), "x");
      break;
    case Family::ASRational:
      os << "z^2 + z = " << co("a") << " / (w^" << param("rs") << " + " << co("a") << ")";
      break;
    case Family::ASAdditive:
      os << "v^" << param("q0") << " - v = " << co("a") << " u^" << param("s") << " - 1";
      break;
  }
  os << " over " << F.name();
  return os.str();
}

json CurveModel::to_json() const {
  json co = json::object();
  for (const auto& [name, v] : coeffs_) co[name] = ff::elem_to_json(*base_, v);
  json pa = json::object();
  for (const auto& [name, v] : params_) pa[name] = v;
  return json{{"family", family_name(family_)}, {"base", ff::to_json(base_->spec())}, {"coeffs", co}, {"params", pa}};
}

CurveModel CurveModel::from_json(const json& j) {
  try {
    const Family fam = family_from_name(j.at("family").get<std::string>());
    const FieldPtr base = ff::field_from_spec(ff::spec_from_json(j.at("base")));
    CurveModel c(fam, base);
    for (const auto& [name, v] : j.at("coeffs").items()) c.coeffs_[name] = ff::elem_from_json(*base, v);
    if (j.contains("params"))
      for (const auto& [name, v] : j.at("params").items()) c.params_[name] = v.get<std::uint64_t>();
    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("bad curve JSON: ") + e.what());
  }
}

bool CurveModel::operator==(const CurveModel& o) const {
  return family_ == o.family_ && base_->spec() == o.base_->spec() && coeffs_ == o.coeffs_ && params_ == o.params_;
}

}  // namespace cotwist::curves
