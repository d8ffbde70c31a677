#include <sstream>

#include "cotwist/groups.hpp"
#include "cotwist/numtheory.hpp"

namespace cotwist::groups {

namespace {

// Companion matrix of x^2 + x + 1 acting on F_p^2 column vectors.
std::vector<Index> companion_table(const VectorGroup& v) {
  const std::uint32_t p = v.p();
  std::vector<Index> t(v.order());
  for (Index a = 0; a < t.size(); ++a) {
    const auto c = v.coords(a);
    t[a] = v.from_coords({(p - c[1]) % p, (c[0] + p - c[1]) % p});
  }
  return t;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::int64_t parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidInput, "expected an integer, got '" + s + "'");
  }
}

std::uint32_t parse_positive(const std::string& s) {
  const auto v = parse_int(s);
  if (v <= 0 || v > std::int64_t(1) << 31) throw Error(ErrorCode::InvalidInput, "expected a positive integer, got '" + s + "'");
  return std::uint32_t(v);
}

bool is_numeric(const std::string& s) {
  return !s.empty() && s.find_first_not_of("-0123456789") == std::string::npos;
}

}  // namespace

Group108 group_108() {
  auto v1 = std::make_shared<const VectorGroup>(2, 2);
  auto v2 = std::make_shared<const VectorGroup>(3, 2);
  auto base = std::make_shared<const DirectProduct>(v1, v2);
  const auto a1 = companion_table(*v1), a2 = companion_table(*v2);
  std::vector<Index> t(base->order());
  for (Index a = 0; a < t.size(); ++a) t[a] = base->pair(a1[a % 4], a2[a / 4]);
  GroupAut alpha(base, std::move(t), "alpha");
  Group108 out;
  out.group = std::make_shared<const Semidirect>(base, alpha, 3);
  const Index v1_elem = 1;  // smallest nonzero vector of V1
  Index v2_elem = 1;
  while (a2[v2_elem] == v2_elem) ++v2_elem;
  out.x = out.group->pair(base->pair(v1_elem, v2_elem), 0);
  out.y = out.group->pair(base->pair(a1[v1_elem], v2_elem), 0);
  out.alpha = out.group->pair(0, 1);
  return out;
}

std::shared_ptr<const Semidirect> c3_c4() {
  auto c3 = std::make_shared<const Cyclic>(3);
  return std::make_shared<const Semidirect>(c3, parse_aut(c3, "inv"), 4);
}

D6C2 d6_c2() {
  auto d = std::make_shared<const Dihedral>(3);
  auto c = std::make_shared<const Cyclic>(2);
  auto g = std::make_shared<const DirectProduct>(d, c);
  D6C2 out;
  out.group = g;
  out.alpha = g->pair(d->v(), 0);
  out.beta = g->pair(d->u(), 0);
  out.iota = g->pair(0, 1);
  out.frobenius = GroupAut::from_generators(g, {out.alpha, out.beta, out.iota},
                                            {g->mul(out.iota, out.alpha), out.beta, out.iota}, "frob");
  return out;
}

GroupAut parse_aut(const GroupPtr& g, const std::string& spec) {
  const auto f = split(spec, ':');
  if (f.empty()) throw Error(ErrorCode::InvalidInput, "empty automorphism spec");
  const auto* dih = dynamic_cast<const Dihedral*>(g.get());
  if (spec == "id") return GroupAut::identity(g);
  if (spec == "inv") {
    std::vector<Index> t(g->order());
    for (Index a = 0; a < t.size(); ++a) t[a] = g->inv(a);
    GroupAut a(g, std::move(t), "inv");
    if (!a.verify()) throw Error(ErrorCode::NotAnAutomorphism, "inversion on a nonabelian group");
    return a;
  }
  if (spec == "flip" || (f[0] == "pow" && f.size() == 3)) {
    if (!dih) throw Error(ErrorCode::InvalidInput, "'" + spec + "' needs a dihedral group");
    const std::int64_t k = spec == "flip" ? -1 : parse_int(f[1]);
    const std::int64_t l = spec == "flip" ? 1 : parse_int(f[2]);
    return GroupAut::from_generators(g, {dih->u(), dih->v()}, {dih->elem(k, 0), dih->elem(l, 1)}, spec);
  }
  if (f[0] == "inner" && f.size() == 2) {
    const auto c = parse_int(f[1]);
    if (c < 0 || std::uint64_t(c) >= g->order()) throw Error(ErrorCode::InvalidInput, "inner: index out of range");
    return GroupAut::inner(g, Index(c));
  }
  if (spec == "frob") {
    if (g->label() != d6_c2().group->label()) throw Error(ErrorCode::InvalidInput, "'frob' needs d6c2");
    auto a = d6_c2().frobenius;
    return GroupAut(g, a.table(), "frob");
  }
  throw Error(ErrorCode::InvalidInput, "unknown automorphism spec '" + spec + "'");
}

GroupPtr parse_basic_group(const std::string& spec) {
  const auto f = split(spec, ':');
  if (f.empty()) throw Error(ErrorCode::InvalidInput, "empty group spec");
  const std::string& kind = f[0];
  if (kind == "dihedral" && f.size() == 2) return std::make_shared<const Dihedral>(parse_positive(f[1]));
  if (kind == "cyclic" && f.size() == 2) return std::make_shared<const Cyclic>(parse_positive(f[1]));
  if ((kind == "sl2" || kind == "psl2") && f.size() == 2) {
    return std::make_shared<const SL2>(parse_positive(f[1]), kind == "psl2");
  }
  if (spec == "group108") return group_108().group;
  if (spec == "c3c4") return c3_c4();
  if (spec == "d6c2") return d6_c2().group;
  if (kind == "sd" && f.size() >= 4) {
    // sd:<base>:<aut>:<k>; the aut spec takes one, two ("inner:i") or three ("pow:k:l") fields.
    const std::size_t m = f.size();
    std::size_t aut_len = 0;
    if (m >= 5 && f[m - 4] == "pow" && is_numeric(f[m - 3]) && is_numeric(f[m - 2])) {
      aut_len = 3;
    } else if (m >= 4 && f[m - 3] == "inner" && is_numeric(f[m - 2])) {
      aut_len = 2;
    } else {
      aut_len = 1;
    }
    if (m < aut_len + 3) throw Error(ErrorCode::InvalidInput, "bad sd spec '" + spec + "'");
    std::string base_spec, aut_spec;
    for (std::size_t i = 1; i < m - 1 - aut_len; ++i) base_spec += (i > 1 ? ":" : "") + f[i];
    for (std::size_t i = m - 1 - aut_len; i < m - 1; ++i) aut_spec += (aut_spec.empty() ? "" : ":") + f[i];
    auto base = parse_basic_group(base_spec);
    return std::make_shared<const Semidirect>(base, parse_aut(base, aut_spec), parse_positive(f[m - 1]));
  }
  throw Error(ErrorCode::InvalidInput, "unknown group spec '" + spec + "'");
}

}  // namespace cotwist::groups
