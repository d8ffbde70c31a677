#pragma once

// Finite groups over dense element indices 0..order-1 with identity 0.

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "cotwist/config.hpp"
#include "cotwist/error.hpp"

namespace cotwist::groups {

using Index = std::uint32_t;
using json = nlohmann::json;

class Group {
 public:
  virtual ~Group() = default;
  virtual std::uint64_t order() const = 0;
  virtual Index mul(Index a, Index b) const = 0;
  virtual Index inv(Index a) const = 0;
  Index identity() const { return 0; }
  virtual std::string label() const = 0;
  /// Normal-form payload of an element.
  virtual json describe(Index a) const = 0;

  Index pow(Index a, std::int64_t e) const;
  std::uint64_t element_order(Index a) const;
  /// Some c with c^-1 a c = b, first in index order.
  std::optional<Index> are_conjugate(Index a, Index b) const;
  /// Conjugacy class ids; class of a is labeled by its smallest member.
  std::vector<Index> conjugacy_labels() const;
  Index conj(Index a, Index c) const { return mul(inv(c), mul(a, c)); }
};

using GroupPtr = std::shared_ptr<const Group>;

/// Precomputed Cayley table with per-element payloads.
class TableGroup : public Group {
 public:
  TableGroup(std::string label, std::vector<Index> table, std::vector<json> payloads);
  /// Materializes any group (order <= limit).
  static std::shared_ptr<const TableGroup> from(const Group& g, std::uint64_t limit = 4096);

  std::uint64_t order() const override { return n_; }
  Index mul(Index a, Index b) const override { return table_[std::size_t(a) * n_ + b]; }
  Index inv(Index a) const override { return inv_[a]; }
  std::string label() const override { return label_; }
  json describe(Index a) const override { return payloads_[a]; }

 private:
  std::string label_;
  std::uint64_t n_;
  std::vector<Index> table_;
  std::vector<Index> inv_;
  std::vector<json> payloads_;
};

/// Order 2N: elements u^i v^j stored as i + N j.
class Dihedral : public Group {
 public:
  explicit Dihedral(std::uint32_t n);
  std::uint64_t order() const override { return 2ull * n_; }
  Index mul(Index a, Index b) const override;
  Index inv(Index a) const override;
  std::string label() const override { return "D_" + std::to_string(2 * n_); }
  json describe(Index a) const override;
  std::uint32_t n() const { return n_; }
  Index elem(std::int64_t i, int j) const;
  Index u() const { return elem(1, 0); }
  Index v() const { return elem(0, 1); }
  std::pair<std::uint32_t, int> parts(Index a) const { return {a % n_, int(a / n_)}; }

 private:
  std::uint32_t n_;
};

class Cyclic : public Group {
 public:
  explicit Cyclic(std::uint32_t n);
  std::uint64_t order() const override { return n_; }
  Index mul(Index a, Index b) const override { return (a + b) % n_; }
  Index inv(Index a) const override { return a == 0 ? 0 : n_ - a; }
  std::string label() const override { return "C_" + std::to_string(n_); }
  json describe(Index a) const override { return json{{"k", a}}; }

 private:
  std::uint32_t n_;
};

/// Additive group F_p^n; coordinates are base-p digits of the index.
class VectorGroup : public Group {
 public:
  VectorGroup(std::uint32_t p, std::uint32_t n);
  std::uint64_t order() const override { return size_; }
  Index mul(Index a, Index b) const override;
  Index inv(Index a) const override;
  std::string label() const override;
  json describe(Index a) const override { return json{{"v", coords(a)}}; }
  std::vector<std::uint32_t> coords(Index a) const;
  Index from_coords(const std::vector<std::uint32_t>& c) const;
  std::uint32_t p() const { return p_; }
  std::uint32_t dim() const { return n_; }

 private:
  std::uint32_t p_, n_;
  std::uint64_t size_;
};

/// SL_2(Z/n) or its quotient by {+1, -1}. Elements are listed in
/// lexicographic order of (a, b, c, d); quotient representatives are the
/// lexicographically smaller of M and -M. The identity is moved to index 0.
class SL2 : public Group {
 public:
  SL2(std::uint32_t n, bool projective, std::uint64_t max_order = default_config().max_group);
  std::uint64_t order() const override { return elems_.size(); }
  Index mul(Index a, Index b) const override;
  Index inv(Index a) const override;
  std::string label() const override;
  json describe(Index a) const override;

  using Mat = std::array<std::uint32_t, 4>;
  const Mat& matrix(Index a) const { return elems_[a]; }
  /// Index of a determinant-1 matrix (normalized in the quotient).
  Index index_of(const Mat& m) const;
  std::uint32_t modulus() const { return n_; }
  bool projective() const { return proj_; }

 private:
  Mat normalize(Mat m) const;
  std::uint32_t n_;
  bool proj_;
  std::vector<Mat> elems_;
  std::vector<std::uint32_t> code_to_index_;
};

/// |SL_2(Z/n)| = n^3 prod_{p | n} (1 - 1/p^2).
std::uint64_t sl2_order_formula(std::uint64_t n);

class DirectProduct : public Group {
 public:
  DirectProduct(GroupPtr a, GroupPtr b) : a_(std::move(a)), b_(std::move(b)) {}
  std::uint64_t order() const override { return a_->order() * b_->order(); }
  Index mul(Index x, Index y) const override;
  Index inv(Index x) const override;
  std::string label() const override { return a_->label() + " x " + b_->label(); }
  json describe(Index x) const override;
  Index pair(Index x, Index y) const { return x + Index(a_->order()) * y; }
  const GroupPtr& first() const { return a_; }
  const GroupPtr& second() const { return b_; }

 private:
  GroupPtr a_, b_;
};

/// An automorphism as an image table.
class GroupAut {
 public:
  GroupAut() = default;
  GroupAut(GroupPtr g, std::vector<Index> table, std::string label = "");

  static GroupAut identity(GroupPtr g);
  /// Extends generator images to a homomorphism; throws NotAnAutomorphism.
  static GroupAut from_generators(GroupPtr g, const std::vector<Index>& gens,
                                  const std::vector<Index>& images, std::string label = "");
  /// x -> c^-1 x c.
  static GroupAut inner(GroupPtr g, Index c);

  Index operator()(Index a) const { return table_[a]; }
  const GroupPtr& group() const { return g_; }
  const std::vector<Index>& table() const { return table_; }
  const std::string& label() const { return label_; }
  /// this after other.
  GroupAut compose(const GroupAut& other) const;
  GroupAut power(std::uint64_t k) const;
  std::uint64_t order() const;
  bool is_identity() const;
  /// Bijective and multiplicative (all pairs if |G| <= 200, else sampled).
  bool verify() const;

 private:
  GroupPtr g_;
  std::vector<Index> table_;
  std::string label_;
};

/// G x Z/k with (g1, i)(g2, j) = (g1 alpha^i(g2), i + j); index g + |G| i.
class Semidirect : public Group {
 public:
  Semidirect(GroupPtr g, const GroupAut& alpha, std::uint32_t k);
  std::uint64_t order() const override { return n_ * k_; }
  Index mul(Index a, Index b) const override;
  Index inv(Index a) const override;
  std::string label() const override;
  json describe(Index a) const override;
  Index pair(Index g, std::uint32_t i) const { return g + Index(n_) * i; }
  Index base_part(Index a) const { return a % n_; }
  std::uint32_t exponent_part(Index a) const { return a / n_; }
  const GroupPtr& base() const { return g_; }

 private:
  GroupPtr g_;
  std::uint64_t n_;
  std::uint32_t k_;
  std::vector<std::vector<Index>> apow_;  // apow_[i] = alpha^i table
  std::string alabel_;
};

/// Build order 108: (F_2^2 x F_3^2) x| <(A1, A2)> with companion matrices of
/// x^2 + x + 1, plus the distinguished elements.
struct Group108 {
  std::shared_ptr<const Semidirect> group;
  Index x = 0, y = 0, alpha = 0;
};
Group108 group_108();

/// C3 x| C4 with the generator of C4 acting by inversion.
std::shared_ptr<const Semidirect> c3_c4();

/// <alpha, beta> x <iota> with alpha of order 2 and beta of order 3, as
/// dihedral(3) x C2 (u = beta, v = alpha).
struct D6C2 {
  std::shared_ptr<const DirectProduct> group;
  Index alpha = 0, beta = 0, iota = 0;
  GroupAut frobenius;  // alpha -> iota alpha, beta -> beta
};
D6C2 d6_c2();

/// Aut spec strings: "id", "inv", "flip", "pow:k:l", "inner:<idx>".
GroupAut parse_aut(const GroupPtr& g, const std::string& spec);

/// Group spec strings except curveaut (see catalog.hpp).
GroupPtr parse_basic_group(const std::string& spec);

/// Closure of generators under a composition rule on payload values P.
/// Elements are kept in discovery order (BFS from the identity), then
/// materialized as a TableGroup.
template <class P, class Compose, class Key, class Describe>
std::pair<std::shared_ptr<const TableGroup>, std::vector<P>> closure(
    const P& identity, const std::vector<P>& gens, Compose compose, Key key, Describe describe,
    const std::string& label, std::uint64_t limit = default_config().max_closure) {
  std::vector<P> elems{identity};
  std::unordered_map<std::string, Index> index{{key(identity), 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const P& g : gens) {
      P e = compose(elems[i], g);
      auto k = key(e);
      if (index.emplace(k, Index(elems.size())).second) {
        elems.push_back(std::move(e));
        if (elems.size() > limit) {
          throw Error(ErrorCode::ClosureTooLarge, "closure exceeds " + std::to_string(limit));
        }
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<Index> table(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find(key(compose(elems[a], elems[b])));
      if (it == index.end()) throw Error(ErrorCode::ClosureTooLarge, "closure not closed");
      table[a * n + b] = it->second;
    }
  std::vector<json> payloads;
  payloads.reserve(n);
  for (const auto& e : elems) payloads.push_back(describe(e));
  return {std::make_shared<const TableGroup>(label, std::move(table), std::move(payloads)),
          std::move(elems)};
}

}  // namespace cotwist::groups
