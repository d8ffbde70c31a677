#pragma once

// Cohomology of Z-hat with values in a finite group, as twisted conjugacy.
// A cocycle is identified with its value at the generator.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cotwist/groups.hpp"

namespace cotwist::h1 {

using groups::GroupAut;
using groups::GroupPtr;
using groups::Index;
using json = nlohmann::json;

/// A group with the automorphism by which the generator acts.
class TwistedSetting {
 public:
  /// Throws NotAnAutomorphism unless alpha verifies.
  TwistedSetting(GroupPtr group, GroupAut alpha);

  const groups::Group& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const GroupAut& alpha() const { return alpha_; }
  std::uint64_t alpha_order() const { return alpha_order_; }
  /// G x| <alpha> with <alpha> of order alpha_order().
  const groups::Semidirect& extension() const { return *ext_; }
  /// Conjugacy labels of extension(), computed once.
  const std::vector<Index>& extension_labels() const;
  /// Twisted-class labels under alpha^d: a and c^-1 a alpha^d(c) share a label,
  /// which is the smallest member of the class. Computed once per d.
  const std::vector<Index>& twisted_labels(std::uint64_t d) const;

 private:
  GroupPtr group_;
  GroupAut alpha_;
  std::uint64_t alpha_order_;
  std::shared_ptr<const groups::Semidirect> ext_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

/// g alpha(g) ... alpha^{m-1}(g).
Index twisted_power(const TwistedSetting& st, Index g, std::uint64_t m);

/// First c (index order) with b = c^-1 a alpha(c).
std::optional<Index> cohomologous(const TwistedSetting& st, Index a, Index b);

/// Twisted conjugacy under alpha^d of the degree-d twisted powers.
std::optional<Index> restriction_agrees(const TwistedSetting& st, Index x, Index y, std::uint64_t d);

/// Conjugacy of (x, alpha)^m and (y, alpha)^m in the extension.
bool semidirect_equiv(const TwistedSetting& st, Index x, Index y, std::uint64_t m);

struct DivisorEntry {
  std::uint64_t d = 0;
  bool agrees = false;
  std::optional<Index> witness;
};

struct PairWitness {
  Index x = 0, y = 0;
  std::uint64_t r = 0, s = 0;
  std::vector<DivisorEntry> divisors;  // ascending d over divisors of r and of s
};

struct PairSearch {
  std::vector<PairWitness> witnesses;
  std::uint64_t pairs_swept = 0;
};

/// Every divisor of r or of s, ascending.
std::vector<std::uint64_t> relevant_divisors(std::uint64_t r, std::uint64_t s);

/// Ordered pairs (x, y), x-major, whose restrictions agree at r and s and
/// disagree at every other divisor of r or of s (1 included). Keeps the first
/// `limit` witnesses (0 = all). Partitioned by x across `workers`.
PairSearch find_pair_witnesses(const TwistedSetting& st, std::uint64_t r, std::uint64_t s,
                               std::uint64_t limit = 0, int workers = 1);

/// Reference sweep calling restriction_agrees per pair and divisor.
PairSearch find_pair_witnesses_serial(const TwistedSetting& st, std::uint64_t r, std::uint64_t s,
                                      std::uint64_t limit = 0);

/// Keeps the first witness for each pair of twisted classes of (x, y).
std::vector<PairWitness> distinct_classes(const TwistedSetting& st, const std::vector<PairWitness>& ws);

struct Clause {
  std::string name;
  bool applies = true;
  bool pass = true;
  std::string detail;
};

struct ConstraintReport {
  std::vector<Clause> clauses;
  bool pass() const;
  json to_json() const;
};

/// Order constraints on |G| forced by a witness, plus a recheck of the
/// witness predicate itself.
ConstraintReport theorem_constraint_report(const TwistedSetting& st, const PairWitness& w);

/// Clauses for a whole search; an empty list passes vacuously.
ConstraintReport theorem_constraint_report(const TwistedSetting& st, std::uint64_t r, std::uint64_t s,
                                           const std::vector<PairWitness>& ws);

json witness_to_json(const TwistedSetting& st, const PairWitness& w);

/// The dihedral example: G of order 2rs, alpha(u) = u^-1, alpha(v) = uv,
/// x = uv, y = u^m v with m = 0 mod r, m = 1 mod s (smallest m >= 0).
struct DihedralExample {
  std::shared_ptr<const groups::Dihedral> group;
  std::shared_ptr<TwistedSetting> setting;
  Index x = 0, y = 0;
  std::uint64_t m = 0;
};
DihedralExample dihedral_example(std::uint64_t r, std::uint64_t s);

struct ModularReport {
  std::uint64_t n = 0, r = 0, s = 0, mu = 0, m = 0;
  std::vector<Clause> clauses;
  bool pass() const;
  json to_json() const;
};

/// Smallest unit of order 2rs in (Z/n)* with mu^{rs} != -1.
std::optional<std::uint64_t> find_modular_mu(std::uint64_t n, std::uint64_t r, std::uint64_t s);

/// Smallest m > 0 with m = 1 mod r and m = -1 mod 2s.
std::uint64_t modular_m(std::uint64_t r, std::uint64_t s);

/// Diagonal pair x = [mu, 1/mu], y = [mu^m, mu^-m] in SL2(Z/n)/{+-1}.
/// Throws PreconditionFailed on a bad (mu, m).
ModularReport verify_modular_elements(std::uint64_t n, std::uint64_t r, std::uint64_t s, std::uint64_t mu,
                                      std::uint64_t m);

}  // namespace cotwist::h1
