#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace ordlab {

/// Finite partial order on {0,...,n-1}, optionally with a designated
/// greatest element.
class FinitePoset {
 public:
  FinitePoset() = default;

  /// Reflexive-transitive closure of the given strict pairs; rejects
  /// cycles.  A designated top is made greatest.
  static FinitePoset build(std::size_t n,
                           const std::vector<std::pair<std::size_t, std::size_t>>& strict_pairs,
                           std::optional<std::size_t> top = std::nullopt);

  /// Wraps an already reflexive/antisymmetric/transitive relation.
  static FinitePoset from_relation(std::size_t n,
                                   const std::function<bool(std::size_t, std::size_t)>& leq,
                                   std::optional<std::size_t> top = std::nullopt);

  std::size_t size() const { return n_; }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * n_ + b] != 0; }
  std::optional<std::size_t> top() const { return top_; }

  /// The designated top if any, else a detected greatest element.
  std::optional<std::size_t> greatest() const;

  bool compatible(std::size_t p, std::size_t q) const;
  std::optional<std::size_t> common_extension(std::size_t p, std::size_t q) const;

  /// Same order with a fresh formal top adjoined as element n (returned
  /// unchanged when a greatest element already exists).
  FinitePoset with_top() const;

 private:
  std::size_t n_ = 0;
  std::vector<char> leq_;
  std::optional<std::size_t> top_;
};

inline constexpr std::size_t kAntichainCap = 15;

/// All maximal antichains (sets meeting every element in compatibility),
/// each sorted, in lexicographic order of their index sets.  Throws
/// OVERFLOW beyond the cap.
std::vector<std::vector<std::size_t>> maximal_antichains(const FinitePoset& p,
                                                         std::size_t cap = kAntichainCap);

/// Maximal antichains of the suborder induced on `subset`, reported as
/// element sets of the ambient poset.
std::vector<std::vector<std::size_t>> maximal_antichains_within(
    const FinitePoset& q, const std::vector<std::size_t>& subset,
    std::size_t cap = kAntichainCap);

/// Inclusion preserves incompatibility: every pair of subset elements
/// compatible in q has a common extension inside the subset.
bool is_suborder(const FinitePoset& q, const std::vector<std::size_t>& subset);

/// Suborder whose maximal antichains stay maximal in q.
bool is_regular_suborder(const FinitePoset& q, const std::vector<std::size_t>& subset,
                         std::size_t cap = kAntichainCap);

/// Some p in the subset such that every subset-extension of p is
/// compatible with elem in q; nullopt when there is none.
std::optional<std::size_t> find_reduct(const FinitePoset& q,
                                       const std::vector<std::size_t>& subset, std::size_t elem);

/// Grows seed to a regular suborder of q by alternately adding common
/// extensions for pairs compatible in q but not inside, and witnesses for
/// maximal antichains that fail to be maximal in q.
std::vector<std::size_t> regular_closure(const FinitePoset& q, std::vector<std::size_t> seed,
                                         std::size_t cap = kAntichainCap);

/// Condition of a support product: the non-top coordinates.
struct ProductCondition {
  std::map<std::size_t, std::size_t> coords;

  std::vector<std::size_t> support() const;
  bool operator==(const ProductCondition&) const = default;
};

struct SupportProduct {
  std::vector<FinitePoset> factors;
  std::size_t nu = 0;
  std::vector<ProductCondition> conditions;  // element i of poset is conditions[i]
  FinitePoset poset;

  std::optional<std::size_t> index_of(const ProductCondition& c) const;
};

/// The nu-support product: all tuples whose support has size at most nu,
/// ordered coordinatewise; the all-tops tuple is the top.  Every factor
/// must have a greatest element.
SupportProduct support_product(std::vector<FinitePoset> factors, std::size_t nu,
                               std::size_t cap = 4096);

}  // namespace ordlab
