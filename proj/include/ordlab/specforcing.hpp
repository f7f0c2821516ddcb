#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ordlab/poset.hpp"

namespace ordlab {

/// Finite tree given by a parent map; exactly one root, every other
/// node's predecessors are the chain of its ancestors.
class FiniteTree {
 public:
  static FiniteTree from_parents(std::vector<std::optional<std::size_t>> parent);

  std::size_t size() const { return parent_.size(); }
  std::size_t root() const { return root_; }
  std::optional<std::size_t> parent(std::size_t t) const { return parent_[t]; }
  std::size_t level(std::size_t t) const { return level_[t]; }
  std::size_t height() const { return height_; }

  /// Tree order: a is an ancestor of b or equal to it.
  bool leq(std::size_t a, std::size_t b) const;
  bool chain(std::size_t a, std::size_t b) const { return leq(a, b) || leq(b, a); }
  /// The ancestor of t at the given level; requires lvl <= level(t).
  std::size_t ancestor_at(std::size_t t, std::size_t lvl) const;
  std::vector<std::size_t> nodes_at(std::size_t lvl) const;

 private:
  std::vector<std::optional<std::size_t>> parent_;
  std::vector<std::size_t> level_;
  std::size_t root_ = 0;
  std::size_t height_ = 0;
};

/// Condition of the specialization forcing P(T): a finite partial map
/// from tree nodes to naturals, injective on chains.  Ordered by
/// reversed inclusion.
struct SpecCondition {
  std::map<std::size_t, std::uint64_t> assignment;

  bool operator==(const SpecCondition&) const = default;
  auto operator<=>(const SpecCondition&) const = default;
  std::string str() const;
};

struct ChainClash {
  std::size_t a, b;  // comparable nodes carrying the same color
};

/// Accepts the assignment iff it is injective on every chain; otherwise
/// returns a violating pair.
std::variant<SpecCondition, ChainClash> pt_validate(
    const FiniteTree& t, const std::map<std::size_t, std::uint64_t>& assignment);

bool pt_is_valid(const FiniteTree& t, const SpecCondition& s);

/// True iff the union of the two conditions is functional and injective
/// on chains, i.e. iff they have a common extension in P(T).
bool pt_compatible(const FiniteTree& t, const SpecCondition& a, const SpecCondition& b);

/// All valid conditions with |dom| <= max_dom and colors < color_bound,
/// ordered by domain then colors.  Throws OVERFLOW past cap.
std::vector<SpecCondition> pt_enumerate(const FiniteTree& t, std::size_t max_dom,
                                        std::uint64_t color_bound, std::size_t cap = 2000000);

/// The reduct refuter of the specialization forcing: given q living below
/// level beta with nonzero colors on the chain under t, returns
/// r = q + {(u,0)} for u the level-beta ancestor of t.  r extends q and is
/// incompatible with {(t,0)}.
SpecCondition tree_reduct_refuter(const FiniteTree& t, const SpecCondition& q, std::size_t node,
                                  std::size_t beta);

/// Condition of the <kappa-linked counterexample poset: a finite string
/// sequence s (each entry a binary string of length < lambda) and a
/// finite subset a of X.
struct LinkedCondition {
  std::vector<std::string> s;
  std::vector<std::string> a;  // sorted subset of X

  bool operator==(const LinkedCondition&) const = default;
  std::string str() const;
};

struct LinkedPosetParams {
  std::size_t lambda = 3;
  std::vector<std::string> x;  // distinct binary strings of length lambda
  std::size_t max_seq = 1;     // cap on |s_p|
  std::size_t max_a = 1;       // cap on |a_p|
};

/// p <= q iff s_q is an initial segment of s_p, a_q is contained in a_p,
/// and no newly added string is an initial segment of any member of a_q.
bool linked_leq(const LinkedCondition& p, const LinkedCondition& q);

struct LinkedFragment {
  LinkedPosetParams params;
  std::vector<LinkedCondition> conditions;
  FinitePoset poset;

  std::optional<std::size_t> index_of(const LinkedCondition& c) const;
};

/// Materializes the capped fragment as a finite poset.  Throws OVERFLOW
/// past cap.
LinkedFragment build_linked_poset(const LinkedPosetParams& params, std::size_t cap = 3000);

/// One-step syntactic incompatibility with <empty, {x}>: some string of
/// the condition is an initial segment of x.
bool linked_clashes_with(const LinkedCondition& r, const std::string& x);

/// Brute-force search for a common extension of r and <empty, {x}>,
/// extending r by at most extra_strings further strings.
bool linked_compatible_with_brute(const LinkedPosetParams& params, const LinkedCondition& r,
                                  const std::string& x, std::size_t extra_strings = 1);

/// Appends x restricted to the least length separating it from every
/// member of a_q; the result extends q and is incompatible with
/// <empty, {x}>.  NO_SEPARATOR when a_q is empty or no length < lambda
/// separates.
LinkedCondition linked_reduct_refuter(const LinkedPosetParams& params, const LinkedCondition& q,
                                      const std::string& x);

}  // namespace ordlab
