#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ordlab/cseq.hpp"
#include "ordlab/leveled_tree.hpp"
#include "ordlab/ordinal.hpp"
#include "ordlab/walks.hpp"

namespace ordlab {

/// A node of the walks tree T(rho0): the code function rho0(., source)
/// restricted below level.  Canonical nodes carry the least arena source
/// agreeing on the level's probes.
struct TreeNode {
  Ordinal level;
  Ordinal source;

  bool operator==(const TreeNode&) const = default;
  auto operator<=>(const TreeNode&) const = default;
  std::string str() const { return level.str() + "@" + source.str(); }
};

/// Finite stage for T(rho0): a member set closed under walk steps and a
/// probe pool for comparing code functions.  Holds the C-sequence it was
/// closed under; all evaluation is memoized behind a lock.
class Arena {
 public:
  static Arena build(std::vector<Ordinal> seed, CSequence c, std::size_t probe_budget,
                     std::uint64_t rng_seed = 1, std::size_t cap = 2000);

  const std::vector<Ordinal>& members() const { return members_; }
  const CSequence& cseq() const { return cseq_; }
  bool contains(const Ordinal& x) const;
  const Ordinal& max_member() const { return members_.back(); }

  /// Probe points strictly below the level; the escalated pool is a
  /// superset of the base pool with four times the random budget.
  std::vector<Ordinal> probes_below(const Ordinal& level, bool escalated = false) const;

  /// rho0(xi, beta) along the arena's C-sequence, cached.
  const Rho0Code& code_of(const Ordinal& xi, const Ordinal& beta) const;

  /// Index of a member, when x is one.
  std::optional<std::size_t> member_index(const Ordinal& x) const;

  /// Interned code id for a precomputed (point, member) pair; the probes
  /// of every level are table points.
  static constexpr std::uint32_t kNoCode = UINT32_MAX;
  std::uint32_t code_id(std::size_t point, std::size_t member) const {
    return code_id_[member][point];
  }
  const std::vector<Ordinal>& points() const { return points_; }
  bool point_in_base(std::size_t point) const { return in_base_[point] != 0; }
  std::size_t points_below(const Ordinal& level) const;  // prefix length

 private:
  struct CodeCache {
    std::mutex mutex;
    std::map<std::pair<Ordinal, Ordinal>, Rho0Code> map;
  };

  std::vector<Ordinal> members_;
  std::vector<Ordinal> pool_base_;       // sorted
  std::vector<Ordinal> pool_escalated_;  // sorted superset
  CSequence cseq_ = CSequence::standard();
  std::shared_ptr<CodeCache> cache_ = std::make_shared<CodeCache>();

  // eager code table over (escalated pool point, member)
  std::vector<Ordinal> points_;  // = pool_escalated_
  std::vector<char> in_base_;
  std::map<Ordinal, std::size_t> point_index_;
  std::map<Ordinal, std::size_t> member_index_;
  std::vector<Rho0Code> code_store_;
  std::vector<std::vector<std::uint32_t>> code_id_;  // [member][point]
};

/// Canonical node at the given level for the code function of beta.
/// Requires level <= beta and both in the arena.
TreeNode node(const Arena& a, const Ordinal& level, const Ordinal& beta);

/// Same canonicalization without the membership requirement; levels of
/// regressive-map values are naturals outside the arena.
TreeNode canonical_node(const Arena& a, const Ordinal& level, const Ordinal& beta);

enum class LeqVerdict { Below, Above, EqualOnProbes, Distinct };

struct TreeLeq {
  LeqVerdict verdict;
  std::optional<Ordinal> witness;  // point with differing codes, for Distinct
};

/// Compares two nodes on the probes below the smaller level.  Distinct
/// carries a sound disagreement witness; Below/Above/EqualOnProbes are
/// budget-bounded semi-decisions.  Escalation widens the pool and adds
/// walk-derived candidate points.
TreeLeq tree_leq(const Arena& a, const TreeNode& t0, const TreeNode& t1, bool escalated = false);

/// Searches for a point below bound where the code functions of b0 and
/// b1 differ, trying the escalated pool plus C-sequence entries along
/// walks from both sources.
std::optional<Ordinal> find_code_disagreement(const Arena& a, const Ordinal& b0, const Ordinal& b1,
                                              const Ordinal& bound);

struct NonsplitEntry {
  TreeNode t0, t1;
  bool resolved;                  // a common lower level separates the pair
  std::optional<Ordinal> level;   // that level (witness + 1)
};

struct NonsplitReport {
  std::vector<NonsplitEntry> entries;
  std::size_t violations = 0;  // distinct pairs with no separating level below
  bool ok() const { return violations == 0; }
};

/// For node pairs at a limit level: every probed-distinct pair must
/// already differ at a successor level below.  Equal-on-probes pairs are
/// unresolved, never violations.
NonsplitReport check_nonsplitting(const Arena& a, const Ordinal& lambda,
                                  const std::vector<std::pair<TreeNode, TreeNode>>& pairs);

/// The regressive map of the avoiding-sequence lemma:
/// r(t) = rho0(., beta_min) restricted to encode_seq(rho0(level, beta_min)).
/// Requires a limit level above w.  The result's level is a natural.
TreeNode regressive_r(const Arena& a, const TreeNode& t);

/// Tree fragment over chosen levels: the canonical nodes per level.
struct Fragment {
  std::vector<Ordinal> levels;
  std::map<Ordinal, std::vector<TreeNode>> nodes;

  std::vector<TreeNode> all_nodes() const;
};

Fragment build_fragment(const Arena& a, std::vector<Ordinal> levels);

/// Adds, for every probed-distinct node pair at a limit level, the
/// successor level just above a disagreement witness.  The returned
/// level set materializes into a tree that does not split at limit
/// labels.
std::vector<Ordinal> nonsplitting_levels(const Arena& a, std::vector<Ordinal> levels);

struct WitnessData {
  std::vector<Ordinal> s_levels;  // limit levels
  std::map<TreeNode, TreeNode> r;
  std::map<TreeNode, std::map<TreeNode, std::uint64_t>> colors;  // per fiber root
};

enum class ColorRule { DistinctPerFiber, ConstantZero };

/// Witness from regressive_r over the fragment's S-level nodes.
WitnessData build_witness(const Arena& a, const Fragment& frag,
                          const std::vector<Ordinal>& s_levels,
                          ColorRule rule = ColorRule::DistinctPerFiber);

struct WitnessReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Reports non-regressive values and same-fiber probe-comparable pairs
/// with equal colors; comparability is escalated before reporting.
WitnessReport verify_witness(const Arena& a, const Fragment& frag, const WitnessData& w);

/// Concrete leveled tree for the fragment: one node per canonical
/// TreeNode, parents by restriction.  Level 0 (the root) is prepended
/// when absent.  Returns the tree and the node table.
std::pair<LeveledTree, std::map<TreeNode, std::size_t>> materialize(const Arena& a,
                                                                    const Fragment& frag);

}  // namespace ordlab
