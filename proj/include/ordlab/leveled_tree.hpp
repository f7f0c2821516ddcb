#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ordlab/ordinal.hpp"
#include "ordlab/specforcing.hpp"

namespace ordlab {

/// A finite tree whose depths carry strictly increasing ordinal labels.
/// Depth d of the underlying tree is "level labels[d]".
struct LeveledTree {
  FiniteTree tree;
  std::vector<Ordinal> labels;  // one per depth, strictly increasing

  const Ordinal& label_of(std::size_t node) const { return labels[tree.level(node)]; }

  /// Nodes whose label is strictly below a.
  std::vector<std::size_t> below_label(const Ordinal& a) const;

  /// Depths whose label is a limit ordinal.
  std::vector<std::size_t> limit_depths() const;

  /// Non-splitting at limit labels: distinct nodes at a limit-labeled
  /// depth have distinct parents.
  bool splits_at_limit_labels() const;

  void validate() const;  // label count/monotonicity
};

/// Nonstationarity witness on a leveled tree: a regressive map on the
/// nodes at the S-labeled depths and fiberwise colorings injective on
/// chains.
struct TreeWitness {
  std::vector<Ordinal> s_levels;                                       // limit labels
  std::map<std::size_t, std::size_t> r;                                // node -> proper ancestor
  std::map<std::size_t, std::map<std::size_t, std::uint64_t>> colors;  // r-value -> fiber colors

  std::optional<std::uint64_t> color_of(std::size_t node) const;
};

/// Empty when the witness is valid; else one line per defect.
std::vector<std::string> verify_tree_witness(const LeveledTree& t, const TreeWitness& w);

}  // namespace ordlab
