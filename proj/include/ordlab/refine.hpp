#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ordlab/leveled_tree.hpp"
#include "ordlab/ordinal.hpp"
#include "ordlab/poset.hpp"
#include "ordlab/specforcing.hpp"

namespace ordlab {

/// Family of sets whose pairwise intersections all equal one root.
struct DeltaSystem {
  std::vector<std::size_t> root;     // sorted elements
  std::vector<std::size_t> members;  // indices into the input family

  bool holds_for(const std::vector<std::vector<std::size_t>>& family) const;
};

/// A Delta-system with at least k members: exhaustive search over root
/// candidates for families of up to 20 sets, greedy
/// uniformize-then-pigeonhole beyond.  Inputs need not be sorted.
std::optional<DeltaSystem> delta_system(const std::vector<std::vector<std::size_t>>& family,
                                        std::size_t k);

/// Largest Delta-system found by the same search (always succeeds on a
/// nonempty family; any two sets form one).
DeltaSystem delta_system_largest(const std::vector<std::vector<std::size_t>>& family);

struct TraceStage {
  std::string name;
  std::vector<std::size_t> kept;             // indices into the original family
  std::map<std::string, std::string> data;   // stage fingerprints
};

/// Nested refinement stages; each stage keeps a subfamily of the
/// previous one.
struct RefinementTrace {
  std::vector<TraceStage> stages;
};

/// Pair coloring of Prop-1.1 type over a Delta-system of supports:
/// the least root position with incompatible coordinates; |root| when
/// the pair is incompatible only through the support bound; nu when the
/// pair is compatible in the product.
struct ColoringTable {
  std::vector<std::size_t> members;  // condition indices, the Delta members
  std::vector<std::size_t> root;     // factor indices, ascending
  std::size_t nu = 0;
  std::vector<std::vector<std::size_t>> color;  // color[i][j], i < j, indexes into members

  std::size_t at(std::size_t i, std::size_t j) const;
};

ColoringTable product_coloring(const SupportProduct& sp,
                               const std::vector<std::size_t>& condition_elems,
                               const DeltaSystem& delta);

struct ProductRefinement {
  std::vector<std::size_t> kept;  // indices into the input condition family
  RefinementTrace trace;
};

inline constexpr std::size_t kCliqueCap = 40;

/// The product pipeline: Delta-system on supports, pair coloring, then
/// the largest fully-compatible clique by exact search.  Output is
/// verified pairwise compatible.  EMPTY when no two input conditions are
/// compatible.
ProductRefinement compatible_refinement_product(const SupportProduct& sp,
                                                const std::vector<std::size_t>& condition_elems);

/// One condition of the Knaster pipeline: a specialization-forcing
/// condition attached to a limit level of the tree.
struct KnasterInput {
  Ordinal level;
  SpecCondition cond;
};

struct KnasterResult {
  std::vector<std::size_t> kept;  // indices into the input family
  RefinementTrace trace;
  std::size_t fingerprint_count = 0;  // distinct full fingerprints realized
};

/// The specialization-forcing refinement: per condition, the level nodes
/// under its domain, their injection to a common lower level, the
/// witness data they press onto, grouped stage by stage with pigeonhole
/// in place of stationarity, then thinned to a level-separated
/// subfamily.  Output is verified pairwise compatible.
KnasterResult knaster_refinement(const LeveledTree& t, const TreeWitness& w,
                                 const std::vector<KnasterInput>& conditions);

/// Exact maximum clique, lexicographically least among the optima.
/// adjacency[i][j] must be symmetric.  Throws OVERFLOW past the cap.
std::vector<std::size_t> max_clique_lex(const std::vector<std::vector<bool>>& adjacency,
                                        std::size_t cap = kCliqueCap);

}  // namespace ordlab
