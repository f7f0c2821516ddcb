#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ordlab/leveled_tree.hpp"
#include "ordlab/ordinal.hpp"
#include "ordlab/poset.hpp"
#include "ordlab/refine.hpp"
#include "ordlab/specforcing.hpp"

namespace ordlab {

using Rng = std::mt19937_64;

/// Uniform-ish CNF ordinal below w^3 with coefficients up to coeff_cap.
Ordinal random_ordinal_below_w3(Rng& rng, std::uint64_t coeff_cap);

/// All labeled partial orders on n elements (219 of them for n = 4).
std::vector<FinitePoset> all_posets(std::size_t n);

FinitePoset random_poset(Rng& rng, std::size_t n, double edge_prob = 0.3);

FiniteTree random_tree(Rng& rng, std::size_t n);

/// A random instance of the specialization-forcing refinement: a leveled
/// tree that does not split at limit labels, a valid witness, and a
/// family of conditions attached to its limit levels whose fingerprint
/// classes are spread over distinct levels.
struct KnasterInstance {
  LeveledTree tree;
  TreeWitness witness;
  std::vector<KnasterInput> conditions;
};

KnasterInstance random_knaster_instance(Rng& rng, std::size_t condition_count = 64);

/// Random nu-support product with the given shape, plus a family of
/// condition elements sampled from it.
struct ProductInstance {
  SupportProduct product;
  std::vector<std::size_t> conditions;
};

ProductInstance random_product_instance(Rng& rng, std::size_t max_factors,
                                        std::size_t max_factor_size, std::size_t nu,
                                        std::size_t condition_count);

}  // namespace ordlab
