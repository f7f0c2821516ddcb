// End-to-end composition: an arena over an avoiding C-sequence gives a
// rho0-tree fragment; its regressive map presses down to the materialized
// tree; the specialization-forcing refinement runs on top.

#include <doctest.h>

#include "ordlab/errors.hpp"
#include "ordlab/refine.hpp"
#include "ordlab/rhotree.hpp"

using namespace ordlab;

namespace {

const Ordinal w = Ordinal::omega();
Ordinal n(std::uint64_t v) { return Ordinal::nat(v); }
Ordinal wpow(std::uint64_t e, std::uint64_t c = 1) {
  return Ordinal::omega_pow(n(e), Nat(static_cast<unsigned long>(c)));
}

}  // namespace

TEST_CASE("rho0 fragments feed the knaster pipeline") {
  std::vector<Ordinal> s_levels = {wpow(1, 2), wpow(2)};
  AvoidSet avoid{s_levels};
  CSequence seq = CSequence::avoiding(avoid, CSequence::standard());
  Arena arena = Arena::build({wpow(1, 2), wpow(2), wpow(2) + wpow(1, 3) + n(2),
                              wpow(2, 2) + w + n(4), wpow(2, 3)},
                             seq, 24, 9);

  auto levels = nonsplitting_levels(arena, s_levels);
  Fragment frag = build_fragment(arena, levels);
  auto [tree, ids] = materialize(arena, frag);
  REQUIRE_FALSE(tree.splits_at_limit_labels());

  // transport the walks witness: r presses each S-level node to its
  // ancestor at the highest emitted level not above encode(rho0)
  TreeWitness witness;
  witness.s_levels = s_levels;
  auto depth_for = [&](const Ordinal& f) {
    std::size_t d = 0;
    for (std::size_t i = 0; i < tree.labels.size(); ++i)
      if (tree.labels[i] <= f) d = i;
    return d;
  };
  for (const auto& [tn, id] : ids) {
    if (std::find(s_levels.begin(), s_levels.end(), tn.level) == s_levels.end()) continue;
    TreeNode rv = regressive_r(arena, tn);
    std::size_t target = depth_for(rv.level);
    if (target >= tree.tree.level(id)) target = tree.tree.level(id) - 1;
    std::size_t down = tree.tree.ancestor_at(id, target);
    witness.r[id] = down;
    auto& fiber = witness.colors[down];
    fiber[id] = static_cast<std::uint64_t>(fiber.size());
  }
  REQUIRE(verify_tree_witness(tree, witness).empty());

  // conditions: one per S-level node, copying a fixed low template
  std::vector<KnasterInput> conditions;
  for (const auto& [tn, id] : ids) {
    if (std::find(s_levels.begin(), s_levels.end(), tn.level) == s_levels.end()) continue;
    KnasterInput input;
    input.level = tn.level;
    input.cond.assignment[tree.tree.root()] = 1;
    input.cond.assignment[id] = 5;
    conditions.push_back(std::move(input));
  }
  REQUIRE(conditions.size() >= 2);

  auto res = knaster_refinement(tree, witness, conditions);
  CHECK(!res.kept.empty());
  for (std::size_t i = 0; i < res.kept.size(); ++i)
    for (std::size_t j = i + 1; j < res.kept.size(); ++j)
      CHECK(pt_compatible(tree.tree, conditions[res.kept[i]].cond,
                          conditions[res.kept[j]].cond));
}
