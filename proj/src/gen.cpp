#include "ordlab/gen.hpp"

#include <algorithm>
#include <set>

#include "ordlab/errors.hpp"

namespace ordlab {

Ordinal random_ordinal_below_w3(Rng& rng, std::uint64_t coeff_cap) {
  std::uniform_int_distribution<std::uint64_t> d(0, coeff_cap);
  Ordinal out;
  std::uint64_t a = d(rng), b = d(rng), c = d(rng);
  if (a) out = out + Ordinal::omega_pow(Ordinal::nat(2), Nat(static_cast<unsigned long>(a)));
  if (b) out = out + Ordinal::omega_pow(Ordinal::nat(1), Nat(static_cast<unsigned long>(b)));
  if (c) out = out + Ordinal::nat(c);
  return out;
}

std::vector<FinitePoset> all_posets(std::size_t n) {
  std::vector<FinitePoset> out;
  if (n == 0) {
    out.push_back(FinitePoset::build(0, {}));
    return out;
  }
  // all strict relations on ordered pairs, kept when transitive and acyclic
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) slots.push_back({i, j});
  const std::size_t bits = slots.size();
  for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (std::size_t b = 0; b < bits; ++b)
      if (mask & (1ull << b)) rel[slots[b].first][slots[b].second] = true;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (rel[i][j] && rel[j][i]) ok = false;
        for (std::size_t k = 0; k < n && ok; ++k)
          if (rel[i][j] && rel[j][k] && !rel[i][k]) ok = false;
      }
    if (!ok) continue;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t b = 0; b < bits; ++b)
      if (mask & (1ull << b)) pairs.push_back(slots[b]);
    out.push_back(FinitePoset::build(n, pairs));
  }
  return out;
}

FinitePoset random_poset(Rng& rng, std::size_t n, double edge_prob) {
  std::bernoulli_distribution coin(edge_prob);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) pairs.push_back({i, j});  // edges respect the index order, so no cycles
  return FinitePoset::build(n, pairs);
}

FiniteTree random_tree(Rng& rng, std::size_t n) {
  std::vector<std::optional<std::size_t>> parents{std::nullopt};
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pd(0, i - 1);
    parents.push_back(pd(rng));
  }
  return FiniteTree::from_parents(parents);
}

KnasterInstance random_knaster_instance(Rng& rng, std::size_t condition_count) {
  // Shape: root at depth 0, branching slots at depth 1, a branch point
  // per slot at depth 2, then one disjoint path per limit target.  All
  // limit-labeled depths are entered injectively.
  std::uniform_int_distribution<std::size_t> slot_d(2, 3), limits_d(2, 3);
  const std::size_t n_slots = slot_d(rng);
  const std::size_t n_limits = limits_d(rng);
  // limit depths 3, 5, 7, ... with successor depths between
  std::vector<std::size_t> limit_depths;
  for (std::size_t i = 0; i < n_limits; ++i) limit_depths.push_back(3 + 2 * i);
  const std::size_t height = limit_depths.back() + 1;

  std::vector<Ordinal> labels{Ordinal()};
  for (std::size_t d = 1; d < height; ++d) {
    bool limit = std::find(limit_depths.begin(), limit_depths.end(), d) != limit_depths.end();
    labels.push_back(limit ? labels.back() + Ordinal::omega()
                           : labels.back() + Ordinal::nat(1));
  }

  std::vector<std::optional<std::size_t>> parents{std::nullopt};
  std::vector<std::size_t> slots;
  // tip[s][i]: the node of slot s at limit depth limit_depths[i]
  std::vector<std::vector<std::size_t>> tips(n_slots);
  std::vector<std::vector<std::vector<std::size_t>>> paths(n_slots);
  for (std::size_t s = 0; s < n_slots; ++s) {
    std::size_t slot = parents.size();
    parents.push_back(0);
    slots.push_back(slot);
    for (std::size_t i = 0; i < n_limits; ++i) {
      std::vector<std::size_t> path;
      std::size_t prev = slot;
      for (std::size_t d = 2; d <= limit_depths[i]; ++d) {
        std::size_t node = parents.size();
        parents.push_back(prev);
        path.push_back(node);
        prev = node;
      }
      tips[s].push_back(path.back());
      paths[s].push_back(path);
    }
  }

  KnasterInstance inst;
  inst.tree.tree = FiniteTree::from_parents(parents);
  inst.tree.labels = labels;
  inst.tree.validate();

  // witness: S is every limit label; r sends each S-node to its slot;
  // colors are 0 at path tips and the node's depth otherwise, so chains
  // inside a fiber never repeat a color
  for (std::size_t d : limit_depths) inst.witness.s_levels.push_back(labels[d]);
  for (std::size_t s = 0; s < n_slots; ++s) {
    std::set<std::size_t> tip_set(tips[s].begin(), tips[s].end());
    for (std::size_t i = 0; i < n_limits; ++i)
      for (std::size_t node : paths[s][i]) {
        std::size_t depth = inst.tree.tree.level(node);
        if (std::find(limit_depths.begin(), limit_depths.end(), depth) == limit_depths.end())
          continue;
        inst.witness.r[node] = slots[s];
        inst.witness.colors[slots[s]][node] =
            tip_set.count(node) ? 0 : static_cast<std::uint64_t>(depth);
      }
  }

  // fingerprint classes: a nonempty slot subset plus a low-domain
  // template; each class is spread over distinct limit levels
  std::vector<std::vector<std::size_t>> slot_subsets;
  for (std::uint64_t mask = 1; mask < (1ull << n_slots); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t s = 0; s < n_slots; ++s)
      if (mask & (1ull << s)) subset.push_back(s);
    slot_subsets.push_back(subset);
  }
  const std::size_t classes_needed = (condition_count + n_limits - 1) / n_limits;
  // class = (slot subset, low template); the template variant enters the
  // low colors, so distinct classes have distinct fingerprints
  std::vector<std::pair<std::vector<std::size_t>, std::map<std::size_t, std::uint64_t>>> classes;
  for (std::size_t id = 0; classes.size() < classes_needed; ++id) {
    const auto& subset = slot_subsets[id % slot_subsets.size()];
    std::size_t variant = id / slot_subsets.size();
    std::map<std::size_t, std::uint64_t> low;
    if (variant >= 1) low[0] = 40 + variant;
    if (variant >= 1 && variant % 2 == 0) low[slots[variant % n_slots]] = 80 + variant;
    classes.push_back({subset, low});
  }

  // color ranges keep chains injective: low templates sit below 200 for
  // any realistic class count, tips above
  std::uniform_int_distribution<std::uint64_t> high_color(200, 999);
  for (std::size_t i = 0; i < condition_count; ++i) {
    std::size_t cls = i % classes.size();
    std::size_t lvl = (i / classes.size()) % n_limits;
    KnasterInput input;
    input.level = labels[limit_depths[lvl]];
    input.cond.assignment = classes[cls].second;
    for (std::size_t s : classes[cls].first)
      input.cond.assignment[tips[s][lvl]] = high_color(rng);
    inst.conditions.push_back(std::move(input));
  }
  return inst;
}

ProductInstance random_product_instance(Rng& rng, std::size_t max_factors,
                                        std::size_t max_factor_size, std::size_t nu,
                                        std::size_t condition_count) {
  std::uniform_int_distribution<std::size_t> nf(1, max_factors);
  std::vector<FinitePoset> factors;
  const std::size_t k = nf(rng);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> ns(1, max_factor_size);
    factors.push_back(random_poset(rng, ns(rng)).with_top());
  }
  ProductInstance inst{support_product(std::move(factors), nu), {}};
  std::uniform_int_distribution<std::size_t> pick(0, inst.product.conditions.size() - 1);
  for (std::size_t i = 0; i < condition_count; ++i) inst.conditions.push_back(pick(rng));
  return inst;
}

}  // namespace ordlab
