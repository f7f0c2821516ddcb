#include "ordlab/leveled_tree.hpp"

#include <algorithm>

#include "ordlab/errors.hpp"

namespace ordlab {

std::vector<std::size_t> LeveledTree::below_label(const Ordinal& a) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tree.size(); ++i)
    if (label_of(i) < a) out.push_back(i);
  return out;
}

std::vector<std::size_t> LeveledTree::limit_depths() const {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < labels.size(); ++d)
    if (labels[d].kind() == Ordinal::Kind::Limit) out.push_back(d);
  return out;
}

bool LeveledTree::splits_at_limit_labels() const {
  for (std::size_t d : limit_depths()) {
    if (d == 0) continue;
    auto level_nodes = tree.nodes_at(d);
    std::vector<std::size_t> parents;
    for (std::size_t nd : level_nodes) parents.push_back(*tree.parent(nd));
    std::sort(parents.begin(), parents.end());
    if (std::adjacent_find(parents.begin(), parents.end()) != parents.end()) return true;
  }
  return false;
}

void LeveledTree::validate() const {
  if (labels.size() != tree.height())
    throw Error(ErrorKind::PreconditionFailed, "one label per tree level required");
  for (std::size_t d = 0; d + 1 < labels.size(); ++d)
    if (!(labels[d] < labels[d + 1]))
      throw Error(ErrorKind::PreconditionFailed, "labels must increase strictly");
}

std::optional<std::uint64_t> TreeWitness::color_of(std::size_t node) const {
  auto rt = r.find(node);
  if (rt == r.end()) return std::nullopt;
  auto fiber = colors.find(rt->second);
  if (fiber == colors.end()) return std::nullopt;
  auto c = fiber->second.find(node);
  if (c == fiber->second.end()) return std::nullopt;
  return c->second;
}

std::vector<std::string> verify_tree_witness(const LeveledTree& t, const TreeWitness& w) {
  std::vector<std::string> issues;
  std::vector<std::size_t> s_nodes;
  for (std::size_t i = 0; i < t.tree.size(); ++i) {
    const Ordinal& lbl = t.label_of(i);
    if (std::find(w.s_levels.begin(), w.s_levels.end(), lbl) != w.s_levels.end())
      s_nodes.push_back(i);
  }
  for (std::size_t nd : s_nodes) {
    if (nd == t.tree.root()) continue;  // minimal nodes are exempt
    auto rt = w.r.find(nd);
    if (rt == w.r.end()) {
      issues.push_back("missing r value at node " + std::to_string(nd));
      continue;
    }
    if (rt->second == nd || !t.tree.leq(rt->second, nd))
      issues.push_back("r(" + std::to_string(nd) + ") = " + std::to_string(rt->second) +
                       " is not a proper ancestor");
    if (!w.color_of(nd)) issues.push_back("missing color at node " + std::to_string(nd));
  }
  for (const auto& [root, fiber] : w.colors) {
    for (auto i = fiber.begin(); i != fiber.end(); ++i) {
      if (w.r.count(i->first) == 0 || w.r.at(i->first) != root)
        issues.push_back("color table at " + std::to_string(root) +
                         " mentions node " + std::to_string(i->first) + " outside the fiber");
      for (auto j = std::next(i); j != fiber.end(); ++j)
        if (i->second == j->second && t.tree.chain(i->first, j->first))
          issues.push_back("fiber of " + std::to_string(root) + ": equal colors on the chain " +
                           std::to_string(i->first) + ", " + std::to_string(j->first));
    }
  }
  return issues;
}

}  // namespace ordlab
