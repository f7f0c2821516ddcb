#include "ordlab/refine.hpp"

#include <algorithm>
#include <set>

#include "ordlab/errors.hpp"

namespace ordlab {

namespace {

std::vector<std::size_t> sorted_copy(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  return intersect(a, b).empty();
}

bool superset_of(const std::vector<std::size_t>& big, const std::vector<std::size_t>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<std::size_t> difference(const std::vector<std::size_t>& a,
                                    const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// exact maximum pairwise-disjoint packing of residuals, by index recursion
void pack_exact(const std::vector<std::size_t>& cands,
                const std::vector<std::vector<std::size_t>>& residuals, std::size_t idx,
                std::vector<std::size_t>& chosen, std::vector<std::size_t>& used,
                std::vector<std::size_t>& best) {
  if (chosen.size() > best.size()) best = chosen;
  if (idx >= cands.size() || chosen.size() + (cands.size() - idx) <= best.size()) return;
  const auto& res = residuals[cands[idx]];
  if (disjoint(res, used)) {
    used.insert(used.end(), res.begin(), res.end());
    std::sort(used.begin(), used.end());
    chosen.push_back(cands[idx]);
    pack_exact(cands, residuals, idx + 1, chosen, used, best);
    chosen.pop_back();
    used = difference(used, res);
  }
  pack_exact(cands, residuals, idx + 1, chosen, used, best);
}

std::vector<std::size_t> pack_greedy(const std::vector<std::size_t>& cands,
                                     const std::vector<std::vector<std::size_t>>& residuals) {
  std::vector<std::size_t> chosen, used;
  for (std::size_t i : cands) {
    if (disjoint(residuals[i], used)) {
      chosen.push_back(i);
      used.insert(used.end(), residuals[i].begin(), residuals[i].end());
      std::sort(used.begin(), used.end());
    }
  }
  return chosen;
}

}  // namespace

bool DeltaSystem::holds_for(const std::vector<std::vector<std::size_t>>& family) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (intersect(sorted_copy(family[members[i]]), sorted_copy(family[members[j]])) != root)
        return false;
  return true;
}

DeltaSystem delta_system_largest(const std::vector<std::vector<std::size_t>>& family) {
  DeltaSystem best;
  if (family.empty()) return best;
  std::vector<std::vector<std::size_t>> sets;
  sets.reserve(family.size());
  for (const auto& s : family) sets.push_back(sorted_copy(s));
  if (family.size() == 1) return DeltaSystem{sets[0], {0}};

  std::set<std::vector<std::size_t>> roots;
  roots.insert({});
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) roots.insert(intersect(sets[i], sets[j]));

  const bool exhaustive = family.size() <= 20;
  for (const auto& root : roots) {
    std::vector<std::size_t> cands;
    std::vector<std::vector<std::size_t>> residuals(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (superset_of(sets[i], root)) {
        cands.push_back(i);
        residuals[i] = difference(sets[i], root);
      }
    std::vector<std::size_t> chosen;
    if (exhaustive) {
      std::vector<std::size_t> cur, used;
      pack_exact(cands, residuals, 0, cur, used, chosen);
    } else {
      chosen = pack_greedy(cands, residuals);
    }
    if (chosen.size() > best.members.size() ||
        (chosen.size() == best.members.size() && !best.members.empty() &&
         chosen < best.members)) {
      best.members = chosen;
      best.root = root;
    }
  }
  return best;
}

std::optional<DeltaSystem> delta_system(const std::vector<std::vector<std::size_t>>& family,
                                        std::size_t k) {
  DeltaSystem best = delta_system_largest(family);
  if (best.members.size() < k) return std::nullopt;
  return best;
}

std::size_t ColoringTable::at(std::size_t i, std::size_t j) const {
  if (i == j) throw Error(ErrorKind::Usage, "coloring is defined on pairs");
  if (i > j) std::swap(i, j);
  return color[i][j - i - 1];
}

ColoringTable product_coloring(const SupportProduct& sp,
                               const std::vector<std::size_t>& condition_elems,
                               const DeltaSystem& delta) {
  ColoringTable table;
  table.members = delta.members;
  table.root = delta.root;
  table.nu = sp.nu;
  std::vector<std::vector<std::size_t>> supports;
  for (std::size_t m : delta.members)
    supports.push_back(sorted_copy(sp.conditions[condition_elems[m]].support()));
  for (std::size_t i = 0; i < supports.size(); ++i)
    for (std::size_t j = i + 1; j < supports.size(); ++j)
      if (intersect(supports[i], supports[j]) != delta.root)
        throw Error(ErrorKind::PreconditionFailed,
                    "supports do not form a Delta-system with the stated root");
  if (delta.root.size() > sp.nu)
    throw Error(ErrorKind::PreconditionFailed, "root larger than the support bound");

  table.color.resize(delta.members.size());
  for (std::size_t i = 0; i < delta.members.size(); ++i) {
    for (std::size_t j = i + 1; j < delta.members.size(); ++j) {
      std::size_t ei = condition_elems[delta.members[i]];
      std::size_t ej = condition_elems[delta.members[j]];
      const auto& ci = sp.conditions[ei].coords;
      const auto& cj = sp.conditions[ej].coords;
      std::size_t c = sp.nu;
      bool settled = false;
      for (std::size_t pos = 0; pos < delta.root.size(); ++pos) {
        std::size_t g = delta.root[pos];
        if (!sp.factors[g].compatible(ci.at(g), cj.at(g))) {
          c = pos;
          settled = true;
          break;
        }
      }
      if (!settled && !sp.poset.compatible(ei, ej)) {
        // coordinates agree on the root but the union of supports
        // overflows nu; the first off-root position records it
        c = delta.root.size();
      }
      table.color[i].push_back(c);
    }
  }
  return table;
}

namespace {

// branch-and-bound maximum clique size over the candidate list
void clique_size_rec(const std::vector<std::vector<bool>>& adj, std::vector<std::size_t> p,
                     std::size_t rsz, std::size_t& best) {
  best = std::max(best, rsz);
  while (!p.empty()) {
    if (rsz + p.size() <= best) return;
    std::size_t v = p.front();
    p.erase(p.begin());
    std::vector<std::size_t> next;
    for (std::size_t w : p)
      if (adj[v][w]) next.push_back(w);
    clique_size_rec(adj, std::move(next), rsz + 1, best);
  }
}

std::size_t clique_size(const std::vector<std::vector<bool>>& adj,
                        const std::vector<std::size_t>& candidates, std::size_t floor_size = 0) {
  std::size_t best = floor_size;
  clique_size_rec(adj, candidates, 0, best);
  return best;
}

}  // namespace

std::vector<std::size_t> max_clique_lex(const std::vector<std::vector<bool>>& adjacency,
                                        std::size_t cap) {
  const std::size_t n = adjacency.size();
  if (n > cap)
    throw Error(ErrorKind::Overflow,
                "clique search over " + std::to_string(n) + " conditions exceeds cap");
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  const std::size_t target = clique_size(adjacency, all);

  // lexicographically least realization, one position at a time
  std::vector<std::size_t> forced;
  std::vector<std::size_t> candidates = all;
  while (forced.size() < target) {
    for (std::size_t vi = 0; vi < candidates.size(); ++vi) {
      std::size_t v = candidates[vi];
      std::vector<std::size_t> rest;
      for (std::size_t j = vi + 1; j < candidates.size(); ++j)
        if (adjacency[v][candidates[j]]) rest.push_back(candidates[j]);
      if (forced.size() + 1 + clique_size(adjacency, rest) >= target) {
        forced.push_back(v);
        candidates = rest;
        break;
      }
    }
  }
  return forced;
}

ProductRefinement compatible_refinement_product(const SupportProduct& sp,
                                                const std::vector<std::size_t>& condition_elems) {
  const std::size_t m = condition_elems.size();
  if (m == 0) throw Error(ErrorKind::Empty, "no conditions given");
  for (std::size_t e : condition_elems)
    if (e >= sp.conditions.size()) throw Error(ErrorKind::Usage, "condition index out of range");

  ProductRefinement out;
  if (m >= 2) {
    bool any = false;
    for (std::size_t i = 0; i < m && !any; ++i)
      for (std::size_t j = i + 1; j < m && !any; ++j)
        any = sp.poset.compatible(condition_elems[i], condition_elems[j]);
    if (!any) throw Error(ErrorKind::Empty, "no two conditions are compatible");
  }

  std::vector<std::vector<std::size_t>> supports;
  for (std::size_t e : condition_elems)
    supports.push_back(sp.conditions[e].support());
  DeltaSystem delta = delta_system_largest(supports);

  auto set_str = [](const std::vector<std::size_t>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
  };
  out.trace.stages.push_back(
      TraceStage{"delta_system", delta.members, {{"root", set_str(delta.root)}}});

  ColoringTable table = product_coloring(sp, condition_elems, delta);
  std::string rows;
  for (std::size_t i = 0; i < delta.members.size(); ++i)
    for (std::size_t j = i + 1; j < delta.members.size(); ++j)
      rows += std::to_string(delta.members[i]) + "-" + std::to_string(delta.members[j]) + ":" +
              std::to_string(table.at(i, j)) + " ";
  out.trace.stages.push_back(TraceStage{"coloring", delta.members, {{"table", rows}}});

  std::vector<std::vector<bool>> adj(delta.members.size(),
                                     std::vector<bool>(delta.members.size(), false));
  for (std::size_t i = 0; i < delta.members.size(); ++i)
    for (std::size_t j = i + 1; j < delta.members.size(); ++j)
      adj[i][j] = adj[j][i] = (table.at(i, j) == sp.nu);
  std::vector<std::size_t> clique = max_clique_lex(adj);
  for (std::size_t c : clique) out.kept.push_back(delta.members[c]);
  std::sort(out.kept.begin(), out.kept.end());
  out.trace.stages.push_back(TraceStage{"clique", out.kept, {}});

  for (std::size_t i = 0; i < out.kept.size(); ++i)
    for (std::size_t j = i + 1; j < out.kept.size(); ++j)
      if (!sp.poset.compatible(condition_elems[out.kept[i]], condition_elems[out.kept[j]]))
        throw std::logic_error("refinement output is not pairwise compatible");
  return out;
}

namespace {

struct KnasterData {
  std::size_t index;
  Ordinal level;
  std::size_t depth;
  std::vector<std::size_t> t_nodes;   // level nodes under the domain, sorted
  std::vector<std::size_t> iota;      // their ancestors at the least separating depth
  std::vector<std::size_t> rbar;      // witness r-values
  std::vector<std::uint64_t> cvec;    // witness colors
  std::vector<std::size_t> low_dom;   // dom below the level
  Ordinal rho;
  Ordinal max_dom_label;
  std::string key1, key2, key3;
};

std::string ids_str(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

}  // namespace

KnasterResult knaster_refinement(const LeveledTree& t, const TreeWitness& w,
                                 const std::vector<KnasterInput>& conditions) {
  t.validate();
  if (t.splits_at_limit_labels())
    throw Error(ErrorKind::SplittingDetected, "tree splits at a limit level");
  if (auto issues = verify_tree_witness(t, w); !issues.empty())
    throw Error(ErrorKind::WitnessInvalid, issues.front());
  if (conditions.empty()) throw Error(ErrorKind::Empty, "no conditions given");

  std::vector<KnasterData> data;
  for (std::size_t idx = 0; idx < conditions.size(); ++idx) {
    const auto& [level, cond] = conditions[idx];
    KnasterData kd;
    kd.index = idx;
    kd.level = level;
    auto pos = std::find(t.labels.begin(), t.labels.end(), level);
    if (pos == t.labels.end() || level.kind() != Ordinal::Kind::Limit)
      throw Error(ErrorKind::PreconditionFailed,
                  "condition level " + level.str() + " is not an emitted limit level");
    if (std::find(w.s_levels.begin(), w.s_levels.end(), level) == w.s_levels.end())
      throw Error(ErrorKind::PreconditionFailed,
                  "condition level " + level.str() + " lies outside S");
    kd.depth = static_cast<std::size_t>(pos - t.labels.begin());
    if (kd.depth == 0)
      throw Error(ErrorKind::PreconditionFailed, "condition level sits at the root");
    if (!pt_is_valid(t.tree, cond))
      throw Error(ErrorKind::PreconditionFailed, "condition is not injective on chains");

    std::set<std::size_t> tset;
    for (const auto& [u, color] : cond.assignment) {
      if (t.tree.level(u) >= kd.depth)
        tset.insert(t.tree.ancestor_at(u, kd.depth));
      else
        kd.low_dom.push_back(u);
      kd.max_dom_label = std::max(kd.max_dom_label, t.label_of(u));
    }
    kd.t_nodes.assign(tset.begin(), tset.end());

    // least depth at which the level nodes have pairwise distinct
    // ancestors; non-splitting bounds it below the level
    std::size_t sep = 0;
    if (kd.t_nodes.size() > 1) {
      for (; sep < kd.depth; ++sep) {
        std::set<std::size_t> anc;
        for (std::size_t tk : kd.t_nodes) anc.insert(t.tree.ancestor_at(tk, sep));
        if (anc.size() == kd.t_nodes.size()) break;
      }
      if (sep >= kd.depth)
        throw Error(ErrorKind::SplittingDetected,
                    "level nodes do not separate below their level");
    }
    for (std::size_t tk : kd.t_nodes) {
      kd.iota.push_back(t.tree.ancestor_at(tk, sep));
      auto rv = w.r.find(tk);
      auto cv = w.color_of(tk);
      if (rv == w.r.end() || !cv)
        throw Error(ErrorKind::WitnessInvalid,
                    "witness undefined at node " + std::to_string(tk));
      kd.rbar.push_back(rv->second);
      kd.cvec.push_back(*cv);
    }

    Ordinal max_low;
    bool have_low = false;
    auto bump = [&](std::size_t node) {
      const Ordinal& lbl = t.label_of(node);
      if (!have_low || max_low < lbl) max_low = lbl;
      have_low = true;
    };
    for (std::size_t u : kd.low_dom) bump(u);
    for (std::size_t u : kd.iota) bump(u);
    for (std::size_t u : kd.rbar) bump(u);
    kd.rho = have_low ? max_low + Ordinal::nat(1) : Ordinal();
    if (!(kd.rho < level))
      throw Error(ErrorKind::PreconditionFailed, "condition data reaches its own level");

    std::string dstr;
    for (std::size_t u : kd.low_dom)
      dstr += std::to_string(u) + ":" + std::to_string(cond.assignment.at(u)) + ",";
    std::string cstr;
    for (std::uint64_t c : kd.cvec) cstr += std::to_string(c) + ",";
    kd.key1 = "n=" + std::to_string(kd.t_nodes.size()) + ";rho=" + kd.rho.str();
    kd.key2 = kd.key1 + ";R=" + ids_str(kd.low_dom) + ";d=" + dstr +
              ";iota=" + ids_str(kd.iota) + ";rbar=" + ids_str(kd.rbar);
    kd.key3 = kd.key2 + ";c=" + cstr;
    data.push_back(std::move(kd));
  }

  // the largest full-fingerprint group drives every stage; ties go to the
  // least key
  std::map<std::string, std::vector<std::size_t>> full_groups;
  for (const auto& kd : data) full_groups[kd.key3].push_back(kd.index);
  std::string winner;
  for (const auto& [key, members] : full_groups)
    if (winner.empty() || members.size() > full_groups[winner].size()) winner = key;

  KnasterResult out;
  out.fingerprint_count = full_groups.size();

  auto stage_kept = [&](auto key_of) {
    std::vector<std::size_t> kept;
    const std::string target = key_of(*std::find_if(
        data.begin(), data.end(), [&](const KnasterData& kd) { return kd.key3 == winner; }));
    for (const auto& kd : data)
      if (key_of(kd) == target) kept.push_back(kd.index);
    return kept;
  };
  auto kept1 = stage_kept([](const KnasterData& kd) { return kd.key1; });
  auto kept2 = stage_kept([](const KnasterData& kd) { return kd.key2; });
  auto kept3 = full_groups[winner];

  std::map<std::string, std::string> sizes1;
  for (const auto& kd : data) sizes1[kd.key1] += std::to_string(kd.index) + " ";
  out.trace.stages.push_back(TraceStage{"group_n_rho", kept1, sizes1});
  out.trace.stages.push_back(TraceStage{"group_R_d_iota_rbar", kept2, {}});
  out.trace.stages.push_back(
      TraceStage{"group_colors", kept3, {{"fingerprint", winner}}});

  // level-separated thinning, greedy by level
  std::vector<std::size_t> order = kept3;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (!(data[a].level == data[b].level)) return data[a].level < data[b].level;
    return a < b;
  });
  std::vector<std::size_t> u;
  for (std::size_t idx : order) {
    if (u.empty()) {
      u.push_back(idx);
      continue;
    }
    const KnasterData& prev = data[u.back()];
    const KnasterData& next = data[idx];
    if (prev.level < next.level && prev.max_dom_label < next.level) u.push_back(idx);
  }
  out.trace.stages.push_back(TraceStage{"separate_levels", u, {}});
  out.kept = u;

  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (!pt_compatible(t.tree, conditions[u[i]].cond, conditions[u[j]].cond))
        throw std::logic_error("knaster refinement output is not pairwise compatible");
  return out;
}

}  // namespace ordlab
