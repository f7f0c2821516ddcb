#include "ordlab/rhotree.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "ordlab/errors.hpp"

namespace ordlab {

namespace {

void sort_unique(std::vector<Ordinal>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Arena Arena::build(std::vector<Ordinal> seed, CSequence c, std::size_t probe_budget,
                   std::uint64_t rng_seed, std::size_t cap) {
  Arena a;
  a.cseq_ = CSequence::memoized(std::move(c));
  std::set<Ordinal> w(seed.begin(), seed.end());
  w.erase(Ordinal());
  if (w.empty()) throw Error(ErrorKind::PreconditionFailed, "arena seed is empty");

  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Ordinal> snapshot(w.begin(), w.end());
    for (std::size_t i = 0; i < snapshot.size(); ++i)
      for (std::size_t j = i; j < snapshot.size(); ++j) {
        auto res = walk(a.cseq_, snapshot[i], snapshot[j]);
        for (const Ordinal& step : res.steps)
          if (!step.is_zero() && w.insert(step).second) grew = true;
        if (w.size() > cap)
          throw Error(ErrorKind::Overflow, "arena closure exceeds cap " + std::to_string(cap));
      }
  }
  a.members_.assign(w.begin(), w.end());

  // probe pool: members, a run of naturals, and random ordinals assembled
  // from the exponents and coefficient range seen in the members
  std::vector<Ordinal> exponents;
  unsigned long max_coeff = 1;
  for (const Ordinal& m : a.members_)
    for (const auto& t : m.terms()) {
      exponents.push_back(t.exponent);
      if (t.coefficient.fits_ulong_p()) max_coeff = std::max(max_coeff, t.coefficient.get_ui());
    }
  sort_unique(exponents);
  std::sort(exponents.rbegin(), exponents.rend());

  std::mt19937_64 rng(rng_seed);
  auto random_ordinal = [&]() {
    Ordinal out;
    for (const Ordinal& e : exponents) {
      std::uniform_int_distribution<unsigned long> coeff(0, max_coeff);
      unsigned long k = coeff(rng);
      if (k > 0) out = out + Ordinal::omega_pow(e, Nat(k));
    }
    return out;
  };

  std::vector<Ordinal> pool = a.members_;
  for (std::uint64_t n = 0; n <= 32; ++n) pool.push_back(Ordinal::nat(n));
  for (const Ordinal& m : a.members_) pool.push_back(m + Ordinal::nat(1));
  for (std::size_t j = 0; j < probe_budget; ++j) {
    Ordinal cand = random_ordinal();
    if (cand < a.max_member()) pool.push_back(cand);
  }
  sort_unique(pool);
  a.pool_base_ = pool;
  for (std::uint64_t n = 33; n <= 128; ++n) pool.push_back(Ordinal::nat(n));
  for (std::size_t j = 0; j < 3 * probe_budget; ++j) {
    Ordinal cand = random_ordinal();
    if (cand < a.max_member()) pool.push_back(cand);
  }
  sort_unique(pool);
  a.pool_escalated_ = std::move(pool);

  // eager code table over every (pool point, member) pair
  a.points_ = a.pool_escalated_;
  a.in_base_.assign(a.points_.size(), 0);
  for (std::size_t p = 0; p < a.points_.size(); ++p)
    if (std::binary_search(a.pool_base_.begin(), a.pool_base_.end(), a.points_[p]))
      a.in_base_[p] = 1;
  for (std::size_t p = 0; p < a.points_.size(); ++p) a.point_index_[a.points_[p]] = p;
  for (std::size_t m = 0; m < a.members_.size(); ++m) a.member_index_[a.members_[m]] = m;
  std::map<Rho0Code, std::uint32_t> intern;
  a.code_id_.assign(a.members_.size(), std::vector<std::uint32_t>(a.points_.size(), kNoCode));
  for (std::size_t p = 0; p < a.points_.size(); ++p) {
    if (!a.in_base_[p]) continue;  // escalated-only points stay lazy
    const Ordinal& xi = a.points_[p];
    // walks toward xi share their tails across sources
    std::map<Ordinal, Rho0Code> partial;
    auto code_from = [&](auto&& self, const Ordinal& gamma) -> const Rho0Code& {
      auto hit = partial.find(gamma);
      if (hit != partial.end()) return hit->second;
      MinAbove next = min_above(a.cseq_, gamma, xi);
      Rho0Code code;
      code.entries.push_back(next.position);
      if (!(next.value == xi)) {
        const Rho0Code& tail = self(self, next.value);
        code.entries.insert(code.entries.end(), tail.entries.begin(), tail.entries.end());
      }
      return partial.emplace(gamma, std::move(code)).first->second;
    };
    for (std::size_t m = 0; m < a.members_.size(); ++m) {
      if (!(xi <= a.members_[m])) continue;
      Rho0Code code =
          xi == a.members_[m] ? Rho0Code{} : code_from(code_from, a.members_[m]);
      auto [it, fresh] = intern.emplace(std::move(code),
                                        static_cast<std::uint32_t>(a.code_store_.size()));
      if (fresh) a.code_store_.push_back(it->first);
      a.code_id_[m][p] = it->second;
    }
  }
  return a;
}

std::optional<std::size_t> Arena::member_index(const Ordinal& x) const {
  auto it = member_index_.find(x);
  if (it == member_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Arena::points_below(const Ordinal& level) const {
  return static_cast<std::size_t>(
      std::lower_bound(points_.begin(), points_.end(), level) - points_.begin());
}

bool Arena::contains(const Ordinal& x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

std::vector<Ordinal> Arena::probes_below(const Ordinal& level, bool escalated) const {
  const std::vector<Ordinal>& pool = escalated ? pool_escalated_ : pool_base_;
  auto end = std::lower_bound(pool.begin(), pool.end(), level);
  return std::vector<Ordinal>(pool.begin(), end);
}

const Rho0Code& Arena::code_of(const Ordinal& xi, const Ordinal& beta) const {
  auto m = member_index_.find(beta);
  if (m != member_index_.end()) {
    auto p = point_index_.find(xi);
    if (p != point_index_.end() && code_id_[m->second][p->second] != kNoCode)
      return code_store_[code_id_[m->second][p->second]];
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto key = std::make_pair(xi, beta);
  auto it = cache_->map.find(key);
  if (it != cache_->map.end()) return it->second;
  Rho0Code code = rho0(cseq_, xi, beta);
  return cache_->map.emplace(std::move(key), std::move(code)).first->second;
}

TreeNode canonical_node(const Arena& a, const Ordinal& level, const Ordinal& beta) {
  auto bi = a.member_index(beta);
  if (bi) {
    const std::size_t upto = a.points_below(level);
    for (std::size_t m = 0; m < a.members().size(); ++m) {
      if (a.members()[m] < level) continue;
      bool agrees = true;
      for (std::size_t p = 0; p < upto && agrees; ++p)
        if (a.point_in_base(p) && a.code_id(p, m) != a.code_id(p, *bi)) agrees = false;
      if (agrees) return TreeNode{level, a.members()[m]};
    }
  }
  std::vector<Ordinal> probes = a.probes_below(level);
  for (const Ordinal& cand : a.members()) {
    if (cand < level) continue;
    bool agrees = true;
    for (const Ordinal& xi : probes)
      if (!(a.code_of(xi, cand) == a.code_of(xi, beta))) {
        agrees = false;
        break;
      }
    if (agrees) return TreeNode{level, cand};
  }
  return TreeNode{level, beta};  // beta always agrees with itself
}

TreeNode node(const Arena& a, const Ordinal& level, const Ordinal& beta) {
  if (!(level <= beta))
    throw Error(ErrorKind::PreconditionFailed, "node level must not exceed its source");
  if (!a.contains(beta) || (!level.is_zero() && !a.contains(level)))
    throw Error(ErrorKind::PreconditionFailed, "node endpoints must lie in the arena");
  return canonical_node(a, level, beta);
}

TreeLeq tree_leq(const Arena& a, const TreeNode& t0, const TreeNode& t1, bool escalated) {
  const Ordinal& m = std::min(t0.level, t1.level);
  if (!(t0.source == t1.source)) {
    auto i0 = a.member_index(t0.source), i1 = a.member_index(t1.source);
    if (i0 && i1) {
      const std::size_t upto = a.points_below(m);
      for (std::size_t p = 0; p < upto; ++p) {
        if (!escalated && !a.point_in_base(p)) continue;
        std::uint32_t c0 = a.code_id(p, *i0), c1 = a.code_id(p, *i1);
        if (c0 == Arena::kNoCode || c1 == Arena::kNoCode) {
          if (!(a.code_of(a.points()[p], t0.source) == a.code_of(a.points()[p], t1.source)))
            return TreeLeq{LeqVerdict::Distinct, a.points()[p]};
        } else if (c0 != c1) {
          return TreeLeq{LeqVerdict::Distinct, a.points()[p]};
        }
      }
    } else {
      for (const Ordinal& xi : a.probes_below(m, escalated))
        if (!(a.code_of(xi, t0.source) == a.code_of(xi, t1.source)))
          return TreeLeq{LeqVerdict::Distinct, xi};
    }
    if (escalated) {
      if (auto xi = find_code_disagreement(a, t0.source, t1.source, m))
        return TreeLeq{LeqVerdict::Distinct, xi};
    }
  }
  if (t0.level < t1.level) return TreeLeq{LeqVerdict::Below, std::nullopt};
  if (t1.level < t0.level) return TreeLeq{LeqVerdict::Above, std::nullopt};
  return TreeLeq{LeqVerdict::EqualOnProbes, std::nullopt};
}

std::optional<Ordinal> find_code_disagreement(const Arena& a, const Ordinal& b0, const Ordinal& b1,
                                              const Ordinal& bound) {
  std::vector<Ordinal> candidates = a.probes_below(bound, true);
  auto push = [&](const Ordinal& x) {
    if (x < bound) candidates.push_back(x);
  };
  std::vector<Ordinal> anchors;
  for (const Ordinal& m : a.members())
    if (m < bound) anchors.push_back(m);
  anchors.push_back(Ordinal::nat(1));
  for (const Ordinal& xi : anchors) {
    for (const Ordinal& src : {b0, b1}) {
      if (!(xi <= src)) continue;
      auto res = walk(a.cseq(), xi, src);
      for (const Ordinal& step : res.steps) {
        push(step);
        push(step + Ordinal::nat(1));
        // the first few C-sequence entries of every step, and successors
        if (!step.is_zero()) {
          std::uint64_t span =
              step.kind() == Ordinal::Kind::Successor ? 1 : 24;
          for (std::uint64_t i = 0; i < span; ++i) {
            Ordinal v = a.cseq().entry(step, i);
            push(v);
            push(v + Ordinal::nat(1));
          }
        }
      }
    }
  }
  sort_unique(candidates);
  for (const Ordinal& xi : candidates)
    if (!(a.code_of(xi, b0) == a.code_of(xi, b1))) return xi;
  return std::nullopt;
}

NonsplitReport check_nonsplitting(const Arena& a, const Ordinal& lambda,
                                  const std::vector<std::pair<TreeNode, TreeNode>>& pairs) {
  if (lambda.kind() != Ordinal::Kind::Limit)
    throw Error(ErrorKind::PreconditionFailed, "non-splitting checks apply to limit levels");
  NonsplitReport report;
  for (const auto& [t0, t1] : pairs) {
    if (!(t0.level == lambda) || !(t1.level == lambda))
      throw Error(ErrorKind::PreconditionFailed, "pair is not at the stated level");
    TreeLeq v = tree_leq(a, t0, t1);
    NonsplitEntry entry{t0, t1, false, std::nullopt};
    if (v.verdict == LeqVerdict::Distinct) {
      // codes differ at xi < lambda, so the restrictions to xi+1 already
      // differ at a level below lambda
      Ordinal below = *v.witness + Ordinal::nat(1);
      if (below < lambda) {
        entry.resolved = true;
        entry.level = below;
      } else {
        ++report.violations;  // cannot happen for limit lambda
      }
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

TreeNode regressive_r(const Arena& a, const TreeNode& t) {
  if (t.level.kind() != Ordinal::Kind::Limit || !(Ordinal::omega() < t.level))
    throw Error(ErrorKind::NotInD,
                "regressive map needs a limit level above w, got " + t.level.str());
  TreeNode canonical = canonical_node(a, t.level, t.source);
  const Rho0Code& code = a.code_of(t.level, canonical.source);
  SeqCode f = encode_seq_u64(code.entries);
  // the result is itself reported canonically, so equal restrictions of
  // different sources share one representative
  return canonical_node(a, Ordinal::nat(f), canonical.source);
}

std::vector<TreeNode> Fragment::all_nodes() const {
  std::vector<TreeNode> out;
  for (const auto& [lvl, ns] : nodes) out.insert(out.end(), ns.begin(), ns.end());
  return out;
}

Fragment build_fragment(const Arena& a, std::vector<Ordinal> levels) {
  sort_unique(levels);
  Fragment frag;
  frag.levels = levels;
  for (const Ordinal& lvl : levels) {
    std::set<TreeNode> at_level;
    for (const Ordinal& beta : a.members())
      if (lvl <= beta) at_level.insert(canonical_node(a, lvl, beta));
    frag.nodes[lvl] = std::vector<TreeNode>(at_level.begin(), at_level.end());
  }
  return frag;
}

std::vector<Ordinal> nonsplitting_levels(const Arena& a, std::vector<Ordinal> levels) {
  sort_unique(levels);
  Fragment frag = build_fragment(a, levels);
  std::vector<Ordinal> out = levels;
  for (const Ordinal& lvl : levels) {
    if (lvl.kind() != Ordinal::Kind::Limit) continue;
    const auto& nodes = frag.nodes.at(lvl);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        TreeLeq v = tree_leq(a, nodes[i], nodes[j]);
        // distinct canonical nodes at one level always carry a witness
        if (v.verdict == LeqVerdict::Distinct && *v.witness + Ordinal::nat(1) < lvl)
          out.push_back(*v.witness + Ordinal::nat(1));
      }
  }
  sort_unique(out);
  return out;
}

WitnessData build_witness(const Arena& a, const Fragment& frag,
                          const std::vector<Ordinal>& s_levels, ColorRule rule) {
  WitnessData w;
  w.s_levels = s_levels;
  for (const Ordinal& lvl : s_levels) {
    auto it = frag.nodes.find(lvl);
    if (it == frag.nodes.end()) continue;
    for (const TreeNode& t : it->second) {
      TreeNode rt = regressive_r(a, t);
      w.r[t] = rt;
      auto& fiber = w.colors[rt];
      std::uint64_t color = rule == ColorRule::ConstantZero
                                ? 0
                                : static_cast<std::uint64_t>(fiber.size());
      fiber[t] = color;
    }
  }
  return w;
}

WitnessReport verify_witness(const Arena& a, const Fragment& frag, const WitnessData& w) {
  WitnessReport report;
  std::vector<TreeNode> s_nodes;
  for (const Ordinal& lvl : w.s_levels) {
    auto it = frag.nodes.find(lvl);
    if (it == frag.nodes.end()) continue;
    s_nodes.insert(s_nodes.end(), it->second.begin(), it->second.end());
  }
  for (const TreeNode& t : s_nodes) {
    auto rt = w.r.find(t);
    if (rt == w.r.end()) {
      report.violations.push_back("missing r value at " + t.str());
      continue;
    }
    TreeLeq v = tree_leq(a, rt->second, t);
    if (v.verdict != LeqVerdict::Below)
      report.violations.push_back("r(" + t.str() + ") = " + rt->second.str() +
                                  " is not strictly below its node");
    auto fiber = w.colors.find(rt->second);
    if (fiber == w.colors.end() || !fiber->second.count(t))
      report.violations.push_back("missing color at " + t.str());
  }
  // chain-injectivity of the fiber colorings
  for (const auto& [root, fiber] : w.colors) {
    for (auto i = fiber.begin(); i != fiber.end(); ++i)
      for (auto j = std::next(i); j != fiber.end(); ++j) {
        if (i->second != j->second) continue;
        TreeLeq v = tree_leq(a, i->first, j->first);
        if (v.verdict == LeqVerdict::Distinct) continue;
        // apparent chain with equal colors: escalate before reporting
        TreeLeq esc = tree_leq(a, i->first, j->first, true);
        if (esc.verdict == LeqVerdict::Distinct) continue;
        report.violations.push_back("fiber of " + root.str() + ": equal colors on the chain " +
                                    i->first.str() + ", " + j->first.str());
      }
  }
  return report;
}

std::pair<LeveledTree, std::map<TreeNode, std::size_t>> materialize(const Arena& a,
                                                                    const Fragment& frag) {
  std::vector<Ordinal> levels = frag.levels;
  if (levels.empty() || !levels.front().is_zero()) levels.insert(levels.begin(), Ordinal());
  std::map<TreeNode, std::size_t> ids;
  std::vector<std::optional<std::size_t>> parents;
  std::vector<Ordinal> node_levels;
  std::vector<TreeNode> order;

  for (std::size_t d = 0; d < levels.size(); ++d) {
    const Ordinal& lvl = levels[d];
    std::set<TreeNode> at_level;
    if (lvl.is_zero()) {
      at_level.insert(canonical_node(a, Ordinal(), a.members().front()));
    } else {
      auto it = frag.nodes.find(lvl);
      if (it != frag.nodes.end()) at_level.insert(it->second.begin(), it->second.end());
      else
        for (const Ordinal& beta : a.members())
          if (lvl <= beta) at_level.insert(canonical_node(a, lvl, beta));
    }
    for (const TreeNode& t : at_level) {
      std::size_t id = order.size();
      order.push_back(t);
      ids[t] = id;
      node_levels.push_back(lvl);
      if (d == 0) {
        parents.push_back(std::nullopt);
      } else {
        TreeNode parent = canonical_node(a, levels[d - 1], t.source);
        auto pit = ids.find(parent);
        if (pit == ids.end())
          throw Error(ErrorKind::PreconditionFailed,
                      "fragment is not closed under restriction at level " + levels[d - 1].str());
        parents.push_back(pit->second);
      }
    }
  }
  LeveledTree out;
  out.tree = FiniteTree::from_parents(std::move(parents));
  out.labels = levels;
  out.validate();
  return {std::move(out), std::move(ids)};
}

}  // namespace ordlab
