#include "ordlab/rhotree.hpp"

#include <doctest.h>

#include "ordlab/errors.hpp"

using namespace ordlab;

namespace {

const Ordinal w = Ordinal::omega();
Ordinal n(std::uint64_t v) { return Ordinal::nat(v); }
Ordinal wpow(std::uint64_t e, std::uint64_t c = 1) {
  return Ordinal::omega_pow(n(e), Nat(static_cast<unsigned long>(c)));
}

Arena small_arena() {
  return Arena::build({n(5), w, wpow(1, 2), wpow(2), wpow(2) + wpow(1, 2) + n(3)},
                      CSequence::standard(), 12, 5);
}

}  // namespace

TEST_CASE("arena closure") {
  auto a = Arena::build({n(5), w}, CSequence::standard(), 0);
  CHECK(a.contains(n(5)));
  CHECK(a.contains(w));

  auto single = Arena::build({wpow(2)}, CSequence::standard(), 0);
  CHECK(single.members() == std::vector<Ordinal>{wpow(2)});

  auto pair = Arena::build({w, wpow(1, 2)}, CSequence::standard(), 0);
  CHECK(pair.contains(w));  // the walk from w*2 to w passes through w

  CHECK_THROWS_AS(Arena::build({}, CSequence::standard(), 0), Error);
}

TEST_CASE("canonical nodes") {
  auto a = small_arena();
  SUBCASE("level zero is the unique root") {
    TreeNode r0 = node(a, Ordinal(), w);
    TreeNode r1 = node(a, Ordinal(), wpow(2));
    CHECK(r0 == r1);
  }
  SUBCASE("self node") {
    TreeNode t = node(a, w, w);
    CHECK(t.level == w);
  }
  SUBCASE("probe-equal sources canonicalize identically") {
    for (const Ordinal& b0 : a.members())
      for (const Ordinal& b1 : a.members()) {
        if (!(w <= b0) || !(w <= b1)) continue;
        bool equal = true;
        for (const Ordinal& xi : a.probes_below(w))
          if (!(a.code_of(xi, b0) == a.code_of(xi, b1))) {
            equal = false;
            break;
          }
        if (equal) CHECK(node(a, w, b0) == node(a, w, b1));
      }
  }
}

TEST_CASE("tree_leq") {
  auto a = small_arena();
  TreeNode root = node(a, Ordinal(), a.members().front());
  TreeNode t = node(a, wpow(2), wpow(2) + wpow(1, 2) + n(3));
  CHECK(tree_leq(a, root, t).verdict == LeqVerdict::Below);
  CHECK(tree_leq(a, t, t).verdict == LeqVerdict::EqualOnProbes);
  CHECK(tree_leq(a, t, root).verdict == LeqVerdict::Above);

  // two sources that genuinely differ below w*2: rho0(xi, .) separates them
  TreeNode u0 = node(a, wpow(1, 2), wpow(1, 2));
  TreeNode u1 = node(a, wpow(1, 2), wpow(2));
  auto v = tree_leq(a, u0, u1);
  if (v.verdict == LeqVerdict::Distinct) {
    REQUIRE(v.witness.has_value());
    CHECK_FALSE(a.code_of(*v.witness, u0.source) == a.code_of(*v.witness, u1.source));
  }
}

TEST_CASE("distinct witnesses survive probe enlargement") {
  auto a = small_arena();
  auto frag = build_fragment(a, {w, wpow(1, 2), wpow(2)});
  for (const auto& [lvl, nodes] : frag.nodes)
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        auto base = tree_leq(a, nodes[i], nodes[j]);
        if (base.verdict == LeqVerdict::Distinct) {
          auto esc = tree_leq(a, nodes[i], nodes[j], true);
          CHECK(esc.verdict == LeqVerdict::Distinct);
        }
      }
}

TEST_CASE("escalated probe pools contain the base pools") {
  auto a = small_arena();
  for (const Ordinal& lvl : {w, wpow(1, 2), wpow(2), a.max_member()}) {
    auto base = a.probes_below(lvl), esc = a.probes_below(lvl, true);
    CHECK(std::includes(esc.begin(), esc.end(), base.begin(), base.end()));
    for (const Ordinal& p : esc) CHECK(p < lvl);
  }
}

TEST_CASE("find_code_disagreement separates genuinely different sources") {
  auto a = small_arena();
  // walks from w*2 and w^2 to any positive natural already differ in length
  auto xi = find_code_disagreement(a, wpow(1, 2), wpow(2), w);
  REQUIRE(xi.has_value());
  CHECK_FALSE(a.code_of(*xi, wpow(1, 2)) == a.code_of(*xi, wpow(2)));
  CHECK(*xi < w);
  CHECK_FALSE(find_code_disagreement(a, wpow(2), wpow(2), w).has_value());
}

TEST_CASE("check_nonsplitting resolves distinct pairs") {
  auto a = small_arena();
  auto frag = build_fragment(a, {wpow(1, 2)});
  const auto& nodes = frag.nodes.at(wpow(1, 2));
  std::vector<std::pair<TreeNode, TreeNode>> pairs;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) pairs.push_back({nodes[i], nodes[j]});
  auto report = check_nonsplitting(a, wpow(1, 2), pairs);
  CHECK(report.ok());
  for (const auto& e : report.entries)
    if (e.resolved) CHECK(*e.level < wpow(1, 2));
  CHECK_THROWS_AS(check_nonsplitting(a, w + n(1), {}), Error);
}

TEST_CASE("regressive_r") {
  auto a = small_arena();
  SUBCASE("empty code maps to the root") {
    // the self-walk at a limit level above w has the empty code
    TreeNode t = node(a, wpow(1, 2), wpow(1, 2));
    TreeNode rt = regressive_r(a, t);
    CHECK(rt.level.is_zero());
  }
  SUBCASE("levels at or below w are outside D") {
    CHECK_THROWS_AS(regressive_r(a, node(a, w, wpow(2))), Error);
    CHECK_THROWS_AS(regressive_r(a, node(a, n(5), w)), Error);
  }
  SUBCASE("the regressive value sits strictly below, at a natural level") {
    TreeNode t = node(a, wpow(2), wpow(2) + wpow(1, 2) + n(3));
    TreeNode rt = regressive_r(a, t);
    CHECK(rt.level < w);
    CHECK(rt.level.is_nat());
    CHECK(rt.level == Ordinal::nat(encode_seq_u64(a.code_of(wpow(2), t.source).entries)));
    CHECK(tree_leq(a, rt, t).verdict == LeqVerdict::Below);
  }
}

TEST_CASE("witness build and verify") {
  auto a = Arena::build({wpow(1, 2), wpow(2), wpow(2) + wpow(1, 2), wpow(2, 2) + w + n(4)},
                        CSequence::standard(), 12, 7);
  std::vector<Ordinal> s_levels = {wpow(1, 2), wpow(2)};
  auto frag = build_fragment(a, s_levels);
  auto witness = build_witness(a, frag, s_levels);
  CHECK(verify_witness(a, frag, witness).ok());

  SUBCASE("constant colors stay valid while the fibers are antichains") {
    auto constant = build_witness(a, frag, s_levels, ColorRule::ConstantZero);
    bool fibers_are_antichains = true;
    for (const auto& [root, fiber] : constant.colors)
      for (auto i = fiber.begin(); i != fiber.end(); ++i)
        for (auto j = std::next(i); j != fiber.end(); ++j) {
          auto v = tree_leq(a, i->first, j->first).verdict;
          if (v == LeqVerdict::Below || v == LeqVerdict::Above) fibers_are_antichains = false;
        }
    REQUIRE(fibers_are_antichains);  // this arena's fibers happen to be antichains
    CHECK(verify_witness(a, frag, constant).ok());
  }
  SUBCASE("corrupting r to the identity is flagged") {
    WitnessData bad = witness;
    auto first = bad.r.begin();
    first->second = first->first;
    auto report = verify_witness(a, frag, bad);
    REQUIRE_FALSE(report.ok());
    CHECK(report.violations[0].find("not strictly below") != std::string::npos);
  }
  SUBCASE("equal colors on a comparable pair are flagged") {
    // stack two nodes of one chain into a fabricated fiber with one color
    TreeNode low = node(a, wpow(1, 2), wpow(2) + wpow(1, 2));
    TreeNode high = node(a, wpow(2) + wpow(1, 2), wpow(2) + wpow(1, 2));
    REQUIRE(tree_leq(a, low, high).verdict == LeqVerdict::Below);
    WitnessData bad = witness;
    TreeNode root = node(a, Ordinal(), a.members().front());
    bad.r[low] = root;
    bad.r[high] = root;
    bad.colors[root].clear();
    bad.colors[root][low] = 7;
    bad.colors[root][high] = 7;
    auto report = verify_witness(a, frag, bad);
    bool found = false;
    for (const auto& v : report.violations)
      if (v.find("equal colors") != std::string::npos) found = true;
    CHECK(found);
  }
}

TEST_CASE("tree_leq is transitive on Below verdicts") {
  auto a = small_arena();
  auto frag = build_fragment(a, {w, wpow(1, 2), wpow(2), wpow(2) + wpow(1, 2)});
  auto nodes = frag.all_nodes();
  for (const TreeNode& x : nodes)
    for (const TreeNode& y : nodes)
      for (const TreeNode& z : nodes) {
        if (tree_leq(a, x, y).verdict != LeqVerdict::Below) continue;
        if (tree_leq(a, y, z).verdict != LeqVerdict::Below) continue;
        CHECK(tree_leq(a, x, z).verdict == LeqVerdict::Below);
      }
}

TEST_CASE("along a chain, r-value and color pairs never repeat") {
  // the finite pigeonhole core: with a valid witness, two comparable
  // nodes at S-levels cannot share both their regressive value and color
  auto a = Arena::build({wpow(1, 2), wpow(2), wpow(2) + wpow(1, 2), wpow(2, 2) + w + n(4)},
                        CSequence::standard(), 12, 7);
  std::vector<Ordinal> s_levels = {wpow(1, 2), wpow(2), wpow(2) + wpow(1, 2)};
  auto frag = build_fragment(a, s_levels);
  auto witness = build_witness(a, frag, s_levels);
  REQUIRE(verify_witness(a, frag, witness).ok());
  auto nodes = frag.all_nodes();
  for (const TreeNode& x : nodes)
    for (const TreeNode& y : nodes) {
      if (x == y || tree_leq(a, x, y).verdict != LeqVerdict::Below) continue;
      auto rx = witness.r.at(x), ry = witness.r.at(y);
      auto cx = witness.colors.at(rx).at(x), cy = witness.colors.at(ry).at(y);
      CHECK((!(rx == ry) || cx != cy));
    }
}

TEST_CASE("materialize fragments into leveled trees") {
  auto a = small_arena();
  auto levels = nonsplitting_levels(a, {w, wpow(1, 2), wpow(2)});
  auto frag = build_fragment(a, levels);
  auto [tree, ids] = materialize(a, frag);
  CHECK(tree.labels.front().is_zero());
  CHECK(tree.labels.size() >= 4);
  CHECK_FALSE(tree.splits_at_limit_labels());
  for (const auto& [tn, id] : ids) {
    if (tree.tree.parent(id)) {
      std::size_t p = *tree.tree.parent(id);
      CHECK(tree.tree.level(p) + 1 == tree.tree.level(id));
    }
  }
}
