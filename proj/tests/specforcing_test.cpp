#include "ordlab/specforcing.hpp"

#include <doctest.h>

#include <random>

#include "ordlab/errors.hpp"

using namespace ordlab;

namespace {

// root 0 with children 1, 2; 3 above 1
FiniteTree sample_tree() {
  return FiniteTree::from_parents({std::nullopt, 0, 0, 1});
}

FiniteTree two_chain() { return FiniteTree::from_parents({std::nullopt, 0}); }

SpecCondition cond(std::initializer_list<std::pair<std::size_t, std::uint64_t>> entries) {
  SpecCondition s;
  for (auto [n, c] : entries) s.assignment[n] = c;
  return s;
}

}  // namespace

TEST_CASE("finite tree structure") {
  auto t = sample_tree();
  CHECK(t.root() == 0);
  CHECK(t.level(3) == 2);
  CHECK(t.height() == 3);
  CHECK(t.leq(0, 3));
  CHECK(t.leq(1, 3));
  CHECK_FALSE(t.leq(2, 3));
  CHECK(t.chain(3, 0));
  CHECK_FALSE(t.chain(1, 2));
  CHECK(t.ancestor_at(3, 1) == 1);
  CHECK(t.nodes_at(1) == std::vector<std::size_t>{1, 2});

  CHECK_THROWS_AS(FiniteTree::from_parents({std::nullopt, std::nullopt}), Error);
  CHECK_THROWS_AS(FiniteTree::from_parents({0}), Error);
}

TEST_CASE("pt_validate") {
  auto t = sample_tree();
  CHECK(std::holds_alternative<SpecCondition>(pt_validate(t, {})));
  auto clash = pt_validate(t, {{0, 0}, {1, 0}});
  REQUIRE(std::holds_alternative<ChainClash>(clash));
  CHECK(std::get<ChainClash>(clash).a == 0);
  CHECK(std::get<ChainClash>(clash).b == 1);
  // equal colors on incomparable nodes are fine
  CHECK(std::holds_alternative<SpecCondition>(pt_validate(t, {{1, 0}, {2, 0}})));
}

TEST_CASE("pt_compatible") {
  auto t = sample_tree();
  auto s = cond({{1, 1}});
  auto s_ext = cond({{1, 1}, {2, 1}});
  CHECK(pt_compatible(t, s, s_ext));
  CHECK_FALSE(pt_compatible(t, cond({{0, 0}}), cond({{1, 0}})));
  CHECK(pt_compatible(t, cond({{1, 0}}), cond({{2, 0}})));
  // functional clash
  CHECK_FALSE(pt_compatible(t, cond({{1, 0}}), cond({{1, 1}})));
}

TEST_CASE("pt_enumerate counts") {
  CHECK(pt_enumerate(two_chain(), 2, 2).size() == 7);
  CHECK(pt_enumerate(sample_tree(), 2, 0).size() == 1);
  CHECK(pt_enumerate(FiniteTree::from_parents({std::nullopt}), 1, 3).size() == 4);
}

TEST_CASE("pt_compatible agrees with brute-force extension search") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<std::size_t> nd(1, 6);
    std::size_t n = nd(rng);
    std::vector<std::optional<std::size_t>> parents{std::nullopt};
    for (std::size_t i = 1; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> pd(0, i - 1);
      parents.push_back(pd(rng));
    }
    auto t = FiniteTree::from_parents(parents);
    auto small = pt_enumerate(t, 3, 3);
    auto big = pt_enumerate(t, 6, 3);
    for (const auto& a : small)
      for (const auto& b : small) {
        bool brute = false;
        for (const auto& r : big) {
          bool ext_a = std::includes(r.assignment.begin(), r.assignment.end(),
                                     a.assignment.begin(), a.assignment.end());
          bool ext_b = std::includes(r.assignment.begin(), r.assignment.end(),
                                     b.assignment.begin(), b.assignment.end());
          if (ext_a && ext_b) {
            brute = true;
            break;
          }
        }
        CHECK(pt_compatible(t, a, b) == brute);
      }
  }
}

TEST_CASE("tree_reduct_refuter") {
  auto t = sample_tree();
  SUBCASE("empty q against any node above level 0") {
    auto r = tree_reduct_refuter(t, SpecCondition{}, 3, 0);
    CHECK(r == cond({{0, 0}}));
    SpecCondition p = cond({{3, 0}});
    CHECK_FALSE(pt_compatible(t, r, p));
  }
  SUBCASE("beta = 1 needs level > 1") {
    auto r = tree_reduct_refuter(t, SpecCondition{}, 3, 1);
    CHECK(r == cond({{1, 0}}));
    CHECK_FALSE(pt_compatible(t, r, cond({{3, 0}})));
    CHECK_THROWS_AS(tree_reduct_refuter(t, SpecCondition{}, 1, 1), Error);
  }
  SUBCASE("q with a zero on the chain is rejected") {
    CHECK_THROWS_AS(tree_reduct_refuter(t, cond({{0, 0}}), 3, 1), Error);
  }
  SUBCASE("q off the chain may carry zeros") {
    // deeper tree: 4 sits at level 3 above 0 < 1 < 3; node 2 is off that chain
    auto deep = FiniteTree::from_parents({std::nullopt, 0, 0, 1, 3});
    auto r = tree_reduct_refuter(deep, cond({{2, 0}, {0, 5}}), 4, 2);
    CHECK(r == cond({{2, 0}, {0, 5}, {3, 0}}));
    CHECK_FALSE(pt_compatible(deep, r, cond({{4, 0}})));
    CHECK(pt_compatible(deep, r, cond({{2, 0}, {0, 5}})));  // r extends q
  }
  SUBCASE("dom(q) above beta is rejected") {
    CHECK_THROWS_AS(tree_reduct_refuter(t, cond({{1, 1}}), 3, 1), Error);
  }
}

TEST_CASE("linked order clauses") {
  LinkedCondition p{{"1"}, {}};
  LinkedCondition q{{}, {"111"}};
  CHECK(linked_leq(p, p));
  CHECK_FALSE(linked_leq(p, q));  // "1" is an initial segment of 111
  LinkedCondition ok{{"00"}, {"111"}};
  CHECK(linked_leq(ok, q));
}

TEST_CASE("equal first components are compatible across the fragment") {
  LinkedPosetParams params;
  params.lambda = 3;
  params.x = {"000", "011", "101", "110"};
  params.max_seq = 1;
  params.max_a = 2;
  auto frag = build_linked_poset(params);
  for (std::size_t i = 0; i < frag.conditions.size(); ++i)
    for (std::size_t j = i + 1; j < frag.conditions.size(); ++j) {
      if (frag.conditions[i].s != frag.conditions[j].s) continue;
      // the witness <s, a_i union a_j> lies in the fragment when small enough
      LinkedCondition u;
      u.s = frag.conditions[i].s;
      u.a = frag.conditions[i].a;
      for (const auto& y : frag.conditions[j].a)
        if (!std::binary_search(u.a.begin(), u.a.end(), y)) {
          u.a.push_back(y);
          std::sort(u.a.begin(), u.a.end());
        }
      if (u.a.size() > params.max_a) continue;
      auto w = frag.index_of(u);
      REQUIRE(w.has_value());
      CHECK(frag.poset.leq(*w, i));
      CHECK(frag.poset.leq(*w, j));
    }
}

TEST_CASE("linked_reduct_refuter") {
  LinkedPosetParams params;
  params.lambda = 3;
  params.x = {"000", "111"};
  SUBCASE("worked example") {
    LinkedCondition q{{}, {"000"}};
    auto r = linked_reduct_refuter(params, q, "111");
    CHECK(r.s == std::vector<std::string>{"1"});
    CHECK(linked_leq(r, q));
    CHECK(linked_clashes_with(r, "111"));
    CHECK_FALSE(linked_compatible_with_brute(params, r, "111"));
  }
  SUBCASE("empty a_q is the degenerate separator") {
    CHECK_THROWS_AS(linked_reduct_refuter(params, LinkedCondition{}, "111"), Error);
  }
  SUBCASE("x in a_q is a precondition fault") {
    LinkedCondition q{{}, {"111"}};
    CHECK_THROWS_AS(linked_reduct_refuter(params, q, "111"), Error);
  }
  SUBCASE("agreeing long prefixes leave no separator") {
    LinkedPosetParams tight;
    tight.lambda = 3;
    tight.x = {"110", "111"};
    LinkedCondition q{{}, {"110"}};
    CHECK_THROWS_AS(linked_reduct_refuter(tight, q, "111"), Error);
  }
}
