#include "ordlab/poset.hpp"

#include <doctest.h>

#include <random>

#include "ordlab/errors.hpp"

using namespace ordlab;

namespace {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

FinitePoset chain(std::size_t n) {
  Pairs p;
  for (std::size_t i = 0; i + 1 < n; ++i) p.push_back({i, i + 1});
  return FinitePoset::build(n, p);
}

// two incomparable elements
FinitePoset antichain2() { return FinitePoset::build(2, {}); }

// r < p, r < q
FinitePoset vee() { return FinitePoset::build(3, {{0, 1}, {0, 2}}); }

}  // namespace

TEST_CASE("build_poset") {
  auto c = chain(2);
  CHECK(c.leq(0, 1));
  CHECK_FALSE(c.leq(1, 0));

  auto t = FinitePoset::build(3, {{0, 1}, {1, 2}});
  CHECK(t.leq(0, 2));  // inferred by transitivity

  CHECK_THROWS_AS(FinitePoset::build(2, {{0, 1}, {1, 0}}), Error);
}

TEST_CASE("compatible") {
  auto v = vee();
  CHECK(v.compatible(1, 1));
  CHECK(v.compatible(1, 2));
  CHECK(v.common_extension(1, 2) == 0);
  auto a = antichain2();
  CHECK_FALSE(a.compatible(0, 1));
}

TEST_CASE("maximal antichains") {
  auto mc = maximal_antichains(chain(2));
  CHECK(mc == std::vector<std::vector<std::size_t>>{{0}, {1}});
  CHECK(maximal_antichains(antichain2()) == std::vector<std::vector<std::size_t>>{{0, 1}});
  CHECK(maximal_antichains(chain(1)) == std::vector<std::vector<std::size_t>>{{0}});
  CHECK_THROWS_AS(maximal_antichains(chain(16)), Error);
}

TEST_CASE("maximal antichain outputs are antichains and maximal") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<std::size_t> nd(1, 7);
    std::size_t n = nd(rng);
    Pairs pairs;
    std::bernoulli_distribution coin(0.3);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (coin(rng)) pairs.push_back({i, j});
    FinitePoset p = FinitePoset::build(n, pairs);
    for (const auto& a : maximal_antichains(p)) {
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) CHECK_FALSE(p.compatible(a[i], a[j]));
      for (std::size_t x = 0; x < n; ++x) {
        bool meets = false;
        for (std::size_t e : a) meets = meets || p.compatible(x, e);
        CHECK(meets);
      }
    }
  }
}

TEST_CASE("is_suborder") {
  auto v = vee();
  CHECK(is_suborder(v, {0, 1, 2}));
  CHECK(is_suborder(v, {1}));
  // p, q compatible only through r which is left out
  CHECK_FALSE(is_suborder(v, {1, 2}));
  CHECK(is_suborder(v, {}));
}

TEST_CASE("is_regular_suborder") {
  auto v = vee();
  CHECK(is_regular_suborder(v, {0, 1, 2}));
  CHECK(is_regular_suborder(v, {1}));  // {1} maximal antichain, meets everything via 0 <= 1
  auto a = antichain2();
  CHECK_FALSE(is_regular_suborder(a, {0}));
  CHECK(is_regular_suborder(a, {0, 1}));
}

namespace {

bool is_reduct(const FinitePoset& q, const std::vector<std::size_t>& subset, std::size_t p,
               std::size_t elem) {
  for (std::size_t ext : subset)
    if (q.leq(ext, p) && !q.compatible(ext, elem)) return false;
  return true;
}

}  // namespace

TEST_CASE("find_reduct") {
  auto v = vee();
  // an element of A is always a reduct of itself; the search returns some reduct
  CHECK(is_reduct(v, {0, 1, 2}, 1, 1));
  auto found = find_reduct(v, {0, 1, 2}, 1);
  REQUIRE(found.has_value());
  CHECK(is_reduct(v, {0, 1, 2}, *found, 1));
  // regular subsets admit reducts for every element
  for (std::size_t q = 0; q < 3; ++q) CHECK(find_reduct(v, {1}, q).has_value());
  // the missing-antichain witness has no reduct into a non-regular subset
  auto a = antichain2();
  CHECK_FALSE(find_reduct(a, {0}, 1).has_value());
}

TEST_CASE("regular_closure") {
  auto v = vee();
  auto full = regular_closure(v, {0, 1, 2});
  CHECK(full == std::vector<std::size_t>{0, 1, 2});

  auto a = antichain2();
  auto grown = regular_closure(a, {0});
  CHECK(grown == std::vector<std::size_t>{0, 1});
  CHECK(is_regular_suborder(a, grown));

  auto c3 = chain(3);
  auto from_empty = regular_closure(c3, {});
  CHECK_FALSE(from_empty.empty());
  CHECK(is_regular_suborder(c3, from_empty));
}

TEST_CASE("prop 2.1 equivalence spot check") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> nd(1, 6);
    std::size_t n = nd(rng);
    Pairs pairs;
    std::uniform_int_distribution<int> coin(0, 3);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && i < j && coin(rng) == 0) pairs.push_back({i, j});
    FinitePoset q = FinitePoset::build(n, pairs);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) subset.push_back(i);
      bool regular = is_regular_suborder(q, subset);
      bool reducts = is_suborder(q, subset);
      if (reducts)
        for (std::size_t e = 0; e < n && reducts; ++e)
          reducts = find_reduct(q, subset, e).has_value();
      CHECK(regular == reducts);
    }
  }
}

TEST_CASE("support products") {
  SUBCASE("nu = 0 collapses to the all-tops point") {
    auto sp = support_product({chain(2), chain(2)}, 0);
    CHECK(sp.conditions.size() == 1);
    CHECK(sp.conditions[0].coords.empty());
  }
  SUBCASE("two 2-chains with nu = 2 give the full product") {
    auto sp = support_product({chain(2), chain(2)}, 2);
    CHECK(sp.conditions.size() == 4);
    auto top = sp.poset.greatest();
    REQUIRE(top.has_value());
    CHECK(sp.conditions[*top].coords.empty());
    for (const auto& c : sp.conditions) CHECK(c.support().size() <= 2);
  }
  SUBCASE("factors without tops are rejected, adjoining one fixes it") {
    CHECK_THROWS_AS(support_product({antichain2()}, 1), Error);
    auto sp = support_product({antichain2().with_top()}, 1);
    CHECK(sp.conditions.size() == 3);
  }
  SUBCASE("compatibility matches coordinatewise reasoning when nu is large") {
    auto sp = support_product({chain(2), antichain2().with_top(), chain(3)}, 3);
    const auto& P = sp.poset;
    for (std::size_t a = 0; a < sp.conditions.size(); ++a)
      for (std::size_t b = 0; b < sp.conditions.size(); ++b) {
        bool coordwise = true;
        for (std::size_t g = 0; g < sp.factors.size() && coordwise; ++g) {
          auto ia = sp.conditions[a].coords.find(g);
          auto ib = sp.conditions[b].coords.find(g);
          if (ia == sp.conditions[a].coords.end() || ib == sp.conditions[b].coords.end())
            continue;  // a top coordinate clashes with nothing
          coordwise = sp.factors[g].compatible(ia->second, ib->second);
        }
        CHECK(P.compatible(a, b) == coordwise);
      }
  }
  SUBCASE("support bound separates otherwise compatible conditions") {
    auto sp = support_product({chain(2), chain(2)}, 1);
    // conditions {0 -> 0} and {1 -> 0} are coordinatewise fine but their
    // union needs support 2
    ProductCondition c0, c1;
    c0.coords[0] = 0;
    c1.coords[1] = 0;
    auto i0 = sp.index_of(c0), i1 = sp.index_of(c1);
    REQUIRE(i0.has_value());
    REQUIRE(i1.has_value());
    CHECK_FALSE(sp.poset.compatible(*i0, *i1));
  }
}
