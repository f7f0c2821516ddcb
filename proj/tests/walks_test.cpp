#include "ordlab/walks.hpp"

#include <doctest.h>

#include <random>

#include "ordlab/errors.hpp"

using namespace ordlab;

namespace {

const Ordinal w = Ordinal::omega();
Ordinal n(std::uint64_t v) { return Ordinal::nat(v); }
Ordinal wpow(std::uint64_t e, std::uint64_t c = 1) {
  return Ordinal::omega_pow(n(e), Nat(static_cast<unsigned long>(c)));
}

Ordinal random_below_w3(std::mt19937_64& rng, std::uint64_t coeff_cap = 8) {
  std::uniform_int_distribution<std::uint64_t> d(0, coeff_cap);
  return wpow(2, d(rng)) + wpow(1, d(rng)) + n(d(rng));
}

}  // namespace

TEST_CASE("walk base cases") {
  CSequence std_seq = CSequence::standard();
  CHECK(walk(std_seq, wpow(2), wpow(2)).steps == std::vector<Ordinal>{wpow(2)});
  CHECK(walk(std_seq, n(5), w).steps == std::vector<Ordinal>{w, n(5)});
  CHECK(walk(std_seq, w, wpow(1, 2)).steps == std::vector<Ordinal>{wpow(1, 2), w});
  CHECK_THROWS_AS(walk(std_seq, w, n(3)), Error);
}

TEST_CASE("rho0 base cases") {
  CSequence std_seq = CSequence::standard();
  CHECK(rho0(std_seq, w, w).entries.empty());
  CHECK(rho0(std_seq, n(5), w).entries == std::vector<std::uint64_t>{5});
  CHECK(rho0(std_seq, wpow(2), wpow(2) + n(1)).entries == std::vector<std::uint64_t>{0});
  CHECK(rho0(std_seq, w, wpow(1, 2)).entries == std::vector<std::uint64_t>{0});
}

TEST_CASE("walk properties on random pairs") {
  CSequence std_seq = CSequence::standard();
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10000; ++i) {
    Ordinal a = random_below_w3(rng), b = random_below_w3(rng);
    if (b < a) std::swap(a, b);
    auto res = walk_with_code(std_seq, a, b);
    const auto& steps = res.walk.steps;
    REQUIRE_FALSE(steps.empty());
    CHECK(steps.front() == b);
    CHECK(steps.back() == a);
    for (std::size_t j = 0; j + 1 < steps.size(); ++j) CHECK(steps[j + 1] < steps[j]);
    CHECK(res.code.entries.size() == steps.size() - 1);
  }
}

TEST_CASE("codes at distinct levels differ") {
  CSequence std_seq = CSequence::standard();
  std::mt19937_64 rng(29);
  int done = 0;
  while (done < 1000) {
    Ordinal a0 = random_below_w3(rng), a1 = random_below_w3(rng), b = random_below_w3(rng);
    if (a0 == a1) continue;
    if (a1 < a0) std::swap(a0, a1);
    if (b < a1) continue;
    CHECK_FALSE(rho0(std_seq, a0, b) == rho0(std_seq, a1, b));
    ++done;
  }
}

TEST_CASE("avoiding sequences keep codes natural and bounded") {
  CSequence std_seq = CSequence::standard();
  AvoidSet s{{wpow(1, 2), wpow(2)}};
  CSequence avoid = CSequence::avoiding(s, std_seq);
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    Ordinal b = random_below_w3(rng) + wpow(2);  // keep beta above the avoided levels
    for (const Ordinal& a : s.members()) {
      if (!(a <= b)) continue;
      auto res = walk_with_code(avoid, a, b);
      const auto& steps = res.walk.steps;
      // every step's C-sequence stays clear of a, so positions are finite
      for (std::size_t j = 0; j + 1 < steps.size(); ++j) {
        Ordinal v = avoid.entry(steps[j], res.code.entries[j]);
        CHECK(v >= a);
        if (res.code.entries[j] > 0)
          CHECK(avoid.entry(steps[j], res.code.entries[j] - 1) < a);
      }
    }
  }
}
