#include "ordlab/cseq.hpp"

#include <doctest.h>

#include "ordlab/errors.hpp"

using namespace ordlab;

namespace {

const Ordinal w = Ordinal::omega();
Ordinal n(std::uint64_t v) { return Ordinal::nat(v); }
Ordinal wpow(std::uint64_t e, std::uint64_t c = 1) {
  return Ordinal::omega_pow(n(e), Nat(static_cast<unsigned long>(c)));
}

}  // namespace

TEST_CASE("standard scheme entries") {
  CSequence std_seq = CSequence::standard();
  CHECK(std_seq.entry(w, 3) == n(3));
  CHECK(std_seq.entry(w + n(1), 0) == w);
  CHECK(std_seq.entry(wpow(1, 2), 2) == w + n(3));
  CHECK(std_seq.entry(wpow(1, 2), 0) == w);
  CHECK(std_seq.entry(wpow(2), 0) == Ordinal());
  CHECK(std_seq.entry(wpow(2), 2) == wpow(1, 3));
  CHECK(std_seq.entry(wpow(2, 2) + wpow(1, 3), 1) == wpow(2, 2) + wpow(1, 2) + n(2));
  CHECK_THROWS_AS(std_seq.entry(Ordinal(), 0), Error);
  CHECK_THROWS_AS(std_seq.entry(n(5), 1), Error);
}

TEST_CASE("min_above") {
  CSequence std_seq = CSequence::standard();
  auto r = min_above(std_seq, w, n(5));
  CHECK(r.value == n(5));
  CHECK(r.position == 5);

  auto succ = min_above(std_seq, wpow(2) + n(1), wpow(2));
  CHECK(succ.value == wpow(2));
  CHECK(succ.position == 0);

  auto lim = min_above(std_seq, wpow(1, 2), w);
  CHECK(lim.value == w);
  CHECK(lim.position == 0);

  CHECK_THROWS_AS(min_above(std_seq, w, w), Error);
}

TEST_CASE("min_above position is otp below the target") {
  CSequence std_seq = CSequence::standard();
  // value >= xi, and the previous entry (when any) is < xi
  for (std::uint64_t tgt : {1u, 2u, 7u}) {
    auto r = min_above(std_seq, wpow(1, 2), w + n(tgt));
    CHECK(r.value >= w + n(tgt));
    if (r.position > 0) CHECK(std_seq.entry(wpow(1, 2), r.position - 1) < w + n(tgt));
  }
}

TEST_CASE("avoiding builder") {
  CSequence std_seq = CSequence::standard();
  SUBCASE("empty avoid set changes nothing") {
    CSequence a = CSequence::avoiding(AvoidSet{}, std_seq);
    for (std::uint64_t i = 0; i < 50; ++i) {
      CHECK(a.entry(wpow(1, 2), i) == std_seq.entry(wpow(1, 2), i));
      CHECK(a.entry(w, i) == std_seq.entry(w, i));
    }
  }
  SUBCASE("avoids w at limit levels") {
    CSequence a = CSequence::avoiding(AvoidSet{{w}}, std_seq);
    for (std::uint64_t i = 0; i < 100; ++i) {
      CHECK_FALSE(a.entry(wpow(1, 2), i) == w);
    }
    CHECK(a.entry(wpow(1, 2), 0) == w + n(1));
  }
  SUBCASE("successor levels are not constrained") {
    CSequence a = CSequence::avoiding(AvoidSet{{w}}, std_seq);
    CHECK(a.entry(w + n(1), 0) == w);
  }
  SUBCASE("bumping preserves strict increase") {
    CSequence a = CSequence::avoiding(AvoidSet{{wpow(1, 2), wpow(1, 3)}}, std_seq);
    Ordinal prev;
    for (std::uint64_t i = 0; i < 60; ++i) {
      Ordinal v = a.entry(wpow(2), i);
      if (i > 0) CHECK(prev < v);
      CHECK(v < wpow(2));
      prev = v;
    }
  }
}

TEST_CASE("avoid set rejects non-limits") {
  CHECK_THROWS_AS(AvoidSet{{w + n(1)}}, Error);
  CHECK_THROWS_AS(AvoidSet{{n(3)}}, Error);
}

TEST_CASE("verify_csequence") {
  CSequence std_seq = CSequence::standard();
  std::vector<Ordinal> arena = {w, w + n(1), wpow(2), wpow(1, 2), wpow(2, 2) + w};

  SUBCASE("standard sequence is clean") {
    auto rep = verify_csequence(std_seq, arena, AvoidSet{}, 10);
    CHECK(rep.ok());
    CHECK(rep.checks > 0);
  }
  SUBCASE("avoiding sequence avoids") {
    AvoidSet s{{w, wpow(1, 2)}};
    auto rep = verify_csequence(CSequence::avoiding(s, std_seq), arena, s, 10);
    CHECK(rep.ok());
  }
  SUBCASE("corrupted entry is reported as strict increase violation") {
    CSequence bad = CSequence::custom([&](const Ordinal& a, std::uint64_t i) {
      if (a == w && i == 2) return n(1);
      return CSequence::standard().entry(a, i);
    });
    auto rep = verify_csequence(bad, {w}, AvoidSet{}, 5);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
      if (v.kind == CseqViolation::Kind::StrictIncrease && v.alpha == w && v.index == 2)
        found = true;
    CHECK(found);
  }
  SUBCASE("broken successor clause is reported") {
    CSequence bad = CSequence::custom([&](const Ordinal& a, std::uint64_t i) {
      if (a == w + n(1)) return n(0);
      return CSequence::standard().entry(a, i);
    });
    auto rep = verify_csequence(bad, {w + n(1)}, AvoidSet{}, 5);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].kind == CseqViolation::Kind::SuccessorClause);
  }
  SUBCASE("stalled sequence fails cofinality") {
    CSequence bad = CSequence::custom([&](const Ordinal& a, std::uint64_t i) {
      if (a == w) return n(i < 3 ? i : 3);  // stalls at 3, also breaks strict increase
      return CSequence::standard().entry(a, i);
    });
    auto rep = verify_csequence(bad, {w, n(7)}, AvoidSet{}, 6);
    bool cof = false;
    for (const auto& v : rep.violations)
      if (v.kind == CseqViolation::Kind::Cofinality) cof = true;
    CHECK(cof);
  }
}
