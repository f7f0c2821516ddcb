#include "ordlab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "ordlab/cseq.hpp"
#include "ordlab/errors.hpp"
#include "ordlab/gen.hpp"
#include "ordlab/ordinal.hpp"
#include "ordlab/poset.hpp"
#include "ordlab/refine.hpp"
#include "ordlab/rhotree.hpp"
#include "ordlab/specforcing.hpp"
#include "ordlab/walks.hpp"

namespace ordlab {

namespace {

struct Tally {
  std::uint64_t checks = 0;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 10) failures.push_back(what);
    if (!ok) ++fail_count;
  }
  std::uint64_t fail_count = 0;
};

SuiteResult finish(const std::string& name, const Tally& t,
                   std::chrono::steady_clock::time_point start,
                   std::optional<double> budget = std::nullopt) {
  SuiteResult r;
  r.name = name;
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                 .count();
  r.budget_millis = budget;
  r.passed = t.fail_count == 0 && (!budget || r.millis <= *budget);
  std::ostringstream d;
  d << t.checks << " checks, " << t.fail_count << " failures";
  if (budget && r.millis > *budget) d << ", over time budget";
  for (const auto& f : t.failures) d << "; " << f;
  r.detail = d.str();
  return r;
}

Ordinal nat(std::uint64_t v) { return Ordinal::nat(v); }

// ---------------------------------------------------------------- 1
SuiteResult suite_prop21(std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  auto equivalence = [&](const FinitePoset& q) {
    const std::size_t n = q.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) subset.push_back(i);
      bool regular = is_regular_suborder(q, subset);
      bool reducts = is_suborder(q, subset);
      for (std::size_t e = 0; e < n && reducts; ++e)
        reducts = find_reduct(q, subset, e).has_value();
      t.require(regular == reducts, "regular/reduct mismatch on subset mask " +
                                        std::to_string(mask) + " of an n=" + std::to_string(n) +
                                        " poset");
    }
  };
  std::size_t count4 = 0;
  for (std::size_t n = 0; n <= 4; ++n) {
    auto all = all_posets(n);
    if (n == 4) count4 = all.size();
    for (const auto& q : all) equivalence(q);
  }
  t.require(count4 == 219, "expected 219 labeled posets on 4 elements, got " +
                               std::to_string(count4));
  Rng rng(seed + 1);
  for (int i = 0; i < 1000; ++i) {
    std::uniform_int_distribution<std::size_t> nd(1, 8);
    equivalence(random_poset(rng, nd(rng)));
  }
  return finish("prop21_equivalence", t, start, 60000.0);
}

// ---------------------------------------------------------------- 2
SuiteResult suite_walks(std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  CSequence std_seq = CSequence::standard();
  Rng rng(seed + 2);
  for (int i = 0; i < 10000; ++i) {
    Ordinal a = random_ordinal_below_w3(rng, 8), b = random_ordinal_below_w3(rng, 8);
    if (b < a) std::swap(a, b);
    auto res = walk_with_code(std_seq, a, b);
    const auto& s = res.walk.steps;
    bool decreasing = true;
    for (std::size_t j = 0; j + 1 < s.size(); ++j)
      if (!(s[j + 1] < s[j])) decreasing = false;
    t.require(!s.empty() && s.front() == b && s.back() == a, "endpoints at " + a.str() + "," +
                                                                 b.str());
    t.require(decreasing, "non-decreasing walk at " + a.str() + "," + b.str());
    t.require(res.code.entries.size() + 1 == s.size(), "code length at " + a.str());
    if (a == b) t.require(res.code.entries.empty(), "self walk code at " + a.str());
  }
  t.require(rho0(std_seq, nat(0), nat(0)).entries.empty(), "rho0(0,0)");
  return finish("walk_properties", t, start, 10000.0);
}

// ---------------------------------------------------------------- 3
SuiteResult suite_distinctness(std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  CSequence std_seq = CSequence::standard();
  Rng rng(seed + 3);
  int done = 0;
  while (done < 1000) {
    Ordinal a0 = random_ordinal_below_w3(rng, 8), a1 = random_ordinal_below_w3(rng, 8),
            b = random_ordinal_below_w3(rng, 8);
    if (a0 == a1) continue;
    if (a1 < a0) std::swap(a0, a1);
    if (b < a1) continue;
    t.require(!(rho0(std_seq, a0, b) == rho0(std_seq, a1, b)),
              "equal codes at " + a0.str() + "," + a1.str() + " under " + b.str());
    ++done;
  }
  return finish("level_distinctness", t, start);
}

// ---------------------------------------------------------------- 4
SuiteResult suite_avoiding(std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  CSequence std_seq = CSequence::standard();
  Rng rng(seed + 4);
  std::uniform_int_distribution<std::size_t> size_d(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::set<Ordinal> s_set;
    std::size_t want = size_d(rng);
    while (s_set.size() < want) {
      Ordinal cand = random_ordinal_below_w3(rng, 6);
      if (cand.kind() == Ordinal::Kind::Limit) s_set.insert(cand);
    }
    AvoidSet avoid(std::vector<Ordinal>(s_set.begin(), s_set.end()));
    CSequence seq = CSequence::avoiding(avoid, std_seq);
    // arena: the avoided levels plus random material above them
    std::vector<Ordinal> arena(s_set.begin(), s_set.end());
    for (int i = 0; i < 8; ++i) {
      Ordinal extra = random_ordinal_below_w3(rng, 6);
      if (!extra.is_zero()) arena.push_back(extra);
    }
    auto report = verify_csequence(seq, arena, avoid, 10);
    t.require(report.ok(), report.ok() ? ""
                                       : "avoiding violation: " + report.violations[0].detail +
                                             " at " + report.violations[0].alpha.str());
  }
  return finish("avoiding_builder", t, start);
}

// ---------------------------------------------------------------- 5 and 6
struct ArenaCase {
  Arena arena;
  std::vector<Ordinal> s_levels;
  Fragment fragment;
};

ArenaCase make_arena_case(Rng& rng, std::size_t target_members) {
  std::set<Ordinal> seed_set;
  while (seed_set.size() < target_members / 6) {
    Ordinal cand = random_ordinal_below_w3(rng, 9);
    if (!cand.is_zero()) seed_set.insert(cand);
  }
  // candidate S: limit members above w; pick 3..6 of them
  std::vector<Ordinal> limits;
  for (const Ordinal& m : seed_set)
    if (m.kind() == Ordinal::Kind::Limit && Ordinal::omega() < m) limits.push_back(m);
  while (limits.size() < 3) {
    Ordinal cand = random_ordinal_below_w3(rng, 9);
    if (cand.kind() == Ordinal::Kind::Limit && Ordinal::omega() < cand) {
      limits.push_back(cand);
      seed_set.insert(cand);
    }
  }
  std::uniform_int_distribution<std::size_t> sd(3, std::min<std::size_t>(6, limits.size()));
  std::size_t s_count = sd(rng);
  std::shuffle(limits.begin(), limits.end(), rng);
  std::vector<Ordinal> s_levels(limits.begin(), limits.begin() + s_count);

  AvoidSet avoid{s_levels};
  CSequence seq = CSequence::avoiding(avoid, CSequence::standard());
  std::uniform_int_distribution<std::uint64_t> rs;
  Arena arena = Arena::build(std::vector<Ordinal>(seed_set.begin(), seed_set.end()), seq, 40,
                             rs(rng), 3000);
  Fragment frag = build_fragment(arena, s_levels);
  return ArenaCase{std::move(arena), std::move(s_levels), std::move(frag)};
}

// suites 5 and 6 inspect the same twenty arenas
const std::vector<ArenaCase>& shared_arena_cases(std::uint64_t seed) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::vector<ArenaCase>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(seed);
  if (it != cache.end()) return it->second;
  Rng rng(seed);
  std::vector<ArenaCase> cases;
  for (int trial = 0; trial < 20; ++trial) cases.push_back(make_arena_case(rng, 200));
  return cache.emplace(seed, std::move(cases)).first->second;
}

SuiteResult suite_regressive(std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  std::uint64_t comparable_pairs = 0, escalations = 0, member_total = 0;
  for (const ArenaCase& c : shared_arena_cases(seed + 5)) {
    member_total += c.arena.members().size();
    std::vector<TreeNode> nodes = c.fragment.all_nodes();
    std::vector<TreeNode> rvals(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) rvals[i] = regressive_r(c.arena, nodes[i]);
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j = 0; j < nodes.size(); ++j) {
        if (i == j || !(nodes[i].level < nodes[j].level)) continue;
        TreeLeq v = tree_leq(c.arena, nodes[i], nodes[j]);
        if (v.verdict != LeqVerdict::Below) continue;
        ++comparable_pairs;
        bool differ = !(rvals[i] == rvals[j]);
        if (!differ) {
          ++escalations;
          // apparent equality must dissolve under wider probes
          TreeLeq esc = tree_leq(c.arena, nodes[i], nodes[j], true);
          bool pair_separates = esc.verdict == LeqVerdict::Distinct;
          bool values_separate =
              find_code_disagreement(c.arena, rvals[i].source, rvals[j].source, rvals[i].level)
                  .has_value();
          differ = pair_separates || values_separate;
        }
        t.require(differ, "persistent equal regressive values at " + nodes[i].str() + " < " +
                              nodes[j].str());
      }
  }
  std::ostringstream extra;
  extra << comparable_pairs << " comparable pairs, " << escalations << " escalations, mean |W|="
        << member_total / 20;
  SuiteResult r = finish("regressive_injectivity", t, start);
  r.detail += "; " + extra.str();
  return r;
}

SuiteResult suite_nonsplitting(std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  for (const ArenaCase& c : shared_arena_cases(seed + 5)) {  // the suite-5 arenas
    for (const Ordinal& lvl : c.s_levels) {
      const auto& nodes = c.fragment.nodes.at(lvl);
      std::vector<std::pair<TreeNode, TreeNode>> pairs;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j) pairs.push_back({nodes[i], nodes[j]});
      auto report = check_nonsplitting(c.arena, lvl, pairs);
      t.require(report.ok(), "splitting at " + lvl.str());
      for (const auto& e : report.entries) {
        ++t.checks;
        if (e.resolved)
          t.require(*e.level < lvl, "resolution level not below " + lvl.str());
      }
    }
  }
  return finish("nonsplitting", t, start);
}

// ---------------------------------------------------------------- 7
SuiteResult suite_pt_oracle(std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  Rng rng(seed + 7);
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<std::size_t> nd(1, 6);
    FiniteTree tree = random_tree(rng, nd(rng));
    auto small = pt_enumerate(tree, 3, 3);
    auto big = pt_enumerate(tree, 6, 3);
    // extension sets of each small condition over the big enumeration
    std::vector<std::vector<std::uint64_t>> ext(small.size());
    const std::size_t words = (big.size() + 63) / 64;
    for (std::size_t i = 0; i < small.size(); ++i) {
      ext[i].assign(words, 0);
      for (std::size_t r = 0; r < big.size(); ++r)
        if (std::includes(big[r].assignment.begin(), big[r].assignment.end(),
                          small[i].assignment.begin(), small[i].assignment.end()))
          ext[i][r / 64] |= 1ull << (r % 64);
    }
    for (std::size_t i = 0; i < small.size(); ++i)
      for (std::size_t j = i; j < small.size(); ++j) {
        bool brute = false;
        for (std::size_t w = 0; w < words && !brute; ++w) brute = (ext[i][w] & ext[j][w]) != 0;
        bool fast = pt_compatible(tree, small[i], small[j]);
        t.require(fast == brute, "oracle mismatch " + small[i].str() + " vs " + small[j].str());
      }
  }
  return finish("pt_compat_oracle", t, start);
}

// ---------------------------------------------------------------- 8
SuiteResult suite_knaster(std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  Rng rng(seed + 8);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = random_knaster_instance(rng, 64);
    t.require(inst.tree.tree.size() <= 40, "tree too large");
    t.require(inst.tree.labels.size() <= 8, "tree too high");
    t.require(!inst.tree.splits_at_limit_labels(), "generated tree splits");
    t.require(verify_tree_witness(inst.tree, inst.witness).empty(), "generated witness invalid");
    auto res = knaster_refinement(inst.tree, inst.witness, inst.conditions);
    t.require(res.kept.size() >= 2, "refined family smaller than 2");
    std::size_t bound = (64 + res.fingerprint_count - 1) / res.fingerprint_count;
    t.require(res.kept.size() >= bound,
              "pigeonhole bound missed: " + std::to_string(res.kept.size()) + " < " +
                  std::to_string(bound) + " with " + std::to_string(res.fingerprint_count) +
                  " fingerprints");
    for (std::size_t i = 0; i < res.kept.size(); ++i)
      for (std::size_t j = i + 1; j < res.kept.size(); ++j) {
        // independent union check, not the pipeline's own verification
        auto merged = inst.conditions[res.kept[i]].cond.assignment;
        bool functional = true;
        for (const auto& [node, color] : inst.conditions[res.kept[j]].cond.assignment) {
          auto [it, inserted] = merged.emplace(node, color);
          if (!inserted && it->second != color) functional = false;
        }
        bool valid = functional && std::holds_alternative<SpecCondition>(
                                       pt_validate(inst.tree.tree, merged));
        t.require(valid, "output pair " + std::to_string(res.kept[i]) + "," +
                             std::to_string(res.kept[j]) + " incompatible");
      }
  }
  return finish("knaster_refinement", t, start);
}

// ---------------------------------------------------------------- 9
SuiteResult suite_product(std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  Rng rng(seed + 9);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = random_product_instance(rng, 4, 6, 1, 32);
    ProductRefinement res;
    try {
      res = compatible_refinement_product(inst.product, inst.conditions);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Empty) continue;  // no two compatible; nothing to check
      throw;
    }
    // Delta-root exactness on the delta stage
    t.require(!res.trace.stages.empty() && res.trace.stages[0].name == "delta_system",
              "missing delta stage");
    std::vector<std::vector<std::size_t>> supports;
    for (std::size_t e : inst.conditions)
      supports.push_back(inst.product.conditions[e].support());
    DeltaSystem d;
    d.members = res.trace.stages[0].kept;
    if (d.members.size() >= 2) {
      std::vector<std::size_t> a = supports[d.members[0]], b = supports[d.members[1]];
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      std::vector<std::size_t> root;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(root));
      d.root = root;
    } else if (d.members.size() == 1) {
      d.root = supports[d.members[0]];
    }
    t.require(d.holds_for(supports), "delta stage root is not exact");
    for (std::size_t i = 0; i < res.kept.size(); ++i)
      for (std::size_t j = i + 1; j < res.kept.size(); ++j)
        t.require(inst.product.poset.compatible(inst.conditions[res.kept[i]],
                                                inst.conditions[res.kept[j]]),
                  "refined pair incompatible");
  }
  return finish("product_pipeline", t, start);
}

// ---------------------------------------------------------------- 10
SuiteResult suite_refuters(std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  Rng rng(seed + 10);
  // specialization-forcing refuter
  int done = 0;
  while (done < 100) {
    std::uniform_int_distribution<std::size_t> nd(2, 10);
    FiniteTree tree = random_tree(rng, nd(rng));
    std::vector<std::size_t> high;
    for (std::size_t v = 0; v < tree.size(); ++v)
      if (tree.level(v) >= 1) high.push_back(v);
    if (high.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, high.size() - 1);
    std::size_t node = high[pick(rng)];
    std::uniform_int_distribution<std::size_t> bd(0, tree.level(node) - 1);
    std::size_t beta = bd(rng);
    SpecCondition q;
    std::uint64_t next_color = 1;
    std::bernoulli_distribution coin(0.5);
    for (std::size_t v = 0; v < tree.size(); ++v)
      if (tree.level(v) < beta && coin(rng)) q.assignment[v] = next_color++;
    SpecCondition r = tree_reduct_refuter(tree, q, node, beta);
    bool extends = std::includes(r.assignment.begin(), r.assignment.end(), q.assignment.begin(),
                                 q.assignment.end());
    SpecCondition p;
    p.assignment[node] = 0;
    t.require(extends && pt_is_valid(tree, r), "refuter does not extend q");
    t.require(!pt_compatible(tree, r, p), "refuter compatible with the target condition");
    ++done;
  }
  // linked-poset refuter
  done = 0;
  while (done < 100) {
    std::uniform_int_distribution<std::size_t> ld(2, 6);
    LinkedPosetParams params;
    params.lambda = ld(rng);
    std::uniform_int_distribution<std::size_t> xd(2, std::min<std::size_t>(16, 1u << params.lambda));
    std::set<std::string> xs;
    std::uniform_int_distribution<int> bit(0, 1);
    std::size_t want = xd(rng);
    while (xs.size() < want) {
      std::string s(params.lambda, '0');
      for (auto& ch : s) ch = bit(rng) ? '1' : '0';
      xs.insert(s);
    }
    params.x.assign(xs.begin(), xs.end());
    std::uniform_int_distribution<std::size_t> xi(0, params.x.size() - 1);
    std::string x = params.x[xi(rng)];
    LinkedCondition q;
    std::uniform_int_distribution<std::size_t> ad(1, 3);
    std::size_t asize = ad(rng);
    for (const auto& y : params.x) {
      if (y == x || q.a.size() >= asize) continue;
      q.a.push_back(y);
    }
    std::sort(q.a.begin(), q.a.end());
    if (q.a.empty()) continue;
    LinkedCondition r;
    try {
      r = linked_reduct_refuter(params, q, x);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NoSeparator) continue;
      throw;
    }
    t.require(linked_leq(r, q), "linked refuter does not extend q");
    bool syntactic = linked_clashes_with(r, x);
    bool brute = !linked_compatible_with_brute(params, r, x, 1);
    t.require(syntactic, "linked refuter misses the syntactic clash");
    t.require(syntactic == brute, "syntactic and brute incompatibility disagree");
    ++done;
  }
  return finish("reduct_refuters", t, start);
}

// ---------------------------------------------------------------- 11
SuiteResult suite_closure(std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  Rng rng(seed + 11);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<std::size_t> nd(1, 10);
    FinitePoset q = random_poset(rng, nd(rng));
    std::uniform_int_distribution<std::uint32_t> md(0, (1u << q.size()) - 1);
    std::uint32_t mask = md(rng);
    std::vector<std::size_t> seed_subset;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (mask & (1u << i)) seed_subset.push_back(i);
    auto grown = regular_closure(q, seed_subset);
    bool contains = std::includes(grown.begin(), grown.end(), seed_subset.begin(),
                                  seed_subset.end());
    t.require(contains, "closure lost a seed element");
    t.require(is_regular_suborder(q, grown), "closure output is not regular");
  }
  return finish("regular_closure", t, start);
}

// ---------------------------------------------------------------- 12
SuiteResult suite_ordinals(std::uint64_t seed) {
  auto start = std::chrono::steady_clock::now();
  Tally t;
  Rng rng(seed + 12);
  for (int i = 0; i < 10000; ++i) {
    Ordinal a = random_ordinal_below_w3(rng, 9), b = random_ordinal_below_w3(rng, 9),
            c = random_ordinal_below_w3(rng, 9);
    t.require((a + b) + c == a + (b + c), "associativity at " + a.str());
    t.require(a + Ordinal() == a && Ordinal() + a == a, "identity at " + a.str());
    if (b < c) t.require(a + b < a + c, "monotonicity at " + a.str());
    t.require((a + b).valid_cnf(), "cnf validity at " + a.str());
  }
  std::uniform_int_distribution<std::uint64_t> len(0, 8), entry(0, 10000);
  for (int i = 0; i < 10000; ++i) {
    std::vector<Nat> s;
    std::uint64_t k = len(rng);
    for (std::uint64_t j = 0; j < k; ++j) s.push_back(Nat(static_cast<unsigned long>(entry(rng))));
    t.require(decode_seq(encode_seq(s)) == s, "seq code roundtrip");
  }
  return finish("ordinal_algebra", t, start, 5000.0);
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"prop21_equivalence", "walk_properties", "level_distinctness", "avoiding_builder",
          "regressive_injectivity", "nonsplitting", "pt_compat_oracle", "knaster_refinement",
          "product_pipeline", "reduct_refuters", "regular_closure", "ordinal_algebra"};
}

std::optional<SuiteResult> run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "prop21_equivalence") return suite_prop21(seed);
  if (name == "walk_properties") return suite_walks(seed);
  if (name == "level_distinctness") return suite_distinctness(seed);
  if (name == "avoiding_builder") return suite_avoiding(seed);
  if (name == "regressive_injectivity") return suite_regressive(seed);
  if (name == "nonsplitting") return suite_nonsplitting(seed);
  if (name == "pt_compat_oracle") return suite_pt_oracle(seed);
  if (name == "knaster_refinement") return suite_knaster(seed);
  if (name == "product_pipeline") return suite_product(seed);
  if (name == "reduct_refuters") return suite_refuters(seed);
  if (name == "regular_closure") return suite_closure(seed);
  if (name == "ordinal_algebra") return suite_ordinals(seed);
  return std::nullopt;
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed) {
  std::vector<SuiteResult> out;
  for (const auto& name : suite_names()) out.push_back(*run_suite(name, seed));
  return out;
}

}  // namespace ordlab
