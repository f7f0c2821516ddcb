// Command-line front end: ordinal arithmetic, C-sequence probes, walks,
// rho0-tree emission, poset checks, refinement pipelines, specialization
// forcing, and the acceptance suites.
//
// Exit codes: 0 ok, 1 violations found, 2 usage or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ordlab/errors.hpp"
#include "ordlab/gen.hpp"
#include "ordlab/json_io.hpp"
#include "ordlab/suites.hpp"

using namespace ordlab;

namespace {

struct Output {
  bool json = false;
  Json payload = Json::object();
  std::vector<std::string> lines;
  std::vector<std::string> artifacts;
  int exit_code = 0;

  void line(const std::string& s) { lines.push_back(s); }
};

void write_artifact(Output& out, const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::Usage, "cannot write " + path);
  f << content;
  out.artifacts.push_back(path);
}

CSequence sequence_for(const std::string& avoid_csv, const std::string& avoid_file) {
  std::vector<Ordinal> members;
  if (!avoid_csv.empty()) members = parse_ordinal_list(avoid_csv);
  if (!avoid_file.empty()) {
    auto more = ordinals_from_file(avoid_file);
    members.insert(members.end(), more.begin(), more.end());
  }
  if (members.empty()) return CSequence::standard();
  return CSequence::avoiding(AvoidSet{std::move(members)}, CSequence::standard());
}

std::vector<std::size_t> parse_index_list(const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoull(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"desk-scale walks, trees and forcing combinatorics"};
  app.require_subcommand(1);
  bool json_out = false;
  app.add_flag("--json", json_out, "machine-readable output");

  Output out;
  std::function<void()> action;

  // ---- ord ----------------------------------------------------------
  auto* ord = app.add_subcommand("ord", "ordinal arithmetic in Cantor normal form");
  ord->require_subcommand(1);
  static std::string ord_a, ord_b, ord_seq;
  auto* ord_add = ord->add_subcommand("add", "ordinal sum");
  ord_add->add_option("a", ord_a)->required();
  ord_add->add_option("b", ord_b)->required();
  ord_add->callback([&] {
    Ordinal r = parse_ordinal_or_throw(ord_a) + parse_ordinal_or_throw(ord_b);
    out.line(r.str());
    out.payload["result"] = r.str();
  });
  auto* ord_cmp = ord->add_subcommand("cmp", "compare two ordinals");
  ord_cmp->add_option("a", ord_a)->required();
  ord_cmp->add_option("b", ord_b)->required();
  ord_cmp->callback([&] {
    Cmp c = cmp(parse_ordinal_or_throw(ord_a), parse_ordinal_or_throw(ord_b));
    const char* s = c == Cmp::LT ? "LT" : c == Cmp::GT ? "GT" : "EQ";
    out.line(s);
    out.payload["result"] = s;
  });
  auto* ord_cls = ord->add_subcommand("classify", "zero, successor or limit");
  ord_cls->add_option("a", ord_a)->required();
  ord_cls->callback([&] {
    Ordinal a = parse_ordinal_or_throw(ord_a);
    switch (a.kind()) {
      case Ordinal::Kind::Zero:
        out.line("ZERO");
        out.payload["result"] = "ZERO";
        break;
      case Ordinal::Kind::Successor:
        out.line("SUCCESSOR of " + a.predecessor().str());
        out.payload["result"] = "SUCCESSOR";
        out.payload["predecessor"] = a.predecessor().str();
        break;
      case Ordinal::Kind::Limit:
        out.line("LIMIT");
        out.payload["result"] = "LIMIT";
        break;
    }
  });
  auto* ord_enc = ord->add_subcommand("encode", "sequence code of naturals");
  ord_enc->add_option("seq", ord_seq, "comma-separated naturals, empty for <>");
  ord_enc->callback([&] {
    std::vector<Nat> s;
    std::stringstream ss(ord_seq);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) s.push_back(Nat(item, 10));
    Nat code = encode_seq(s);
    out.line(code.get_str());
    out.payload["result"] = code.get_str();
  });
  auto* ord_dec = ord->add_subcommand("decode", "decode a sequence code");
  ord_dec->add_option("code", ord_a)->required();
  ord_dec->callback([&] {
    auto s = decode_seq(Nat(ord_a, 10));
    std::string txt;
    Json arr = Json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
      txt += (i ? "," : "") + s[i].get_str();
      arr.push_back(s[i].get_str());
    }
    out.line(txt);
    out.payload["result"] = arr;
  });

  // ---- cseq ---------------------------------------------------------
  auto* cs = app.add_subcommand("cseq", "C-sequence entries and verification");
  cs->require_subcommand(1);
  static std::string cs_alpha, cs_avoid, cs_avoid_file, cs_arena_file;
  static std::uint64_t cs_i = 0, cs_probes = 10;
  auto* cs_entry = cs->add_subcommand("entry", "i-th element of C_alpha");
  cs_entry->add_option("--alpha", cs_alpha)->required();
  cs_entry->add_option("--i", cs_i)->required();
  cs_entry->add_option("--avoid", cs_avoid, "comma-separated limit ordinals to avoid");
  cs_entry->callback([&] {
    Ordinal v = sequence_for(cs_avoid, "").entry(parse_ordinal_or_throw(cs_alpha), cs_i);
    out.line(v.str());
    out.payload["result"] = v.str();
  });
  auto* cs_verify = cs->add_subcommand("verify", "check the C-sequence laws over an arena file");
  cs_verify->add_option("--arena-file", cs_arena_file)->required();
  cs_verify->add_option("--avoid", cs_avoid, "comma-separated limit ordinals to avoid");
  cs_verify->add_option("--avoid-file", cs_avoid_file, "file with one ordinal per line");
  cs_verify->add_option("--probes", cs_probes, "probe targets per arena member");
  cs_verify->callback([&] {
    std::vector<Ordinal> members;
    if (!cs_avoid.empty()) members = parse_ordinal_list(cs_avoid);
    if (!cs_avoid_file.empty()) {
      auto more = ordinals_from_file(cs_avoid_file);
      members.insert(members.end(), more.begin(), more.end());
    }
    AvoidSet avoid{members};
    CSequence seq = members.empty() ? CSequence::standard()
                                    : CSequence::avoiding(avoid, CSequence::standard());
    auto report = verify_csequence(seq, ordinals_from_file(cs_arena_file), avoid, cs_probes);
    out.payload = cseq_report_to_json(report);
    out.line(report.ok() ? "ok: " + std::to_string(report.checks) + " checks"
                         : std::to_string(report.violations.size()) + " violations");
    for (const auto& v : report.violations)
      out.line(std::string(cseq_violation_kind_name(v.kind)) + " at " + v.alpha.str() + "[" +
               std::to_string(v.index) + "]: " + v.detail);
    if (!report.ok()) out.exit_code = 1;
  });

  // ---- walk ---------------------------------------------------------
  auto* wk = app.add_subcommand("walk", "walk from beta to alpha with its full code");
  static std::string wk_alpha, wk_beta, wk_avoid;
  wk->add_option("--alpha", wk_alpha)->required();
  wk->add_option("--beta", wk_beta)->required();
  wk->add_option("--avoid", wk_avoid, "comma-separated limit ordinals to avoid");
  wk->callback([&] {
    auto res = walk_with_code(sequence_for(wk_avoid, ""), parse_ordinal_or_throw(wk_alpha),
                              parse_ordinal_or_throw(wk_beta));
    std::string steps;
    for (std::size_t i = 0; i < res.walk.steps.size(); ++i)
      steps += (i ? ", " : "") + res.walk.steps[i].str();
    out.line("steps: " + steps);
    out.line("code: " + res.code.str());
    out.payload = walk_to_json(res);
  });

  // ---- tree ---------------------------------------------------------
  auto* tr = app.add_subcommand("tree", "the tree of restricted walk codes");
  tr->require_subcommand(1);
  static std::string tr_seed, tr_avoid, tr_levels, tr_out;
  static bool tr_dot = false, tr_nonsplit = false;
  static std::size_t tr_budget = 24;
  auto* tr_emit = tr->add_subcommand("emit", "materialize canonical nodes at chosen levels");
  tr_emit->add_option("--seed", tr_seed, "comma-separated arena seed ordinals")->required();
  tr_emit->add_option("--levels", tr_levels, "comma-separated levels")->required();
  tr_emit->add_option("--avoid", tr_avoid, "comma-separated limit ordinals to avoid");
  tr_emit->add_option("--probe-budget", tr_budget, "random probe points per arena");
  tr_emit->add_flag("--dot", tr_dot, "emit graphviz instead of json");
  tr_emit->add_flag("--nonsplit", tr_nonsplit,
                    "add the separating successor levels at limit levels");
  tr_emit->add_option("--out", tr_out, "write to a file instead of stdout");
  tr_emit->callback([&] {
    Arena arena = Arena::build(parse_ordinal_list(tr_seed), sequence_for(tr_avoid, ""),
                               tr_budget);
    std::vector<Ordinal> levels = parse_ordinal_list(tr_levels);
    if (tr_nonsplit) levels = nonsplitting_levels(arena, levels);
    Fragment frag = build_fragment(arena, levels);
    auto [tree, ids] = materialize(arena, frag);
    std::string content =
        tr_dot ? leveled_tree_to_dot(tree, ids) : leveled_tree_to_json(tree, ids).dump(2) + "\n";
    if (tr_out.empty()) {
      out.line(content);
    } else {
      write_artifact(out, tr_out, content);
      out.line("wrote " + tr_out);
    }
    if (!tr_dot) out.payload = leveled_tree_to_json(tree, ids);
  });

  // ---- poset --------------------------------------------------------
  auto* ps = app.add_subcommand("poset", "regular suborders, closures and products");
  ps->require_subcommand(1);
  static std::string ps_file, ps_subset, ps_files, ps_out;
  static std::size_t ps_nu = 1;
  auto* ps_reg = ps->add_subcommand("check-regular", "is the subset a regular suborder");
  ps_reg->add_option("--poset", ps_file)->required();
  ps_reg->add_option("--subset", ps_subset)->required();
  ps_reg->callback([&] {
    FinitePoset q = poset_from_json(load_json_file(ps_file));
    auto subset = parse_index_list(ps_subset);
    bool sub = is_suborder(q, subset);
    bool reg = sub && is_regular_suborder(q, subset);
    out.payload["suborder"] = sub;
    out.payload["regular"] = reg;
    if (reg) {
      out.line("regular suborder");
    } else {
      out.line(sub ? "suborder, but not regular" : "not a suborder");
      out.exit_code = 1;
    }
  });
  auto* ps_clo = ps->add_subcommand("closure", "grow a seed to a regular suborder");
  ps_clo->add_option("--poset", ps_file)->required();
  ps_clo->add_option("--subset", ps_subset, "seed elements, comma-separated");
  ps_clo->callback([&] {
    FinitePoset q = poset_from_json(load_json_file(ps_file));
    auto grown = regular_closure(q, parse_index_list(ps_subset));
    std::string txt;
    for (std::size_t i = 0; i < grown.size(); ++i) txt += (i ? "," : "") + std::to_string(grown[i]);
    out.line(txt.empty() ? "(empty)" : txt);
    out.payload["closure"] = grown;
  });
  auto* ps_prod = ps->add_subcommand("product", "nu-support product of poset files");
  ps_prod->add_option("--posets", ps_files, "comma-separated poset json files")->required();
  ps_prod->add_option("--nu", ps_nu)->required();
  ps_prod->add_option("--out", ps_out, "write the product relation as json");
  ps_prod->callback([&] {
    std::vector<FinitePoset> factors;
    std::stringstream ss(ps_files);
    std::string f;
    while (std::getline(ss, f, ','))
      if (!f.empty()) factors.push_back(poset_from_json(load_json_file(f)).with_top());
    SupportProduct sp = support_product(std::move(factors), ps_nu);
    out.line(std::to_string(sp.conditions.size()) + " conditions");
    Json conds = Json::array();
    for (const auto& c : sp.conditions) {
      Json e = Json::object();
      for (const auto& [g, v] : c.coords) e[std::to_string(g)] = v;
      conds.push_back(e);
    }
    Json pairs = Json::array();
    for (std::size_t i = 0; i < sp.conditions.size(); ++i)
      for (std::size_t j = 0; j < sp.conditions.size(); ++j)
        if (i != j && sp.poset.leq(i, j)) pairs.push_back(Json::array({i, j}));
    out.payload["conditions"] = conds;
    out.payload["le"] = pairs;
    if (!ps_out.empty()) {
      write_artifact(out, ps_out, out.payload.dump(2) + "\n");
      out.line("wrote " + ps_out);
    }
  });

  // ---- refine -------------------------------------------------------
  auto* rf = app.add_subcommand("refine", "Delta-systems and refinement pipelines");
  rf->require_subcommand(1);
  static std::string rf_sets;
  static std::size_t rf_k = 2, rf_count = 32;
  static std::uint64_t rf_seed = 1;
  auto* rf_delta = rf->add_subcommand("delta", "Delta-system extraction from a sets file");
  rf_delta->add_option("--sets", rf_sets, "file with one comma-separated set per line")
      ->required();
  rf_delta->add_option("--k", rf_k, "least acceptable member count");
  rf_delta->callback([&] {
    std::ifstream in(rf_sets);
    if (!in) throw Error(ErrorKind::Usage, "cannot open " + rf_sets);
    std::vector<std::vector<std::size_t>> family;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      family.push_back(parse_index_list(line));
    }
    auto d = delta_system(family, rf_k);
    if (!d) {
      out.line("NONE");
      out.payload["result"] = nullptr;
      out.exit_code = 1;
      return;
    }
    std::string root, members;
    for (std::size_t i = 0; i < d->root.size(); ++i)
      root += (i ? "," : "") + std::to_string(d->root[i]);
    for (std::size_t i = 0; i < d->members.size(); ++i)
      members += (i ? "," : "") + std::to_string(d->members[i]);
    out.line("root: {" + root + "}");
    out.line("members: " + members);
    out.payload["root"] = d->root;
    out.payload["members"] = d->members;
  });
  auto* rf_prod = rf->add_subcommand("product", "run the product pipeline on a random instance");
  rf_prod->add_option("--seed", rf_seed, "instance seed");
  rf_prod->add_option("--conditions", rf_count, "family size");
  rf_prod->callback([&] {
    Rng rng(rf_seed);
    auto inst = random_product_instance(rng, 4, 6, 1, rf_count);
    auto res = compatible_refinement_product(inst.product, inst.conditions);
    out.line("kept " + std::to_string(res.kept.size()) + " of " +
             std::to_string(inst.conditions.size()));
    out.payload["kept"] = res.kept;
    out.payload["trace"] = trace_to_json(res.trace);
  });
  auto* rf_kn = rf->add_subcommand("knaster", "run the tree pipeline on a random instance");
  rf_kn->add_option("--seed", rf_seed, "instance seed");
  rf_kn->add_option("--conditions", rf_count, "family size");
  rf_kn->callback([&] {
    Rng rng(rf_seed);
    auto inst = random_knaster_instance(rng, rf_count);
    auto res = knaster_refinement(inst.tree, inst.witness, inst.conditions);
    out.line("kept " + std::to_string(res.kept.size()) + " of " +
             std::to_string(inst.conditions.size()) + ", " +
             std::to_string(res.fingerprint_count) + " fingerprints");
    out.payload["kept"] = res.kept;
    out.payload["fingerprints"] = res.fingerprint_count;
    out.payload["trace"] = trace_to_json(res.trace);
  });

  // ---- spec ---------------------------------------------------------
  auto* sp = app.add_subcommand("spec", "specialization forcing and the linked poset");
  sp->require_subcommand(1);
  static std::string sp_tree, sp_a, sp_b, sp_q, sp_x, sp_xs, sp_qs, sp_qa;
  static std::size_t sp_node = 0, sp_beta = 0, sp_lambda = 3;
  auto* sp_compat = sp->add_subcommand("compat", "are two conditions compatible in P(T)");
  sp_compat->add_option("--tree", sp_tree)->required();
  sp_compat->add_option("--a", sp_a, "condition, node:color pairs")->required();
  sp_compat->add_option("--b", sp_b)->required();
  sp_compat->callback([&] {
    FiniteTree tree = tree_from_json(load_json_file(sp_tree));
    SpecCondition a = spec_condition_from_string(sp_a), b = spec_condition_from_string(sp_b);
    if (!pt_is_valid(tree, a) || !pt_is_valid(tree, b))
      throw Error(ErrorKind::PreconditionFailed, "input is not a condition");
    bool compatible = pt_compatible(tree, a, b);
    out.line(compatible ? "compatible" : "incompatible");
    out.payload["compatible"] = compatible;
    if (!compatible) out.exit_code = 1;
  });
  auto* sp_rt = sp->add_subcommand("refute-tree", "the below-beta reduct refuter");
  sp_rt->add_option("--tree", sp_tree)->required();
  sp_rt->add_option("--q", sp_q, "condition below beta");
  sp_rt->add_option("--node", sp_node)->required();
  sp_rt->add_option("--beta", sp_beta)->required();
  sp_rt->callback([&] {
    FiniteTree tree = tree_from_json(load_json_file(sp_tree));
    SpecCondition q = spec_condition_from_string(sp_q);
    SpecCondition r = tree_reduct_refuter(tree, q, sp_node, sp_beta);
    out.line("refuter: " + r.str());
    out.payload["refuter"] = spec_condition_to_json(r);
  });
  auto* sp_rl = sp->add_subcommand("refute-linked", "the linked-poset reduct refuter");
  sp_rl->add_option("--lambda", sp_lambda)->required();
  sp_rl->add_option("--x-set", sp_xs, "comma-separated members of X")->required();
  sp_rl->add_option("--q-s", sp_qs, "strings of the condition, comma-separated");
  sp_rl->add_option("--q-a", sp_qa, "members of a_q, comma-separated");
  sp_rl->add_option("--x", sp_x, "the target element of X")->required();
  sp_rl->callback([&] {
    LinkedPosetParams params;
    params.lambda = sp_lambda;
    std::stringstream ss(sp_xs);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) params.x.push_back(item);
    LinkedCondition q;
    std::stringstream s2(sp_qs);
    while (std::getline(s2, item, ','))
      if (!item.empty()) q.s.push_back(item);
    std::stringstream s3(sp_qa);
    while (std::getline(s3, item, ','))
      if (!item.empty()) q.a.push_back(item);
    std::sort(q.a.begin(), q.a.end());
    LinkedCondition r = linked_reduct_refuter(params, q, sp_x);
    out.line("refuter: " + r.str());
    bool clash = linked_clashes_with(r, sp_x);
    bool brute = !linked_compatible_with_brute(params, r, sp_x);
    out.line(std::string("syntactic clash: ") + (clash ? "yes" : "no") +
             ", brute-force incompatible: " + (brute ? "yes" : "no"));
    out.payload["refuter_s"] = r.s;
    out.payload["refuter_a"] = r.a;
    out.payload["syntactic_clash"] = clash;
    out.payload["brute_incompatible"] = brute;
  });

  // ---- suite --------------------------------------------------------
  auto* su = app.add_subcommand("suite", "acceptance suites");
  static std::string su_only;
  static std::uint64_t su_seed = kDefaultSuiteSeed;
  su->add_option("--only", su_only, "run a single suite by name");
  su->add_option("--seed", su_seed, "suite seed, default 2024");
  su->callback([&] {
    std::vector<SuiteResult> results;
    if (su_only.empty()) {
      results = run_all_suites(su_seed);
    } else {
      auto r = run_suite(su_only, su_seed);
      if (!r) throw Error(ErrorKind::Usage, "unknown suite " + su_only);
      results.push_back(*r);
    }
    Json arr = Json::array();
    bool all = true;
    for (const auto& r : results) {
      out.line((r.passed ? "PASS " : "FAIL ") + r.name + " (" +
               std::to_string(static_cast<long>(r.millis)) + " ms): " + r.detail);
      Json e;
      e["name"] = r.name;
      e["passed"] = r.passed;
      e["millis"] = r.millis;
      e["detail"] = r.detail;
      arr.push_back(e);
      all = all && r.passed;
    }
    out.payload["suites"] = arr;
    if (!all) out.exit_code = 1;
  });

  // let --json appear after any subcommand
  std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* cmd) {
    for (CLI::App* sub : cmd->get_subcommands({})) {
      sub->fallthrough();
      allow_fallthrough(sub);
    }
  };
  allow_fallthrough(&app);

  auto started = std::chrono::steady_clock::now();
  std::string command_echo;
  for (int i = 0; i < argc; ++i) command_echo += std::string(i ? " " : "") + argv[i];

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  if (json_out) {
    Json report;
    report["command"] = command_echo;
    report["outcome"] = out.exit_code == 0 ? "OK" : "VIOLATIONS";
    report["result"] = out.payload;
    report["artifacts"] = out.artifacts;
    report["timing_ms"] = ms;
    std::cout << report.dump(2) << "\n";
  } else {
    for (const auto& l : out.lines) std::cout << l << "\n";
  }
  return out.exit_code;
}
