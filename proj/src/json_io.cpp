#include "ordlab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ordlab/errors.hpp"

namespace ordlab {

FinitePoset poset_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("le"))
    throw Error(ErrorKind::Parse, "poset json needs fields n and le");
  std::size_t n = j.at("n").get<std::size_t>();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& e : j.at("le")) {
    if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::Parse, "le entries are pairs");
    pairs.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>()});
  }
  std::optional<std::size_t> top;
  if (j.contains("top") && !j.at("top").is_null()) top = j.at("top").get<std::size_t>();
  return FinitePoset::build(n, pairs, top);
}

Json poset_to_json(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                   std::optional<std::size_t> top) {
  Json j;
  j["n"] = n;
  j["le"] = Json::array();
  for (const auto& [a, b] : pairs) j["le"].push_back(Json::array({a, b}));
  j["top"] = top ? Json(*top) : Json(nullptr);
  return j;
}

FiniteTree tree_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("parent"))
    throw Error(ErrorKind::Parse, "tree json needs fields nodes and parent");
  std::size_t n = j.at("nodes").get<std::size_t>();
  std::vector<std::optional<std::size_t>> parents;
  for (const auto& e : j.at("parent"))
    parents.push_back(e.is_null() ? std::optional<std::size_t>{}
                                  : std::optional<std::size_t>{e.get<std::size_t>()});
  if (parents.size() != n) throw Error(ErrorKind::Parse, "parent list length mismatch");
  return FiniteTree::from_parents(std::move(parents));
}

Json tree_to_json(const FiniteTree& t) {
  Json j;
  j["nodes"] = t.size();
  j["parent"] = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i)
    j["parent"].push_back(t.parent(i) ? Json(*t.parent(i)) : Json(nullptr));
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
  return j;
}

std::vector<Ordinal> ordinals_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Usage, "cannot open " + path);
  std::vector<Ordinal> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    out.push_back(parse_ordinal_or_throw(line));
  }
  return out;
}

Ordinal parse_ordinal_or_throw(const std::string& text) {
  auto o = Ordinal::parse(text);
  if (!o) throw Error(ErrorKind::Parse, "not an ordinal: \"" + text + "\"");
  return *o;
}

std::vector<Ordinal> parse_ordinal_list(const std::string& csv) {
  std::vector<Ordinal> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_ordinal_or_throw(item));
  }
  return out;
}

Json walk_to_json(const WalkResult& r) {
  Json j;
  j["steps"] = Json::array();
  for (const Ordinal& s : r.walk.steps) j["steps"].push_back(s.str());
  j["code"] = r.code.entries;
  return j;
}

Json cseq_report_to_json(const CseqReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["checks"] = r.checks;
  j["violations"] = Json::array();
  for (const auto& v : r.violations) {
    Json e;
    e["kind"] = cseq_violation_kind_name(v.kind);
    e["alpha"] = v.alpha.str();
    e["index"] = v.index;
    e["detail"] = v.detail;
    j["violations"].push_back(e);
  }
  return j;
}

Json trace_to_json(const RefinementTrace& t) {
  Json stages = Json::array();
  for (const auto& s : t.stages) {
    Json e;
    e["name"] = s.name;
    e["kept"] = s.kept;
    for (const auto& [k, v] : s.data) e[k] = v;
    stages.push_back(e);
  }
  return Json{{"stages", stages}};
}

Json spec_condition_to_json(const SpecCondition& c) {
  Json j = Json::object();
  for (const auto& [node, color] : c.assignment) j[std::to_string(node)] = color;
  return j;
}

SpecCondition spec_condition_from_string(const std::string& text) {
  SpecCondition c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw Error(ErrorKind::Parse, "condition entries look like node:color, got " + item);
    c.assignment[std::stoull(item.substr(0, colon))] = std::stoull(item.substr(colon + 1));
  }
  return c;
}

std::string leveled_tree_to_dot(const LeveledTree& t,
                                const std::map<TreeNode, std::size_t>& ids) {
  std::vector<std::string> names(t.tree.size());
  for (const auto& [tn, id] : ids) names[id] = tn.str();
  std::ostringstream out;
  out << "digraph rho0_tree {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < t.tree.size(); ++i)
    out << "  n" << i << " [label=\"" << names[i] << "\"];\n";
  for (std::size_t i = 0; i < t.tree.size(); ++i)
    if (t.tree.parent(i)) out << "  n" << *t.tree.parent(i) << " -> n" << i << ";\n";
  out << "}\n";
  return out.str();
}

Json leveled_tree_to_json(const LeveledTree& t, const std::map<TreeNode, std::size_t>& ids) {
  std::vector<const TreeNode*> by_id(t.tree.size(), nullptr);
  for (const auto& [tn, id] : ids) by_id[id] = &tn;
  Json nodes = Json::array();
  for (std::size_t i = 0; i < t.tree.size(); ++i) {
    Json e;
    e["id"] = i;
    e["level"] = by_id[i]->level.str();
    e["source"] = by_id[i]->source.str();
    e["parent"] = t.tree.parent(i) ? Json(*t.tree.parent(i)) : Json(nullptr);
    nodes.push_back(e);
  }
  Json labels = Json::array();
  for (const Ordinal& l : t.labels) labels.push_back(l.str());
  return Json{{"levels", labels}, {"nodes", nodes}};
}

}  // namespace ordlab
