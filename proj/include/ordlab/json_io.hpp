#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ordlab/cseq.hpp"
#include "ordlab/leveled_tree.hpp"
#include "ordlab/poset.hpp"
#include "ordlab/refine.hpp"
#include "ordlab/rhotree.hpp"
#include "ordlab/specforcing.hpp"
#include "ordlab/walks.hpp"

namespace ordlab {

using Json = nlohmann::json;

/// {"n": int, "le": [[i,j],...], "top": int|null} — the strict pairs
/// before closure.
FinitePoset poset_from_json(const Json& j);
Json poset_to_json(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                   std::optional<std::size_t> top);

/// {"nodes": int, "parent": [null, 0, 0, 1, ...]}
FiniteTree tree_from_json(const Json& j);
Json tree_to_json(const FiniteTree& t);

Json load_json_file(const std::string& path);

/// One string in the ordinal grammar per nonempty line.
std::vector<Ordinal> ordinals_from_file(const std::string& path);

Ordinal parse_ordinal_or_throw(const std::string& text);
std::vector<Ordinal> parse_ordinal_list(const std::string& csv);

Json walk_to_json(const WalkResult& r);
Json cseq_report_to_json(const CseqReport& r);
Json trace_to_json(const RefinementTrace& t);
Json spec_condition_to_json(const SpecCondition& c);
SpecCondition spec_condition_from_string(const std::string& text);  // "0:1,2:0" or ""

/// DOT rendering of a materialized fragment; vertices are level@source.
std::string leveled_tree_to_dot(const LeveledTree& t,
                                const std::map<TreeNode, std::size_t>& ids);
Json leveled_tree_to_json(const LeveledTree& t, const std::map<TreeNode, std::size_t>& ids);

}  // namespace ordlab
