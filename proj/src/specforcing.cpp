#include "ordlab/specforcing.hpp"

#include <algorithm>

#include "ordlab/errors.hpp"

namespace ordlab {

FiniteTree FiniteTree::from_parents(std::vector<std::optional<std::size_t>> parent) {
  FiniteTree t;
  t.parent_ = std::move(parent);
  const std::size_t n = t.parent_.size();
  if (n == 0) throw Error(ErrorKind::PreconditionFailed, "tree needs at least a root");
  std::size_t roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!t.parent_[i]) {
      t.root_ = i;
      ++roots;
    } else if (*t.parent_[i] >= n) {
      throw Error(ErrorKind::Usage, "parent index out of range");
    }
  }
  if (roots != 1)
    throw Error(ErrorKind::PreconditionFailed,
                "tree needs exactly one root, found " + std::to_string(roots));
  t.level_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t cur = i, steps = 0;
    while (t.parent_[cur]) {
      cur = *t.parent_[cur];
      if (++steps > n) throw Error(ErrorKind::Cycle, "parent map contains a cycle");
    }
    t.level_[i] = steps;
    t.height_ = std::max(t.height_, steps + 1);
  }
  return t;
}

bool FiniteTree::leq(std::size_t a, std::size_t b) const {
  while (true) {
    if (a == b) return true;
    if (!parent_[b]) return false;
    if (level_[b] <= level_[a]) return false;
    b = *parent_[b];
  }
}

std::size_t FiniteTree::ancestor_at(std::size_t t, std::size_t lvl) const {
  if (lvl > level_[t])
    throw Error(ErrorKind::PreconditionFailed, "no ancestor above the node's own level");
  while (level_[t] > lvl) t = *parent_[t];
  return t;
}

std::vector<std::size_t> FiniteTree::nodes_at(std::size_t lvl) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (level_[i] == lvl) out.push_back(i);
  return out;
}

std::string SpecCondition::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [node, color] : assignment) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(node) + ":" + std::to_string(color);
  }
  return out + "}";
}

std::variant<SpecCondition, ChainClash> pt_validate(
    const FiniteTree& t, const std::map<std::size_t, std::uint64_t>& assignment) {
  for (auto i = assignment.begin(); i != assignment.end(); ++i) {
    if (i->first >= t.size()) throw Error(ErrorKind::Usage, "assignment node out of range");
    for (auto j = std::next(i); j != assignment.end(); ++j)
      if (i->second == j->second && t.chain(i->first, j->first))
        return ChainClash{i->first, j->first};
  }
  return SpecCondition{assignment};
}

bool pt_is_valid(const FiniteTree& t, const SpecCondition& s) {
  return std::holds_alternative<SpecCondition>(pt_validate(t, s.assignment));
}

bool pt_compatible(const FiniteTree& t, const SpecCondition& a, const SpecCondition& b) {
  std::map<std::size_t, std::uint64_t> merged = a.assignment;
  for (const auto& [node, color] : b.assignment) {
    auto [it, inserted] = merged.emplace(node, color);
    if (!inserted && it->second != color) return false;
  }
  return std::holds_alternative<SpecCondition>(pt_validate(t, merged));
}

namespace {

void enumerate_domains(const FiniteTree& t, std::size_t max_dom, std::size_t from,
                       std::vector<std::size_t>& dom,
                       const std::function<void(const std::vector<std::size_t>&)>& emit) {
  emit(dom);
  if (dom.size() >= max_dom) return;
  for (std::size_t v = from; v < t.size(); ++v) {
    dom.push_back(v);
    enumerate_domains(t, max_dom, v + 1, dom, emit);
    dom.pop_back();
  }
}

}  // namespace

std::vector<SpecCondition> pt_enumerate(const FiniteTree& t, std::size_t max_dom,
                                        std::uint64_t color_bound, std::size_t cap) {
  std::vector<SpecCondition> out;
  std::vector<std::size_t> dom;
  enumerate_domains(t, max_dom, 0, dom, [&](const std::vector<std::size_t>& d) {
    if (d.empty()) {
      out.push_back(SpecCondition{});
      return;
    }
    if (color_bound == 0) return;  // nonempty domains have no coloring
    // all colorings of d, lexicographic
    std::vector<std::uint64_t> colors(d.size(), 0);
    while (true) {
      std::map<std::size_t, std::uint64_t> assignment;
      for (std::size_t i = 0; i < d.size(); ++i) assignment[d[i]] = colors[i];
      if (auto v = pt_validate(t, assignment); std::holds_alternative<SpecCondition>(v))
        out.push_back(std::get<SpecCondition>(std::move(v)));
      if (out.size() > cap)
        throw Error(ErrorKind::Overflow, "condition enumeration exceeds cap");
      // next coloring
      std::size_t i = d.size();
      while (i > 0) {
        --i;
        if (++colors[i] < color_bound) break;
        colors[i] = 0;
        if (i == 0) return;
      }
    }
  });
  return out;
}

SpecCondition tree_reduct_refuter(const FiniteTree& t, const SpecCondition& q, std::size_t node,
                                  std::size_t beta) {
  if (node >= t.size()) throw Error(ErrorKind::Usage, "node out of range");
  if (t.level(node) <= beta)
    throw Error(ErrorKind::PreconditionFailed,
                "node has no strict predecessor at level " + std::to_string(beta));
  for (const auto& [s, color] : q.assignment) {
    if (t.level(s) >= beta)
      throw Error(ErrorKind::PreconditionFailed,
                  "dom(q) reaches level " + std::to_string(t.level(s)) + " >= beta");
    if (t.leq(s, node) && s != node && color == 0)
      throw Error(ErrorKind::PreconditionFailed,
                  "q assigns 0 below the target node at " + std::to_string(s));
  }
  if (!pt_is_valid(t, q)) throw Error(ErrorKind::PreconditionFailed, "q is not a condition");
  std::size_t u = t.ancestor_at(node, beta);
  SpecCondition r = q;
  r.assignment[u] = 0;
  if (!pt_is_valid(t, r))
    throw Error(ErrorKind::PreconditionFailed, "refuter is not a condition");
  return r;
}

std::string LinkedCondition::str() const {
  std::string out = "<[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ",";
    out += "\"" + s[i] + "\"";
  }
  out += "],{";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) out += ",";
    out += a[i];
  }
  return out + "}>";
}

namespace {

bool is_initial_segment(const std::string& prefix, const std::string& x) {
  return prefix.size() <= x.size() && x.compare(0, prefix.size(), prefix) == 0;
}

void validate_params(const LinkedPosetParams& params) {
  for (const auto& x : params.x) {
    if (x.size() != params.lambda)
      throw Error(ErrorKind::Usage, "X member \"" + x + "\" does not have length lambda");
    for (char c : x)
      if (c != '0' && c != '1') throw Error(ErrorKind::Usage, "X member is not binary");
  }
}

std::vector<std::string> strings_below_lambda(std::size_t lambda) {
  std::vector<std::string> out;
  for (std::size_t len = 0; len < lambda; ++len)
    for (std::uint64_t bits = 0; bits < (1ull << len); ++bits) {
      std::string s(len, '0');
      for (std::size_t i = 0; i < len; ++i)
        if (bits & (1ull << i)) s[len - 1 - i] = '1';
      out.push_back(std::move(s));
    }
  return out;
}

}  // namespace

bool linked_leq(const LinkedCondition& p, const LinkedCondition& q) {
  if (q.s.size() > p.s.size() || q.a.size() > p.a.size()) return false;
  for (std::size_t i = 0; i < q.s.size(); ++i)
    if (p.s[i] != q.s[i]) return false;
  for (const auto& y : q.a)
    if (!std::binary_search(p.a.begin(), p.a.end(), y)) return false;
  for (std::size_t i = q.s.size(); i < p.s.size(); ++i)
    for (const auto& x : q.a)
      if (is_initial_segment(p.s[i], x)) return false;
  return true;
}

std::optional<std::size_t> LinkedFragment::index_of(const LinkedCondition& c) const {
  for (std::size_t i = 0; i < conditions.size(); ++i)
    if (conditions[i] == c) return i;
  return std::nullopt;
}

LinkedFragment build_linked_poset(const LinkedPosetParams& params, std::size_t cap) {
  validate_params(params);
  LinkedFragment frag;
  frag.params = params;
  std::vector<std::string> strings = strings_below_lambda(params.lambda);
  std::vector<std::string> x_sorted = params.x;
  std::sort(x_sorted.begin(), x_sorted.end());

  // all sequences over strings of length <= max_seq
  std::vector<std::vector<std::string>> seqs{{}};
  for (std::size_t pass = 0; pass < params.max_seq; ++pass) {
    std::size_t before = seqs.size();
    for (std::size_t i = 0; i < before; ++i) {
      if (seqs[i].size() != pass) continue;
      for (const auto& str : strings) {
        auto extended = seqs[i];
        extended.push_back(str);
        seqs.push_back(std::move(extended));
        if (seqs.size() > cap) throw Error(ErrorKind::Overflow, "linked fragment exceeds cap");
      }
    }
  }
  // all subsets of X of size <= max_a
  std::vector<std::vector<std::string>> subsets{{}};
  for (std::size_t i = 0; i < x_sorted.size(); ++i) {
    std::size_t before = subsets.size();
    for (std::size_t j = 0; j < before; ++j) {
      if (subsets[j].size() >= params.max_a) continue;
      if (!subsets[j].empty() && subsets[j].back() >= x_sorted[i]) continue;
      auto extended = subsets[j];
      extended.push_back(x_sorted[i]);
      subsets.push_back(std::move(extended));
    }
  }
  for (const auto& s : seqs)
    for (const auto& a : subsets) {
      frag.conditions.push_back(LinkedCondition{s, a});
      if (frag.conditions.size() > cap)
        throw Error(ErrorKind::Overflow, "linked fragment exceeds cap");
    }
  const auto& conds = frag.conditions;
  frag.poset = FinitePoset::from_relation(
      conds.size(), [&](std::size_t i, std::size_t j) { return linked_leq(conds[i], conds[j]); },
      0 /* <empty, empty> is first */);
  return frag;
}

bool linked_clashes_with(const LinkedCondition& r, const std::string& x) {
  for (const auto& s : r.s)
    if (is_initial_segment(s, x)) return true;
  return false;
}

bool linked_compatible_with_brute(const LinkedPosetParams& params, const LinkedCondition& r,
                                  const std::string& x, std::size_t extra_strings) {
  LinkedCondition p;
  p.a = {x};
  // candidate common extensions: r's strings plus at most extra_strings
  // more, carrying a = a_r union {x}
  std::vector<std::string> base_a = r.a;
  if (!std::binary_search(base_a.begin(), base_a.end(), x)) {
    base_a.push_back(x);
    std::sort(base_a.begin(), base_a.end());
  }
  std::vector<std::string> strings = strings_below_lambda(params.lambda);
  std::vector<LinkedCondition> candidates;
  candidates.push_back(LinkedCondition{r.s, base_a});
  for (std::size_t round = 0; round < extra_strings; ++round) {
    std::size_t before = candidates.size();
    for (std::size_t i = 0; i < before; ++i) {
      if (candidates[i].s.size() != r.s.size() + round) continue;
      for (const auto& str : strings) {
        auto w = candidates[i];
        w.s.push_back(str);
        candidates.push_back(std::move(w));
      }
    }
  }
  for (const auto& w : candidates)
    if (linked_leq(w, r) && linked_leq(w, p)) return true;
  return false;
}

LinkedCondition linked_reduct_refuter(const LinkedPosetParams& params, const LinkedCondition& q,
                                      const std::string& x) {
  validate_params(params);
  if (std::find(params.x.begin(), params.x.end(), x) == params.x.end())
    throw Error(ErrorKind::Usage, "x is not a member of X");
  if (std::binary_search(q.a.begin(), q.a.end(), x))
    throw Error(ErrorKind::PreconditionFailed, "x already belongs to a_q");
  if (q.a.empty())
    throw Error(ErrorKind::NoSeparator,
                "a_q is empty; the separating prefix would be the empty string");
  std::size_t alpha = 0;
  for (const auto& y : q.a) {
    std::size_t diff = 0;
    while (diff < params.lambda && x[diff] == y[diff]) ++diff;
    if (diff >= params.lambda)
      throw Error(ErrorKind::NoSeparator, "x agrees with " + y + " on every proper prefix");
    alpha = std::max(alpha, diff + 1);
  }
  if (alpha >= params.lambda) throw Error(ErrorKind::NoSeparator, "no separating level below lambda");
  LinkedCondition r = q;
  r.s.push_back(x.substr(0, alpha));
  return r;
}

}  // namespace ordlab
