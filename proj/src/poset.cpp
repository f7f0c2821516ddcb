#include "ordlab/poset.hpp"

#include <algorithm>

#include "ordlab/errors.hpp"

namespace ordlab {

FinitePoset FinitePoset::build(std::size_t n,
                               const std::vector<std::pair<std::size_t, std::size_t>>& strict_pairs,
                               std::optional<std::size_t> top) {
  FinitePoset p;
  p.n_ = n;
  p.leq_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) p.leq_[i * n + i] = 1;
  auto set = [&](std::size_t a, std::size_t b) {
    if (a >= n || b >= n) throw Error(ErrorKind::Usage, "pair index out of range");
    p.leq_[a * n + b] = 1;
  };
  for (auto [a, b] : strict_pairs) set(a, b);
  if (top) {
    if (*top >= n) throw Error(ErrorKind::Usage, "top index out of range");
    for (std::size_t i = 0; i < n; ++i) set(i, *top);
    p.top_ = top;
  }
  // Warshall
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (p.leq_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (p.leq_[k * n + j]) p.leq_[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (p.leq_[i * n + j] && p.leq_[j * n + i])
        throw Error(ErrorKind::Cycle,
                    "elements " + std::to_string(i) + " and " + std::to_string(j) +
                        " lie on a cycle");
  return p;
}

FinitePoset FinitePoset::from_relation(std::size_t n,
                                       const std::function<bool(std::size_t, std::size_t)>& leq,
                                       std::optional<std::size_t> top) {
  FinitePoset p;
  p.n_ = n;
  p.top_ = top;
  p.leq_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.leq_[i * n + j] = leq(i, j) ? 1 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.leq(i, i)) throw Error(ErrorKind::Usage, "relation is not reflexive");
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && p.leq(i, j) && p.leq(j, i))
        throw Error(ErrorKind::Usage, "relation is not antisymmetric");
  }
  if (n <= 512) {  // cubic check only at sizes where it is cheap
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (p.leq(i, j))
          for (std::size_t k = 0; k < n; ++k)
            if (p.leq(j, k) && !p.leq(i, k))
              throw Error(ErrorKind::Usage, "relation is not transitive");
  }
  return p;
}

std::optional<std::size_t> FinitePoset::greatest() const {
  if (top_) return top_;
  for (std::size_t t = 0; t < n_; ++t) {
    bool all = true;
    for (std::size_t i = 0; i < n_ && all; ++i) all = leq(i, t);
    if (all) return t;
  }
  return std::nullopt;
}

bool FinitePoset::compatible(std::size_t p, std::size_t q) const {
  return common_extension(p, q).has_value();
}

std::optional<std::size_t> FinitePoset::common_extension(std::size_t p, std::size_t q) const {
  for (std::size_t r = 0; r < n_; ++r)
    if (leq(r, p) && leq(r, q)) return r;
  return std::nullopt;
}

FinitePoset FinitePoset::with_top() const {
  if (greatest()) return *this;
  FinitePoset p;
  p.n_ = n_ + 1;
  p.top_ = n_;
  p.leq_.assign(p.n_ * p.n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) p.leq_[i * p.n_ + j] = leq_[i * n_ + j];
  for (std::size_t i = 0; i < p.n_; ++i) {
    p.leq_[i * p.n_ + n_] = 1;
    p.leq_[i * p.n_ + i] = 1;
  }
  return p;
}

namespace {

// Compatibility masks over positions of `subset` in the induced order:
// bit j of out[i] says subset[i] and subset[j] have a common extension
// inside the subset.
std::vector<std::uint32_t> induced_compat_masks(const FinitePoset& q,
                                                const std::vector<std::size_t>& subset) {
  const std::size_t m = subset.size();
  std::vector<std::uint32_t> out(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      bool comp = false;
      for (std::size_t r = 0; r < m && !comp; ++r)
        comp = q.leq(subset[r], subset[i]) && q.leq(subset[r], subset[j]);
      if (comp) out[i] |= (1u << j);
    }
  return out;
}

std::vector<std::vector<std::size_t>> antichains_from_masks(
    const std::vector<std::size_t>& subset, const std::vector<std::uint32_t>& compat,
    const std::function<bool(std::uint32_t)>& maximal_in_ambient) {
  const std::size_t m = subset.size();
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    bool antichain = true;
    for (std::size_t i = 0; i < m && antichain; ++i)
      if (mask & (1u << i))
        if ((compat[i] & mask) != (1u << i)) antichain = false;
    if (!antichain) continue;
    // maximal within the subset: every member meets the antichain
    bool maximal = true;
    for (std::size_t i = 0; i < m && maximal; ++i)
      if (!(compat[i] & mask)) maximal = false;
    if (!maximal) continue;
    if (!maximal_in_ambient(mask)) continue;
    std::vector<std::size_t> a;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) a.push_back(subset[i]);
    out.push_back(std::move(a));
  }
  return out;
}

void check_cap(std::size_t m, std::size_t cap) {
  if (m > cap)
    throw Error(ErrorKind::Overflow, "antichain enumeration over " + std::to_string(m) +
                                         " elements exceeds cap " + std::to_string(cap));
}

}  // namespace

std::vector<std::vector<std::size_t>> maximal_antichains(const FinitePoset& p, std::size_t cap) {
  std::vector<std::size_t> all(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) all[i] = i;
  return maximal_antichains_within(p, all, cap);
}

std::vector<std::vector<std::size_t>> maximal_antichains_within(
    const FinitePoset& q, const std::vector<std::size_t>& subset, std::size_t cap) {
  check_cap(subset.size(), cap);
  auto compat = induced_compat_masks(q, subset);
  return antichains_from_masks(subset, compat, [](std::uint32_t) { return true; });
}

bool is_suborder(const FinitePoset& q, const std::vector<std::size_t>& subset) {
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = i; j < subset.size(); ++j) {
      if (!q.compatible(subset[i], subset[j])) continue;
      bool inside = false;
      for (std::size_t r = 0; r < subset.size() && !inside; ++r)
        inside = q.leq(subset[r], subset[i]) && q.leq(subset[r], subset[j]);
      if (!inside) return false;
    }
  return true;
}

bool is_regular_suborder(const FinitePoset& q, const std::vector<std::size_t>& subset,
                         std::size_t cap) {
  if (!is_suborder(q, subset)) return false;
  check_cap(subset.size(), cap);
  auto compat = induced_compat_masks(q, subset);
  // collect maximal antichains of the induced order and test ambient maximality
  auto all = antichains_from_masks(subset, compat, [](std::uint32_t) { return true; });
  for (const auto& a : all) {
    for (std::size_t x = 0; x < q.size(); ++x) {
      bool meets = false;
      for (std::size_t e : a)
        if (q.compatible(x, e)) {
          meets = true;
          break;
        }
      if (!meets) return false;
    }
  }
  return true;
}

std::optional<std::size_t> find_reduct(const FinitePoset& q,
                                       const std::vector<std::size_t>& subset, std::size_t elem) {
  for (std::size_t p : subset) {
    bool good = true;
    for (std::size_t ext : subset) {
      if (!q.leq(ext, p)) continue;
      if (!q.compatible(ext, elem)) {
        good = false;
        break;
      }
    }
    if (good) return p;
  }
  return std::nullopt;
}

std::vector<std::size_t> regular_closure(const FinitePoset& q, std::vector<std::size_t> seed,
                                         std::size_t cap) {
  std::vector<char> in(q.size(), 0);
  for (std::size_t s : seed) in[s] = 1;
  auto members = [&]() {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (in[i]) out.push_back(i);
    return out;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::size_t> p = members();
    check_cap(p.size(), cap);
    // (a) pairs compatible in q but not inside p
    for (std::size_t i = 0; i < p.size() && !changed; ++i)
      for (std::size_t j = i; j < p.size() && !changed; ++j) {
        if (!q.compatible(p[i], p[j])) continue;
        bool inside = false;
        for (std::size_t r : p)
          if (q.leq(r, p[i]) && q.leq(r, p[j])) {
            inside = true;
            break;
          }
        if (inside) continue;
        for (std::size_t r = 0; r < q.size(); ++r)
          if (q.leq(r, p[i]) && q.leq(r, p[j])) {
            in[r] = 1;
            changed = true;
            break;
          }
      }
    if (changed) continue;
    // (b) maximal antichains of p that are not maximal in q
    auto chains = maximal_antichains_within(q, p, cap);
    for (const auto& a : chains) {
      for (std::size_t x = 0; x < q.size() && !changed; ++x) {
        bool meets = false;
        for (std::size_t e : a)
          if (q.compatible(x, e)) {
            meets = true;
            break;
          }
        if (!meets) {
          in[x] = 1;
          changed = true;
        }
      }
      if (changed) break;
    }
  }
  return members();
}

std::vector<std::size_t> ProductCondition::support() const {
  std::vector<std::size_t> out;
  for (const auto& [k, v] : coords) out.push_back(k);
  return out;
}

std::optional<std::size_t> SupportProduct::index_of(const ProductCondition& c) const {
  for (std::size_t i = 0; i < conditions.size(); ++i)
    if (conditions[i] == c) return i;
  return std::nullopt;
}

namespace {

bool product_leq(const std::vector<FinitePoset>& factors, const ProductCondition& p,
                 const ProductCondition& q) {
  // missing coordinate means the factor's top
  for (const auto& [g, qv] : q.coords) {
    auto it = p.coords.find(g);
    if (it == p.coords.end()) return false;
    if (!factors[g].leq(it->second, qv)) return false;
  }
  return true;
}

void enumerate_conditions(const std::vector<FinitePoset>& factors,
                          const std::vector<std::size_t>& tops, std::size_t nu, std::size_t cap,
                          std::size_t from, ProductCondition& current,
                          std::vector<ProductCondition>& out) {
  if (out.size() > cap)
    throw Error(ErrorKind::Overflow, "support product exceeds cap " + std::to_string(cap));
  out.push_back(current);
  if (current.coords.size() >= nu) return;
  for (std::size_t g = from; g < factors.size(); ++g) {
    for (std::size_t v = 0; v < factors[g].size(); ++v) {
      if (v == tops[g]) continue;
      current.coords[g] = v;
      enumerate_conditions(factors, tops, nu, cap, g + 1, current, out);
      current.coords.erase(g);
    }
  }
}

}  // namespace

SupportProduct support_product(std::vector<FinitePoset> factors, std::size_t nu, std::size_t cap) {
  std::vector<std::size_t> tops;
  for (const auto& f : factors) {
    auto t = f.greatest();
    if (!t)
      throw Error(ErrorKind::PreconditionFailed,
                  "support product factor lacks a greatest element; adjoin a top first");
    tops.push_back(*t);
  }
  SupportProduct sp;
  sp.nu = nu;
  ProductCondition scratch;
  enumerate_conditions(factors, tops, nu, cap, 0, scratch, sp.conditions);
  sp.factors = std::move(factors);
  const auto& conds = sp.conditions;
  const auto& facs = sp.factors;
  sp.poset = FinitePoset::from_relation(
      conds.size(),
      [&](std::size_t a, std::size_t b) { return product_leq(facs, conds[a], conds[b]); },
      0 /* the empty condition is enumerated first */);
  return sp;
}

}  // namespace ordlab
