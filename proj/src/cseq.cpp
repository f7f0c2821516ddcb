#include "ordlab/cseq.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "ordlab/errors.hpp"

namespace ordlab {

AvoidSet::AvoidSet(std::vector<Ordinal> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (const Ordinal& m : members_) {
    if (m.kind() != Ordinal::Kind::Limit)
      throw Error(ErrorKind::PreconditionFailed, "avoid set member " + m.str() + " is not a limit");
  }
}

bool AvoidSet::contains(const Ordinal& x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

namespace {

Ordinal standard_entry(const Ordinal& alpha, std::uint64_t i) {
  switch (alpha.kind()) {
    case Ordinal::Kind::Zero:
      throw Error(ErrorKind::PreconditionFailed, "C_0 is undefined");
    case Ordinal::Kind::Successor:
      if (i > 0)
        throw Error(ErrorKind::PreconditionFailed,
                    "C_" + alpha.str() + " is a singleton; index " + std::to_string(i));
      return alpha.predecessor();
    case Ordinal::Kind::Limit:
      break;
  }
  if (alpha == Ordinal::omega()) return Ordinal::nat(i);
  auto [gamma, delta] = alpha.split_last();  // alpha = gamma + w^delta, delta >= 1
  if (i == 0) return gamma;
  if (delta.kind() == Ordinal::Kind::Successor) {
    Ordinal e = delta.predecessor();
    return gamma + Ordinal::omega_pow(e, Nat(static_cast<unsigned long>(i + 1)));
  }
  return gamma + Ordinal::omega_pow(standard_entry(delta, i));
}

}  // namespace

CSequence CSequence::standard() { return CSequence(standard_entry); }

CSequence CSequence::avoiding(AvoidSet s, CSequence base) {
  auto fn = [s = std::move(s), base = std::move(base)](const Ordinal& alpha,
                                                       std::uint64_t i) -> Ordinal {
    if (alpha.kind() != Ordinal::Kind::Limit) return base.entry(alpha, i);
    Ordinal last;
    bool have_last = false;
    for (std::uint64_t j = 0; j <= i; ++j) {
      Ordinal v = base.entry(alpha, j);
      if (have_last && !(v > last)) v = last + Ordinal::nat(1);
      while (s.contains(v)) v = v + Ordinal::nat(1);
      if (!(v < alpha))
        throw Error(ErrorKind::Unavoidable,
                    "bumped entry " + v.str() + " reaches level " + alpha.str());
      last = v;
      have_last = true;
    }
    return last;
  };
  return CSequence(std::move(fn));
}

CSequence CSequence::custom(EntryFn fn) { return CSequence(std::move(fn)); }

CSequence CSequence::memoized(CSequence base) {
  struct Memo {
    std::mutex mutex;
    std::map<std::pair<Ordinal, std::uint64_t>, Ordinal> map;
  };
  auto memo = std::make_shared<Memo>();
  auto fn = [memo, base = std::move(base)](const Ordinal& alpha, std::uint64_t i) -> Ordinal {
    auto key = std::make_pair(alpha, i);
    {
      std::lock_guard<std::mutex> lock(memo->mutex);
      auto it = memo->map.find(key);
      if (it != memo->map.end()) return it->second;
    }
    Ordinal v = base.entry(alpha, i);
    std::lock_guard<std::mutex> lock(memo->mutex);
    return memo->map.emplace(std::move(key), std::move(v)).first->second;
  };
  return CSequence(std::move(fn));
}

Ordinal CSequence::entry(const Ordinal& alpha, std::uint64_t i) const { return fn_(alpha, i); }

MinAbove min_above(const CSequence& c, const Ordinal& alpha, const Ordinal& xi,
                   std::uint64_t budget) {
  if (alpha.is_zero() || !(xi < alpha))
    throw Error(ErrorKind::PreconditionFailed,
                "min_above requires xi < alpha, got xi=" + xi.str() + " alpha=" + alpha.str());
  if (alpha.kind() == Ordinal::Kind::Successor) {
    Ordinal v = c.entry(alpha, 0);
    if (v >= xi) return {v, 0};
    throw Error(ErrorKind::BudgetExceeded,
                "singleton C_" + alpha.str() + " lies below " + xi.str());
  }
  for (std::uint64_t i = 0; i < budget; ++i) {
    Ordinal v = c.entry(alpha, i);
    if (v >= xi) return {v, i};
  }
  throw Error(ErrorKind::BudgetExceeded,
              "C_" + alpha.str() + " did not reach " + xi.str() + " within budget");
}

const char* cseq_violation_kind_name(CseqViolation::Kind k) {
  switch (k) {
    case CseqViolation::Kind::SuccessorClause: return "successor clause";
    case CseqViolation::Kind::StrictIncrease: return "strict increase";
    case CseqViolation::Kind::Bound: return "bound";
    case CseqViolation::Kind::Cofinality: return "cofinality";
    case CseqViolation::Kind::Avoidance: return "avoidance";
  }
  return "unknown";
}

CseqReport verify_csequence(const CSequence& c, const std::vector<Ordinal>& arena,
                            const AvoidSet& s, std::uint64_t probes) {
  CseqReport report;
  auto flag = [&](CseqViolation::Kind k, const Ordinal& alpha, std::uint64_t index,
                  std::string detail) {
    report.violations.push_back(CseqViolation{k, alpha, index, std::move(detail)});
  };
  for (const Ordinal& alpha : arena) {
    if (alpha.is_zero()) continue;
    if (alpha.kind() == Ordinal::Kind::Successor) {
      ++report.checks;
      try {
        Ordinal v = c.entry(alpha, 0);
        if (!(v == alpha.predecessor()))
          flag(CseqViolation::Kind::SuccessorClause, alpha, 0,
               "entry is " + v.str() + ", expected " + alpha.predecessor().str());
      } catch (const Error& e) {
        flag(CseqViolation::Kind::SuccessorClause, alpha, 0, e.what());
      }
      continue;
    }
    // limit level: probed prefix
    Ordinal prev;
    bool have_prev = false;
    for (std::uint64_t i = 0; i < probes; ++i) {
      ++report.checks;
      Ordinal v = c.entry(alpha, i);
      if (!(v < alpha))
        flag(CseqViolation::Kind::Bound, alpha, i, "entry " + v.str() + " not below level");
      if (have_prev && !(v > prev))
        flag(CseqViolation::Kind::StrictIncrease, alpha, i,
             "entry " + v.str() + " after " + prev.str());
      if (s.contains(v))
        flag(CseqViolation::Kind::Avoidance, alpha, i, "entry " + v.str() + " lands in S");
      prev = v;
      have_prev = true;
    }
    // cofinality at probe targets: just past each probed entry, and at
    // every smaller arena member
    for (std::uint64_t i = 0; i < probes; ++i) {
      Ordinal target = c.entry(alpha, i) + Ordinal::nat(1);
      if (!(target < alpha)) continue;
      ++report.checks;
      try {
        min_above(c, alpha, target);
      } catch (const Error&) {
        flag(CseqViolation::Kind::Cofinality, alpha, i,
             "no entry at or above " + target.str());
      }
    }
    for (const Ordinal& xi : arena) {
      if (!(xi < alpha)) continue;
      ++report.checks;
      try {
        min_above(c, alpha, xi);
      } catch (const Error&) {
        flag(CseqViolation::Kind::Cofinality, alpha, 0, "no entry at or above " + xi.str());
      }
    }
  }
  return report;
}

}  // namespace ordlab
