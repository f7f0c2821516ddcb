#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ordlab/ordinal.hpp"

namespace ordlab {

/// Finite set of limit ordinals to be avoided by C-sequence entries at
/// limit levels.  Construction rejects non-limit members.
class AvoidSet {
 public:
  AvoidSet() = default;
  explicit AvoidSet(std::vector<Ordinal> members);

  const std::vector<Ordinal>& members() const { return members_; }
  bool contains(const Ordinal& x) const;
  bool empty() const { return members_.empty(); }

 private:
  std::vector<Ordinal> members_;  // sorted
};

/// A C-sequence assigns to every successor a = b+1 the singleton {b} and to
/// every limit a a strictly increasing cofinal stream of ordinals below a.
/// entry(a, i) is the i-th element of C_a.  Undefined at 0.
class CSequence {
 public:
  using EntryFn = std::function<Ordinal(const Ordinal&, std::uint64_t)>;

  /// Fundamental sequences:
  ///   C_{b+1}        = <b>
  ///   C_w            = <0, 1, 2, ...>
  ///   C_{g + w^(e+1)} = <g> followed by g + w^e*(i+1) for i >= 1
  ///   C_{g + w^l}     = <g> followed by g + w^(l[i]) for i >= 1, l limit
  static CSequence standard();

  /// Same as base except limit-level entries landing in s are bumped to the
  /// least strictly larger ordinal outside s that keeps the stream strictly
  /// increasing and below its level.
  static CSequence avoiding(AvoidSet s, CSequence base);

  /// Arbitrary entry function, successors included.  For tests that feed
  /// corrupted sequences to the verifier.
  static CSequence custom(EntryFn fn);

  /// Same entries, remembered behind a lock.  Avoiding sequences pay a
  /// prefix recomputation per entry; heavy users wrap them once.
  static CSequence memoized(CSequence base);

  Ordinal entry(const Ordinal& alpha, std::uint64_t i) const;

 private:
  explicit CSequence(EntryFn fn) : fn_(std::move(fn)) {}
  EntryFn fn_;
};

struct MinAbove {
  Ordinal value;
  std::uint64_t position;  // equals otp(C_alpha cut below xi)
};

inline constexpr std::uint64_t kDefaultCofinalityBudget = 1u << 20;

/// Least element of C_alpha that is >= xi, with its index.
/// Requires 0 < alpha and xi < alpha.  Throws BUDGET_EXCEEDED when the
/// stream fails to reach xi within the budget (an invalid sequence).
MinAbove min_above(const CSequence& c, const Ordinal& alpha, const Ordinal& xi,
                   std::uint64_t budget = kDefaultCofinalityBudget);

struct CseqViolation {
  enum class Kind { SuccessorClause, StrictIncrease, Bound, Cofinality, Avoidance };
  Kind kind;
  Ordinal alpha;
  std::uint64_t index;
  std::string detail;
};

const char* cseq_violation_kind_name(CseqViolation::Kind k);

struct CseqReport {
  std::vector<CseqViolation> violations;
  std::uint64_t checks = 0;
  bool ok() const { return violations.empty(); }
};

/// Checks, for every arena member: the successor clause, strict increase,
/// boundedness below the level, cofinality at `probes` targets, and
/// avoidance of s at limit levels.  Violations are report content.
CseqReport verify_csequence(const CSequence& c, const std::vector<Ordinal>& arena,
                            const AvoidSet& s, std::uint64_t probes);

}  // namespace ordlab
