#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ordlab/cseq.hpp"
#include "ordlab/ordinal.hpp"

namespace ordlab {

/// The walk from beta down to alpha: strictly decreasing steps
/// <g_0, ..., g_n> with g_0 = beta, g_n = alpha and
/// g_{i+1} = min(C_{g_i} \ alpha).
struct Walk {
  std::vector<Ordinal> steps;
};

/// Full code of a walk: the sequence of otp(C_{g_i} cut below alpha),
/// naturals here since every C_a has order type at most w.
struct Rho0Code {
  std::vector<std::uint64_t> entries;

  bool operator==(const Rho0Code&) const = default;
  auto operator<=>(const Rho0Code&) const = default;
  std::string str() const;
};

struct WalkResult {
  Walk walk;
  Rho0Code code;
};

WalkResult walk_with_code(const CSequence& c, const Ordinal& alpha, const Ordinal& beta);

Walk walk(const CSequence& c, const Ordinal& alpha, const Ordinal& beta);
Rho0Code rho0(const CSequence& c, const Ordinal& alpha, const Ordinal& beta);

}  // namespace ordlab
