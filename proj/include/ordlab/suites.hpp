#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ordlab {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;  // counts, and failure descriptions when red
  double millis = 0.0;
  std::optional<double> budget_millis;  // stated time bound, when any
};

std::vector<std::string> suite_names();

/// Runs one named suite; nullopt for an unknown name.
std::optional<SuiteResult> run_suite(const std::string& name, std::uint64_t seed);

/// All suites in order.
std::vector<SuiteResult> run_all_suites(std::uint64_t seed);

inline constexpr std::uint64_t kDefaultSuiteSeed = 2024;

}  // namespace ordlab
