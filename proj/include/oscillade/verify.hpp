#pragma once

#include "oscillade/combinatorics.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace oscillade {

enum class CheckStatus { pass, fail, skipped };

std::string_view to_string(CheckStatus status);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::fail;
  std::string detail;
};

struct VerifyOptions {
  /// Coefficient formulas used by every operator recursion under test.
  CoefficientRule rule = CoefficientRule::standard();
  /// Frequencies for the order-fit checks; fewer than three skips them.
  std::vector<double> omegas = {10.0, 31.6, 100.0, 316.0, 1000.0};
  std::uint32_t seed = 20240501;
};

/// Runs the module invariant checks and reports one result per check.
/// Failures and exceptions are reported, never thrown.
std::vector<CheckResult> verify_suite(const VerifyOptions& options = {});

bool all_passed(const std::vector<CheckResult>& results);
std::string format_results(const std::vector<CheckResult>& results);

}  // namespace oscillade
