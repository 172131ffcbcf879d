#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semiclassic {

/// One measured quantity of the built-in verification suite. A check passes
/// when value <= threshold.
struct CheckResult {
  int criterion = 0;
  std::string check;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

inline constexpr int kCriterionCount = 9;

/// Checks of one criterion (1..9). Criterion 9 renders a threaded scan twice
/// in-process and compares the bytes.
std::vector<CheckResult> run_criterion(int criterion);
std::vector<CheckResult> run_verification();

/// CSV with header `criterion,check,value,threshold,status`.
void write_checks(std::ostream& out, const std::vector<CheckResult>& checks);

}  // namespace semiclassic
