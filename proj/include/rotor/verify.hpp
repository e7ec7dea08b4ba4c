#pragma once

#include <string>
#include <vector>

namespace rotor {

enum class CheckStatus { Pass, Fail, Info };

const char* to_string(CheckStatus s);

struct CheckResult {
  std::string suite;
  std::string name;
  int j = 0;
  CheckStatus status = CheckStatus::Pass;
  double residual = 0.0;
  double tolerance = 0.0;
  double elapsed_ms = 0.0;
  std::string detail;
};

struct VerifyReport {
  int j_min = 0;
  int j_max = 0;
  double tolerance_scale = 1.0;
  std::vector<CheckResult> checks;

  /// Info entries never fail the report.
  bool passed() const;
  std::size_t failures() const;
};

struct VerifyOptions {
  int j_max = 20;
  std::vector<std::string> suites;  // empty = all
  double tolerance_scale = 1.0;
};

/// Suite names accepted in VerifyOptions::suites.
const std::vector<std::string>& suite_names();

/// Runs every selected suite for j = 0..j_max. Independent j values run
/// concurrently; results are returned ordered by suite, then j.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace rotor
