#pragma once

// The acceptance suite, shared by the test binary and the selftest command.

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fracradon {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 11;

/// Runs criterion `id` (1-based). Exceptions become failures.
CriterionResult run_criterion(int id);

/// Runs every criterion in order; `on_result` sees each result as it lands.
/// Criterion 11 also checks the wall time of the whole run.
std::vector<CriterionResult> run_acceptance(
    const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS [id] name: detail (seconds)".
std::string format_result(const CriterionResult& r);
nlohmann::json results_json(const std::vector<CriterionResult>& results);

}  // namespace fracradon
