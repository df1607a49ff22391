#pragma once

// Structured verdicts for every checked identity or inequality.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace fracradon {

inline constexpr const char* kToolkitVersion = "1.0.0";

enum class Verdict { holds, fails, inconclusive };

std::string to_string(Verdict v);

/// Direction of the checked relation: lhs <= rhs, lhs >= rhs, or lhs == rhs
/// within the budget.
enum class Relation { le, ge, eq };

struct Budgets {
  double quadrature = 0.0;
  double mc_stderr = 0.0;
  double grid = 0.0;
  /// quadrature + 3 * mc_stderr + grid.
  double combined() const { return quadrature + 3.0 * mc_stderr + grid; }
};

struct VerificationReport {
  std::string statement;
  nlohmann::json params = nlohmann::json::object();
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::le;
  double margin = 0.0;
  Budgets budgets;
  Verdict verdict = Verdict::inconclusive;
  std::uint64_t seed = 0;
  std::string method;
  std::vector<std::string> notes;
  nlohmann::json extra = nlohmann::json::object();

  /// Sets margin and verdict from lhs, rhs, relation and budgets.
  /// le: margin = rhs - lhs; ge: margin = lhs - rhs; holds iff margin > budget,
  /// fails iff margin < -budget. eq: margin = -|lhs - rhs|, holds iff
  /// |lhs - rhs| <= budget, fails otherwise.
  void finalize();

  nlohmann::json to_json() const;
};

}  // namespace fracradon
