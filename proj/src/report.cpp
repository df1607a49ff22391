#include "fracradon/report.hpp"

#include <cmath>

namespace fracradon {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

void VerificationReport::finalize() {
  const double budget = budgets.combined();
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
    margin = std::nan("");
    verdict = Verdict::inconclusive;
    notes.push_back("non-finite side; verdict withheld");
    return;
  }
  switch (relation) {
    case Relation::le:
      margin = rhs - lhs;
      break;
    case Relation::ge:
      margin = lhs - rhs;
      break;
    case Relation::eq:
      margin = -std::abs(lhs - rhs);
      verdict = -margin <= budget ? Verdict::holds : Verdict::fails;
      return;
  }
  if (margin > budget) {
    verdict = Verdict::holds;
  } else if (margin < -budget) {
    verdict = Verdict::fails;
    notes.push_back("a fails verdict on a proved statement indicates a numerical defect, not a "
                    "counterexample");
  } else {
    verdict = Verdict::inconclusive;
  }
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["statement"] = statement;
  j["params"] = params;
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  j["relation"] = relation == Relation::le ? "<=" : relation == Relation::ge ? ">=" : "==";
  j["margin"] = margin;
  j["budgets"] = {{"quadrature", budgets.quadrature},
                  {"mc_stderr", budgets.mc_stderr},
                  {"grid", budgets.grid},
                  {"combined", budgets.combined()}};
  j["verdict"] = to_string(verdict);
  j["seed"] = seed;
  j["method"] = method;
  j["notes"] = notes;
  if (!extra.empty()) j["extra"] = extra;
  j["toolkit_version"] = kToolkitVersion;
  return j;
}

}  // namespace fracradon
