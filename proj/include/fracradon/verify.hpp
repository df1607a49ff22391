#pragma once

// Two-sided checks of the slicing inequalities, the normalized lower bound,
// the implied outer-volume-ratio bound, and q-sweeps over them.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracradon/body.hpp"
#include "fracradon/construct.hpp"
#include "fracradon/density.hpp"
#include "fracradon/radon.hpp"
#include "fracradon/report.hpp"

namespace fracradon {

/// generic: the continuation formula, rejects odd integer q.
/// odd_limit: the renormalized odd-order quantity, odd integer q only.
enum class Pathway { automatic, generic, odd_limit };

std::string to_string(Pathway p);
Pathway parse_pathway(const std::string& s);

struct VerifyOptions {
  Pathway pathway = Pathway::automatic;
  DirectionSearch search;
  RadonOptions radon;
  /// Tolerance of the body integrals int_K f.
  double rel_tol = 1e-8;
  /// Relative budget charged to each deterministic side.
  double quad_budget = 1e-7;
  /// Evaluate q in [n-1, n) for exploration; the verdict is then inconclusive.
  bool allow_out_of_range = false;
  std::string dovr_provenance;
};

/// Known d_ovr upper bounds: 1 for balls and ellipsoids, e for cubes
/// (unconditional). Empty for other families.
std::optional<double> known_dovr_bound(const StarBody& K);
std::string dovr_provenance(const StarBody& K);

/// Vol(K)^{-1/n} K.
StarBody volume_one(const StarBody& K);

/// int_K f <= dovr (n/(n-1)) c_n Vol(K)^{1/n} max_xi int_{K cap xi^perp} f.
VerificationReport verify_theorem1(const StarBody& K, const Density& f, double dovr_bound,
                                   const VerifyOptions& opt = {});

/// int_K f <= theorem3_factor(n, q, Vol(K), dovr) max_xi Radq f, with Radq f
/// the fractional derivative of the section function in the Laplacian
/// normalization. Odd integer q goes through the odd-order quantity.
VerificationReport verify_theorem3(const StarBody& K, const Density& f, double q,
                                   double dovr_bound, const VerifyOptions& opt = {});

/// c_measured = n/(q+1) (max_xi Radq f)^{2/(q+1)}, the largest c for which
/// max_xi Radq f >= (c (q+1)/n)^{(q+1)/2}. Requires Vol(K) = 1 and
/// int_K f = 1 within 1e-3. The report checks c_measured > 0.
VerificationReport verify_eq7(const StarBody& K, const Density& f, double q,
                              const VerifyOptions& opt = {});
/// The same for the constructed pair (D, g), with Radq g from the pipeline.
VerificationReport verify_eq7(const ConstructionResult& c, const VerifyOptions& opt = {});

struct ImpliedDovr {
  double value = 0.0;  ///< lower bound on d_ovr(K, L_{-1-q})
  double int_K_f = 0.0;
  double max_frac_deriv = 0.0;
  double factor = 0.0;  ///< theorem3_factor(n, q, Vol(K), 1)
  Direction argmax;
  std::string pathway;
};

/// (int_K f / (factor max_xi Radq f))^{1/(q+1)}.
ImpliedDovr implied_dovr_lower_bound(const StarBody& K, const Density& f, double q,
                                     const VerifyOptions& opt = {});
ImpliedDovr implied_dovr_lower_bound(const ConstructionResult& c, const VerifyOptions& opt = {});

struct SweepConfig {
  std::vector<int> dims{2, 3, 4};
  std::vector<double> qs{0.0, 0.5, 1.0, 1.5, 2.0};
  std::string body = "ball";
  std::string density = "gaussian";
  /// Volume-one body of dimension n; defaults follow `body`.
  std::function<StarBody(int)> make_body;
  /// Density of dimension n, rescaled so that int_K f = 1; defaults follow `density`.
  std::function<Density(int)> make_density;
  std::uint64_t seed = 0;
  VerifyOptions verify;
};

struct SweepRow {
  int n = 0;
  double q = 0.0;
  std::string pathway;
  double max_frac_deriv = 0.0;
  double c_measured = 0.0;
  std::optional<double> implied_dovr;
  double int_K_f = 0.0;
  double budget = 0.0;
  std::uint64_t seed = 0;
  std::string status;  ///< ok or out_of_theorem_range
};

std::vector<SweepRow> sweep_table(const SweepConfig& cfg);
std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const std::vector<SweepRow>& rows);

struct MatrixCell {
  std::string statement;
  std::string body;
  std::string density;
  int n = 0;
  double q = 0.0;
  std::string status;  ///< evaluated, rejected_out_of_range
  std::optional<VerificationReport> report;
};

/// Order-zero and fractional slicing checks over {ball, cube} x {gaussian, bump} x
/// q in {0, 0.5, 1.5, 2.5} x n in {2, 3}, volume-one bodies. Cells with q
/// outside (-1, n-1) are recorded as rejected.
std::vector<MatrixCell> default_matrix(const VerifyOptions& opt = {});

}  // namespace fracradon
