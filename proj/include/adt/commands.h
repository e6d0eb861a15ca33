#pragma once

/// @file commands.h
/// Scenario solving and the `run`, `validate` and `sweep` commands.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "adt/design.h"
#include "adt/scenario.h"

namespace adt {

/// Elemental information matrices of a scenario on its grid.
struct CandidateSet {
  std::vector<Point2> points;
  std::vector<Eigen::MatrixXd> elemental;
};

/// Extra results of a failure-time quantile (c-quantile) scenario.
struct QuantileResult {
  double t_alpha = 0.0;
  std::array<OptimizedDesign<double>, 2> marginal;
  std::array<double, 2> elfving{};
  Design product;
  double product_criterion = 0.0;
  double product_gap = 0.0;
};

struct ScenarioResult {
  ScenarioConfig config;
  Criterion criterion;
  CandidateSet candidates;
  OptimizedDesign<Point2> joint;
  std::optional<Eigen::Vector4d> c;
  std::optional<QuantileResult> quantile;

  /// Every optimization in the result is certified.
  bool certified() const;
};

CandidateSet build_candidates(const ScenarioConfig& cfg);

/// Criterion of the scenario: D, or c with the failure-time quantile
/// gradient or the P11 gradient at the use stress.
Criterion scenario_criterion(const ScenarioConfig& cfg);

ScenarioResult solve(const ScenarioConfig& cfg);

struct SweepTable {
  std::string parameter;
  std::vector<double> values;
  std::vector<std::string> columns;
  /// rows[i][j] is column j at values[i]; NaN where not applicable
  std::vector<std::vector<double>> cells;
  std::vector<std::string> status;  ///< "ok" or the error message
};

/// Re-solves the scenario at each swept value. Tracked columns: criterion,
/// gap, certified flag, efficiency of the nominal optimum, the weight of
/// every support point that occurs, and for c-quantile scenarios the
/// marginal design weights.
SweepTable sweep_scenario(const ScenarioConfig& cfg, const std::string& parameter, double from,
                          double to, int steps);

/// Exit codes: 0 certified, 2 uncertified, 1 error.
int run_command(const std::string& path, const std::string& output_override, std::ostream& out,
                std::ostream& err);
int validate_command(const std::string& path, std::ostream& out, std::ostream& err);
int sweep_command(const std::string& path, const std::string& parameter, double from, double to,
                  int steps, const std::string& output_override, std::ostream& out,
                  std::ostream& err);

}  // namespace adt
