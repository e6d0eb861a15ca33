#pragma once

/// @file design.h
/// Approximate designs, D- and c-criteria, the multiplicative algorithm and
/// its equivalence-theorem certificate.

#include <compare>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "adt/gamma_marginal.h"

namespace adt {

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
  auto operator<=>(const Point2&) const = default;
};

/// Finite support with positive weights summing to one.
template <class Point>
struct BasicDesign {
  std::vector<Point> support;
  std::vector<double> weights;

  /// @throws ValidationError on size mismatch, a non-positive weight, a
  /// weight sum off by more than tol, or repeated support points.
  void validate(double tol = 1e-9) const;
  /// Reorders support points lexicographically.
  void sort();
};

using Design = BasicDesign<Point2>;
using MarginalDesign = BasicDesign<double>;

/// Equidistant grid on [0, 1] and its product on [0, 1]^2.
class Grid {
 public:
  /// @throws ValidationError unless 1 / increment is an integer within 1e-12.
  explicit Grid(double increment = 0.05);

  double increment() const { return inc_; }
  const std::vector<double>& axis() const { return axis_; }
  /// Row-major: x1 outer, x2 inner.
  std::vector<Point2> points() const;

 private:
  double inc_;
  std::vector<double> axis_;
};

struct Criterion {
  enum class Kind { D, C };
  Kind kind = Kind::D;
  Eigen::VectorXd c;

  static Criterion d_optimal() { return {}; }
  /// @throws ValidationError if c is zero.
  static Criterion c_optimal(Eigen::VectorXd c);
  std::string name() const { return kind == Kind::D ? "D" : "c"; }
};

/// log det M, or -infinity when M is singular.
double d_criterion(const Eigen::MatrixXd& m);

/// Larger is better: log det M for D, -c^T M^- c for c.
double criterion_value(const Criterion& crit, const Eigen::MatrixXd& m);

struct OptimizerOptions {
  double tolerance = 1e-4;
  int max_iterations = 20000;
  double prune_threshold = 1e-6;
  /// Weights below this are merged into a heavier neighbour within one grid step.
  double merge_threshold = 1e-3;
};

/// Weights over a candidate set, before pruning.
struct WeightResult {
  std::vector<double> weights;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Multiplicative algorithm w_i <- w_i psi_i^d / sum_j w_j psi_j^d with
/// psi_i = tr(M_i M^-1), d = 1 for D and psi_i = c^T M^-1 M_i M^-1 c,
/// d = 1/2 for c, started from uniform weights.
/// @throws ValidationError if the uniform design is not criterion-feasible.
WeightResult multiplicative_weights(const std::vector<Eigen::MatrixXd>& elemental,
                                    const Criterion& crit, const OptimizerOptions& opts);

/// Sensitivity of every candidate at design information m: tr(M_i M^-1) or
/// c^T M^-1 M_i M^-1 c.
std::vector<double> sensitivities(const std::vector<Eigen::MatrixXd>& elemental,
                                  const Criterion& crit, const Eigen::MatrixXd& m);

/// max_i tr(M_i M^-1) - p for D; max_i psi_i / (c^T M^-1 c) - 1 for c.
/// @throws ValidationError if m is not criterion-feasible.
double equivalence_gap(const std::vector<Eigen::MatrixXd>& elemental, const Criterion& crit,
                       const Eigen::MatrixXd& m);

template <class Point>
struct OptimizedDesign {
  BasicDesign<Point> design;
  double criterion = 0.0;  ///< log det M for D, c^T M^- c for c
  double gap = 0.0;        ///< of the reported design over all candidates
  int iterations = 0;
  bool converged = false;  ///< algorithm stopped on tolerance
  bool certified = false;  ///< reported design has gap <= tolerance
  int merged = 0;          ///< support points merged into neighbours
};

/// Runs the multiplicative algorithm over the grid points, prunes, merges
/// low-weight neighbours and re-evaluates the gap of the result.
OptimizedDesign<Point2> optimize_design(const std::vector<Point2>& points,
                                        const std::vector<Eigen::MatrixXd>& elemental,
                                        const Criterion& crit, double grid_step,
                                        const OptimizerOptions& opts = {});
OptimizedDesign<double> optimize_design(const std::vector<double>& points,
                                        const std::vector<Eigen::MatrixXd>& elemental,
                                        const Criterion& crit, double grid_step,
                                        const OptimizerOptions& opts = {});

template <class Point>
using ElementalFn = std::function<Eigen::MatrixXd(const Point&)>;

template <class Point>
Eigen::MatrixXd design_info(const BasicDesign<Point>& d, const ElementalFn<Point>& elemental);

/// Weight on stress 0 of the two-point c-optimal marginal design on {0, 1}
/// for estimating the linear predictor at x_u < 0.
/// @throws DomainError unless x_u < 0.
double elfving_marginal_weight(const MarginalParams& p, const TimePlan& plan, double x_u);

Design product_design(const MarginalDesign& xi1, const MarginalDesign& xi2);
std::pair<MarginalDesign, MarginalDesign> marginalize(const Design& d);

/// c: crit(optimal) / crit(candidate); D: (det M(candidate) / det M(optimal))^(1/p).
/// 0 for an infeasible candidate.
template <class Point>
double efficiency(const BasicDesign<Point>& candidate, const BasicDesign<Point>& optimal,
                  const Criterion& crit, const ElementalFn<Point>& elemental);

struct SweepRow {
  double value = 0.0;
  std::vector<std::pair<std::string, double>> columns;
  std::string error;
};

/// Evaluates `run` at `steps` equidistant values of [from, to] (one value
/// when steps == 1 or from == to). Exceptions are recorded per row.
std::vector<SweepRow> sweep(double from, double to, int steps,
                            const std::function<SweepRow(double)>& run);

}  // namespace adt
