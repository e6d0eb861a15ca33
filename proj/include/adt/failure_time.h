#pragma once

/// @file failure_time.h
/// Failure time of a parallel system of two degrading components under
/// normal use conditions.

#include <array>

#include <Eigen/Dense>

#include "adt/gamma_marginal.h"

namespace adt {

struct UseConditions {
  std::array<double, 2> x_u{};
  std::array<double, 2> thresholds{};
  double alpha = 0.5;

  /// @throws ValidationError on a negative threshold, alpha outside (0, 1)
  /// or a non-finite stress.
  void validate() const;
};

/// P(T_l <= t) = Q(gamma(x_u) t, z0 / scale): the probability that the
/// degradation path has reached z0 by time t.
double marginal_failure_cdf(const MarginalParams& p, double x_u, double z0, double t);

/// Product of the two marginal failure-time distributions.
double system_failure_cdf(const BivariateModel& model, const UseConditions& uc, double t);

/// alpha-quantile of the system failure time, |F_T(t) - alpha| <= 1e-10.
/// @throws NumericError if bracketing or bisection does not converge.
double failure_quantile(const BivariateModel& model, const UseConditions& uc);

/// Central difference of system_failure_cdf with step 1e-6 * t.
double failure_density(const BivariateModel& model, const UseConditions& uc, double t);

/// Gradient of the failure-time quantile t_alpha with respect to the model
/// coefficients, -(dF_T/dbeta) / f_T at t_alpha.
/// @throws NumericError if f_T(t_alpha) < 1e-14.
Eigen::Vector4d c_vector(const BivariateModel& model, const UseConditions& uc);

/// c^T M^- c by a pseudo-solve; +infinity when c is not in the range of M.
double c_criterion(const Eigen::MatrixXd& info, const Eigen::VectorXd& c);

}  // namespace adt
