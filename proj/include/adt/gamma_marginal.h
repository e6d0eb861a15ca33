#pragma once

/// @file gamma_marginal.h
/// Marginal Gamma-process degradation model with a log-linear stress link.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "adt/specfun.h"

namespace adt {

/// Parameters of one degradation component: the shape rate at standardized
/// stress x is exp(intercept + slope * x); scale is known.
struct MarginalParams {
  double intercept = 0.0;
  double slope = 0.0;
  double scale = 1.0;

  /// @throws ValidationError if scale <= 0 or a coefficient is not finite.
  void validate() const;
};

/// Strictly increasing measurement times t_1 < ... < t_k with t_1 > 0.
class TimePlan {
 public:
  /// @throws ValidationError on an empty, non-positive or non-increasing plan.
  explicit TimePlan(std::vector<double> times);

  std::span<const double> times() const { return times_; }
  /// Interval lengths Delta_j = t_j - t_{j-1}, t_0 = 0.
  std::span<const double> increments() const { return increments_; }
  std::size_t size() const { return times_.size(); }
  double horizon() const { return times_.back(); }
  /// True when all increments agree to a relative 1e-12.
  bool equidistant() const;

 private:
  std::vector<double> times_;
  std::vector<double> increments_;
};

/// Two components observed on a shared time plan.
struct BivariateModel {
  std::array<MarginalParams, 2> components;
  TimePlan plan;
};

/// Shape rate gamma(x) = exp(intercept + slope * x).
double shape_rate(const MarginalParams& p, double x);

/// Mean of the j-th increment (0-based): gamma(x) * Delta_j * scale.
double increment_mean(const MarginalParams& p, const TimePlan& plan, double x, std::size_t j);

/// Distribution of the j-th increment (0-based): shape gamma(x) * Delta_j, scale.
specfun::GammaShapeScale increment_dist(const MarginalParams& p, const TimePlan& plan, double x,
                                        std::size_t j);

}  // namespace adt
