#include "adt/gamma_marginal.h"

#include <cmath>
#include <string>

#include "adt/error.h"

namespace adt {

void MarginalParams::validate() const {
  if (!std::isfinite(intercept) || !std::isfinite(slope)) {
    throw ValidationError("marginal parameters: intercept and slope must be finite");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ValidationError("marginal parameters: scale must be positive, got " +
                          std::to_string(scale));
  }
}

TimePlan::TimePlan(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty()) throw ValidationError("time plan: at least one time point is required");
  double previous = 0.0;
  increments_.reserve(times_.size());
  for (double t : times_) {
    if (!std::isfinite(t) || !(t > previous)) {
      throw ValidationError("time plan: times must be positive and strictly increasing");
    }
    increments_.push_back(t - previous);
    previous = t;
  }
}

bool TimePlan::equidistant() const {
  const double first = increments_.front();
  for (double d : increments_) {
    if (std::fabs(d - first) > 1e-12 * first) return false;
  }
  return true;
}

double shape_rate(const MarginalParams& p, double x) { return std::exp(p.intercept + p.slope * x); }

double increment_mean(const MarginalParams& p, const TimePlan& plan, double x, std::size_t j) {
  return shape_rate(p, x) * plan.increments()[j] * p.scale;
}

specfun::GammaShapeScale increment_dist(const MarginalParams& p, const TimePlan& plan, double x,
                                        std::size_t j) {
  return {shape_rate(p, x) * plan.increments()[j], p.scale};
}

}  // namespace adt
