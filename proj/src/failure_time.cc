#include "adt/failure_time.h"

#include <cmath>
#include <limits>
#include <string>

#include "adt/error.h"
#include "adt/specfun.h"

namespace adt {

void UseConditions::validate() const {
  for (double x : x_u) {
    if (!std::isfinite(x)) throw ValidationError("use conditions: stress must be finite");
  }
  for (double z : thresholds) {
    if (!(z >= 0.0) || !std::isfinite(z)) {
      throw ValidationError("use conditions: thresholds must be finite and nonnegative");
    }
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("use conditions: alpha must lie in (0,1)");
}

double marginal_failure_cdf(const MarginalParams& p, double x_u, double z0, double t) {
  if (!(t > 0.0)) return 0.0;
  return specfun::reg_gamma_q(shape_rate(p, x_u) * t, z0 / p.scale);
}

double system_failure_cdf(const BivariateModel& model, const UseConditions& uc, double t) {
  return marginal_failure_cdf(model.components[0], uc.x_u[0], uc.thresholds[0], t) *
         marginal_failure_cdf(model.components[1], uc.x_u[1], uc.thresholds[1], t);
}

double failure_quantile(const BivariateModel& model, const UseConditions& uc) {
  uc.validate();
  auto f = [&](double t) { return system_failure_cdf(model, uc, t); };
  double lo = 1e-6;
  double hi = 1.0;
  if (f(lo) >= uc.alpha) {
    throw NumericError("failure_quantile: F_T(1e-6) already exceeds alpha");
  }
  int doublings = 0;
  while (f(hi) <= uc.alpha) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > 200) throw NumericError("failure_quantile: could not bracket the quantile");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double g = f(mid) - uc.alpha;
    if (g == 0.0) return mid;
    if (g < 0.0) lo = mid; else hi = mid;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      return 0.5 * (lo + hi);
    }
  }
  throw NumericError("failure_quantile: bisection did not converge in 200 iterations");
}

double failure_density(const BivariateModel& model, const UseConditions& uc, double t) {
  const double h = 1e-6 * t;
  return (system_failure_cdf(model, uc, t + h) - system_failure_cdf(model, uc, t - h)) / (2.0 * h);
}

Eigen::Vector4d c_vector(const BivariateModel& model, const UseConditions& uc) {
  const double t = failure_quantile(model, uc);
  const double dens = failure_density(model, uc, t);
  if (!(dens >= 1e-14)) {
    throw NumericError("c_vector: failure-time density at the quantile is degenerate (" +
                       std::to_string(dens) + ")");
  }
  std::array<double, 2> marg{};
  std::array<double, 2> dshape{};
  for (std::size_t l = 0; l < 2; ++l) {
    const MarginalParams& p = model.components[l];
    const double s = shape_rate(p, uc.x_u[l]) * t;
    const double z = uc.thresholds[l] / p.scale;
    marg[l] = specfun::reg_gamma_q(s, z);
    // dQ(s, z)/dbeta_1 = Q_1(s, z) * s, since ds/dbeta_1 = s
    dshape[l] = z > 0.0 ? specfun::reg_gamma_q_dshape(s, z) * s : 0.0;
  }
  Eigen::Vector4d c;
  for (std::size_t l = 0; l < 2; ++l) {
    const double dF = dshape[l] * marg[1 - l];
    c(2 * l) = -dF / dens;
    c(2 * l + 1) = -dF * uc.x_u[l] / dens;
  }
  return c;
}

double c_criterion(const Eigen::MatrixXd& info, const Eigen::VectorXd& c) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(info);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cutoff = 1e-12 * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  const Eigen::VectorXd proj = es.eigenvectors().transpose() * c;
  double value = 0.0;
  double outside = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cutoff) {
      value += proj(i) * proj(i) / ev(i);
    } else {
      outside += proj(i) * proj(i);
    }
  }
  if (std::sqrt(outside) > 1e-8 * c.norm()) return std::numeric_limits<double>::infinity();
  return value;
}

}  // namespace adt
