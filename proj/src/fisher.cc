#include "adt/fisher.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "adt/error.h"
#include "adt/specfun.h"

namespace adt {

namespace {

Eigen::Vector2d regressor(double x) { return {1.0, x}; }

void add_h_blocks(InfoMatrix& m, double x1, double x2, const PhiTerms& phi) {
  const Eigen::Vector2d f1 = regressor(x1);
  const Eigen::Vector2d f2 = regressor(x2);
  m.block<2, 2>(0, 0) += phi.phi1 * f1 * f1.transpose();
  m.block<2, 2>(2, 2) += phi.phi2 * f2 * f2.transpose();
  const Eigen::Matrix2d cross = phi.phi12 * f1 * f2.transpose();
  m.block<2, 2>(0, 2) += cross;
  m.block<2, 2>(2, 0) += cross.transpose();
}

}  // namespace

double lambda_marginal(const MarginalParams& p, const TimePlan& plan, double x) {
  const double g = shape_rate(p, x);
  double sum = 0.0;
  for (double d : plan.increments()) sum += d * d * specfun::trigamma(g * d);
  return g * g * sum;
}

MarginalInfo marginal_info(const MarginalParams& p, const TimePlan& plan, double x) {
  const Eigen::Vector2d f = regressor(x);
  return lambda_marginal(p, plan, x) * f * f.transpose();
}

InfoMatrix info_independent(const BivariateModel& model, double x1, double x2) {
  InfoMatrix m = InfoMatrix::Zero();
  m.block<2, 2>(0, 0) = marginal_info(model.components[0], model.plan, x1);
  m.block<2, 2>(2, 2) = marginal_info(model.components[1], model.plan, x2);
  return m;
}

CopulaInfoEngine::CopulaInfoEngine(const BivariateModel& model, const CopulaSpec& spec,
                                   const QuadratureRule& rule)
    : model_(model),
      independent_(spec.is_independence()),
      n_(rule.unit_nodes().size()),
      rule_(rule) {
  // Quintic endpoint grading u = 10t^3 - 15t^4 + 6t^5: the scores grow
  // like ln u and ln(1 - u) at the ends of the unit interval.
  for (std::size_t i = 0; i < n_; ++i) {
    const double t = rule_.unit_nodes()[i];
    const double t2 = t * t;
    nodes_.push_back(t2 * t * (10.0 - 15.0 * t + 6.0 * t2));
    weights_.push_back(rule_.unit_weights()[i] * 30.0 * t2 * (1.0 - t) * (1.0 - t));
  }
  for (double d : model_.plan.increments()) {
    bool found = false;
    for (std::size_t m = 0; m < lengths_.size(); ++m) {
      if (std::fabs(d - lengths_[m]) <= 1e-12 * lengths_[m]) {
        ++counts_[m];
        found = true;
        break;
      }
    }
    if (!found) {
      lengths_.push_back(d);
      counts_.push_back(1);
    }
  }
  row1_.assign(n_, 0.0);
  col2_.assign(n_, 0.0);
  cross_ = Eigen::MatrixXd::Zero(n_, n_);
  centered_ = Eigen::MatrixXd::Zero(n_, n_);
  if (independent_) return;
  const auto& u = nodes_;
  const auto& w = weights_;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < n_; ++k) {
      const double ww = w[i] * w[k];
      const double c = density(spec, u[i], u[k]);
      const double c1 = density_dr(spec, u[i], u[k]);
      const double c2 = density_ds(spec, u[i], u[k]);
      if (!std::isfinite(c) || !std::isfinite(c1) || !std::isfinite(c2) || !(c > 0.0)) {
        throw NumericError("copula information: density not finite at node (" +
                           std::to_string(u[i]) + ", " + std::to_string(u[k]) + ")");
      }
      row1_[i] += ww * c1 * c1 / c;
      col2_[k] += ww * c2 * c2 / c;
      cross_(i, k) = ww * c1 * c2 / c;
      centered_(i, k) = ww * (c - 1.0);
    }
  }
}

AxisTable CopulaInfoEngine::axis(int component, double x) const {
  const MarginalParams& p = model_.components.at(static_cast<std::size_t>(component));
  const double g = shape_rate(p, x);
  const auto& u = nodes_;
  AxisTable t;
  for (double d : lengths_) {
    const specfun::GammaShapeScale dist(g * d, p.scale);
    const double psi = specfun::digamma(dist.shape());
    std::vector<double> dcdf(n_), score(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const double y = specfun::gamma_quantile(u[i], dist);
      if (!(y > 0.0)) {
        throw NumericError("copula information: increment quantile underflows at u=" +
                           std::to_string(u[i]) + ", shape=" + std::to_string(dist.shape()));
      }
      dcdf[i] = specfun::gamma_cdf_dshape(y, dist, d);
      score[i] = d * (std::log(y / p.scale) - psi);
    }
    t.dcdf.push_back(std::move(dcdf));
    t.score.push_back(std::move(score));
  }
  return t;
}

PhiTerms CopulaInfoEngine::phi(double x1, double x2) const {
  if (independent_) return {};
  return phi(x1, x2, axis(0, x1), axis(1, x2));
}

PhiTerms CopulaInfoEngine::phi(double x1, double x2, const AxisTable& a1,
                               const AxisTable& a2) const {
  PhiTerms out;
  if (independent_) return out;
  for (std::size_t m = 0; m < lengths_.size(); ++m) {
    const Eigen::Map<const Eigen::VectorXd> g1(a1.dcdf[m].data(), n_);
    const Eigen::Map<const Eigen::VectorXd> g2(a2.dcdf[m].data(), n_);
    const Eigen::Map<const Eigen::VectorXd> s1(a1.score[m].data(), n_);
    const Eigen::Map<const Eigen::VectorXd> s2(a2.score[m].data(), n_);
    const Eigen::Map<const Eigen::VectorXd> r1(row1_.data(), n_);
    const Eigen::Map<const Eigen::VectorXd> r2(col2_.data(), n_);
    const double k = counts_[m];
    out.phi1 += k * g1.cwiseAbs2().dot(r1);
    out.phi2 += k * g2.cwiseAbs2().dot(r2);
    out.phi12 += k * (g1.dot(cross_ * g2) - s1.dot(centered_ * s2));
  }
  const double gam1 = shape_rate(model_.components[0], x1);
  const double gam2 = shape_rate(model_.components[1], x2);
  out.phi1 *= gam1 * gam1;
  out.phi2 *= gam2 * gam2;
  out.phi12 *= gam1 * gam2;
  return out;
}

InfoMatrix CopulaInfoEngine::info(double x1, double x2) const {
  InfoMatrix m = info_independent(model_, x1, x2);
  if (!independent_) add_h_blocks(m, x1, x2, phi(x1, x2));
  return m;
}

InfoMatrix CopulaInfoEngine::info(double x1, double x2, const AxisTable& a1,
                                  const AxisTable& a2) const {
  InfoMatrix m = info_independent(model_, x1, x2);
  if (!independent_) add_h_blocks(m, x1, x2, phi(x1, x2, a1, a2));
  return m;
}

InfoMatrix info_copula(const BivariateModel& model, const CopulaSpec& spec, double x1, double x2,
                       const QuadratureRule& rule) {
  return CopulaInfoEngine(model, spec, rule).info(x1, x2);
}

double phi_l(const BivariateModel& model, const CopulaSpec& spec, double x1, double x2,
             int component, const QuadratureRule& rule) {
  if (component != 0 && component != 1) throw DomainError("phi_l: component must be 0 or 1");
  const PhiTerms t = CopulaInfoEngine(model, spec, rule).phi(x1, x2);
  return component == 0 ? t.phi1 : t.phi2;
}

double phi_12(const BivariateModel& model, const CopulaSpec& spec, double x1, double x2,
              const QuadratureRule& rule) {
  return CopulaInfoEngine(model, spec, rule).phi(x1, x2).phi12;
}

Eigen::MatrixXd info_design(std::span<const Eigen::MatrixXd> elemental,
                            std::span<const double> weights) {
  if (elemental.empty() || elemental.size() != weights.size()) {
    throw ValidationError("info_design: need one weight per elemental matrix");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValidationError("info_design: weights must be nonnegative");
    total += w;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw ValidationError("info_design: weights sum to " + std::to_string(total) + ", not 1");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(elemental[0].rows(), elemental[0].cols());
  for (std::size_t i = 0; i < elemental.size(); ++i) m += weights[i] * elemental[i];
  return m;
}

bool is_symmetric_psd(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) return false;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -1e-9 * std::max(m.trace(), 0.0);
}

}  // namespace adt
