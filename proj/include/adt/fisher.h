#pragma once

/// @file fisher.h
/// Fisher information for the bivariate Gamma-process model, with and
/// without copula dependence between the components.
///
/// Parameters are ordered (intercept_1, slope_1, intercept_2, slope_2).

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "adt/copula.h"
#include "adt/gamma_marginal.h"
#include "adt/quadrature.h"

namespace adt {

using InfoMatrix = Eigen::Matrix4d;
using MarginalInfo = Eigen::Matrix2d;

/// gamma(x)^2 * sum_j Delta_j^2 * trigamma(gamma(x) Delta_j)
double lambda_marginal(const MarginalParams& p, const TimePlan& plan, double x);

/// lambda(x) (1, x)^T (1, x)
MarginalInfo marginal_info(const MarginalParams& p, const TimePlan& plan, double x);

/// Block-diagonal elemental information of the independent model.
InfoMatrix info_independent(const BivariateModel& model, double x1, double x2);

/// Dependence contributions at one stress point: the diagonal terms phi_1,
/// phi_2 (>= 0) and the cross term phi_12.
struct PhiTerms {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double phi12 = 0.0;
};

/// Per-node quantities along one axis after the probability-integral
/// transform u = F(y): dF/dgamma and the score d ln f / dgamma at
/// y = F^{-1}(u), one vector per distinct interval length.
struct AxisTable {
  std::vector<std::vector<double>> dcdf;
  std::vector<std::vector<double>> score;
};

/// Evaluates copula-model information on a fixed quadrature rule. The copula
/// density and its partials are tabulated on the tensor nodes once, so each
/// elemental matrix costs O(nodes^2) per distinct interval length.
class CopulaInfoEngine {
 public:
  CopulaInfoEngine(const BivariateModel& model, const CopulaSpec& spec, const QuadratureRule& rule);

  /// @param component 0 or 1
  AxisTable axis(int component, double x) const;

  PhiTerms phi(double x1, double x2) const;
  PhiTerms phi(double x1, double x2, const AxisTable& a1, const AxisTable& a2) const;

  /// info_independent + H
  InfoMatrix info(double x1, double x2) const;
  InfoMatrix info(double x1, double x2, const AxisTable& a1, const AxisTable& a2) const;

  const BivariateModel& model() const { return model_; }

 private:
  BivariateModel model_;
  bool independent_;
  std::size_t n_;
  // distinct interval lengths and their multiplicities
  std::vector<double> lengths_;
  std::vector<int> counts_;
  QuadratureRule rule_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> row1_;   // sum_k w_i w_k c1^2 / c
  std::vector<double> col2_;   // sum_i w_i w_k c2^2 / c
  Eigen::MatrixXd cross_;      // w_i w_k c1 c2 / c
  Eigen::MatrixXd centered_;   // w_i w_k (c - 1)
};

InfoMatrix info_copula(const BivariateModel& model, const CopulaSpec& spec, double x1, double x2,
                       const QuadratureRule& rule);

/// @param component 0 or 1
double phi_l(const BivariateModel& model, const CopulaSpec& spec, double x1, double x2,
             int component, const QuadratureRule& rule);
double phi_12(const BivariateModel& model, const CopulaSpec& spec, double x1, double x2,
              const QuadratureRule& rule);

/// sum_i w_i M_i.
/// @throws ValidationError if sizes differ, a weight is negative or the
/// weights do not sum to 1 within 1e-9.
Eigen::MatrixXd info_design(std::span<const Eigen::MatrixXd> elemental,
                            std::span<const double> weights);

/// Symmetric to 1e-10 (relative to the largest entry) and minimum eigenvalue
/// >= -1e-9 * trace.
bool is_symmetric_psd(const Eigen::MatrixXd& m);

}  // namespace adt
