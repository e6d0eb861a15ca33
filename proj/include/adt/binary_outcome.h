#pragma once

/// @file binary_outcome.h
/// Single-inspection model: each component is only recorded as having
/// exceeded its threshold (u or v = 1) or not (= 2) at the one time point.

#include <array>

#include <Eigen/Dense>

#include "adt/copula.h"
#include "adt/error.h"
#include "adt/failure_time.h"
#include "adt/gamma_marginal.h"

namespace adt {

struct BinaryScenario {
  BivariateModel model;
  CopulaSpec copula;
  std::array<double, 2> thresholds{};

  /// @throws ValidationError unless the plan has exactly one time point and
  /// both thresholds are positive.
  void validate() const;
};

/// Cell probabilities ordered (1,1), (1,2), (2,1), (2,2).
using CellProbs = std::array<double, 4>;

/// A vanishing cell probability makes the elemental information undefined.
class DegenerateCellError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// P22 = C(F1, F2), P12 = F2 - C, P21 = F1 - C, P11 = 1 - F1 - F2 + C with
/// F_l = P(Y_l < z_l).
/// @throws NumericError if a cell is below -1e-12.
CellProbs cell_probs(const BinaryScenario& sc, double x1, double x2);

/// dP_uv/dgamma_l; row l, columns in CellProbs order.
Eigen::Matrix<double, 2, 4> cell_probs_dgamma(const BinaryScenario& sc, double x1, double x2);

/// A B diag(1/P) B^T A^T with A = dgamma/dbeta (4 x 2) and B the matrix
/// from cell_probs_dgamma.
/// @throws DegenerateCellError if a cell probability is below 1e-12.
Eigen::Matrix4d info_binary(const BinaryScenario& sc, double x1, double x2);

/// Gradient of P11 at the use stress with respect to the coefficients.
Eigen::Vector4d p11_use_gradient(const BinaryScenario& sc, const UseConditions& uc);

}  // namespace adt
