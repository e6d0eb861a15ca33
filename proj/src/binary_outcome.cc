#include "adt/binary_outcome.h"

#include <string>

#include "adt/specfun.h"

namespace adt {

namespace {

const char* const kCellNames[4] = {"(1,1)", "(1,2)", "(2,1)", "(2,2)"};

struct Margins {
  std::array<double, 2> F{};
  std::array<double, 2> dF{};  // dF_l / dgamma_l
  std::array<double, 2> gamma{};
};

Margins margins(const BinaryScenario& sc, double x1, double x2) {
  Margins m;
  const double delta = sc.model.plan.increments()[0];
  const std::array<double, 2> x{x1, x2};
  for (std::size_t l = 0; l < 2; ++l) {
    const MarginalParams& p = sc.model.components[l];
    m.gamma[l] = shape_rate(p, x[l]);
    const specfun::GammaShapeScale dist(m.gamma[l] * delta, p.scale);
    m.F[l] = specfun::gamma_cdf(sc.thresholds[l], dist);
    m.dF[l] = specfun::gamma_cdf_dshape(sc.thresholds[l], dist, delta);
  }
  return m;
}

Eigen::Matrix<double, 2, 4> dgamma_from(const BinaryScenario& sc, const Margins& m) {
  const double C1 = cdf_dr(sc.copula, m.F[0], m.F[1]);
  const double C2 = cdf_ds(sc.copula, m.F[0], m.F[1]);
  const double g1 = m.dF[0];
  const double g2 = m.dF[1];
  Eigen::Matrix<double, 2, 4> b;
  b << -g1 + C1 * g1, -C1 * g1, g1 - C1 * g1, C1 * g1,
       -g2 + C2 * g2, g2 - C2 * g2, -C2 * g2, C2 * g2;
  return b;
}

}  // namespace

void BinaryScenario::validate() const {
  if (model.plan.size() != 1) {
    throw ValidationError("binary model requires a single time point (k = 1), got k = " +
                          std::to_string(model.plan.size()));
  }
  for (double z : thresholds) {
    if (!(z > 0.0) || !std::isfinite(z)) {
      throw ValidationError("binary model: thresholds must be positive and finite");
    }
  }
}

CellProbs cell_probs(const BinaryScenario& sc, double x1, double x2) {
  const Margins m = margins(sc, x1, x2);
  const double c = cdf(sc.copula, m.F[0], m.F[1]);
  CellProbs p;
  p[3] = c;
  p[1] = m.F[1] - c;
  p[2] = m.F[0] - c;
  p[0] = 1.0 - p[1] - p[2] - p[3];
  for (std::size_t i = 0; i < 4; ++i) {
    if (p[i] < -1e-12) {
      throw NumericError(std::string("cell_probs: negative probability in cell ") + kCellNames[i]);
    }
  }
  return p;
}

Eigen::Matrix<double, 2, 4> cell_probs_dgamma(const BinaryScenario& sc, double x1, double x2) {
  return dgamma_from(sc, margins(sc, x1, x2));
}

Eigen::Matrix4d info_binary(const BinaryScenario& sc, double x1, double x2) {
  const Margins m = margins(sc, x1, x2);
  const CellProbs p = cell_probs(sc, x1, x2);
  Eigen::Vector4d inv;
  for (std::size_t i = 0; i < 4; ++i) {
    if (p[i] < 1e-12) {
      throw DegenerateCellError(std::string("info_binary: cell ") + kCellNames[i] +
                                " has vanishing probability at x = (" + std::to_string(x1) +
                                ", " + std::to_string(x2) + ")");
    }
    inv(static_cast<Eigen::Index>(i)) = 1.0 / p[i];
  }
  Eigen::Matrix<double, 4, 2> a = Eigen::Matrix<double, 4, 2>::Zero();
  a(0, 0) = m.gamma[0];
  a(1, 0) = m.gamma[0] * x1;
  a(2, 1) = m.gamma[1];
  a(3, 1) = m.gamma[1] * x2;
  const Eigen::Matrix<double, 2, 4> b = dgamma_from(sc, m);
  const Eigen::Matrix2d inner = b * inv.asDiagonal() * b.transpose();
  return a * inner * a.transpose();
}

Eigen::Vector4d p11_use_gradient(const BinaryScenario& sc, const UseConditions& uc) {
  const Margins m = margins(sc, uc.x_u[0], uc.x_u[1]);
  const Eigen::Matrix<double, 2, 4> b = dgamma_from(sc, m);
  Eigen::Vector4d c;
  for (Eigen::Index l = 0; l < 2; ++l) {
    const double cl = m.gamma[static_cast<std::size_t>(l)] * b(l, 0);
    c(2 * l) = cl;
    c(2 * l + 1) = cl * uc.x_u[static_cast<std::size_t>(l)];
  }
  return c;
}

}  // namespace adt
