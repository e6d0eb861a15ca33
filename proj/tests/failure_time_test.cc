#include "adt/failure_time.h"

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "adt/error.h"
#include "oracles.h"

using adt::BivariateModel;
using adt::MarginalParams;
using adt::TimePlan;
using adt::UseConditions;

namespace {

BivariateModel median_model() {
  return {{MarginalParams{1.80, 1.60, 1.24}, MarginalParams{2.80, 3.13, 1.17}},
          TimePlan({0.02, 0.04, 0.06, 0.10})};
}

UseConditions median_use() { return {{-0.60, -0.50}, {4.6, 6.25}, 0.5}; }

// alpha-quantile of the system failure time by bisection on the product of
// the marginal failure probabilities.
double quantile_oracle(const BivariateModel& m, const UseConditions& uc) {
  const auto f = [&](double t) {
    return adt::marginal_failure_cdf(m.components[0], uc.x_u[0], uc.thresholds[0], t) *
               adt::marginal_failure_cdf(m.components[1], uc.x_u[1], uc.thresholds[1], t) -
           uc.alpha;
  };
  return oracle::bisect(f, 1e-8, 1e3, 200);
}

}  // namespace

TEST(FailureTime, MarginalCdfMatchesSimulation) {
  const MarginalParams p{1.80, 1.60, 1.24};
  std::mt19937_64 rng(4);
  for (double t : {1.0, 2.1, 4.0}) {
    const double shape = adt::shape_rate(p, -0.6) * t;
    std::gamma_distribution<double> g(shape, p.scale);
    const int n = 200000;
    int hits = 0;
    for (int i = 0; i < n; ++i) hits += g(rng) >= 4.6;
    const double mc = static_cast<double>(hits) / n;
    const double se = std::sqrt(mc * (1.0 - mc) / n);
    EXPECT_NEAR(adt::marginal_failure_cdf(p, -0.6, 4.6, t), mc, 5.0 * se) << t;
  }
}

TEST(FailureTime, MarginalCdfIncreasesInTime) {
  const MarginalParams p{2.80, 3.13, 1.17};
  double prev = 0.0;
  for (double t = 0.1; t < 20.0; t *= 1.3) {
    const double f = adt::marginal_failure_cdf(p, -0.5, 6.25, t);
    EXPECT_GE(f, prev);
    prev = f;
  }
  EXPECT_GT(prev, 0.999);
}

TEST(FailureTime, MedianFrozen) {
  // Reference value of the median system failure time for this model.
  EXPECT_NEAR(adt::failure_quantile(median_model(), median_use()), 2.1172, 1e-3);
}

TEST(FailureTime, QuantileMatchesBisection) {
  const auto m = median_model();
  for (double alpha : {0.05, 0.3, 0.5, 0.9}) {
    auto uc = median_use();
    uc.alpha = alpha;
    const double t = adt::failure_quantile(m, uc);
    EXPECT_NEAR(t, quantile_oracle(m, uc), 1e-8 * t) << alpha;
    EXPECT_NEAR(adt::system_failure_cdf(m, uc, t), alpha, 1e-10);
  }
}

TEST(FailureTime, DensityMatchesDerivative) {
  const auto m = median_model();
  const auto uc = median_use();
  for (double t : {1.0, 2.0, 3.5}) {
    const double fd =
        oracle::central_diff([&](double s) { return adt::system_failure_cdf(m, uc, s); }, t, 1e-4);
    EXPECT_NEAR(adt::failure_density(m, uc, t), fd, 1e-6 * fd);
  }
}

TEST(FailureTime, CVectorMatchesQuantileGradient) {
  const auto m = median_model();
  const auto uc = median_use();
  const Eigen::Vector4d c = adt::c_vector(m, uc);
  for (int i = 0; i < 4; ++i) {
    const auto shifted = [&](double delta) {
      BivariateModel mm = m;
      auto& comp = mm.components[static_cast<std::size_t>(i / 2)];
      (i % 2 ? comp.slope : comp.intercept) += delta;
      return quantile_oracle(mm, uc);
    };
    const double fd = oracle::central_diff(shifted, 0.0, 1e-5);
    EXPECT_NEAR(c(i), fd, 1e-6 * std::fabs(fd)) << i;
  }
}

TEST(FailureTime, CVectorBlockStructure) {
  // Each component's part is a multiple of (1, x_u).
  const auto m = median_model();
  const auto uc = median_use();
  const Eigen::Vector4d c = adt::c_vector(m, uc);
  EXPECT_NEAR(c(1), uc.x_u[0] * c(0), 1e-12 * std::fabs(c(0)));
  EXPECT_NEAR(c(3), uc.x_u[1] * c(2), 1e-12 * std::fabs(c(2)));
  // A higher degradation rate shortens the failure time.
  EXPECT_LT(c(0), 0.0);
  EXPECT_LT(c(2), 0.0);
}

TEST(FailureTime, CCriterionInvertible) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd a(4, 6);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 6; ++j) a(i, j) = z(rng);
    }
    const Eigen::MatrixXd m = a * a.transpose();
    Eigen::VectorXd c(4);
    for (int i = 0; i < 4; ++i) c(i) = z(rng);
    const double want = c.dot(m.ldlt().solve(c));
    EXPECT_NEAR(adt::c_criterion(m, c), want, 1e-9 * want);
  }
}

TEST(FailureTime, CCriterionSingular) {
  // Rank-2 matrix: finite when c lies in its range, infinite otherwise.
  Eigen::MatrixXd b(4, 2);
  b << 1, 0, 2, 1, 0, 1, -1, 3;
  const Eigen::MatrixXd m = b * b.transpose();
  const Eigen::VectorXd in_range = b * Eigen::Vector2d(0.5, -1.5);
  const double got = adt::c_criterion(m, in_range);
  // Oracle: c = B a, so c^T M^- c = a^T B^T (B B^T)^- B a = a^T a.
  EXPECT_NEAR(got, 0.5 * 0.5 + 1.5 * 1.5, 1e-9);
  Eigen::VectorXd outside = in_range;
  outside(0) += 0.1;
  EXPECT_EQ(adt::c_criterion(m, outside), std::numeric_limits<double>::infinity());
}

TEST(FailureTime, UseConditionsValidate) {
  EXPECT_NO_THROW(median_use().validate());
  auto uc = median_use();
  uc.alpha = 1.0;
  EXPECT_THROW(uc.validate(), adt::ValidationError);
  uc = median_use();
  uc.thresholds[1] = -1.0;
  EXPECT_THROW(uc.validate(), adt::ValidationError);
  uc = median_use();
  uc.x_u[0] = NAN;
  EXPECT_THROW(uc.validate(), adt::ValidationError);
}
