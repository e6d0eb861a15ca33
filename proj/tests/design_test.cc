#include "adt/design.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "adt/error.h"
#include "adt/failure_time.h"
#include "adt/fisher.h"
#include "oracles.h"

using adt::Criterion;
using adt::Design;
using adt::Grid;
using adt::MarginalDesign;
using adt::Point2;

namespace {

// Elemental matrices f(x) f(x)^T of polynomial regression on a grid.
std::vector<Eigen::MatrixXd> polynomial(const std::vector<double>& xs, int degree) {
  std::vector<Eigen::MatrixXd> out;
  for (double x : xs) {
    Eigen::VectorXd f(degree + 1);
    for (int i = 0; i <= degree; ++i) f(i) = std::pow(x, i);
    out.push_back(f * f.transpose());
  }
  return out;
}

double weight_at(const MarginalDesign& d, double x) {
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    if (std::fabs(d.support[i] - x) < 1e-12) return d.weights[i];
  }
  return 0.0;
}

adt::BivariateModel median_model() {
  return {{adt::MarginalParams{1.80, 1.60, 1.24}, adt::MarginalParams{2.80, 3.13, 1.17}},
          adt::TimePlan({0.02, 0.04, 0.06, 0.10})};
}

}  // namespace

TEST(Grid, Layout) {
  const Grid g(0.05);
  ASSERT_EQ(g.axis().size(), 21u);
  EXPECT_EQ(g.axis().front(), 0.0);
  EXPECT_EQ(g.axis().back(), 1.0);
  const auto pts = g.points();
  ASSERT_EQ(pts.size(), 441u);
  EXPECT_EQ(pts[1].x1, 0.0);
  EXPECT_NEAR(pts[1].x2, 0.05, 1e-15);
  EXPECT_THROW(Grid(0.07), adt::ValidationError);
  EXPECT_THROW(Grid(0.0), adt::ValidationError);
}

TEST(Design, Validate) {
  Design d{{{0, 0}, {1, 1}}, {0.4, 0.6}};
  EXPECT_NO_THROW(d.validate());
  d.weights = {0.4, 0.5};
  EXPECT_THROW(d.validate(), adt::ValidationError);
  d.weights = {1.2, -0.2};
  EXPECT_THROW(d.validate(), adt::ValidationError);
  d = Design{{{0, 0}, {0, 0}}, {0.5, 0.5}};
  EXPECT_THROW(d.validate(), adt::ValidationError);
  d = Design{{{0, 0}}, {0.5, 0.5}};
  EXPECT_THROW(d.validate(), adt::ValidationError);
}

TEST(Criterion, DHomogeneity) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> z;
  Eigen::MatrixXd a(4, 4);
  for (int i = 0; i < 16; ++i) a(i / 4, i % 4) = z(rng);
  const Eigen::MatrixXd m = a * a.transpose() + Eigen::MatrixXd::Identity(4, 4);
  EXPECT_NEAR(adt::d_criterion(3.0 * m), adt::d_criterion(m) + 4.0 * std::log(3.0), 1e-12);
  EXPECT_NEAR(adt::d_criterion(m), std::log(m.determinant()), 1e-12);
  Eigen::MatrixXd s = m;
  s.row(3).setZero();
  s.col(3).setZero();
  EXPECT_EQ(adt::d_criterion(s), -std::numeric_limits<double>::infinity());
  const Eigen::VectorXd c = Eigen::VectorXd::Ones(4);
  EXPECT_NEAR(adt::criterion_value(Criterion::c_optimal(c), m), -adt::c_criterion(m, c), 1e-15);
  EXPECT_THROW(Criterion::c_optimal(Eigen::VectorXd::Zero(4)), adt::ValidationError);
}

TEST(Optimizer, LinearRegressionD) {
  const Grid g(0.1);
  const auto res = adt::optimize_design(g.axis(), polynomial(g.axis(), 1), Criterion::d_optimal(), 0.1);
  ASSERT_EQ(res.design.support.size(), 2u);
  EXPECT_NEAR(weight_at(res.design, 0.0), 0.5, 1e-3);
  EXPECT_NEAR(weight_at(res.design, 1.0), 0.5, 1e-3);
  EXPECT_TRUE(res.certified);
  EXPECT_LE(res.gap, 1e-4);
}

TEST(Optimizer, QuadraticRegressionD) {
  const Grid g(0.05);
  const auto res = adt::optimize_design(g.axis(), polynomial(g.axis(), 2), Criterion::d_optimal(), 0.05);
  ASSERT_EQ(res.design.support.size(), 3u);
  for (double x : {0.0, 0.5, 1.0}) EXPECT_NEAR(weight_at(res.design, x), 1.0 / 3.0, 1e-3) << x;
  // log det of the optimum: det = (1/3)^3 * Vandermonde(0, .5, 1)^2 = 1/27 * 1/16
  EXPECT_NEAR(res.criterion, std::log(1.0 / 432.0), 1e-4);
}

TEST(Optimizer, ExtrapolationCOptimal) {
  // Estimating the mean at x = -0.5: weights proportional to the absolute
  // Lagrange coefficients 1.5 and 0.5.
  const Grid g(0.05);
  Eigen::VectorXd c(2);
  c << 1.0, -0.5;
  const auto res = adt::optimize_design(g.axis(), polynomial(g.axis(), 1), Criterion::c_optimal(c), 0.05);
  EXPECT_NEAR(weight_at(res.design, 0.0), 0.75, 2e-3);
  EXPECT_NEAR(weight_at(res.design, 1.0), 0.25, 2e-3);
  EXPECT_NEAR(res.criterion, 4.0, 1e-3);  // (1.5 + 0.5)^2
  EXPECT_TRUE(res.certified);
}

TEST(Optimizer, MarginalCMatchesGoldenSection) {
  const auto m = median_model();
  const Grid g(0.05);
  for (std::size_t l = 0; l < 2; ++l) {
    const double xu = l ? -0.5 : -0.6;
    std::vector<Eigen::MatrixXd> el;
    for (double x : g.axis()) el.emplace_back(adt::marginal_info(m.components[l], m.plan, x));
    Eigen::VectorXd c(2);
    c << 1.0, xu;
    const auto res = adt::optimize_design(g.axis(), el, Criterion::c_optimal(c), 0.05);
    const Eigen::Matrix2d m0 = adt::marginal_info(m.components[l], m.plan, 0.0);
    const Eigen::Matrix2d m1 = adt::marginal_info(m.components[l], m.plan, 1.0);
    const auto var = [&](double w) {
      const Eigen::Matrix2d mw = w * m0 + (1.0 - w) * m1;
      return c.dot(mw.ldlt().solve(c));
    };
    const double w0 = oracle::golden_section(var, 1e-6, 1.0 - 1e-6);
    EXPECT_NEAR(weight_at(res.design, 0.0), w0, 2e-3) << l;
    EXPECT_NEAR(adt::elfving_marginal_weight(m.components[l], m.plan, xu), w0, 1e-8) << l;
    EXPECT_NEAR(res.criterion, var(w0), 1e-4 * var(w0));
  }
}

TEST(Optimizer, EquivalenceTheoremAtOptimum) {
  const auto m = median_model();
  const Grid g(0.1);
  const auto pts = g.points();
  std::vector<Eigen::MatrixXd> el;
  for (const auto& p : pts) el.emplace_back(adt::info_independent(m, p.x1, p.x2));
  const auto res = adt::optimize_design(pts, el, Criterion::d_optimal(), 0.1);
  std::vector<Eigen::MatrixXd> sup;
  for (const auto& p : res.design.support) sup.emplace_back(adt::info_independent(m, p.x1, p.x2));
  const auto info = adt::info_design(sup, res.design.weights);
  const auto sens = adt::sensitivities(el, Criterion::d_optimal(), info);
  EXPECT_LE(*std::max_element(sens.begin(), sens.end()), 4.0 + 1e-4);
  // Support points attain the bound.
  for (const auto& s : sup) EXPECT_NEAR((s * info.inverse()).trace(), 4.0, 1e-3);
  EXPECT_NEAR(res.gap, adt::equivalence_gap(el, Criterion::d_optimal(), info), 1e-12);
}

TEST(Optimizer, PermutationInvariance) {
  const auto m = median_model();
  const Grid g(0.1);
  auto pts = g.points();
  std::vector<Eigen::MatrixXd> el;
  for (const auto& p : pts) el.emplace_back(adt::info_independent(m, p.x1, p.x2));
  const Eigen::Vector4d c = adt::c_vector(m, {{-0.6, -0.5}, {4.6, 6.25}, 0.5});
  const auto crit = Criterion::c_optimal(c);
  const auto a = adt::optimize_design(pts, el, crit, 0.1);

  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937_64(99));
  std::vector<Point2> pts2;
  std::vector<Eigen::MatrixXd> el2;
  for (std::size_t i : order) {
    pts2.push_back(pts[i]);
    el2.push_back(el[i]);
  }
  const auto b = adt::optimize_design(pts2, el2, crit, 0.1);
  ASSERT_EQ(a.design.support.size(), b.design.support.size());
  for (std::size_t i = 0; i < a.design.support.size(); ++i) {
    EXPECT_EQ(a.design.support[i], b.design.support[i]);
    EXPECT_NEAR(a.design.weights[i], b.design.weights[i], 1e-10);
  }
  EXPECT_NEAR(a.criterion, b.criterion, 1e-10 * a.criterion);
}

TEST(Optimizer, NonEstimableCRaises) {
  // c outside the span of every candidate's information.
  const Grid g(0.5);
  std::vector<Eigen::MatrixXd> el;
  for (double x : g.axis()) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m.topLeftCorner(2, 2) = polynomial({x}, 1)[0];
    el.push_back(m);
  }
  Eigen::VectorXd c(3);
  c << 0.0, 0.0, 1.0;
  EXPECT_THROW(adt::multiplicative_weights(el, Criterion::c_optimal(c), {}), adt::ValidationError);
}

TEST(Designs, ProductAndMarginalize) {
  const MarginalDesign a{{0.0, 1.0}, {0.7, 0.3}};
  const MarginalDesign b{{0.0, 0.5, 1.0}, {0.2, 0.3, 0.5}};
  const Design p = adt::product_design(a, b);
  ASSERT_EQ(p.support.size(), 6u);
  EXPECT_NO_THROW(p.validate());
  EXPECT_TRUE(std::is_sorted(p.support.begin(), p.support.end()));
  const auto [ma, mb] = adt::marginalize(p);
  for (std::size_t i = 0; i < a.support.size(); ++i) EXPECT_NEAR(weight_at(ma, a.support[i]), a.weights[i], 1e-15);
  for (std::size_t i = 0; i < b.support.size(); ++i) EXPECT_NEAR(weight_at(mb, b.support[i]), b.weights[i], 1e-15);
}

TEST(Designs, EfficiencyBounds) {
  const Grid g(0.1);
  const auto el = polynomial(g.axis(), 2);
  const auto res = adt::optimize_design(g.axis(), el, Criterion::d_optimal(), 0.1);
  const adt::ElementalFn<double> fn = [](const double& x) { return polynomial({x}, 2)[0]; };
  EXPECT_NEAR(adt::efficiency(res.design, res.design, Criterion::d_optimal(), fn), 1.0, 1e-15);
  MarginalDesign uniform;
  for (double x : g.axis()) {
    uniform.support.push_back(x);
    uniform.weights.push_back(1.0 / g.axis().size());
  }
  const double e = adt::efficiency(uniform, res.design, Criterion::d_optimal(), fn);
  EXPECT_GT(e, 0.0);
  EXPECT_LT(e, 1.0);
  const MarginalDesign one_point{{0.5}, {1.0}};
  EXPECT_EQ(adt::efficiency(one_point, res.design, Criterion::d_optimal(), fn), 0.0);
}

TEST(Sweep, ValuesAndErrors) {
  const auto rows = adt::sweep(0.0, 1.0, 5, [](double v) {
    if (v > 0.6) throw adt::NumericError("too large");
    return adt::SweepRow{};
  });
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_DOUBLE_EQ(rows[1].value, 0.25);
  EXPECT_TRUE(rows[2].error.empty());
  EXPECT_EQ(rows[3].error, "too large");
  EXPECT_EQ(adt::sweep(0.3, 0.3, 7, [](double) { return adt::SweepRow{}; }).size(), 1u);
  EXPECT_THROW(adt::sweep(0.0, 1.0, 0, [](double) { return adt::SweepRow{}; }), adt::ValidationError);
}
