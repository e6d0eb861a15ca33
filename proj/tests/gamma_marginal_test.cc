#include "adt/gamma_marginal.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "adt/error.h"

using adt::MarginalParams;
using adt::TimePlan;

TEST(TimePlan, Increments) {
  const TimePlan plan({0.02, 0.04, 0.06, 0.10});
  ASSERT_EQ(plan.size(), 4u);
  EXPECT_DOUBLE_EQ(plan.increments()[0], 0.02);
  EXPECT_NEAR(plan.increments()[3], 0.04, 1e-15);
  EXPECT_DOUBLE_EQ(plan.horizon(), 0.10);
  EXPECT_FALSE(plan.equidistant());
  EXPECT_TRUE(TimePlan({0.05, 0.10, 0.15, 0.20}).equidistant());
}

TEST(TimePlan, IncrementsSumToHorizon) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> step(1e-3, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> t;
    double now = 0.0;
    for (int j = 0; j < 1 + trial % 7; ++j) t.push_back(now += step(rng));
    const TimePlan plan(t);
    double sum = 0.0;
    for (double d : plan.increments()) {
      EXPECT_GT(d, 0.0);
      sum += d;
    }
    EXPECT_NEAR(sum, plan.horizon(), 1e-12);
  }
}

TEST(TimePlan, Rejects) {
  EXPECT_THROW(TimePlan({}), adt::ValidationError);
  EXPECT_THROW(TimePlan({0.0, 0.1}), adt::ValidationError);
  EXPECT_THROW(TimePlan({0.2, 0.1}), adt::ValidationError);
  EXPECT_THROW(TimePlan({0.1, 0.1}), adt::ValidationError);
  EXPECT_THROW(TimePlan({0.1, NAN}), adt::ValidationError);
}

TEST(MarginalParams, Validate) {
  EXPECT_NO_THROW((MarginalParams{0.3, 0.9, 1.17}.validate()));
  EXPECT_THROW((MarginalParams{0.3, 0.9, 0.0}.validate()), adt::ValidationError);
  EXPECT_THROW((MarginalParams{INFINITY, 0.9, 1.0}.validate()), adt::ValidationError);
}

TEST(Marginal, ShapeRateIsLogLinear) {
  const MarginalParams p{0.3, 0.9, 1.17};
  EXPECT_NEAR(adt::shape_rate(p, 0.0), std::exp(0.3), 1e-15);
  EXPECT_NEAR(adt::shape_rate(p, 1.0), std::exp(1.2), 1e-14);
  EXPECT_NEAR(std::log(adt::shape_rate(p, 0.7)) - std::log(adt::shape_rate(p, 0.2)), 0.45, 1e-14);
}

TEST(Marginal, IncrementMeanMatchesSimulation) {
  const MarginalParams p{0.8, 0.1, 1.15};
  const TimePlan plan({0.05, 0.10, 0.15, 0.20});
  std::mt19937_64 rng(17);
  for (std::size_t j = 0; j < plan.size(); ++j) {
    const auto d = adt::increment_dist(p, plan, 0.6, j);
    std::gamma_distribution<double> g(d.shape(), d.scale());
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double y = g(rng);
      sum += y;
      sq += y * y;
    }
    const double mean = sum / n;
    const double sd = std::sqrt(sq / n - mean * mean);
    EXPECT_NEAR(mean, adt::increment_mean(p, plan, 0.6, j), 5.0 * sd / std::sqrt(n));
  }
}
