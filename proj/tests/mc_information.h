#pragma once

// Monte Carlo estimate of the Fisher information of the copula model: the
// sample covariance of the score, with the score written out directly from
// the joint log-density and the observations drawn by conditional
// inversion of the copula.

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "adt/copula.h"
#include "adt/gamma_marginal.h"
#include "adt/specfun.h"
#include "oracles.h"

namespace oracle {

// Score of one observation vector with respect to (int1, slope1, int2,
// slope2), computed directly from the joint log-density
//   sum_j ln f1(y1j) + ln f2(y2j) + ln c(F1(y1j), F2(y2j)).
// dF/dgamma is a central difference of the distribution function.
inline std::vector<double> score(const adt::BivariateModel& m, const adt::CopulaSpec& cop, double x1,
                                 double x2, const std::vector<double>& y1,
                                 const std::vector<double>& y2) {
  const double g1 = adt::shape_rate(m.components[0], x1);
  const double g2 = adt::shape_rate(m.components[1], x2);
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t j = 0; j < y1.size(); ++j) {
    const double d = m.plan.increments()[j];
    const auto cdf = [&](int l, double g, double y) {
      return adt::specfun::gamma_cdf(y, adt::specfun::GammaShapeScale(g * d, m.components[l].scale));
    };
    const double u = cdf(0, g1, y1[j]), v = cdf(1, g2, y2[j]);
    const double c = adt::density(cop, u, v);
    const double du = oracle::central_diff([&](double g) { return cdf(0, g, y1[j]); }, g1, 1e-6 * g1);
    const double dv = oracle::central_diff([&](double g) { return cdf(1, g, y2[j]); }, g2, 1e-6 * g2);
    s1 += d * (std::log(y1[j] / m.components[0].scale) - adt::specfun::digamma(g1 * d)) +
          adt::density_dr(cop, u, v) / c * du;
    s2 += d * (std::log(y2[j] / m.components[1].scale) - adt::specfun::digamma(g2 * d)) +
          adt::density_ds(cop, u, v) / c * dv;
  }
  return {g1 * s1, g1 * x1 * s1, g2 * s2, g2 * x2 * s2};
}

// Draws (u, v) from the copula by inverting the conditional distribution.
inline std::pair<double, double> draw(const adt::CopulaSpec& cop, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(1e-12, 1.0 - 1e-12);
  const double u = unif(rng), w = unif(rng);
  const double v = oracle::bisect([&](double t) { return adt::cdf_dr(cop, u, t) - w; }, 0.0, 1.0, 60);
  return {u, std::clamp(v, 1e-12, 1.0 - 1e-12)};
}

struct McResult {
  Eigen::Matrix4d info;
  Eigen::Matrix4d se;
};

inline McResult mc_information(const adt::BivariateModel& m, const adt::CopulaSpec& cop, double x1,
                               double x2, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  const std::size_t k = m.plan.size();
  // Accumulate the outer products and their squares to estimate standard errors.
  Eigen::Matrix4d sum = Eigen::Matrix4d::Zero(), sq = Eigen::Matrix4d::Zero();
  for (int i = 0; i < n; ++i) {
    std::vector<double> y1(k), y2(k);
    for (std::size_t j = 0; j < k; ++j) {
      const auto [u, v] = draw(cop, rng);
      y1[j] = adt::specfun::gamma_quantile(u, adt::increment_dist(m.components[0], m.plan, x1, j));
      y2[j] = adt::specfun::gamma_quantile(v, adt::increment_dist(m.components[1], m.plan, x2, j));
    }
    const auto s = score(m, cop, x1, x2, y1, y2);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const double p = s[a] * s[b];
        sum(a, b) += p;
        sq(a, b) += p * p;
      }
    }
  }
  McResult r;
  r.info = sum / n;
  r.se = ((sq / n - r.info.cwiseProduct(r.info)) / n).cwiseSqrt();
  return r;
}

}  // namespace oracle
