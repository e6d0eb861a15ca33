#include "adt/quadrature.h"

#include <cmath>
#include <numbers>
#include <string>

#include "adt/error.h"

namespace adt {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi's initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

QuadratureRule::QuadratureRule(int nodes_per_axis, int panels)
    : nodes_(nodes_per_axis), panels_(panels) {
  if (nodes_ < 2) throw ValidationError("quadrature: nodes_per_axis must be at least 2");
  if (panels_ < 1) throw ValidationError("quadrature: panels must be at least 1");
  std::vector<double> gx, gw;
  gauss_legendre(nodes_, gx, gw);
  const double h = 1.0 / panels_;
  x_.reserve(static_cast<std::size_t>(nodes_) * panels_);
  w_.reserve(x_.capacity());
  for (int p = 0; p < panels_; ++p) {
    const double mid = (p + 0.5) * h;
    for (int i = 0; i < nodes_; ++i) {
      x_.push_back(mid + 0.5 * h * gx[i]);
      w_.push_back(0.5 * h * gw[i]);
    }
  }
}

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    const QuadratureRule& rule) {
  const auto& x = rule.unit_nodes();
  const auto& w = rule.unit_weights();
  const double len = b - a;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = a + len * x[i];
    const double v = f(t);
    if (std::isnan(v)) throw NumericError("integrate_1d: integrand is NaN at " + std::to_string(t));
    sum += w[i] * v;
  }
  return sum * len;
}

double integrate_unit_square(const std::function<double(double, double)>& f,
                             const QuadratureRule& rule) {
  const auto& x = rule.unit_nodes();
  const auto& w = rule.unit_weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double v = f(x[i], x[j]);
      if (std::isnan(v)) {
        throw NumericError("integrate_unit_square: integrand is NaN at (" + std::to_string(x[i]) +
                           ", " + std::to_string(x[j]) + ")");
      }
      row += w[j] * v;
    }
    sum += w[i] * row;
  }
  return sum;
}

}  // namespace adt
