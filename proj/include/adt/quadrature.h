#pragma once

/// @file quadrature.h
/// Composite Gauss-Legendre rules on an interval and on the unit square.

#include <functional>
#include <vector>

namespace adt {

/// Composite Gauss-Legendre rule: `panels` equal sub-intervals with
/// `nodes_per_axis` nodes each. Node and weight tables for [0, 1] are built
/// once at construction.
class QuadratureRule {
 public:
  /// @throws ValidationError if nodes_per_axis < 2 or panels < 1.
  explicit QuadratureRule(int nodes_per_axis = 48, int panels = 2);

  int nodes_per_axis() const { return nodes_; }
  int panels() const { return panels_; }

  /// Abscissae and weights of the composite rule on [0, 1], ascending.
  const std::vector<double>& unit_nodes() const { return x_; }
  const std::vector<double>& unit_weights() const { return w_; }

 private:
  int nodes_;
  int panels_;
  std::vector<double> x_;
  std::vector<double> w_;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// @throws NumericError naming the node if f returns NaN.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    const QuadratureRule& rule);

/// Tensor-product rule on (0, 1)^2.
/// @throws NumericError naming the node if f returns NaN.
double integrate_unit_square(const std::function<double(double, double)>& f,
                             const QuadratureRule& rule);

}  // namespace adt
