#pragma once

/// @file specfun.h
/// Gamma-family special functions and the shape derivatives of the Gamma
/// density and distribution function.

namespace adt::specfun {

/// Shape/scale pair of a Gamma distribution.
///
/// For a process increment over an interval of length delta the shape is
/// rate * delta; callers that differentiate with respect to the rate pass
/// delta separately (see gamma_cdf_dshape).
class GammaShapeScale {
 public:
  /// @throws DomainError unless shape > 0 and scale > 0.
  GammaShapeScale(double shape, double scale);

  double shape() const { return shape_; }
  double scale() const { return scale_; }

 private:
  double shape_;
  double scale_;
};

double log_gamma(double z);
double digamma(double z);
double trigamma(double z);

/// Regularized lower incomplete gamma P(s, z).
double reg_gamma_p(double s, double z);
/// Regularized upper incomplete gamma Q(s, z) = 1 - P(s, z).
double reg_gamma_q(double s, double z);

/// dP(s, z)/ds.
///
/// For z <= 5 this evaluates the closed form
///   (ln z - psi(s)) P(s, z) - z^s Gamma(s) 2F2~(s, s; s+1, s+1; -z)
/// with the regularized hypergeometric function summed as an alternating
/// series. For larger z the alternating series cancels badly, so the
/// derivative of the positive-term series
///   P(s, z) = z^s e^-z / Gamma(s) * sum_n z^n / (s (s+1) ... (s+n))
/// is used instead. Beyond the point where P(s, z) rounds to 1 the result is 0.
///
/// @throws NumericError if a series fails to converge in 10000 terms.
double reg_gamma_p_dshape(double s, double z);

/// dQ(s, z)/ds = -dP(s, z)/ds. Positive for z > 0: a larger shape moves
/// mass into the upper tail.
double reg_gamma_q_dshape(double s, double z);

double gamma_pdf(double y, const GammaShapeScale& p);
double gamma_cdf(double y, const GammaShapeScale& p);

/// Inverse of gamma_cdf; |gamma_cdf(y) - u| <= 1e-12.
/// @throws DomainError unless 0 < u < 1.
double gamma_quantile(double u, const GammaShapeScale& p);

/// Derivative of the Gamma density at y with respect to the rate gamma when
/// shape = gamma * delta: f(y) * delta * (ln(y / scale) - psi(shape)).
double gamma_pdf_dshape(double y, const GammaShapeScale& p, double delta);

/// Derivative of the Gamma distribution function at y with respect to the
/// rate gamma when shape = gamma * delta: delta * dP(shape, y / scale)/ds.
double gamma_cdf_dshape(double y, const GammaShapeScale& p, double delta);

}  // namespace adt::specfun
