#pragma once

/// @file copula.h
/// Bivariate copulas used to couple the two degradation components.

#include <string>
#include <variant>

namespace adt {

struct Independence {};

/// Frank copula with dependence parameter kappa != 0.
struct Frank {
  double kappa;
};

/// Gaussian copula with correlation rho, |rho| < 1.
struct Gaussian {
  double rho;
};

/// Tagged copula choice; construct through the factories, which validate
/// the parameter.
class CopulaSpec {
 public:
  using Kind = std::variant<Independence, Frank, Gaussian>;

  CopulaSpec() = default;
  static CopulaSpec independence();
  /// @throws ValidationError if kappa is zero or not finite.
  static CopulaSpec frank(double kappa);
  /// @throws ValidationError unless |rho| < 1.
  static CopulaSpec gaussian(double rho);

  const Kind& kind() const { return kind_; }
  bool is_independence() const { return std::holds_alternative<Independence>(kind_); }
  std::string describe() const;

 private:
  explicit CopulaSpec(Kind k) : kind_(k) {}
  Kind kind_{Independence{}};
};

// Arguments of the evaluators below are clamped to [1e-12, 1 - 1e-12]
// (density and its partials) or [0, 1] (cdf and conditional cdf).

double cdf(const CopulaSpec& spec, double r, double s);
double density(const CopulaSpec& spec, double r, double s);
/// dc/dr
double density_dr(const CopulaSpec& spec, double r, double s);
/// dc/ds = density_dr(spec, s, r)
double density_ds(const CopulaSpec& spec, double r, double s);
/// dC/dr, the conditional distribution of the second coordinate given r.
double cdf_dr(const CopulaSpec& spec, double r, double s);
/// dC/ds = cdf_dr(spec, s, r)
double cdf_ds(const CopulaSpec& spec, double r, double s);

double std_normal_cdf(double x);
double std_normal_pdf(double x);
/// @throws DomainError unless 0 < u < 1.
double std_normal_quantile(double u);

}  // namespace adt
