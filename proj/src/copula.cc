#include "adt/copula.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "adt/error.h"
#include "adt/quadrature.h"

namespace adt {

namespace {

constexpr double kClampLo = 1e-12;
constexpr double kClampHi = 1.0 - 1e-12;

double clamp_open(double u) { return std::clamp(u, kClampLo, kClampHi); }

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

// Frank copula, written with em1(t) = expm1(-kappa t) so that small kappa
// keeps full precision.
struct FrankTerms {
  double k, d, a, b, er, es;
  FrankTerms(double kappa, double r, double s)
      : k(kappa),
        d(std::expm1(-kappa)),
        a(std::expm1(-kappa * r)),
        b(std::expm1(-kappa * s)),
        er(std::exp(-kappa * r)),
        es(std::exp(-kappa * s)) {}
};

double frank_cdf(double kappa, double r, double s) {
  const FrankTerms f(kappa, r, s);
  return -std::log1p(f.a * f.b / f.d) / kappa;
}

double frank_density(double kappa, double r, double s) {
  const FrankTerms f(kappa, r, s);
  const double den = f.d + f.a * f.b;
  return -kappa * f.d * f.er * f.es / (den * den);
}

double frank_density_dr(double kappa, double r, double s) {
  const FrankTerms f(kappa, r, s);
  const double den = f.d + f.a * f.b;
  return kappa * kappa * f.d * f.er * f.es * (f.d - f.b * (1.0 + f.er)) / (den * den * den);
}

double frank_cdf_dr(double kappa, double r, double s) {
  const FrankTerms f(kappa, r, s);
  return f.er * f.b / (f.d + f.a * f.b);
}

double gauss_density(double rho, double r, double s) {
  const double a = std_normal_quantile(r);
  const double b = std_normal_quantile(s);
  const double one_m = 1.0 - rho * rho;
  return std::exp(-(rho * rho * (a * a + b * b) - 2.0 * rho * a * b) / (2.0 * one_m)) /
         std::sqrt(one_m);
}

double gauss_density_dr(double rho, double r, double s) {
  const double a = std_normal_quantile(r);
  const double b = std_normal_quantile(s);
  return rho / (1.0 - rho * rho) * gauss_density(rho, r, s) * (b - rho * a) / std_normal_pdf(a);
}

double gauss_cdf_dr_z(double rho, double a, double b) {
  return std_normal_cdf((b - rho * a) / std::sqrt(1.0 - rho * rho));
}

double gauss_cdf(double rho, double r, double s) {
  // C(r, s) = int_{-inf}^{a} Phi((b - rho z) / sqrt(1 - rho^2)) phi(z) dz
  static const QuadratureRule rule(24, 12);
  const double a = std_normal_quantile(clamp_open(r));
  const double b = std_normal_quantile(clamp_open(s));
  const double lower = std::min(-10.0, a - 1.0);
  return integrate_1d(
      [&](double z) { return gauss_cdf_dr_z(rho, z, b) * std_normal_pdf(z); }, lower, a, rule);
}

}  // namespace

CopulaSpec CopulaSpec::independence() { return CopulaSpec(Independence{}); }

CopulaSpec CopulaSpec::frank(double kappa) {
  if (!std::isfinite(kappa) || kappa == 0.0) {
    throw ValidationError("Frank copula: kappa must be finite and nonzero");
  }
  return CopulaSpec(Frank{kappa});
}

CopulaSpec CopulaSpec::gaussian(double rho) {
  if (!(std::fabs(rho) < 1.0)) {
    throw ValidationError("Gaussian copula: rho must satisfy |rho| < 1");
  }
  return CopulaSpec(Gaussian{rho});
}

std::string CopulaSpec::describe() const {
  const auto shortest = [](double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  return std::visit(
      Overloaded{[&](const Independence&) { return std::string("independence"); },
                 [&](const Frank& f) { return "frank(kappa=" + shortest(f.kappa) + ")"; },
                 [&](const Gaussian& g) { return "gaussian(rho=" + shortest(g.rho) + ")"; }},
      kind_);
}

double cdf(const CopulaSpec& spec, double r, double s) {
  r = std::clamp(r, 0.0, 1.0);
  s = std::clamp(s, 0.0, 1.0);
  if (r == 0.0 || s == 0.0) return 0.0;
  if (r == 1.0) return s;
  if (s == 1.0) return r;
  return std::visit(Overloaded{[&](const Independence&) { return r * s; },
                               [&](const Frank& f) { return frank_cdf(f.kappa, r, s); },
                               [&](const Gaussian& g) { return gauss_cdf(g.rho, r, s); }},
                    spec.kind());
}

double density(const CopulaSpec& spec, double r, double s) {
  r = clamp_open(r);
  s = clamp_open(s);
  return std::visit(Overloaded{[&](const Independence&) { return 1.0; },
                               [&](const Frank& f) { return frank_density(f.kappa, r, s); },
                               [&](const Gaussian& g) { return gauss_density(g.rho, r, s); }},
                    spec.kind());
}

double density_dr(const CopulaSpec& spec, double r, double s) {
  r = clamp_open(r);
  s = clamp_open(s);
  return std::visit(Overloaded{[&](const Independence&) { return 0.0; },
                               [&](const Frank& f) { return frank_density_dr(f.kappa, r, s); },
                               [&](const Gaussian& g) { return gauss_density_dr(g.rho, r, s); }},
                    spec.kind());
}

double density_ds(const CopulaSpec& spec, double r, double s) { return density_dr(spec, s, r); }

double cdf_dr(const CopulaSpec& spec, double r, double s) {
  r = std::clamp(r, 0.0, 1.0);
  s = std::clamp(s, 0.0, 1.0);
  if (s == 0.0) return 0.0;
  if (s == 1.0) return 1.0;
  return std::visit(
      Overloaded{[&](const Independence&) { return s; },
                 [&](const Frank& f) { return frank_cdf_dr(f.kappa, r, s); },
                 [&](const Gaussian& g) {
                   return gauss_cdf_dr_z(g.rho, std_normal_quantile(clamp_open(r)),
                                         std_normal_quantile(s));
                 }},
      spec.kind());
}

double cdf_ds(const CopulaSpec& spec, double r, double s) { return cdf_dr(spec, s, r); }

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double std_normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("std_normal_quantile: u must lie in (0,1)");
  // Wichura's AS241 (PPND16), followed by one Newton step on the lower tail.
  const double q = u - 0.5;
  double x;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    x = q *
        (((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) *
                 r +
             45921.953931549871457) *
                r +
            13731.693765509461125) *
               r +
           1971.5909503065514427) *
              r +
          133.14166789178437745) *
             r +
         3.387132872796366608) /
        (((((((5226.495278852545925 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
             21213.794301586595867) *
                r +
            5394.1960214247511077) *
               r +
           687.1870074920579083) *
              r +
          42.313330701600911252) *
             r +
         1.0);
  } else {
    double r = std::sqrt(-std::log(q < 0.0 ? u : 1.0 - u));
    if (r <= 5.0) {
      r -= 1.6;
      x = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
                0.24178072517745061177) *
                   r +
               1.27045825245236838258) *
                  r +
              3.64784832476320460504) *
                 r +
             5.7694972214606914055) *
                r +
            4.6303378461565452959) *
               r +
           1.42343711074968357734) /
          (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
                0.0151986665636164571966) *
                   r +
               0.14810397642748007459) *
                  r +
              0.68976733498510000455) *
                 r +
             1.6763848301838038494) *
                r +
            2.05319162663775882187) *
               r +
           1.0);
    } else {
      r -= 5.0;
      x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                0.0012426609473880784386) *
                   r +
               0.026532189526576123093) *
                  r +
              0.29656057182850489123) *
                 r +
             1.7848265399172913358) *
                r +
            5.4637849111641143699) *
               r +
           6.6579046435011037772) /
          (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
                1.8463183175100546818e-5) *
                   r +
               7.868691311456132591e-4) *
                  r +
              0.0148753612908506148525) *
                 r +
             0.13692988092273580531) *
                r +
            0.59983220655588793769) *
               r +
           1.0);
    }
    if (q < 0.0) x = -x;
  }
  const double p = std::min(u, 1.0 - u);
  const double xl = q < 0.0 ? x : -x;
  const double dens = std_normal_pdf(xl);
  if (dens > 0.0) {
    const double refined = xl - (std_normal_cdf(xl) - p) / dens;
    x = q < 0.0 ? refined : -refined;
  }
  return x;
}

}  // namespace adt
