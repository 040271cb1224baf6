#pragma once

#include "iuclab/quadrature.hpp"

namespace iuclab {

/// ln applied m times; m = 0 returns r unchanged.
/// Throws DomainError when an intermediate iterate is <= 0.
double iter_log(int m, double r);

/// exp applied m times; exact inverse of iter_log on its domain.
/// Throws OverflowError when the result leaves the representable range.
double iter_exp(int m, double r);

/// Parameters (k, m) of the iterated-log auxiliary pair together with the
/// branch threshold r_m = iter_exp(m, 1).
struct IteratedLogParams {
  double k = 1.0;
  int m = 1;
  double r_m = 2.718281828459045;

  static IteratedLogParams create(double k, int m);
};

/// Constants entering the ground-state log bound and the log-Sobolev
/// constant: dimension n, lower-bound coefficient d in (0,1], and the two
/// additive constants (free in the underlying estimates, fitted or
/// configured here).
struct RosenConstants {
  double d = 1.0;
  int n = 1;
  double c_gamma = 0.0;  // additive constant in gamma(eps)
  double c_beta = 0.0;   // additive constant in beta(eps)

  static RosenConstants create(double d, int n, double c_gamma = 0.0,
                               double c_beta = 0.0);
};

/// The clamped iterated-log power on [0, inf):
///   q/r_m for q < r_m, (ln^(m) q)^k for q >= r_m.
/// Continuous, strictly increasing, value 1 at the knot.
double log_power(const IteratedLogParams& p, double q);

/// Inverse of log_power: r_m*b for b < 1, iter_exp(m, b^(1/k)) for b >= 1.
double log_power_inverse(const IteratedLogParams& p, double b);

/// gamma(eps) = sqrt(2) * log_power_inverse(sqrt(2)/(d*eps)) + c_gamma.
/// Non-increasing in eps; overflows for tiny eps.
double rosen_gamma(const IteratedLogParams& p, const RosenConstants& rc,
                   double eps);

/// beta(eps) = eps/2 - (n/4) ln(eps/2) + gamma(eps/2) + c_beta.
double rosen_beta(const IteratedLogParams& p, const RosenConstants& rc,
                  double eps);

/// Linear exponent path p(s) = q1 + (q2 - q1) s/t on [0, t].
struct ExponentPath {
  double q1 = 1.0;
  double q2 = 2.0;
};

/// Accumulated log-Sobolev integral
///   N(s) = 2 * int_0^s beta(p(r)/p'(r)) / p(r)^2 * p'(r) dr
/// along the exponent path; N(0) = 0 and N is non-decreasing.
double gross_integral(const IteratedLogParams& p, const RosenConstants& rc,
                      double t, double s, const ExponentPath& path = {},
                      const QuadratureOptions& opt = {});

}  // namespace iuclab
