#include "iuclab/auxmath.hpp"

#include <cmath>
#include <string>

#include "iuclab/errors.hpp"

namespace iuclab {

double iter_log(int m, double r) {
  if (m < 0) throw DomainError("iter_log: m must be non-negative");
  double v = r;
  for (int j = 0; j < m; ++j) {
    if (v <= 0.0)
      throw DomainError("iter_log: iterate " + std::to_string(j) +
                        " is non-positive (" + std::to_string(v) + ")");
    v = std::log(v);
  }
  return v;
}

double iter_exp(int m, double r) {
  if (m < 0) throw DomainError("iter_exp: m must be non-negative");
  double v = r;
  for (int j = 0; j < m; ++j) {
    v = std::exp(v);
    if (std::isinf(v)) throw OverflowError("iter_exp: overflow at iterate " + std::to_string(j + 1));
  }
  return v;
}

IteratedLogParams IteratedLogParams::create(double k, int m) {
  if (!(k > 0.0)) throw DomainError("IteratedLogParams: k must be positive");
  if (m < 1) throw DomainError("IteratedLogParams: m must be >= 1");
  return {k, m, iter_exp(m, 1.0)};
}

RosenConstants RosenConstants::create(double d, int n, double c_gamma, double c_beta) {
  if (!(d > 0.0 && d <= 1.0)) throw DomainError("RosenConstants: d must lie in (0,1]");
  if (n < 1) throw DomainError("RosenConstants: dimension must be >= 1");
  if (!std::isfinite(c_gamma) || !std::isfinite(c_beta))
    throw DomainError("RosenConstants: additive constants must be finite");
  return {d, n, c_gamma, c_beta};
}

double log_power(const IteratedLogParams& p, double q) {
  if (q < 0.0) throw DomainError("log_power: argument must be non-negative");
  if (q < p.r_m) return q / p.r_m;
  return std::pow(iter_log(p.m, q), p.k);
}

double log_power_inverse(const IteratedLogParams& p, double b) {
  if (b < 0.0) throw DomainError("log_power_inverse: argument must be non-negative");
  if (b < 1.0) return p.r_m * b;
  return iter_exp(p.m, std::pow(b, 1.0 / p.k));
}

double rosen_gamma(const IteratedLogParams& p, const RosenConstants& rc, double eps) {
  if (!(eps > 0.0)) throw DomainError("rosen_gamma: eps must be positive");
  const double s2 = std::sqrt(2.0);
  return s2 * log_power_inverse(p, s2 / (rc.d * eps)) + rc.c_gamma;
}

double rosen_beta(const IteratedLogParams& p, const RosenConstants& rc, double eps) {
  if (!(eps > 0.0)) throw DomainError("rosen_beta: eps must be positive");
  return eps / 2.0 - rc.n / 4.0 * std::log(eps / 2.0) + rosen_gamma(p, rc, eps / 2.0) +
         rc.c_beta;
}

double gross_integral(const IteratedLogParams& p, const RosenConstants& rc,
                      double t, double s, const ExponentPath& path,
                      const QuadratureOptions& opt) {
  if (!(t > 0.0)) throw DomainError("gross_integral: t must be positive");
  if (s < 0.0 || s > t) throw DomainError("gross_integral: s must lie in [0, t]");
  if (!(path.q1 >= 1.0 && path.q2 > path.q1))
    throw DomainError("gross_integral: exponent path requires 1 <= q1 < q2");
  if (s == 0.0) return 0.0;
  const double dp = (path.q2 - path.q1) / t;  // p'(r), constant
  auto integrand = [&](double r) {
    const double pr = path.q1 + dp * r;
    return rosen_beta(p, rc, pr / dp) / (pr * pr) * dp;
  };
  return 2.0 * integrate(integrand, 0.0, s, opt);
}

}  // namespace iuclab
