#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "iuclab/auxmath.hpp"
#include "iuclab/quadrature.hpp"

namespace iuclab {

enum class EnvelopeFamily { Power, PowerLog, Table };

/// Radial envelope Q: [0,inf) -> (0,inf), monotone increasing.
///
/// Power:    Q(r) = r^alpha + c
/// PowerLog: Q(r) = r^2 * (ln^(log_depth) max(r, r0))^log_exponent + c,
///           r0 = iter_exp(log_depth, 1), so the log factor is clamped at 1
///           below r0 and the family stays positive and monotone on [0,inf).
/// Table:    piecewise-linear interpolation of (table_r, table_q), constant
///           extrapolation beyond the last sample.
struct EnvelopeSpec {
  EnvelopeFamily family = EnvelopeFamily::Power;
  double alpha = 2.0;
  double c = 1.0;
  int log_depth = 1;        // n0 in the power-log family
  double log_exponent = 1;  // l in the power-log family
  std::vector<double> table_r, table_q;

  double operator()(double r) const;

  static EnvelopeSpec power(double alpha, double c = 1.0);
  static EnvelopeSpec power_log(int depth, double exponent, double c = 1.0);
  static EnvelopeSpec table(std::vector<double> r, std::vector<double> q);
};

/// I(r) = int_0^r Q(t)^(1/2) dt. Closed forms where the family admits them,
/// adaptive quadrature (rel_tol 1e-9) otherwise.
double envelope_integral(const EnvelopeSpec& e, double r,
                         const QuadratureOptions& opt = {.rel_tol = 1e-9});

/// Cumulative I on an increasing grid (segment-by-segment quadrature).
std::vector<double> envelope_integral_grid(const EnvelopeSpec& e,
                                           std::span<const double> r_grid,
                                           const QuadratureOptions& opt = {.rel_tol = 1e-9});

/// A potential q on R^n together with its envelope and the parameters of the
/// two-sided growth sandwich
///   d * I(|x|) * (ln^(m) I(|x|))^k <= q(x) <= Q(|x|)   for |x| > R_m.
struct PotentialSpec {
  std::function<double(std::span<const double>)> q;
  EnvelopeSpec envelope;
  IteratedLogParams params;
  double d = 1.0;
  double admissibility_radius = 0.0;  // R_m, configured or found

  /// Radial potential q(x) = Q(|x|).
  static PotentialSpec radial(EnvelopeSpec env, IteratedLogParams p, double d = 1.0);

  double eval(std::span<const double> x) const { return q(x); }
};

/// d * I(r) * (ln^(m) I(r))^k. Throws DomainError when the iterated log is
/// undefined at I(r).
double lower_envelope(const PotentialSpec& spec, double r);

/// The older product-form lower bound
///   d * I(r) * (ln^(m) I(r))^k * prod_{p=0}^{m-1} ln^(p)(I(r));
/// kept for comparison only.
double legacy_lower_bound(const PotentialSpec& spec, double r);

struct AdmissibilityRow {
  double r, envelope_q, integral, lower, q_min_on_sphere, q_max_on_sphere;
  bool sandwich_ok;  // r^2 < I (ln^(m) I)^k < Q at this radius
};

struct AdmissibilityReport {
  bool condition_i = false;   // Q monotone increasing and r^2 < Q(r) on the grid
  double condition_i_witness = 0.0;  // first violating radius when failed
  bool condition_ii = false;  // Q'Q^(-3/2) below tail_tol and decreasing on the tail
  std::vector<double> condition_ii_tail;  // sampled Q'Q^(-3/2) on the final third
  bool condition_iii = false;  // sandwich holds from located_radius to the grid end
  double located_radius = 0.0;         // R_m when found
  double condition_iii_witness = 0.0;  // last violating radius when failed
  bool q_sandwich = false;  // lower <= q <= Q sampled on spheres beyond R_m
  std::vector<std::pair<double, double>> legacy_comparison;  // (r, new/legacy)
  std::vector<AdmissibilityRow> rows;

  bool admissible() const {
    return condition_i && condition_ii && condition_iii && q_sandwich;
  }
};

/// Verifies the three envelope conditions and the q-sandwich on the given
/// increasing radius grid. Failure is a result, not an exception; only
/// quadrature failures throw.
AdmissibilityReport check_admissibility(const PotentialSpec& spec, int dim,
                                        std::span<const double> r_grid,
                                        double tail_tol,
                                        int sphere_samples = 16);

void write_csv(const AdmissibilityReport& report, std::ostream& os);

}  // namespace iuclab
