#include "iuclab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "iuclab/csv.hpp"
#include "iuclab/errors.hpp"

namespace iuclab {

EnvelopeSpec EnvelopeSpec::power(double alpha, double c) {
  if (alpha < 0.0) throw DomainError("EnvelopeSpec: alpha must be non-negative");
  if (c < 0.0) throw DomainError("EnvelopeSpec: offset c must be non-negative");
  if (c == 0.0 && alpha == 0.0) throw DomainError("EnvelopeSpec: Q must be positive");
  EnvelopeSpec e;
  e.family = EnvelopeFamily::Power;
  e.alpha = alpha;
  e.c = c;
  return e;
}

EnvelopeSpec EnvelopeSpec::power_log(int depth, double exponent, double c) {
  if (depth < 1) throw DomainError("EnvelopeSpec: log depth must be >= 1");
  if (!(exponent > 0.0)) throw DomainError("EnvelopeSpec: log exponent must be positive");
  if (c < 0.0) throw DomainError("EnvelopeSpec: offset c must be non-negative");
  EnvelopeSpec e;
  e.family = EnvelopeFamily::PowerLog;
  e.log_depth = depth;
  e.log_exponent = exponent;
  e.c = c;
  return e;
}

EnvelopeSpec EnvelopeSpec::table(std::vector<double> r, std::vector<double> q) {
  if (r.size() != q.size() || r.size() < 1)
    throw DomainError("EnvelopeSpec: table needs matching non-empty samples");
  for (size_t i = 0; i < r.size(); ++i) {
    if (q[i] <= 0.0) throw DomainError("EnvelopeSpec: table values must be positive");
    if (i > 0 && r[i] <= r[i - 1])
      throw DomainError("EnvelopeSpec: table radii must be strictly increasing");
  }
  EnvelopeSpec e;
  e.family = EnvelopeFamily::Table;
  e.table_r = std::move(r);
  e.table_q = std::move(q);
  return e;
}

double EnvelopeSpec::operator()(double r) const {
  switch (family) {
    case EnvelopeFamily::Power:
      return std::pow(r, alpha) + c;
    case EnvelopeFamily::PowerLog: {
      const double r0 = iter_exp(log_depth, 1.0);
      const double f = iter_log(log_depth, std::max(r, r0));
      return r * r * std::pow(f, log_exponent) + c;
    }
    case EnvelopeFamily::Table: {
      if (r <= table_r.front()) return table_q.front();
      if (r >= table_r.back()) return table_q.back();
      auto it = std::upper_bound(table_r.begin(), table_r.end(), r);
      size_t i = static_cast<size_t>(it - table_r.begin());
      double w = (r - table_r[i - 1]) / (table_r[i] - table_r[i - 1]);
      return table_q[i - 1] + w * (table_q[i] - table_q[i - 1]);
    }
  }
  throw DomainError("EnvelopeSpec: unknown family");
}

double envelope_integral(const EnvelopeSpec& e, double r, const QuadratureOptions& opt) {
  if (r < 0.0) throw DomainError("envelope_integral: radius must be non-negative");
  if (r == 0.0) return 0.0;
  if (e.family == EnvelopeFamily::Power && e.c == 0.0)
    return std::pow(r, e.alpha / 2.0 + 1.0) / (e.alpha / 2.0 + 1.0);
  if (e.family == EnvelopeFamily::Power && e.alpha == 0.0)
    return std::sqrt(1.0 + e.c) * r;
  if (e.family == EnvelopeFamily::Table && e.table_q.size() == 1)
    return std::sqrt(e.table_q.front()) * r;
  return integrate([&e](double t) { return std::sqrt(e(t)); }, 0.0, r, opt);
}

std::vector<double> envelope_integral_grid(const EnvelopeSpec& e,
                                           std::span<const double> r_grid,
                                           const QuadratureOptions& opt) {
  std::vector<double> out(r_grid.size());
  double acc = r_grid.empty() ? 0.0 : envelope_integral(e, r_grid[0], opt);
  for (size_t i = 0; i < r_grid.size(); ++i) {
    if (i > 0)
      acc += integrate([&e](double t) { return std::sqrt(e(t)); }, r_grid[i - 1],
                       r_grid[i], opt);
    out[i] = acc;
  }
  return out;
}

PotentialSpec PotentialSpec::radial(EnvelopeSpec env, IteratedLogParams p, double d) {
  if (!(d > 0.0 && d <= 1.0)) throw DomainError("PotentialSpec: d must lie in (0,1]");
  PotentialSpec spec;
  spec.envelope = env;
  spec.params = p;
  spec.d = d;
  spec.q = [env](std::span<const double> x) {
    double r2 = 0.0;
    for (double xi : x) r2 += xi * xi;
    return env(std::sqrt(r2));
  };
  return spec;
}

namespace {

double lower_from_integral(const PotentialSpec& spec, double integral) {
  return spec.d * integral * std::pow(iter_log(spec.params.m, integral), spec.params.k);
}

std::vector<std::vector<double>> sphere_points(int dim, double r, int samples) {
  std::vector<std::vector<double>> pts;
  if (dim == 1) {
    pts.push_back({r});
    pts.push_back({-r});
  } else if (dim == 2) {
    for (int i = 0; i < samples; ++i) {
      double a = 2.0 * std::numbers::pi * i / samples;
      pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
  } else {
    // Fibonacci lattice on the sphere
    const double ga = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < samples; ++i) {
      double z = 1.0 - 2.0 * (i + 0.5) / samples;
      double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      double a = ga * i;
      pts.push_back({r * rho * std::cos(a), r * rho * std::sin(a), r * z});
    }
  }
  return pts;
}

}  // namespace

double lower_envelope(const PotentialSpec& spec, double r) {
  return lower_from_integral(spec, envelope_integral(spec.envelope, r));
}

double legacy_lower_bound(const PotentialSpec& spec, double r) {
  const double integral = envelope_integral(spec.envelope, r);
  double value = lower_from_integral(spec, integral);
  for (int p = 0; p < spec.params.m; ++p) {
    double factor = iter_log(p, integral);
    if (factor <= 0.0)
      throw DomainError("legacy_lower_bound: non-positive product factor");
    value *= factor;
  }
  return value;
}

AdmissibilityReport check_admissibility(const PotentialSpec& spec, int dim,
                                        std::span<const double> r_grid,
                                        double tail_tol, int sphere_samples) {
  if (r_grid.size() < 8)
    throw DomainError("check_admissibility: grid too small to be meaningful");
  AdmissibilityReport rep;
  const auto& Q = spec.envelope;
  const size_t n = r_grid.size();

  std::vector<double> qv(n), integral = envelope_integral_grid(Q, r_grid);
  for (size_t i = 0; i < n; ++i) qv[i] = Q(r_grid[i]);

  // condition i: monotone increasing with r^2 < Q(r)
  rep.condition_i = true;
  for (size_t i = 0; i < n; ++i) {
    bool ok = r_grid[i] * r_grid[i] < qv[i] && (i == 0 || qv[i] >= qv[i - 1]);
    if (!ok) {
      rep.condition_i = false;
      rep.condition_i_witness = r_grid[i];
      break;
    }
  }

  // condition ii: Q'(r) Q(r)^(-3/2) -> 0, tested as a finite tail criterion
  std::vector<double> decay(n, 0.0);
  for (size_t i = 1; i + 1 < n; ++i) {
    double dq = (qv[i + 1] - qv[i - 1]) / (r_grid[i + 1] - r_grid[i - 1]);
    decay[i] = dq * std::pow(qv[i], -1.5);
  }
  size_t tail_begin = n - n / 3;
  rep.condition_ii = true;
  for (size_t i = tail_begin; i + 1 < n; ++i) {
    rep.condition_ii_tail.push_back(decay[i]);
    if (decay[i] >= tail_tol) rep.condition_ii = false;
    if (i > tail_begin && decay[i] > decay[i - 1] * (1.0 + 1e-6) + 1e-15)
      rep.condition_ii = false;
  }

  // condition iii: r^2 < I (ln^(m) I)^k < Q from some R_m to the grid end
  std::vector<char> ok3(n, 0);
  std::vector<double> mid(n, std::numeric_limits<double>::quiet_NaN());
  for (size_t i = 0; i < n; ++i) {
    try {
      mid[i] = integral[i] *
               std::pow(iter_log(spec.params.m, integral[i]), spec.params.k);
    } catch (const DomainError&) {
      continue;  // iterated log undefined: the sandwich cannot hold here
    }
    ok3[i] = r_grid[i] * r_grid[i] < mid[i] && mid[i] < qv[i];
  }
  size_t first_good = n;
  for (size_t i = n; i-- > 0;) {
    if (!ok3[i]) break;
    first_good = i;
  }
  size_t min_tail = std::max<size_t>(3, n / 10);
  if (first_good + min_tail <= n) {
    rep.condition_iii = true;
    rep.located_radius = r_grid[first_good];
  } else {
    rep.condition_iii = false;
    size_t last_bad = n - 1;
    while (last_bad > 0 && ok3[last_bad]) --last_bad;
    rep.condition_iii_witness = r_grid[last_bad];
  }

  // q sandwiched between the lower envelope and Q on spheres beyond R_m
  rep.q_sandwich = rep.condition_iii;
  std::vector<double> qmin(n, 0.0), qmax(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& pt : sphere_points(dim, r_grid[i], sphere_samples)) {
      double v = spec.q(pt);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    qmin[i] = lo;
    qmax[i] = hi;
    if (rep.condition_iii && r_grid[i] > rep.located_radius) {
      double low = spec.d * mid[i];
      double slack = 1e-12 * std::max(1.0, qv[i]);
      if (!(low <= qmin[i] + slack && qmax[i] <= qv[i] + slack))
        rep.q_sandwich = false;
    }
  }

  // comparison against the product-form lower bound on the valid tail
  for (size_t i = first_good; i < n; ++i) {
    if (integral[i] < spec.params.r_m) continue;
    try {
      double legacy = legacy_lower_bound(spec, r_grid[i]);
      rep.legacy_comparison.emplace_back(r_grid[i], spec.d * mid[i] / legacy);
    } catch (const DomainError&) {
    }
  }

  rep.rows.reserve(n);
  for (size_t i = 0; i < n; ++i)
    rep.rows.push_back({r_grid[i], qv[i], integral[i],
                        std::isnan(mid[i]) ? mid[i] : spec.d * mid[i], qmin[i],
                        qmax[i], ok3[i] != 0});
  return rep;
}

void write_csv(const AdmissibilityReport& report, std::ostream& os) {
  csv_row(os, {"r", "Q", "I", "lower", "q_min_on_sphere", "q_max_on_sphere", "cond_iii"});
  for (const auto& row : report.rows)
    csv_row(os, {fmt17(row.r), fmt17(row.envelope_q), fmt17(row.integral),
                 fmt17(row.lower), fmt17(row.q_min_on_sphere),
                 fmt17(row.q_max_on_sphere), row.sandwich_ok ? "1" : "0"});
}

}  // namespace iuclab
