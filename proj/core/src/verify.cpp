#include "iuclab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "iuclab/csv.hpp"
#include "iuclab/errors.hpp"

namespace iuclab {

std::vector<char> window_mask(const Grid& grid, const Eigen::VectorXd& phi,
                              const Window& win) {
  const std::int64_t n = grid.interior_count();
  std::vector<char> mask(static_cast<size_t>(n), 1);
  switch (win.kind) {
    case Window::Kind::Full:
      break;
    case Window::Kind::Margin: {
      const double cut = grid.half_width - win.value + 1e-12;
      for (std::int64_t i = 0; i < n; ++i) {
        auto x = grid.coords(i);
        double sup = 0.0;
        for (int a = 0; a < grid.dim; ++a) sup = std::max(sup, std::abs(x[a]));
        mask[static_cast<size_t>(i)] = sup <= cut;
      }
      break;
    }
    case Window::Kind::PhiFraction: {
      const double cut = win.value * phi.maxCoeff();
      for (std::int64_t i = 0; i < n; ++i)
        mask[static_cast<size_t>(i)] = phi(i) >= cut;
      break;
    }
  }
  return mask;
}

double iuc_constant(const SpectralPropagator& p, const WeightedSpace& w, double t,
                    const KernelOptions& opt, const Window& win) {
  Eigen::MatrixXd kt = weighted_kernel(p, w, t, opt);
  auto mask = window_mask(p.grid, w.phi, win);
  double sup = -std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < kt.rows(); ++i) {
    if (!mask[static_cast<size_t>(i)]) continue;
    for (std::int64_t j = 0; j < kt.cols(); ++j) {
      if (!mask[static_cast<size_t>(j)]) continue;
      sup = std::max(sup, kt(i, j));
    }
  }
  return sup / w.normalization;  // k~ = Z k/(phi phi), so divide Z back out
}

VerificationReport iuc_stability_study(const PotentialSpec& spec,
                                       const StabilityProtocol& protocol) {
  VerificationReport rep;
  rep.check_name = "iuc_stability_study";
  rep.anchor = "kernel-ground-domination";
  rep.parameters = {{"t", fmt17(protocol.t)}, {"h", fmt17(protocol.spacing)}};
  for (size_t i = 1; i < protocol.half_widths.size(); ++i)
    if (protocol.half_widths[i] <= protocol.half_widths[i - 1])
      throw DomainError("iuc_stability_study: half-width list must be increasing");
  for (double L : protocol.half_widths) {
    Grid grid = Grid::with_spacing(1, L, protocol.spacing);
    grid.dim = 1;
    auto data = build_spectral_data(spec, grid, protocol.rank, protocol.eigensolve);
    double c = iuc_constant(data.propagator, data.space, protocol.t,
                            protocol.kernel_budget, protocol.window);
    rep.series.push_back(c);
    rep.constants.emplace_back("C_t(L=" + fmt17(L) + ")", c);
  }
  if (rep.series.size() < 2) {
    rep.verdict = "inconclusive";
    return rep;
  }
  double ratio = rep.series.back() / rep.series.front();
  rep.constants.emplace_back("last_to_first", ratio);
  if (ratio <= protocol.stable_ratio)
    rep.verdict = "stable";
  else if (ratio >= protocol.diverging_ratio)
    rep.verdict = "diverging";
  else
    rep.verdict = "inconclusive";
  return rep;
}

std::map<double, double> rosen_fit(const GroundState& ground, const PotentialSpec& spec,
                                   const Grid& grid, std::span<const double> eps_list,
                                   const Window& win) {
  auto mask = window_mask(grid, ground.phi, win);
  const std::int64_t n = grid.interior_count();
  std::vector<double> neg_log_phi(static_cast<size_t>(n)), qv(static_cast<size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    neg_log_phi[static_cast<size_t>(i)] = -std::log(ground.phi(i));
    auto x = grid.coords(i);
    qv[static_cast<size_t>(i)] = spec.q(std::span<const double>(x.data(), grid.dim));
  }
  std::map<double, double> fitted;
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw DomainError("rosen_fit: eps must be positive");
    double best = -std::numeric_limits<double>::infinity();
    for (std::int64_t i = 0; i < n; ++i) {
      if (!mask[static_cast<size_t>(i)]) continue;
      best = std::max(best, neg_log_phi[static_cast<size_t>(i)] -
                                eps * qv[static_cast<size_t>(i)]);
    }
    fitted[eps] = best;
  }
  return fitted;
}

double fit_rosen_offset(const GroundState& ground, const PotentialSpec& spec,
                        const Grid& grid, const RosenConstants& rc, double eps_ref,
                        const Window& win) {
  double eps[1] = {eps_ref};
  double fitted = rosen_fit(ground, spec, grid, eps, win).at(eps_ref);
  RosenConstants base = rc;
  base.c_gamma = 0.0;
  double formula = rosen_gamma(spec.params, base, eps_ref);
  return std::max(0.0, fitted - formula);
}

double decay_constant(const GroundState& ground, const Grid& grid, const Window& win,
                      double* argmax_radius) {
  auto mask = window_mask(grid, ground.phi, win);
  double best = -std::numeric_limits<double>::infinity();
  double where = 0.0;
  for (std::int64_t i = 0; i < grid.interior_count(); ++i) {
    if (!mask[static_cast<size_t>(i)]) continue;
    double r = grid.radius(i);
    double v = ground.phi(i) * std::exp(r);
    if (v > best) {
      best = v;
      where = r;
    }
  }
  if (argmax_radius) *argmax_radius = where;
  return best;
}

std::vector<double> eigen_domination(const std::vector<EigenPair>& pairs,
                                     const GroundState& ground, const Grid& grid,
                                     const Window& win) {
  auto mask = window_mask(grid, ground.phi, win);
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& pair : pairs) {
    double best = 0.0;
    for (std::int64_t i = 0; i < grid.interior_count(); ++i) {
      if (!mask[static_cast<size_t>(i)]) continue;
      best = std::max(best, std::abs(pair.v(i)) / ground.phi(i));
    }
    out.push_back(best);
  }
  return out;
}

namespace {

// spectral coefficients of phi*u, i.e. e^{-tH~}u = phi^{-1} sum_j a_j e^{-t l_j} v_j
Eigen::VectorXd conjugated_coeffs(const SpectralPropagator& p, const WeightedSpace& w,
                                  const Eigen::VectorXd& u) {
  const double hn = std::pow(p.grid.spacing, p.grid.dim);
  Eigen::VectorXd conj = w.phi.cwiseProduct(u);
  Eigen::VectorXd a(p.rank());
  for (int j = 0; j < p.rank(); ++j) a(j) = p.pairs[j].v.dot(conj) * hn;
  return a;
}

}  // namespace

double log_sobolev_check(const SpectralPropagator& p, const WeightedSpace& w,
                         const Eigen::VectorXd& u, double t, double p_exp, double eps,
                         const IteratedLogParams& params, const RosenConstants& rc) {
  if (!(p_exp > 1.0 && p_exp <= 2.0))
    throw DomainError("log_sobolev_check: p must lie in (1,2]");
  if (u.minCoeff() < -1e-12)
    throw DomainError("log_sobolev_check: u must be non-negative");

  Eigen::VectorXd a = conjugated_coeffs(p, w, u);
  Eigen::VectorXd wvec = Eigen::VectorXd::Zero(u.size());
  Eigen::VectorXd hw = Eigen::VectorXd::Zero(u.size());
  for (int j = 0; j < p.rank(); ++j) {
    double decay = std::exp(-t * p.pairs[j].lambda);
    if (decay == 0.0) continue;
    wvec += (a(j) * decay) * p.pairs[j].v;
    hw += (a(j) * decay * p.pairs[j].lambda) * p.pairs[j].v;
  }
  wvec = wvec.cwiseQuotient(w.phi);  // e^{-tH~} u
  hw = hw.cwiseQuotient(w.phi);      // H~ e^{-tH~} u

  double entropy = 0.0, form = 0.0;
  for (std::int64_t i = 0; i < wvec.size(); ++i) {
    double wi = std::max(wvec(i), 0.0);
    double wp = std::pow(wi, p_exp);
    if (wi > 0.0) entropy += wp * std::log(std::max(wi, 1e-300)) * w.weights(i);
    form += hw(i) * std::pow(wi, p_exp - 1.0) * w.weights(i);
  }
  double norm_p = weighted_norm(w, wvec, p_exp);
  double norm_pow = std::pow(norm_p, p_exp);
  double beta = rosen_beta(params, rc, eps);
  double rhs = eps * form + 2.0 * beta / p_exp * norm_pow +
               (norm_p > 0.0 ? norm_pow * std::log(norm_p) : 0.0);
  return rhs - entropy;
}

GrossSeries gross_monotonicity(const SpectralPropagator& p, const WeightedSpace& w,
                               const Eigen::VectorXd& u, double t,
                               std::span<const double> s_grid,
                               const IteratedLogParams& params, const RosenConstants& rc,
                               const ExponentPath& path, const QuadratureOptions& quad) {
  if (u.minCoeff() < -1e-12)
    throw DomainError("gross_monotonicity: u must be non-negative");
  GrossSeries series;
  for (double s : s_grid) {
    if (s < 0.0 || s > t + 1e-12)
      throw DomainError("gross_monotonicity: s outside [0, t]");
    double n_of_s = gross_integral(params, rc, t, std::min(s, t), path, quad);
    double p_of_s = path.q1 + (path.q2 - path.q1) * s / t;
    Eigen::VectorXd ws = weighted_propagate(p, w, s, u);
    double norm = weighted_norm(w, ws, p_of_s);
    series.s.push_back(s);
    series.value.push_back(std::exp(-n_of_s) * norm);
    series.log_value.push_back(norm > 0.0 ? -n_of_s + std::log(norm)
                                          : -std::numeric_limits<double>::infinity());
  }
  series.verdict = "pass";
  if (!series.value.empty()) {
    double slack = 1e-8 * series.value.front();
    for (size_t i = 1; i < series.value.size(); ++i)
      if (series.value[i] > series.value[i - 1] + slack) series.verdict = "fail";
  }
  return series;
}

ChainReport chain_bound_check(const SpectralPropagator& p, const WeightedSpace& w,
                              double t, const KernelOptions& opt) {
  ChainReport rep;
  rep.at_t = weighted_kernel_norms(p, w, t, opt);
  rep.lhs = weighted_kernel_norms(p, w, 2.0 * t, opt).one_to_inf;
  rep.rhs = rep.at_t.one_to_two * rep.at_t.two_to_inf;
  rep.pass = rep.lhs <= rep.rhs + 1e-8 * std::max(1.0, rep.rhs);
  return rep;
}

double duality_check(const SpectralPropagator& p, const WeightedSpace& w, double t,
                     const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  Eigen::VectorXd tu = weighted_propagate(p, w, t, u);
  Eigen::VectorXd tv = weighted_propagate(p, w, t, v);
  double left = u.cwiseProduct(tv).dot(w.weights);
  double right = tu.cwiseProduct(v).dot(w.weights);
  return std::abs(left - right);
}

double radial_supersolution_check(double beta, int n, double e0, double r) {
  if (!(r > 0.0)) throw DomainError("radial_supersolution_check: r must be positive");
  return -beta * beta * std::pow(r, 2.0 * (beta - 1.0)) +
         beta * (beta - 2.0 + n) * std::pow(r, beta - 2.0) + r * r - e0;
}

double mehler_kernel(double t, double x, double y) {
  if (!(t > 0.0)) throw DomainError("mehler_kernel: t must be positive");
  const double sh = std::sinh(2.0 * t), ch = std::cosh(2.0 * t);
  return std::pow(2.0 * std::numbers::pi * sh, -0.5) *
         std::exp(-((x * x + y * y) * ch - 2.0 * x * y) / (2.0 * sh));
}

double free_kernel(int n, double t, std::span<const double> x, std::span<const double> y) {
  if (!(t > 0.0)) throw DomainError("free_kernel: t must be positive");
  if (x.size() != y.size()) throw ShapeError("free_kernel: dimension mismatch");
  double d2 = 0.0;
  for (size_t a = 0; a < x.size(); ++a) d2 += (x[a] - y[a]) * (x[a] - y[a]);
  return std::pow(4.0 * std::numbers::pi * t, -0.5 * n) * std::exp(-d2 / (4.0 * t));
}

}  // namespace iuclab
