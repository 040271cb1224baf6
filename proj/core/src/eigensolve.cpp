#include "iuclab/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>
#include <string>

#include "iuclab/errors.hpp"

namespace iuclab {

namespace {

double true_residual(const SparseHamiltonian& h, double lambda, const Eigen::VectorXd& v) {
  return (h.matrix * v - lambda * v).norm() / std::max(1.0, std::abs(lambda));
}

std::vector<EigenPair> finalize(const SparseHamiltonian& h, const Eigen::VectorXd& lambdas,
                                const Eigen::MatrixXd& vectors, int count,
                                const EigensolveOptions& opt) {
  const double hscale = std::pow(h.grid.spacing, h.grid.dim / 2.0);
  std::vector<EigenPair> pairs(count);
  for (int j = 0; j < count; ++j) {
    Eigen::VectorXd v = vectors.col(j);
    double res = true_residual(h, lambdas(j), v);
    if (res > opt.tol)
      throw ConvergenceError("eigensolve: residual " + std::to_string(res) +
                                 " above tolerance for pair " + std::to_string(j),
                             {res});
    v /= v.norm();
    pairs[j].lambda = lambdas(j);
    pairs[j].v = v / hscale;  // unit <.,.>_h norm
    pairs[j].residual = res;
    if (opt.refine_tails && h.grid.dim == 1)
      refine_tail_1d(h, pairs[j].lambda, pairs[j].v);
  }
  return pairs;
}

std::vector<EigenPair> dense_path(const SparseHamiltonian& h, int count,
                                  const EigensolveOptions& opt) {
  Eigen::MatrixXd dense = Eigen::MatrixXd(h.matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  if (es.info() != Eigen::Success)
    throw ConvergenceError("eigensolve: dense solver failed", {});
  return finalize(h, es.eigenvalues().head(count), es.eigenvectors().leftCols(count),
                  count, opt);
}

std::vector<EigenPair> lanczos_path(const SparseHamiltonian& h, int count,
                                    const EigensolveOptions& opt) {
  const std::int64_t n = h.size();
  std::int64_t kmax = opt.max_iterations > 0 ? opt.max_iterations : n;
  kmax = std::min<std::int64_t>(kmax, n);
  const std::int64_t mem_cap =
      static_cast<std::int64_t>(opt.memory_budget_bytes / (8 * static_cast<std::uint64_t>(n)));
  if (mem_cap < count + 2)
    throw CapacityError("eigensolve: Krylov basis does not fit the memory budget");
  kmax = std::min(kmax, mem_cap);

  Eigen::MatrixXd basis(n, kmax);
  Eigen::VectorXd alpha(kmax), beta(kmax);
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(n);
  for (std::int64_t i = 0; i < n; ++i) v(i) = gauss(rng);
  v.normalize();
  basis.col(0) = v;

  std::vector<double> best(count, std::numeric_limits<double>::infinity());
  double beta_prev = 0.0;
  std::int64_t next_check = std::min<std::int64_t>(kmax, std::max(32, 4 * count));
  std::int64_t k = 0;
  bool exhausted_subspace = false;

  while (k < kmax) {
    Eigen::VectorXd w = h.matrix * basis.col(k);
    if (k > 0) w -= beta_prev * basis.col(k - 1);
    alpha(k) = basis.col(k).dot(w);
    w -= alpha(k) * basis.col(k);
    // full reorthogonalization, two passes
    w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).transpose() * w);
    w -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).transpose() * w);
    double b = w.norm();
    beta(k) = b;
    ++k;
    if (b < 1e-13) {
      exhausted_subspace = true;  // invariant subspace: the factorization is exact
      break;
    }
    if (k < kmax) basis.col(k) = w / b;
    beta_prev = b;

    if (k >= next_check && k > count) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      tri.computeFromTridiagonal(alpha.head(k), beta.head(k - 1),
                                 Eigen::EigenvaluesOnly);
      // residual estimate via inverse iteration on the tridiagonal
      bool all_ok = true;
      for (int j = 0; j < count; ++j) {
        double theta = tri.eigenvalues()(j);
        Eigen::VectorXd s = Eigen::VectorXd::Ones(k);
        for (int pass = 0; pass < 2; ++pass) {
          // solve (T - theta I + eps) s' = s by the Thomas algorithm
          Eigen::VectorXd d = alpha.head(k).array() - theta + 1e-12;
          Eigen::VectorXd rhs = s;
          for (std::int64_t i = 1; i < k; ++i) {
            double wfac = beta(i - 1) / d(i - 1);
            d(i) -= wfac * beta(i - 1);
            rhs(i) -= wfac * rhs(i - 1);
          }
          s(k - 1) = rhs(k - 1) / d(k - 1);
          for (std::int64_t i = k - 2; i >= 0; --i)
            s(i) = (rhs(i) - beta(i) * s(i + 1)) / d(i);
          s.normalize();
        }
        double est = b * std::abs(s(k - 1)) / std::max(1.0, std::abs(theta));
        best[j] = std::min(best[j], est);
        if (est > 0.5 * opt.tol) all_ok = false;
      }
      if (all_ok) break;
      next_check = std::min<std::int64_t>(kmax, next_check + std::max<std::int64_t>(32, k / 8));
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  tri.computeFromTridiagonal(alpha.head(k), beta.head(k - 1),
                             Eigen::ComputeEigenvectors);
  if (k < count)
    throw ConvergenceError("eigensolve: Krylov space smaller than requested count", best);
  Eigen::MatrixXd ritz = basis.leftCols(k) * tri.eigenvectors().leftCols(count);
  Eigen::VectorXd theta = tri.eigenvalues().head(count);
  for (int j = 0; j < count; ++j) {
    double res = true_residual(h, theta(j), ritz.col(j));
    best[j] = res;
    if (res > opt.tol && !exhausted_subspace)
      throw ConvergenceError(
          "eigensolve: iteration budget exhausted at k=" + std::to_string(k) +
              " with residual " + std::to_string(res) + " for pair " + std::to_string(j),
          best);
  }
  return finalize(h, theta, ritz, count, opt);
}

}  // namespace

void refine_tail_1d(const SparseHamiltonian& h, double lambda, Eigen::VectorXd& v,
                    double trust_fraction) {
  if (h.grid.dim != 1) return;
  const std::int64_t n = v.size();
  const double hh = h.grid.spacing * h.grid.spacing;
  const double amax = v.cwiseAbs().maxCoeff();
  if (amax <= 0.0) return;
  const double trust = trust_fraction * amax;

  std::int64_t lo = 0, hi = n - 1;
  while (lo < n && std::abs(v(lo)) < trust) ++lo;
  while (hi >= 0 && std::abs(v(hi)) < trust) --hi;
  if (lo >= hi) return;

  // Inward recurrence v[i-1] = (2 + h^2 (q_i - lambda)) v[i] - v[i+1],
  // started at the boundary ghost. This runs along the growing solution, so
  // it is stable; intermediate values are rescaled by powers of two to avoid
  // overflow and the final splice is matched at the trust edge.
  auto sweep = [&](std::int64_t from, std::int64_t to, std::int64_t step) {
    // fills v on (to..from] given splice value at `to`
    std::vector<double> work(static_cast<size_t>(std::abs(from - to)) + 1);
    std::vector<int> exp2(work.size(), 0);
    double w_prev = 0.0, w_cur = 1.0;
    int e = 0;
    std::int64_t count = static_cast<std::int64_t>(work.size());
    for (std::int64_t idx = 0; idx < count; ++idx) {
      std::int64_t i = from - step * idx;
      work[static_cast<size_t>(idx)] = w_cur;
      exp2[static_cast<size_t>(idx)] = e;
      double q_i = h.potential_diag(i);
      double w_next = (2.0 + hh * (q_i - lambda)) * w_cur - w_prev;
      w_prev = w_cur;
      w_cur = w_next;
      if (std::abs(w_cur) > 1e200) {
        w_cur = std::ldexp(w_cur, -800);
        w_prev = std::ldexp(w_prev, -800);
        e += 800;
      }
    }
    // splice at `to`: last filled entry corresponds to index `to`
    size_t last = work.size() - 1;
    double ref = work[last];
    int ref_e = exp2[last];
    if (ref == 0.0) return;
    double scale = v(to) / ref;
    for (size_t idx = 0; idx < work.size(); ++idx) {
      std::int64_t i = from - step * static_cast<std::int64_t>(idx);
      v(i) = std::ldexp(work[idx] * scale, exp2[idx] - ref_e);
    }
  };

  if (hi < n - 1) sweep(n - 1, hi, +1);
  if (lo > 0) sweep(0, lo, -1);
}

std::vector<EigenPair> lowest_eigenpairs(const SparseHamiltonian& h, int count,
                                         const EigensolveOptions& opt) {
  if (count < 1) throw DomainError("lowest_eigenpairs: count must be positive");
  if (count > h.size())
    throw DomainError("lowest_eigenpairs: requested more pairs than the operator size");
  if (!(opt.tol > 0.0)) throw DomainError("lowest_eigenpairs: tolerance must be positive");
  if (h.size() <= opt.dense_threshold || count >= h.size() / 2)
    return dense_path(h, count, opt);
  return lanczos_path(h, count, opt);
}

GroundState ground_state(const SparseHamiltonian& h, const EigensolveOptions& opt) {
  const int count = h.size() >= 2 ? 2 : 1;
  auto pairs = lowest_eigenpairs(h, count, opt);
  GroundState gs;
  gs.energy = pairs[0].lambda;
  gs.phi = pairs[0].v;
  if (gs.phi.mean() < 0.0) gs.phi = -gs.phi;
  gs.min_phi = gs.phi.minCoeff();
  if (!(gs.min_phi > 0.0))
    throw PositivityError("ground_state: non-positive interior node value " +
                          std::to_string(gs.min_phi));
  if (count == 2) {
    gs.gap = pairs[1].lambda - pairs[0].lambda;
    if (gs.gap < 1e-8) {
      gs.gap_warning = true;
      std::cerr << "GapWarning: spectral gap " << gs.gap << " below 1e-8\n";
    }
  }
  return gs;
}

}  // namespace iuclab
