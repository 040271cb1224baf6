#pragma once

#include <Eigen/Dense>

#include "iuclab/eigensolve.hpp"

namespace iuclab {

/// Spectrally truncated heat semigroup e^{-tH} built from the lowest-J
/// eigenpairs. Exactly self-adjoint and exactly a semigroup in its span.
struct SpectralPropagator {
  std::vector<EigenPair> pairs;  // ascending eigenvalues
  GroundState ground;
  Grid grid;

  static SpectralPropagator create(std::vector<EigenPair> pairs, GroundState ground,
                                   const Grid& grid);
  int rank() const { return static_cast<int>(pairs.size()); }
};

/// The ground-state probability measure mu with weights w_i = phi_i^2 h^n / Z
/// and the weighted norms ||.||_{p,mu}.
struct WeightedSpace {
  Eigen::VectorXd phi;
  Eigen::VectorXd weights;
  double normalization = 1.0;  // Z = sum phi_i^2 h^n

  static WeightedSpace create(const GroundState& ground, const Grid& grid);
};

struct KernelOptions {
  std::uint64_t memory_budget_bytes = 2ull << 30;
};

/// e^{-tH} u = sum_j e^{-t lambda_j} <v_j, u>_h v_j.
Eigen::VectorXd propagate(const SpectralPropagator& p, double t, const Eigen::VectorXd& u);

/// Dense heat kernel K(t)_{xy} = sum_j e^{-t lambda_j} v_j(x) v_j(y), so that
/// propagate(t, u) = K(t) u h^n.
Eigen::MatrixXd kernel(const SpectralPropagator& p, double t, const KernelOptions& opt = {});

/// e^{-t H~} u = phi^{-1} e^{-tH} (phi u), the ground-state transform.
Eigen::VectorXd weighted_propagate(const SpectralPropagator& p, const WeightedSpace& w,
                                   double t, const Eigen::VectorXd& u);

/// (sum |u_i|^p w_i)^(1/p); p = infinity gives max |u_i|.
double weighted_norm(const WeightedSpace& w, const Eigen::VectorXd& u, double p);

/// Weighted kernel k~(x,y) = Z K(t)_{xy} / (phi_x phi_y), the kernel of
/// e^{-t H~} against mu: weighted_propagate(u)(x) = sum_y k~(x,y) u_y w_y.
Eigen::MatrixXd weighted_kernel(const SpectralPropagator& p, const WeightedSpace& w,
                                double t, const KernelOptions& opt = {});

struct KernelNorms {
  double one_to_two = 0.0;   // L^1_mu -> L^2_mu
  double two_to_inf = 0.0;   // L^2_mu -> L^inf_mu
  double one_to_inf = 0.0;   // L^1_mu -> L^inf_mu (max of the kernel)
};

/// Exact operator norms of e^{-t H~} between weighted spaces, computed from
/// the weighted kernel columns (attained on atoms of the discrete measure).
KernelNorms weighted_kernel_norms(const SpectralPropagator& p, const WeightedSpace& w,
                                  double t, const KernelOptions& opt = {});

}  // namespace iuclab
