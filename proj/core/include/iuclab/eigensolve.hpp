#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "iuclab/discretize.hpp"

namespace iuclab {

struct EigenPair {
  double lambda = 0.0;
  Eigen::VectorXd v;       // unit norm in <.,.>_h
  double residual = 0.0;   // ||H v - lambda v||_h / max(1, |lambda|)
};

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXd phi;     // strictly positive on interior nodes, unit <.,.>_h norm
  double min_phi = 0.0;
  double gap = 0.0;        // lambda_2 - lambda_1 when available
  bool gap_warning = false;  // emitted when the gap falls below 1e-8
};

struct EigensolveOptions {
  double tol = 1e-8;
  int max_iterations = 0;          // 0 = auto (up to the operator dimension)
  std::int64_t dense_threshold = 1200;  // dense solver at or below this size
  std::uint64_t memory_budget_bytes = 1ull << 30;  // Krylov basis budget
  std::uint64_t seed = 0x1db3c1u;  // start-vector seed
  bool refine_tails = true;        // 1D only: componentwise-accurate tails
};

/// Lowest J eigenpairs in ascending order; Krylov (Lanczos) iteration with
/// full reorthogonalization, dense fallback for small operators. Pairwise
/// h-orthogonal; residuals verified against the actual operator.
std::vector<EigenPair> lowest_eigenpairs(const SparseHamiltonian& h, int count,
                                         const EigensolveOptions& opt = {});

/// Ground state with the sign fixed (positive mean) and strict interior
/// positivity asserted; reports the spectral gap.
GroundState ground_state(const SparseHamiltonian& h, const EigensolveOptions& opt = {});

/// Rebuilds the exponentially small tails of a 1D eigenvector by the inward
/// three-term recurrence (the growing, numerically stable direction), giving
/// componentwise relative accuracy far below the dense solver's noise floor.
/// No-op for dim > 1 or when the vector has no trusted region.
void refine_tail_1d(const SparseHamiltonian& h, double lambda, Eigen::VectorXd& v,
                    double trust_fraction = 1e-8);

}  // namespace iuclab
