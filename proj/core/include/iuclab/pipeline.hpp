#pragma once

#include "iuclab/semigroup.hpp"

namespace iuclab {

/// Everything the checks consume for one (potential, grid) combination.
struct SpectralData {
  Grid grid;
  SparseHamiltonian hamiltonian;
  std::vector<EigenPair> pairs;
  GroundState ground;
  SpectralPropagator propagator;
  WeightedSpace space;
};

/// potential -> assemble -> eigensolve -> propagator/measure.
/// rank = 0 requests the full spectrum (dense solve).
SpectralData build_spectral_data(const PotentialSpec& spec, const Grid& grid, int rank,
                                 const EigensolveOptions& eig_opt = {},
                                 const AssembleOptions& asm_opt = {});

/// Smallest rank whose spectral tail satisfies
/// e^{-t_min (lambda_J - E0)} <= tail_bound, by growing the pair count.
int auto_rank(const SparseHamiltonian& h, double t_min, double tail_bound,
              const EigensolveOptions& eig_opt = {});

}  // namespace iuclab
