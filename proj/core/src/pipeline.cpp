#include "iuclab/pipeline.hpp"

#include <cmath>

#include "iuclab/errors.hpp"

namespace iuclab {

SpectralData build_spectral_data(const PotentialSpec& spec, const Grid& grid, int rank,
                                 const EigensolveOptions& eig_opt,
                                 const AssembleOptions& asm_opt) {
  SpectralData data;
  data.grid = grid;
  data.hamiltonian = assemble(grid, spec, asm_opt);
  int count = rank > 0 ? rank : static_cast<int>(data.hamiltonian.size());
  if (count > data.hamiltonian.size())
    throw DomainError("build_spectral_data: rank exceeds the operator size");
  data.pairs = lowest_eigenpairs(data.hamiltonian, count, eig_opt);

  GroundState gs;
  gs.energy = data.pairs[0].lambda;
  gs.phi = data.pairs[0].v;
  if (gs.phi.mean() < 0.0) {
    gs.phi = -gs.phi;
    data.pairs[0].v = gs.phi;
  }
  gs.min_phi = gs.phi.minCoeff();
  if (!(gs.min_phi > 0.0))
    throw PositivityError("build_spectral_data: ground state not strictly positive");
  if (data.pairs.size() > 1) {
    gs.gap = data.pairs[1].lambda - data.pairs[0].lambda;
    gs.gap_warning = gs.gap < 1e-8;
  }
  data.ground = gs;
  data.propagator = SpectralPropagator::create(data.pairs, gs, grid);
  data.space = WeightedSpace::create(gs, grid);
  return data;
}

int auto_rank(const SparseHamiltonian& h, double t_min, double tail_bound,
              const EigensolveOptions& eig_opt) {
  if (!(t_min > 0.0)) throw DomainError("auto_rank: t_min must be positive");
  const double needed_gap = std::log(1.0 / tail_bound) / t_min;
  int count = 8;
  for (;;) {
    count = std::min<int>(count, static_cast<int>(h.size()));
    auto pairs = lowest_eigenpairs(h, count, eig_opt);
    if (pairs.back().lambda - pairs.front().lambda >= needed_gap ||
        count == h.size())
      return count;
    count *= 2;
  }
}

}  // namespace iuclab
