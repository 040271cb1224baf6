#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <cstdint>

#include "iuclab/potential.hpp"

namespace iuclab {

/// Uniform tensor grid on [-L, L]^n with N points per axis (h = 2L/(N-1)).
/// The outermost layer carries the Dirichlet zero boundary; the unknowns of
/// the discrete operator are the (N-2)^n interior nodes, ordered
/// lexicographically with the x-index fastest.
struct Grid {
  int dim = 1;
  double half_width = 1.0;
  int points_per_axis = 3;
  double spacing = 1.0;

  static Grid create(int dim, double half_width, int points_per_axis);
  /// Chooses N so that the spacing equals (a rounding of) the requested h.
  static Grid with_spacing(int dim, double half_width, double spacing);

  std::int64_t interior_per_axis() const { return points_per_axis - 2; }
  std::int64_t interior_count() const;
  std::int64_t total_count() const;

  /// Coordinates of interior node `idx`; entries beyond `dim` are zero.
  std::array<double, 3> coords(std::int64_t idx) const;
  std::array<std::int64_t, 3> multi_index(std::int64_t idx) const;

  /// Euclidean |x| of an interior node.
  double radius(std::int64_t idx) const;
};

/// Discrete inner product <u,v>_h = sum_i u_i v_i h^n and its norm.
double inner_h(const Grid& grid, const Eigen::VectorXd& u, const Eigen::VectorXd& v);
double norm_h(const Grid& grid, const Eigen::VectorXd& u);

struct AssembleOptions {
  std::uint64_t memory_budget_bytes = 2ull << 30;
};

/// Second-order finite-difference Hamiltonian -Laplace + diag(q) on the
/// interior nodes, Dirichlet zero on the boundary layer. Exactly symmetric;
/// diagonal entries 2n/h^2 + q(x_i), off-diagonal entries -1/h^2 between
/// grid neighbours.
struct SparseHamiltonian {
  Grid grid;
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd potential_diag;  // q(x_i) per interior node

  std::int64_t size() const { return matrix.rows(); }
};

SparseHamiltonian assemble(const Grid& grid, const PotentialSpec& spec,
                           const AssembleOptions& opt = {});

/// y = H u. Throws ShapeError on a length mismatch.
Eigen::VectorXd matvec(const SparseHamiltonian& h, const Eigen::VectorXd& u);

}  // namespace iuclab
