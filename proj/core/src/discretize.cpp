#include "iuclab/discretize.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "iuclab/errors.hpp"

namespace iuclab {

Grid Grid::create(int dim, double half_width, int points_per_axis) {
  if (dim < 1 || dim > 3) throw DomainError("Grid: dimension must be 1, 2 or 3");
  if (!(half_width > 0.0)) throw DomainError("Grid: half-width must be positive");
  if (points_per_axis < 3) throw DomainError("Grid: need at least 3 points per axis");
  Grid g;
  g.dim = dim;
  g.half_width = half_width;
  g.points_per_axis = points_per_axis;
  g.spacing = 2.0 * half_width / (points_per_axis - 1);
  return g;
}

Grid Grid::with_spacing(int dim, double half_width, double spacing) {
  if (!(spacing > 0.0)) throw DomainError("Grid: spacing must be positive");
  int n = static_cast<int>(std::lround(2.0 * half_width / spacing)) + 1;
  return create(dim, half_width, std::max(3, n));
}

std::int64_t Grid::interior_count() const {
  std::int64_t m = interior_per_axis(), c = 1;
  for (int a = 0; a < dim; ++a) c *= m;
  return c;
}

std::int64_t Grid::total_count() const {
  std::int64_t c = 1;
  for (int a = 0; a < dim; ++a) c *= points_per_axis;
  return c;
}

std::array<std::int64_t, 3> Grid::multi_index(std::int64_t idx) const {
  const std::int64_t m = interior_per_axis();
  std::array<std::int64_t, 3> mi{0, 0, 0};
  for (int a = 0; a < dim; ++a) {
    mi[a] = idx % m;
    idx /= m;
  }
  return mi;
}

std::array<double, 3> Grid::coords(std::int64_t idx) const {
  auto mi = multi_index(idx);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) x[a] = -half_width + (mi[a] + 1) * spacing;
  return x;
}

double Grid::radius(std::int64_t idx) const {
  auto x = coords(idx);
  return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
}

double inner_h(const Grid& grid, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size()) throw ShapeError("inner_h: length mismatch");
  return u.dot(v) * std::pow(grid.spacing, grid.dim);
}

double norm_h(const Grid& grid, const Eigen::VectorXd& u) {
  return u.norm() * std::pow(grid.spacing, grid.dim / 2.0);
}

SparseHamiltonian assemble(const Grid& grid, const PotentialSpec& spec,
                           const AssembleOptions& opt) {
  const std::int64_t n = grid.interior_count();
  const std::int64_t nnz = n * (2 * grid.dim + 1);
  // triplets + CSC storage + diagonal cache
  const std::uint64_t estimate = static_cast<std::uint64_t>(nnz) * 40 + n * 8;
  if (estimate > opt.memory_budget_bytes)
    throw CapacityError("assemble: estimated " + std::to_string(estimate) +
                        " bytes exceeds budget of " +
                        std::to_string(opt.memory_budget_bytes));

  const double h2inv = 1.0 / (grid.spacing * grid.spacing);
  const std::int64_t m = grid.interior_per_axis();
  std::int64_t stride[3] = {1, m, m * m};

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(nnz));
  Eigen::VectorXd qdiag(n);
  for (std::int64_t i = 0; i < n; ++i) {
    auto x = grid.coords(i);
    double qi = spec.q(std::span<const double>(x.data(), grid.dim));
    if (!(qi >= 0.0) || !std::isfinite(qi))
      throw DomainError("assemble: potential must be finite and non-negative; q(" +
                        std::to_string(x[0]) + ",..) = " + std::to_string(qi));
    qdiag(i) = qi;
    trip.emplace_back(i, i, 2.0 * grid.dim * h2inv + qi);
    auto mi = grid.multi_index(i);
    for (int a = 0; a < grid.dim; ++a) {
      if (mi[a] + 1 < m) {
        trip.emplace_back(i, i + stride[a], -h2inv);
        trip.emplace_back(i + stride[a], i, -h2inv);
      }
    }
  }
  SparseHamiltonian H;
  H.grid = grid;
  H.matrix.resize(n, n);
  H.matrix.setFromTriplets(trip.begin(), trip.end());
  H.matrix.makeCompressed();
  H.potential_diag = std::move(qdiag);
  return H;
}

Eigen::VectorXd matvec(const SparseHamiltonian& h, const Eigen::VectorXd& u) {
  if (u.size() != h.matrix.rows())
    throw ShapeError("matvec: vector length " + std::to_string(u.size()) +
                     " does not match operator size " + std::to_string(h.matrix.rows()));
  return h.matrix * u;
}

}  // namespace iuclab
