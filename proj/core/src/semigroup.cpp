#include "iuclab/semigroup.hpp"

#include <cmath>
#include <string>

#include "iuclab/errors.hpp"

namespace iuclab {

SpectralPropagator SpectralPropagator::create(std::vector<EigenPair> pairs,
                                              GroundState ground, const Grid& grid) {
  if (pairs.empty()) throw DomainError("SpectralPropagator: no eigenpairs");
  for (size_t j = 1; j < pairs.size(); ++j)
    if (pairs[j].lambda < pairs[j - 1].lambda)
      throw DomainError("SpectralPropagator: eigenvalues must be ascending");
  if (std::abs(pairs[0].lambda - ground.energy) > 1e-10 * std::max(1.0, std::abs(ground.energy)))
    throw DomainError("SpectralPropagator: leading pair does not match the ground state");
  if ((pairs[0].v.cwiseAbs() - ground.phi.cwiseAbs()).cwiseAbs().maxCoeff() > 1e-8)
    throw DomainError("SpectralPropagator: leading vector does not match the ground state");
  SpectralPropagator p;
  p.pairs = std::move(pairs);
  p.ground = std::move(ground);
  p.grid = grid;
  return p;
}

WeightedSpace WeightedSpace::create(const GroundState& ground, const Grid& grid) {
  WeightedSpace w;
  w.phi = ground.phi;
  const double hn = std::pow(grid.spacing, grid.dim);
  Eigen::VectorXd raw = ground.phi.array().square() * hn;
  w.normalization = raw.sum();
  w.weights = raw / w.normalization;
  return w;
}

Eigen::VectorXd propagate(const SpectralPropagator& p, double t, const Eigen::VectorXd& u) {
  if (t < 0.0) throw DomainError("propagate: time must be non-negative");
  if (u.size() != p.pairs[0].v.size()) throw ShapeError("propagate: length mismatch");
  const double hn = std::pow(p.grid.spacing, p.grid.dim);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(u.size());
  for (const auto& pair : p.pairs) {
    double w = std::exp(-t * pair.lambda);
    if (w == 0.0) continue;
    out += w * (pair.v.dot(u) * hn) * pair.v;
  }
  return out;
}

Eigen::MatrixXd kernel(const SpectralPropagator& p, double t, const KernelOptions& opt) {
  if (!(t > 0.0)) throw DomainError("kernel: time must be positive");
  const std::int64_t n = p.pairs[0].v.size();
  const std::uint64_t bytes = static_cast<std::uint64_t>(n) * n * 8 * 2;
  if (bytes > opt.memory_budget_bytes)
    throw CapacityError("kernel: dense kernel of size " + std::to_string(n) +
                        "^2 exceeds the memory budget");
  Eigen::MatrixXd scaled(n, p.rank());
  Eigen::MatrixXd vecs(n, p.rank());
  for (int j = 0; j < p.rank(); ++j) {
    vecs.col(j) = p.pairs[j].v;
    scaled.col(j) = std::exp(-t * p.pairs[j].lambda) * p.pairs[j].v;
  }
  return scaled * vecs.transpose();
}

Eigen::VectorXd weighted_propagate(const SpectralPropagator& p, const WeightedSpace& w,
                                   double t, const Eigen::VectorXd& u) {
  Eigen::VectorXd conj = w.phi.cwiseProduct(u);
  return propagate(p, t, conj).cwiseQuotient(w.phi);
}

double weighted_norm(const WeightedSpace& w, const Eigen::VectorXd& u, double p) {
  if (u.size() != w.weights.size()) throw ShapeError("weighted_norm: length mismatch");
  if (std::isinf(p)) return u.cwiseAbs().maxCoeff();
  if (!(p >= 1.0)) throw DomainError("weighted_norm: p must be >= 1 or infinity");
  const double umax = u.cwiseAbs().maxCoeff();
  if (umax == 0.0) return 0.0;
  double acc = 0.0;
  for (std::int64_t i = 0; i < u.size(); ++i)
    acc += std::pow(std::abs(u(i)) / umax, p) * w.weights(i);
  return umax * std::pow(acc, 1.0 / p);
}

Eigen::MatrixXd weighted_kernel(const SpectralPropagator& p, const WeightedSpace& w,
                                double t, const KernelOptions& opt) {
  Eigen::MatrixXd k = kernel(p, t, opt);
  Eigen::VectorXd inv_phi = w.phi.cwiseInverse();
  return w.normalization * inv_phi.asDiagonal() * k * inv_phi.asDiagonal();
}

KernelNorms weighted_kernel_norms(const SpectralPropagator& p, const WeightedSpace& w,
                                  double t, const KernelOptions& opt) {
  Eigen::MatrixXd kt = weighted_kernel(p, w, t, opt);
  KernelNorms norms;
  norms.one_to_inf = kt.maxCoeff();
  // ||k~(.,y)||_{2,mu} per column y, and by symmetry per row x
  Eigen::VectorXd col_norms =
      (kt.array().square().matrix().transpose() * w.weights).cwiseSqrt();
  Eigen::VectorXd row_norms = (kt.array().square().matrix() * w.weights).cwiseSqrt();
  norms.one_to_two = col_norms.maxCoeff();
  norms.two_to_inf = row_norms.maxCoeff();
  return norms;
}

}  // namespace iuclab
