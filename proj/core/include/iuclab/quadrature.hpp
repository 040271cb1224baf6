#pragma once

#include <functional>

namespace iuclab {

struct QuadratureOptions {
  double rel_tol = 1e-8;
  int max_depth = 18;  // adaptive bisection depth; budget grows as 2^depth
};

/// Adaptive Gauss-Kronrod integration of f over [a, b].
/// Throws QuadratureError when the error estimate exceeds the tolerance
/// at the configured depth budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt = {});

}  // namespace iuclab
