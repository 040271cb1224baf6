#include "iuclab/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "iuclab/errors.hpp"

namespace iuclab {

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
  if (a == b) return 0.0;
  using gk = boost::math::quadrature::gauss_kronrod<double, 15>;
  double error = 0.0, l1 = 0.0;
  double value = gk::integrate(f, a, b, opt.max_depth, opt.rel_tol, &error, &l1);
  double scale = std::max(l1, std::abs(value));
  if (!std::isfinite(value) ||
      (scale > 0.0 && error > opt.rel_tol * scale * 10.0)) {
    throw QuadratureError("adaptive quadrature did not reach rel_tol " +
                          std::to_string(opt.rel_tol) + " within depth " +
                          std::to_string(opt.max_depth));
  }
  return value;
}

}  // namespace iuclab
