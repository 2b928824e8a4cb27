#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "critrange/series.hpp"

namespace critrange {

// Adaptive Gauss-Kronrod on a finite interval. Throws QuadratureFailure when
// the error estimate does not reach the requested absolute tolerance.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol, const char* what) {
  if (!(b > a)) return 0.0;
  double err = 0.0;
  const double val = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, 15, 1e-12, &err);
  if (err > abs_tol && err > 1e-11 * (std::abs(val) + 1.0)) {
    throw QuadratureFailure(std::string(what) + ": quadrature error estimate " +
                            std::to_string(err) + " exceeds tolerance");
  }
  return val;
}

}  // namespace critrange
