#pragma once

#include "critrange/series.hpp"

namespace critrange::killed_bm {

// Interval (0, c) with absorbing endpoints. The killed semigroup has
// eigenvalues lambda_j = -pi^2 j^2 / (2 c^2) and eigenfunctions
// sqrt(2/c) sin(pi j x / c).
struct IntervalSpec {
  double c = 1.0;

  void validate() const;
  double eigenvalue(int j) const;
};

// Transition density p_t^c(a,y) of Brownian motion killed on exit from (0,c).
double transition_density(double a, double y, const IntervalSpec& spec, double t,
                          const SeriesCtl& ctl);

// P_a(exit time from (0,c) > t), in [0,1].
double survival_probability(double a, const IntervalSpec& spec, double t,
                            const SeriesCtl& ctl);

// e^{-c} E_a[ e^{X_t} 1{no exit by t} 1{X_t < ycut} ]. Pass
// ycut = infinity for the untruncated functional (closed series form).
double weighted_exit_functional(double a, const IntervalSpec& spec, double t, double ycut,
                                const SeriesCtl& ctl);

// Integral over the start point of the weighted exit functional:
//   int_0^c e^{-a} e^{-c} E_a[e^{X_t} 1{no exit by t}] da
// in closed series form; one evaluation of the range-Laplace c-integrand.
double range_laplace_integrand(const IntervalSpec& spec, double t, const SeriesCtl& ctl);

// t * int_a^inf e^{-c} E_a[e^{X_t} 1{no exit from (0,c) by t}] dc, which
// converges to a as t grows.
double exit_weighted_tail(double a, double t, const SeriesCtl& ctl);

// Closed form of int_0^v sin(pi j x / c) e^{sign * x} dx, sign = +1 or -1.
double primitive_exp_sin(double v, double c, int j, int sign);

}  // namespace critrange::killed_bm
