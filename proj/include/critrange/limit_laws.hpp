#pragma once

#include <vector>

#include "critrange/rng.hpp"
#include "critrange/series.hpp"

namespace critrange::limit_laws {

// Random barrier of the limiting mixture, density h^2 a e^{-h a} da.
struct MixtureLevel {
  double a = 1.0;
  double h = 1.0;

  void validate() const;
};

// One sampled path of the limiting process Y_s = |W_s + (level,0,0)| - level
// on the grid s = 0, delta, ..., u.
struct LimitPath {
  double level = 0.0;              // the sampled barrier
  double delta = 0.0;              // grid step
  std::vector<double> y;           // grid values, y[0] = 0
  double inf_refined = 0.0;        // running infimum with within-step
                                   // bridge-minimum refinement of the radius
};

// Limiting law of the conditioned minimum: P(-min <= A) = 1 - e^{-hA}.
double min_cdf(double A, double h);

// Limiting CDF of max/sqrt(t) (h-free): T(x) = 2 sum_j (-1)^{j+1}
// e^{-pi^2 j^2/(2x^2)}, evaluated through the theta-function dispatcher.
double max_cdf(double x, const SeriesCtl& ctl);

// Mixture-level density h^2 a e^{-ha}.
double level_density(double a, double h);

// Density at x of the limiting process at time u:
//   f(x;u,h) = int_{max(0,-x)}^inf h^2 e^{-ha} (x+a)
//              [phi_u(x) - phi_u(x+2a)] da,
// with phi_u the centered Gaussian density of variance u.
double endpoint_density(double x, double u, double h, const SeriesCtl& ctl);

// Samples the limiting process by exact 3-D Gaussian increments of
// W + (level,0,0); marginals at grid times are exact. delta must divide u.
LimitPath sample_limit_path(Rng& rng, double u, double delta, double h);

}  // namespace critrange::limit_laws
