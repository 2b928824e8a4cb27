#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "critrange/series.hpp"

namespace critrange::stats {

// Right-continuous weighted empirical CDF: sorted support points with
// cumulative normalized weights (ties merged).
struct WeightedECDF {
  std::vector<double> x;
  std::vector<double> cum;

  double operator()(double q) const;        // F-hat(q)
  double left_limit(std::size_t i) const;   // F-hat(x[i]-)
};

WeightedECDF weighted_ecdf(const std::vector<std::pair<double, double>>& points);

// sup over jump points of max(|F-hat(x) - F(x)|, |F-hat(x-) - F(x)|).
double ks_distance(const WeightedECDF& ecdf, const std::function<double(double)>& cdf);

// (1/2) sum over bins |empirical mass - model mass|, model mass by per-bin
// quadrature of the density. Throws CoverageError when more than 1% of the
// weight falls outside the bins.
double tv_binned(const std::vector<std::pair<double, double>>& points,
                 const std::function<double(double)>& density,
                 const std::vector<double>& edges);

// n+1 edges splitting [lo, hi] into n bins of equal model probability
// (edges found by bisection on the CDF).
std::vector<double> equiprobable_edges(const std::function<double(double)>& cdf, int n,
                                       double lo, double hi);

}  // namespace critrange::stats
