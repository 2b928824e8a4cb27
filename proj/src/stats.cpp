#include "critrange/stats.hpp"

#include <algorithm>
#include <cmath>

#include "critrange/quadrature.hpp"

namespace critrange::stats {

double WeightedECDF::operator()(double q) const {
  const auto it = std::upper_bound(x.begin(), x.end(), q);
  if (it == x.begin()) return 0.0;
  return cum[static_cast<std::size_t>(it - x.begin()) - 1];
}

double WeightedECDF::left_limit(std::size_t i) const {
  return i == 0 ? 0.0 : cum[i - 1];
}

WeightedECDF weighted_ecdf(const std::vector<std::pair<double, double>>& points) {
  if (points.empty()) throw EmptyInput("weighted_ecdf: no points");
  std::vector<std::pair<double, double>> pts = points;
  double total = 0.0;
  for (const auto& [v, w] : pts) {
    if (!(w > 0.0)) throw EmptyInput("weighted_ecdf: weights must be > 0");
    total += w;
  }
  std::sort(pts.begin(), pts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  WeightedECDF e;
  double running = 0.0;
  for (std::size_t i = 0; i < pts.size();) {
    const double v = pts[i].first;
    double mass = 0.0;
    while (i < pts.size() && pts[i].first == v) mass += pts[i++].second;
    running += mass;
    e.x.push_back(v);
    e.cum.push_back(running / total);
  }
  e.cum.back() = 1.0;
  return e;
}

double ks_distance(const WeightedECDF& ecdf, const std::function<double(double)>& cdf) {
  double d = 0.0;
  for (std::size_t i = 0; i < ecdf.x.size(); ++i) {
    const double f = cdf(ecdf.x[i]);
    d = std::max(d, std::abs(ecdf.cum[i] - f));
    d = std::max(d, std::abs(ecdf.left_limit(i) - f));
  }
  return d;
}

double tv_binned(const std::vector<std::pair<double, double>>& points,
                 const std::function<double(double)>& density,
                 const std::vector<double>& edges) {
  if (points.empty()) throw EmptyInput("tv_binned: no points");
  if (edges.size() < 2) throw EmptyInput("tv_binned: need at least one bin");
  const std::size_t nbins = edges.size() - 1;
  std::vector<double> emp(nbins, 0.0);
  double total = 0.0;
  double outside = 0.0;
  for (const auto& [v, w] : points) {
    total += w;
    if (v < edges.front() || v >= edges.back()) {
      outside += w;
      continue;
    }
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    emp[static_cast<std::size_t>(it - edges.begin()) - 1] += w;
  }
  if (outside > 0.01 * total) {
    throw CoverageError("tv_binned: more than 1% of the weight lies outside the bins");
  }
  double tv = 0.0;
  for (std::size_t b = 0; b < nbins; ++b) {
    const double model = integrate(density, edges[b], edges[b + 1], 1e-9, "tv_binned");
    tv += std::abs(emp[b] / total - model);
  }
  return 0.5 * tv;
}

std::vector<double> equiprobable_edges(const std::function<double(double)>& cdf, int n,
                                       double lo, double hi) {
  if (n < 1) throw EmptyInput("equiprobable_edges: need n >= 1");
  const double plo = cdf(lo);
  const double phi = cdf(hi);
  std::vector<double> edges{lo};
  for (int b = 1; b < n; ++b) {
    const double target = plo + (phi - plo) * b / n;
    double a = lo;
    double c = hi;
    for (int it = 0; it < 90; ++it) {
      const double m = 0.5 * (a + c);
      (cdf(m) < target ? a : c) = m;
    }
    edges.push_back(0.5 * (a + c));
  }
  edges.push_back(hi);
  return edges;
}

}  // namespace critrange::stats
