#include "critrange/limit_laws.hpp"

#include <algorithm>
#include <cmath>

#include "critrange/quadrature.hpp"
#include "critrange/special_fn.hpp"

namespace critrange::limit_laws {

namespace {

constexpr double kPi = 3.14159265358979323846;

double gauss_density(double z, double u) {
  return std::exp(-z * z / (2.0 * u)) / std::sqrt(2.0 * kPi * u);
}

}  // namespace

void MixtureLevel::validate() const {
  if (!(a > 0.0)) throw DomainError("MixtureLevel: a must be > 0");
  if (!(h > 0.0)) throw DomainError("MixtureLevel: h must be > 0");
}

double min_cdf(double A, double h) {
  if (!(A >= 0.0)) throw DomainError("min_cdf: A must be >= 0");
  if (!(h > 0.0)) throw DomainError("min_cdf: h must be > 0");
  return -std::expm1(-h * A);
}

double max_cdf(double x, const SeriesCtl& ctl) {
  if (!(x > 0.0)) throw DomainError("max_cdf: x must be > 0");
  const double v = 1.0 / (x * x);
  const double t = -special_fn::g_eval(special_fn::GArgs{v, 0.5, 0}, ctl);
  return std::clamp(t, 0.0, 1.0);
}

double level_density(double a, double h) {
  MixtureLevel{a, h}.validate();
  return h * h * a * std::exp(-h * a);
}

double endpoint_density(double x, double u, double h, const SeriesCtl& ctl) {
  if (!(u > 0.0)) throw DomainError("endpoint_density: u must be > 0");
  if (!(h > 0.0)) throw DomainError("endpoint_density: h must be > 0");
  ctl.validate();
  const double lo = std::max(0.0, -x);
  const double hi = lo + 40.0 / h;  // e^{-ha} tail beyond this is < e^{-40}
  auto integrand = [&](double a) {
    return h * h * std::exp(-h * a) * (x + a) *
           (gauss_density(x, u) - gauss_density(x + 2.0 * a, u));
  };
  const double v = integrate(integrand, lo, hi, 1e-10, "endpoint_density");
  return std::max(v, 0.0);
}

LimitPath sample_limit_path(Rng& rng, double u, double delta, double h) {
  if (!(u > 0.0) || !(delta > 0.0)) throw DomainError("sample_limit_path: u, delta must be > 0");
  if (!(h > 0.0)) throw DomainError("sample_limit_path: h must be > 0");
  const double steps_real = u / delta;
  const int steps = static_cast<int>(std::lround(steps_real));
  if (steps < 1 || std::abs(steps_real - steps) > 1e-9 * steps) {
    throw DomainError("sample_limit_path: delta must divide u");
  }
  LimitPath path;
  // Gamma(2, h) barrier: sum of two Exp(h) draws.
  path.level = -(std::log(rng.uniform()) + std::log(rng.uniform())) / h;
  path.delta = delta;
  path.y.reserve(static_cast<std::size_t>(steps) + 1);
  path.y.push_back(0.0);
  const double sd = std::sqrt(delta);
  double wx = path.level;
  double wy = 0.0;
  double wz = 0.0;
  double r_prev = path.level;
  double inf_r = path.level;
  for (int k = 0; k < steps; ++k) {
    wx += sd * rng.normal();
    wy += sd * rng.normal();
    wz += sd * rng.normal();
    const double r = std::sqrt(wx * wx + wy * wy + wz * wz);
    path.y.push_back(r - path.level);
    // Within-step minimum of the radius, approximated by the Brownian-bridge
    // minimum between the two grid radii; exact grid marginals are untouched.
    const double gap = r - r_prev;
    const double disc = gap * gap - 2.0 * delta * std::log(rng.uniform());
    const double bridge_min = 0.5 * (r_prev + r - std::sqrt(disc));
    inf_r = std::min(inf_r, std::max(bridge_min, 0.0));
    r_prev = r;
  }
  path.inf_refined = inf_r - path.level;
  return path;
}

}  // namespace critrange::limit_laws
