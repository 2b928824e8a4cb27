#include "critrange/special_fn.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace critrange::special_fn {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxDeriv = 5;

// d^l/dv^l [v^{-1/2} e^{-b/v}] = P_l(w) w^{1/2} e^{-bw} with w = 1/v,
// P_0 = 1 and P_{l+1} = -w^2 P_l' + (b w^2 - w/2) P_l.
std::vector<double> deriv_poly(int l, double b) {
  std::vector<double> c{1.0};
  for (int k = 0; k < l; ++k) {
    std::vector<double> n(c.size() + 2, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      n[i + 1] -= (static_cast<double>(i) + 0.5) * c[i];
      n[i + 2] += b * c[i];
    }
    c = std::move(n);
  }
  return c;
}

// One Gaussian term of the Poisson representation, differentiated l times in v.
double poisson_term(double v, double x, int l, double j) {
  const double b = 2.0 * (j - x) * (j - x);
  const double w = 1.0 / v;
  if (b * w > 745.0) return 0.0;
  const auto c = deriv_poly(l, b);
  double p = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) p = p * w + *it;
  return std::sqrt(2.0 / kPi) * p * std::sqrt(w) * std::exp(-b * w);
}

}  // namespace

void GArgs::validate() const {
  if (!(v > 0.0)) throw DomainError("G: v must be > 0");
  if (l == 0 && v < 1e-12) throw DomainError("G: v must exceed 1e-12");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("G: x must lie in [0,1]");
  if (l < 0 || l > kMaxDeriv) throw DomainError("G: derivative order must be in [0,5]");
}

double g_spectral(const GArgs& args, const SeriesCtl& ctl) {
  args.validate();
  ctl.validate();
  const double half = kPi * kPi / 2.0;
  const double sgn = args.l % 2 ? -1.0 : 1.0;
  auto mag = [&](int j) {
    const double jj = static_cast<double>(j) * j;
    return 2.0 * std::pow(half * jj, args.l) * std::exp(-half * jj * args.v);
  };
  auto term = [&](int j) {
    const double jj = static_cast<double>(j) * j;
    return sgn * 2.0 * std::cos(2.0 * kPi * j * args.x) * std::pow(half * jj, args.l) *
           std::exp(-half * jj * args.v);
  };
  return sum_series(term, mag, ctl, "g_spectral");
}

double g_poisson(const GArgs& args, const SeriesCtl& ctl) {
  args.validate();
  ctl.validate();
  const int j0 = args.x <= 0.5 ? 0 : 1;
  double acc = poisson_term(args.v, args.x, args.l, j0);
  double prev_ring = std::abs(acc);
  int quiet = 0;
  for (int d = 1; d <= ctl.max_terms; ++d) {
    const double tp = poisson_term(args.v, args.x, args.l, j0 + d);
    const double tm = poisson_term(args.v, args.x, args.l, j0 - d);
    acc += tp + tm;
    const double ring = std::abs(tp) + std::abs(tm);
    // Rings shrink at least geometrically (ratio < 1/2) once past the peak of
    // the polynomial prefactor, so the tail is bounded by the last ring. Two
    // consecutive quiet rings guard against an accidental polynomial zero.
    if (ring == 0.0 || (2.0 * ring < ctl.tol && 2.0 * ring <= prev_ring)) {
      if (++quiet == 2) return args.l == 0 ? acc - 1.0 : acc;
    } else {
      quiet = 0;
    }
    prev_ring = std::max(ring, prev_ring * 0.25);
  }
  throw TermCapExceeded("g_poisson: term cap reached before tolerance");
}

double g_eval(const GArgs& args, const SeriesCtl& ctl) {
  return args.v < kSwitchV ? g_poisson(args, ctl) : g_spectral(args, ctl);
}

double eta(int k, double v, const SeriesCtl& ctl) {
  if (k > 0 || k < -4) throw DomainError("eta: k must lie in {0,-1,...,-4}");
  if (!(v > 0.0)) throw DomainError("eta: v must be > 0");
  ctl.validate();
  if (v < 0.3) {
    // eta(-l+1, v) = (-1)^{l-1} 2^{l-1} G^{(l)}(v, 1/2); the Gaussian
    // representation converges fast exactly where the direct series stalls.
    const int l = 1 - k;
    const double g = g_poisson(GArgs{v, 0.5, l}, ctl);
    return ((l - 1) % 2 ? -1.0 : 1.0) * std::ldexp(1.0, l - 1) * g;
  }
  const double p = 2.0 - 2.0 * k;
  auto mag = [&](int j) {
    return std::pow(kPi * j, p) * std::exp(-kPi * kPi * j * j * v / 2.0);
  };
  auto term = [&](int j) { return (j % 2 ? 1.0 : -1.0) * mag(j); };
  return sum_series(term, mag, ctl, "eta");
}

namespace {

double f_sum(double v, double t, const SeriesCtl& ctl, bool alternating, const char* what) {
  if (!(v > 0.0) || !(t > 0.0)) throw DomainError("F: v and t must be > 0");
  ctl.validate();
  const double half = kPi * kPi * v / 2.0;
  auto mag = [&](int j) {
    const double q = kPi * kPi * j * static_cast<double>(j);
    const double d = q * v / t + 1.0;
    return q / (d * d) * std::exp(-half * j * static_cast<double>(j));
  };
  // Small v needs O(1/sqrt(v)) terms before the Gaussian envelope bites.
  const int cap = std::max(ctl.max_terms, static_cast<int>(std::ceil(10.0 / std::sqrt(v))));
  if (!alternating) return sum_series(mag, mag, ctl, cap, what);
  auto term = [&](int j) { return (j % 2 ? 1.0 : -1.0) * mag(j); };
  return sum_series(term, mag, ctl, cap, what);
}

}  // namespace

double f_integrand(double v, double t, const SeriesCtl& ctl) {
  return f_sum(v, t, ctl, true, "f_integrand");
}

double f_integrand_abs(double v, double t, const SeriesCtl& ctl) {
  return f_sum(v, t, ctl, false, "f_integrand_abs");
}

}  // namespace critrange::special_fn
