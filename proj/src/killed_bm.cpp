#include "critrange/killed_bm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "critrange/quadrature.hpp"

namespace critrange::killed_bm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// The spectral series needs O(c/sqrt(t)) terms before the eigenvalue decay
// sets in; raise the cap accordingly instead of switching representations.
int raised_cap(const SeriesCtl& ctl, double c, double t) {
  const double need = 10.0 * c / std::sqrt(t);
  return std::max(ctl.max_terms, static_cast<int>(std::ceil(need)));
}

}  // namespace

void IntervalSpec::validate() const {
  if (!(c > 0.0)) throw DomainError("IntervalSpec: c must be > 0");
}

double IntervalSpec::eigenvalue(int j) const {
  return -kPi * kPi * j * static_cast<double>(j) / (2.0 * c * c);
}

double transition_density(double a, double y, const IntervalSpec& spec, double t,
                          const SeriesCtl& ctl) {
  spec.validate();
  ctl.validate();
  if (!(a > 0.0 && a < spec.c) || !(y > 0.0 && y < spec.c)) {
    throw DomainError("transition_density: points must lie in (0,c)");
  }
  if (!(t > 0.0)) throw DomainError("transition_density: t must be > 0");
  const double c = spec.c;
  auto term = [&](int j) {
    return (2.0 / c) * std::exp(spec.eigenvalue(j) * t) * std::sin(kPi * j * a / c) *
           std::sin(kPi * j * y / c);
  };
  auto mag = [&](int j) { return (2.0 / c) * std::exp(spec.eigenvalue(j) * t); };
  const double p = sum_series(term, mag, ctl, raised_cap(ctl, c, t), "transition_density");
  return std::max(p, 0.0);
}

double survival_probability(double a, const IntervalSpec& spec, double t,
                            const SeriesCtl& ctl) {
  spec.validate();
  ctl.validate();
  if (!(a > 0.0 && a < spec.c)) throw DomainError("survival_probability: a must lie in (0,c)");
  if (!(t > 0.0)) throw DomainError("survival_probability: t must be > 0");
  const double c = spec.c;
  auto term = [&](int j) {
    if (j % 2 == 0) return 0.0;
    return (4.0 / (kPi * j)) * std::exp(spec.eigenvalue(j) * t) * std::sin(kPi * j * a / c);
  };
  auto mag = [&](int j) { return (4.0 / (kPi * j)) * std::exp(spec.eigenvalue(j) * t); };
  const double s = sum_series(term, mag, ctl, raised_cap(ctl, c, t), "survival_probability");
  return std::clamp(s, 0.0, 1.0);
}

double primitive_exp_sin(double v, double c, int j, int sign) {
  const double k = kPi * j / c;
  const double s = sign >= 0 ? 1.0 : -1.0;
  // int_0^v sin(kx) e^{sx} dx = [e^{sx}(s sin(kx) - k cos(kx))]_0^v / (s^2+k^2)
  return (std::exp(s * v) * (s * std::sin(k * v) - k * std::cos(k * v)) + k) /
         (1.0 + k * k);
}

double weighted_exit_functional(double a, const IntervalSpec& spec, double t, double ycut,
                                const SeriesCtl& ctl) {
  spec.validate();
  ctl.validate();
  if (!(a > 0.0 && a < spec.c)) throw DomainError("weighted_exit_functional: a must lie in (0,c)");
  if (!(t > 0.0)) throw DomainError("weighted_exit_functional: t must be > 0");
  if (!(ycut > 0.0)) throw DomainError("weighted_exit_functional: ycut must be > 0");
  const double c = spec.c;
  const int cap = raised_cap(ctl, c, t);
  double value = 0.0;
  if (std::isinf(ycut) || ycut >= c) {
    auto term = [&](int j) {
      const double sgn = j % 2 ? 1.0 : -1.0;
      return 2.0 * sgn * kPi * j / (kPi * kPi * j * j + c * c) *
             std::exp(spec.eigenvalue(j) * t) * std::sin(kPi * j * a / c) *
             (1.0 - (j % 2 ? -1.0 : 1.0) * std::exp(-c));
    };
    auto mag = [&](int j) {
      return 4.0 * kPi * j / (kPi * kPi * j * j + c * c) * std::exp(spec.eigenvalue(j) * t);
    };
    value = sum_series(term, mag, ctl, cap, "weighted_exit_functional");
  } else {
    const double ec = std::exp(-c);
    auto term = [&](int j) {
      return (2.0 / c) * std::exp(spec.eigenvalue(j) * t) * std::sin(kPi * j * a / c) * ec *
             primitive_exp_sin(ycut, c, j, +1);
    };
    auto mag = [&](int j) {
      // |primitive| <= int_0^ycut e^x dx <= e^{ycut}
      return (2.0 / c) * std::exp(spec.eigenvalue(j) * t) * ec * std::exp(ycut);
    };
    value = sum_series(term, mag, ctl, cap, "weighted_exit_functional");
  }
  return std::max(value, 0.0);
}

double range_laplace_integrand(const IntervalSpec& spec, double t, const SeriesCtl& ctl) {
  spec.validate();
  ctl.validate();
  if (!(t > 0.0)) throw DomainError("range_laplace_integrand: t must be > 0");
  const double c = spec.c;
  auto term = [&](int j) {
    const double sgn = j % 2 ? 1.0 : -1.0;
    const double den = kPi * kPi * j * j + c * c;
    const double bd = 1.0 - (j % 2 ? -1.0 : 1.0) * std::exp(-c);
    return 2.0 * c * sgn * kPi * kPi * j * j / (den * den) *
           std::exp(spec.eigenvalue(j) * t) * bd * bd;
  };
  auto mag = [&](int j) {
    const double den = kPi * kPi * j * j + c * c;
    return 8.0 * c * kPi * kPi * j * j / (den * den) * std::exp(spec.eigenvalue(j) * t);
  };
  const double v = sum_series(term, mag, ctl, raised_cap(ctl, c, t), "range_laplace_integrand");
  return std::max(v, 0.0);
}

double exit_weighted_tail(double a, double t, const SeriesCtl& ctl) {
  if (!(a > 0.0)) throw DomainError("exit_weighted_tail: a must be > 0");
  if (!(t > 0.0)) throw DomainError("exit_weighted_tail: t must be > 0");
  ctl.validate();
  const double st = std::sqrt(t);
  auto f = [&](double c) {
    return weighted_exit_functional(a, IntervalSpec{c},
                                    t, std::numeric_limits<double>::infinity(), ctl);
  };
  // The integrand behaves like e^{-c^2/(2t)} at scale sqrt(t); beyond
  // a + 40 sqrt(t) the remainder is below e^{-750}.
  const double mid = a + st;
  const double hi = a + 40.0 * st;
  const double tol = 1e-6 * a / t;
  const double val = integrate(f, a, mid, tol, "exit_weighted_tail") +
                     integrate(f, mid, hi, tol, "exit_weighted_tail");
  return t * val;
}

}  // namespace critrange::killed_bm
