#include "critrange/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "critrange/quadrature.hpp"
#include "critrange/special_fn.hpp"

namespace critrange::asymptotics {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Below this v the integrand families are provably under 1e-13 (the
// alternating sums collapse like e^{-1/(2v)}), so evaluation is skipped.
constexpr double kVFloor = 1e-3;

// e^{-pi^2 v / 2} tails beyond this point are below 1e-25.
constexpr double kVCeil = 12.0;

}  // namespace

void ModelParams::validate() const {
  if (!(h > 0.0)) throw DomainError("ModelParams: h must be > 0");
  if (!(t > 0.0)) throw DomainError("ModelParams: t must be > 0");
}

double normalizer_series_quadrature(const ModelParams& p, const SeriesCtl& ctl) {
  p.validate();
  ctl.validate();
  const double T = p.t * p.h * p.h;
  // The c-integral of the range-Laplace series after the substitution
  // v = T/c^2: the alternating part F picks up (1 + e^{-2c}) and the
  // non-alternating companion the cross factor 2 e^{-c}, c = sqrt(T/v).
  auto integrand = [&](double v) {
    if (v < kVFloor) return 0.0;
    const double c = std::sqrt(T / v);
    const double f = special_fn::f_integrand(v, T, ctl);
    const double fp = special_fn::f_integrand_abs(v, T, ctl);
    return f * (1.0 + std::exp(-2.0 * c)) + 2.0 * std::exp(-c) * fp;
  };
  const double bracket =
      integrate(integrand, 0.0, 2.0, 5e-10, "normalizer_series_quadrature") +
      integrate(integrand, 2.0, kVCeil, 5e-10, "normalizer_series_quadrature");
  return std::exp(-T / 2.0) * bracket / T;
}

ExpansionTable normalizer_expansion(const ModelParams& p, int n) {
  p.validate();
  if (n < 0 || n > 8) throw DomainError("normalizer_expansion: order must lie in [0,8]");
  const double T = p.t * p.h * p.h;
  ExpansionTable table;
  table.n = n;
  table.prefactor = std::exp(-T / 2.0);
  table.terms.push_back(1.0 / T);
  table.partials.push_back(1.0 / T);
  double coeff = 1.0;  // 2^l (l+1)!
  for (int l = 1; l <= n; ++l) {
    coeff *= 2.0 * (l + 1);
    const double term = (l % 2 ? -1.0 : 1.0) * coeff / std::pow(T, l + 1);
    table.terms.push_back(term);
    table.partials.push_back(table.partials.back() + term);
  }
  return table;
}

double f_integral(double t, const SeriesCtl& ctl) {
  if (!(t >= 1.0)) throw DomainError("f_integral: t must be >= 1");
  ctl.validate();
  auto integrand = [&](double v) {
    if (v < kVFloor) return 0.0;
    return special_fn::f_integrand(v, t, ctl);
  };
  return integrate(integrand, 0.0, 2.0, 5e-10, "f_integral") +
         integrate(integrand, 2.0, kVCeil, 5e-10, "f_integral");
}

double h_kernel(double a, double u, double rho, double gamma, double hh, int s,
                const SeriesCtl& ctl) {
  if (!(u > 0.0)) throw DomainError("h_kernel: u must be > 0");
  if (!(gamma > 0.0)) throw DomainError("h_kernel: gamma must be > 0");
  if (!(rho >= 0.0) || !(a >= 0.0) || !(hh >= 0.0)) {
    throw DomainError("h_kernel: a, rho, hh must be >= 0");
  }
  if (s != 0 && s != 1) throw DomainError("h_kernel: s must be 0 or 1");
  ctl.validate();
  const double x = a * hh;
  if (x == std::round(x)) return 0.0;  // every sine term vanishes exactly
  const double half = kPi * kPi * u * gamma / 2.0;
  auto mag = [&](int j) {
    return kPi * j / (kPi * kPi * j * j * u * rho + 1.0) *
           std::exp(-half * j * static_cast<double>(j));
  };
  // sin(pi j s + pi j x) folds to (-1)^{js} sin(pi j x); reduce the phase
  // modulo 2 before multiplying by pi to keep large j accurate.
  auto term = [&](int j) {
    double sgn = (s == 1 && j % 2) ? -1.0 : 1.0;
    if (s == 1) sgn = -sgn;  // leading (-1)^s
    return sgn * mag(j) * std::sin(kPi * std::remainder(j * x, 2.0));
  };
  const int cap =
      std::max(ctl.max_terms, static_cast<int>(std::ceil(10.0 / std::sqrt(u * gamma))));
  return sum_series(term, mag, ctl, cap, "h_kernel");
}

namespace {

double j_common(double t, double a, double nu, int s, const SeriesCtl& ctl,
                const char* what) {
  if (!(t > 0.0)) throw DomainError("J: t must be > 0");
  if (!(a >= 0.0)) throw DomainError("J: a must be >= 0");
  if (!(nu > 0.0)) throw DomainError("J: nu must be > 0");
  ctl.validate();
  if (a == 0.0) return 0.0;  // sin(pi j * 0) kills every term
  const double st = std::sqrt(t);
  const double lo = std::isinf(nu) ? 0.0 : t / ((a + nu * st) * (a + nu * st));
  const double hi = t / (a * a);
  // The kernel collapses like e^{-1/(2u)} below u ~ 5e-3 (s=1) and is further
  // crushed by e^{-sqrt(t/u)} (s=0); the eigenvalue decay ends it above 14.
  const double lo_eff = std::max(lo, s == 1 ? 5e-3 : 1e-4);
  const double hi_eff = std::min(hi, 14.0);
  if (!(hi_eff > lo_eff)) return 0.0;
  auto integrand = [&](double u) {
    double v = h_kernel(a, u, 1.0 / t, 1.0, std::sqrt(u / t), s, ctl) / std::sqrt(u);
    if (s == 0) v *= std::exp(-std::sqrt(t / u));
    return v;
  };
  return integrate(integrand, lo_eff, hi_eff, 1e-9, what) / st;
}

}  // namespace

double j1(double t, double a, double nu, const SeriesCtl& ctl) {
  return j_common(t, a, nu, 1, ctl, "j1");
}

double j2(double t, double a, double nu, const SeriesCtl& ctl) {
  return j_common(t, a, nu, 0, ctl, "j2");
}

}  // namespace critrange::asymptotics
