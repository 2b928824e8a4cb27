#pragma once

#include <vector>

#include "critrange/series.hpp"

namespace critrange::asymptotics {

// Physical parameters of the critical case: the drift equals the obstacle
// intensity, so a single field h carries both.
struct ModelParams {
  double h = 1.0;
  double t = 1.0;

  void validate() const;
};

// Ordered terms and running partial sums of the large-t expansion of
// t h^2 e^{h^2 t/2} E^h[e^{-h C_t}]:
//   1 + sum_{l=1..n} (-1)^l 2^l (l+1)! / (t h^2)^l.
// terms[l] and partials[l] are stored unscaled, i.e. divided by t h^2 as the
// normalizer expansion proper; prefactor holds e^{-h^2 t / 2}.
struct ExpansionTable {
  int n = 0;
  double prefactor = 1.0;
  std::vector<double> terms;     // terms[0] = 1/(th^2), then l = 1..n
  std::vector<double> partials;  // running sums of terms
};

// E^h[e^{-h C_t}] by quadrature of the exact killed-interval series, after
// reduction to unit drift at horizon t h^2.
double normalizer_series_quadrature(const ModelParams& p, const SeriesCtl& ctl);

// The alternating large-t expansion of the same quantity; n <= 8.
ExpansionTable normalizer_expansion(const ModelParams& p, int n);

// int_0^inf F(v,t) dv, the bracketed factor of the normalizer up to
// exponentially small boundary corrections.
double f_integral(double t, const SeriesCtl& ctl);

// Series kernel H(a,u,rho,gamma,h,s) =
//   (-1)^s sum_j pi j (pi^2 j^2 u rho + 1)^{-1} e^{-pi^2 j^2 u gamma / 2}
//          sin(pi j s + pi j a h),   s in {0,1}.
double h_kernel(double a, double u, double rho, double gamma, double hh, int s,
                const SeriesCtl& ctl);

// J1 = t^{-1/2} int u^{-1/2} H(a,u,1/t,1,sqrt(u/t),1) du over
// u in (t/(a+nu sqrt(t))^2, t/a^2); nu may be infinity. t*J1 converges to
// -a G(1/nu^2, 1/2).
double j1(double t, double a, double nu, const SeriesCtl& ctl);

// Same integral with the extra factor e^{-sqrt(t/u)} and without the
// alternating sign (s = 0); t*|J2| vanishes as t grows.
double j2(double t, double a, double nu, const SeriesCtl& ctl);

}  // namespace critrange::asymptotics
