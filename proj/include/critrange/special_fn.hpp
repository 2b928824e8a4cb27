#pragma once

#include "critrange/series.hpp"

namespace critrange::special_fn {

// Argument bundle for the theta-type family
//   G(v,x) = 2 sum_{j>=1} cos(2 pi j x) e^{-pi^2 j^2 v / 2}
// and its termwise v-derivatives of order l.
struct GArgs {
  double v = 1.0;   // series parameter, v > 0
  double x = 0.0;   // phase, in [0,1]
  int l = 0;        // derivative order in v

  void validate() const;
};

// Spectral (cosine) representation; accurate for v >= 2/pi.
double g_spectral(const GArgs& args, const SeriesCtl& ctl);

// Poisson-summed (Gaussian) representation
//   G(v,x) = sqrt(2/(pi v)) sum_{j in Z} e^{-2(j-x)^2/v} - 1,
// differentiated termwise; accurate for v <= 2/pi.
double g_poisson(const GArgs& args, const SeriesCtl& ctl);

// Dispatcher: Poisson branch for v < 2/pi, spectral branch otherwise.
double g_eval(const GArgs& args, const SeriesCtl& ctl);

// eta(s,v) = sum_{j>=1} (-1)^{j+1} (pi j)^{2-2s} e^{-pi^2 j^2 v / 2}
// at non-positive integer s = k in {0,-1,...,-4}. For small v the value is
// routed through the identity eta(-l+1,v) = (-1)^{l-1} 2^{l-1} G^{(l)}(v,1/2).
double eta(int k, double v, const SeriesCtl& ctl);

// F(v,t) = sum_{j>=1} (-1)^{j+1} pi^2 j^2 (pi^2 j^2 v/t + 1)^{-2} e^{-pi^2 j^2 v/2}
double f_integrand(double v, double t, const SeriesCtl& ctl);

// Non-alternating companion of F: same terms with |.| signs. Used by the
// normalizer quadrature for the boundary-correction part of the integrand.
double f_integrand_abs(double v, double t, const SeriesCtl& ctl);

inline constexpr double kSwitchV = 2.0 / 3.14159265358979323846;  // 2/pi

}  // namespace critrange::special_fn
