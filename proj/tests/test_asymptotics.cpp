#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "critrange/asymptotics.hpp"
#include "critrange/special_fn.hpp"

namespace {

using namespace critrange;
using namespace critrange::asymptotics;

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
const SeriesCtl ctl{};

double scaled_quadrature(double h, double t) {
  const double T = t * h * h;
  return T * std::exp(T / 2.0) * normalizer_series_quadrature({h, t}, ctl);
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("expansion table structure and exact term ratios") {
  const ExpansionTable tab = normalizer_expansion({1.0, 50.0}, 3);
  REQUIRE(tab.terms.size() == 4);
  CHECK(tab.prefactor == doctest::Approx(std::exp(-25.0)).epsilon(1e-14));
  CHECK(tab.terms[0] == doctest::Approx(1.0 / 50.0).epsilon(1e-15));
  for (std::size_t l = 0; l + 1 < tab.terms.size(); ++l) {
    // |term_{l+1}| / |term_l| = 2 (l+2) / (t h^2), alternating in sign
    CHECK(tab.terms[l + 1] / tab.terms[l] ==
          doctest::Approx(-2.0 * (l + 2.0) / 50.0).epsilon(1e-14));
  }
  // 1 - 4/50 + 24/50^2 - 192/50^3 = 0.928064 after scaling by t h^2
  CHECK(50.0 * tab.partials[3] == doctest::Approx(0.928064).epsilon(1e-12));
}

TEST_CASE("expansion depends on t h^2 only") {
  const ExpansionTable a = normalizer_expansion({1.0, 40.0}, 4);
  const ExpansionTable b = normalizer_expansion({2.0, 10.0}, 4);
  for (std::size_t l = 0; l < a.terms.size(); ++l) CHECK(a.terms[l] == b.terms[l]);
}

TEST_CASE("quadrature value collapses onto t h^2 as well") {
  CHECK(scaled_quadrature(1.0, 40.0) == doctest::Approx(scaled_quadrature(2.0, 10.0)).epsilon(1e-10));
}

TEST_CASE("alternating partial sums bracket the series integral; the normalizer adds a positive correction") {
  // The expansion's partial sums bracket int F(v,t) dv at every order. The
  // full normalizer additionally carries the strictly positive e^{-c}
  // boundary terms (about 7e-4 at t=25, shrinking like a stretched
  // exponential), which overtake the 4th-order margin from t = 50 on — so
  // only the n <= 2 brackets hold for the quadrature value itself.
  double prev_corr = 1.0;
  for (double t : {25.0, 50.0, 100.0}) {
    const double f = f_integral(t, ctl);
    const double q = scaled_quadrature(1.0, t);
    const ExpansionTable tab = normalizer_expansion({1.0, t}, 4);
    for (int n = 1; n <= 3; ++n) {
      const double p0 = t * tab.partials[n];
      const double p1 = t * tab.partials[n + 1];
      CHECK(f >= std::min(p0, p1));
      CHECK(f <= std::max(p0, p1));
      if (n <= 2) {
        CHECK(q >= std::min(p0, p1));
        CHECK(q <= std::max(p0, p1));
      }
    }
    const double corr = q - f;
    CHECK(corr > 0.0);
    CHECK(corr < prev_corr);
    prev_corr = corr;
  }
}

TEST_CASE("remainder after n terms shrinks like t^{-(n+1)} on doubling") {
  for (int n = 1; n <= 3; ++n) {
    auto rem = [&](double t) {
      return std::abs(scaled_quadrature(1.0, t) - t * normalizer_expansion({1.0, t}, n).partials[n]);
    };
    const double factor = rem(25.0) / rem(50.0);
    CHECK(factor >= std::pow(2.0, n + 0.5));
    CHECK(factor <= std::pow(2.0, n + 1.5));
  }
}

TEST_CASE("normalizer value at t = 50") {
  const double q = scaled_quadrature(1.0, 50.0);
  CHECK(q > 0.90);
  CHECK(q < 0.95);
}

TEST_CASE("integral of F approaches 1 with the documented second-order term") {
  CHECK(std::abs(f_integral(1e6, ctl) - 1.0) <= 5e-6);
  CHECK(std::abs(f_integral(1e6, ctl) - 1.0) >= 3e-6);
  auto err = [&](double t) {
    return std::abs(f_integral(t, ctl) - (1.0 - 4.0 / t + 24.0 / (t * t)));
  };
  const double slope = err(25.0) / err(50.0);
  CHECK(slope >= 4.0);
  CHECK(slope <= 16.0);
}

TEST_CASE("series kernel vanishes identically at integer phase") {
  CHECK(h_kernel(2.0, 1.0, 0.01, 1.0, 1.0, 1, ctl) == 0.0);
  CHECK(h_kernel(0.7, 1.0, 0.01, 1.0, 0.0, 0, ctl) == 0.0);
  CHECK(h_kernel(0.0, 1.0, 0.01, 1.0, 0.3, 1, ctl) == 0.0);
}

TEST_CASE("series kernel against a long direct sum") {
  for (int s : {0, 1}) {
    const double a = 0.5;
    const double u = 1.0;
    const double rho = 0.01;
    const double gamma = 1.0;
    const double hh = 0.3;
    double acc = 0.0;
    for (int j = 10000; j >= 1; --j) {
      acc += kPi * j / (kPi * kPi * j * j * u * rho + 1.0) *
             std::exp(-kPi * kPi * j * j * u * gamma / 2.0) *
             std::sin(kPi * j * s + kPi * j * a * hh);
    }
    if (s == 1) acc = -acc;
    CHECK(h_kernel(a, u, rho, gamma, hh, s, ctl) == doctest::Approx(acc).epsilon(1e-12));
  }
}

TEST_CASE("first window integral reaches its limits") {
  // nu = infinity: t * j1 -> a (here a = 1)
  CHECK(1e4 * j1(1e4, 1.0, kInf, ctl) == doctest::Approx(1.0).epsilon(0.05));
  // nu = 1: t * j1 -> 0.0143840, error shrinking in t
  const double lim = 0.0143840;
  const double e2 = std::abs(1e2 * j1(1e2, 1.0, 1.0, ctl) - lim);
  const double e4 = std::abs(1e4 * j1(1e4, 1.0, 1.0, ctl) - lim);
  CHECK(e4 < e2);
}

TEST_CASE("first window integral obeys the derivative bound") {
  for (double t : {1e2, 1e4}) {
    const double a = 1.0;
    const double nu = 1.0;
    const double v = 1.0 / std::pow(a / std::sqrt(t) + nu, 2.0);
    const double bound = std::abs(special_fn::g_eval({v, 0.0, 1}, ctl)) / a;
    CHECK(std::abs(j1(t, a, nu, ctl)) <= 2.0 * bound);
  }
}

TEST_CASE("second window integral is exponentially suppressed") {
  CHECK(1e3 * std::abs(j2(1e3, 1.0, 1.0, ctl)) <= 1e-3);
  CHECK(j2(1e3, 0.0, 1.0, ctl) == 0.0);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(ModelParams({0.0, 1.0}).validate(), DomainError);
  CHECK_THROWS_AS(normalizer_expansion({1.0, 10.0}, 9), DomainError);
  CHECK_THROWS_AS(f_integral(0.5, ctl), DomainError);
  CHECK_THROWS_AS(h_kernel(0.5, -1.0, 0.0, 1.0, 0.3, 1, ctl), DomainError);
  CHECK_THROWS_AS(h_kernel(0.5, 1.0, 0.0, 1.0, 0.3, 2, ctl), DomainError);
}

}  // TEST_SUITE
