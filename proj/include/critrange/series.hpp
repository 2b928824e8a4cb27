#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace critrange {

inline constexpr const char* kVersion = "0.1.0";

// Truncation policy shared by every series evaluator and most quadratures.
struct SeriesCtl {
  double tol = 1e-14;  // absolute tolerance on the truncated tail
  int max_terms = 512;

  void validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("SeriesCtl: tol must be > 0");
    if (max_terms < 8) throw std::invalid_argument("SeriesCtl: max_terms must be >= 8");
  }
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct TermCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateWeights : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct CoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sums term(j), j = 1, 2, ..., until the tail is rigorously below tol.
// bound(j) must dominate |term(k)| for all k >= j; once bound decays
// geometrically (ratio < 0.9) the tail is closed with the geometric sum.
// Series with e^{-alpha j^2} envelopes always reach that regime.
template <class Term, class Bound>
double sum_series(Term&& term, Bound&& bound, const SeriesCtl& ctl, int max_terms,
                  const char* what) {
  double acc = 0.0;
  for (int j = 1; j <= max_terms; ++j) {
    acc += term(j);
    const double b1 = bound(j + 1);
    if (b1 < ctl.tol) {
      const double b2 = bound(j + 2);
      const double r = b2 / b1;
      if (!(b1 > 0.0) || (r < 0.9 && b1 / (1.0 - r) < ctl.tol)) return acc;
    }
  }
  throw TermCapExceeded(std::string(what) + ": term cap " + std::to_string(max_terms) +
                        " reached before tolerance " + std::to_string(ctl.tol));
}

template <class Term, class Bound>
double sum_series(Term&& term, Bound&& bound, const SeriesCtl& ctl, const char* what) {
  return sum_series(term, bound, ctl, ctl.max_terms, what);
}

}  // namespace critrange
