#ifndef CBINOM_TYPES_HPP
#define CBINOM_TYPES_HPP

#include <complex>
#include <cstddef>

namespace cbinom {

using Cplx = std::complex<double>;

enum class Method { GammaRatio, FiniteSincSum, InfiniteSincSeries, Auto };

/// Tolerances and budget shared by every series/quadrature evaluation.
struct EvalOptions {
  Method method = Method::Auto;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_terms = 1'000'000;

  /// Effective absolute tolerance for a result of the given magnitude.
  double tolerance_for(double magnitude) const {
    double t = abs_tol > rel_tol * magnitude ? abs_tol : rel_tol * magnitude;
    return t;
  }
};

/// Result of any numerical route: value plus an error estimate that is
/// meant to bound the true error, the work done, and a success flag.
struct Evaluation {
  Cplx value{0.0, 0.0};
  double abs_error_estimate = 0.0;
  std::size_t terms_used = 0;
  bool converged = false;
};

}  // namespace cbinom

#endif
