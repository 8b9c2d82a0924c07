#ifndef CBINOM_SPECIAL_HPP
#define CBINOM_SPECIAL_HPP

#include <cbinom/errors.hpp>
#include <cbinom/types.hpp>

namespace cbinom {

/// Euler--Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// sin(pi*z) and cos(pi*z) with argument reduction on the real part, so they
/// stay accurate for large |Re(z)|.
Cplx sin_pi(Cplx z);
Cplx cos_pi(Cplx z);

/// True when z is within eps of a nonpositive integer; the integer is written
/// to *which when requested.
bool near_nonpositive_integer(Cplx z, double eps, long* which = nullptr);

/// Gamma function via a Lanczos rational approximation, reflected onto the
/// right half-plane for Re(z) < 1/2. Throws PoleError at nonpositive integers
/// and OverflowError when |Gamma(z)| exceeds the double range.
Cplx gamma(Cplx z);

/// log Gamma(z), real on the positive real axis. exp(log_gamma(z)) == gamma(z)
/// wherever gamma does not overflow; the imaginary part may differ from the
/// continuous branch by a multiple of 2*pi away from the positive axis.
Cplx log_gamma(Cplx z);

/// log_gamma(b + delta) - log_gamma(b), computed without the catastrophic
/// cancellation the naive difference suffers when b is large and delta is
/// small. Taking the shift as a separate argument keeps it exact even when
/// b + delta would round. Falls back to the naive difference off the right
/// half plane.
Cplx log_gamma_ratio(Cplx b, Cplx delta);

/// Partial Weierstrass product z*e^{g z} * prod_{k=1}^{n} (1+z/k)e^{-z/k}.
/// Converges (slowly, like 1/n) to 1/Gamma(z); entire, so valid at poles of
/// Gamma where it tends to 0. Kept as an independent oracle for gamma().
Cplx reciprocal_gamma_weierstrass(Cplx z, std::size_t n_factors);

/// B(p,q) = Gamma(p)Gamma(q)/Gamma(p+q), via log_gamma so large arguments
/// do not overflow.
Cplx beta_gamma(Cplx p, Cplx q);

/// B(p,q) as the series sum_k binom(p-1,k)(-1)^k/(q+k), Re(p) > 0.
Evaluation beta_series(Cplx p, Cplx q, double tol, std::size_t max_terms);

/// Normalized cardinal sine: 1 at z = 0, else sin(pi z)/(pi z).
Cplx sinc(Cplx z);

/// Sine integral int_0^z sin(t)/t dt along the straight segment (entire).
Cplx si(Cplx z);

/// Indicator of (-1/2, 1/2); value 0 on the boundary.
double rect(double x);

}  // namespace cbinom

#endif
