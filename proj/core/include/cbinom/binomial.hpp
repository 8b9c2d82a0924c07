#ifndef CBINOM_BINOMIAL_HPP
#define CBINOM_BINOMIAL_HPP

#include <cbinom/errors.hpp>
#include <cbinom/types.hpp>

#include <functional>
#include <utility>

namespace cbinom {

struct BinomialArgs {
  Cplx w;  // upper argument
  Cplx z;  // lower argument
};

/// Convergence bookkeeping for the infinite sinc series.
struct SeriesDiagnostics {
  std::size_t terms_used = 0;
  double last_term_modulus = 0.0;
  double tail_estimate = 0.0;
  double empirical_raabe_limit = 0.0;
  /// True when the analytic Euler--Maclaurin tail correction was applied
  /// (slowly converging cases with Re(w) close to -1).
  bool tail_corrected = false;
};

/// C(w,k) for integer k: falling-factorial product for k >= 1, 1 at k = 0,
/// 0 for k < 0.
Cplx binom_int_k(Cplx w, long k);

/// C(w,z) = Gamma(w+1) / (Gamma(z+1) Gamma(w-z+1)), w not in Z_{<=-1}.
/// Returns exactly 0 when a denominator gamma sits on a pole while the
/// numerator does not.
Cplx binom_gamma(Cplx w, Cplx z);
inline Cplx binom_gamma(const BinomialArgs& a) { return binom_gamma(a.w, a.z); }

/// Finite sinc sum: sum_{k=0}^{m} C(m,k) sinc(z-k); equals C(m,z) for all
/// complex z.
Cplx binom_sinc_finite(long m, Cplx z);

/// Infinite sinc series sum_{k>=0} C(w,k) sinc(z-k), Re(w) > -1.
/// Returns the best partial sum with converged=false when the budget runs out.
std::pair<Evaluation, SeriesDiagnostics> binom_sinc_series(
    const BinomialArgs& args, const EvalOptions& opts);

/// Method dispatcher. Auto picks GammaRatio whenever valid.
Evaluation binom_eval(const BinomialArgs& args, const EvalOptions& opts);

/// Partial sums of the generalized binomial theorem sum_k C(w,k) z^k,
/// converging to (1+z)^w (principal branch), or to 0 at z = -1, Re(w) > 0.
Evaluation binom_theorem_sum(Cplx w, Cplx z, const EvalOptions& opts);

/// Closed-form Fourier transform of x -> C(w,x):
/// (1 + e^{-2 pi i xi})^w rect(xi), valid for Re(w) > 0 or w = 0.
Cplx binom_fourier_transform(Cplx w, double xi);

/// Empirical convergence-rate diagnostic k*(a_k/a_{k+1} - 1) at k = k_max for
/// a_k = |C(w,k) sinc(z-k)|; tends to 2 + Re(w).
double raabe_rate(Cplx w, Cplx z, long k_max);

namespace detail {

/// Remainder sum_{k = a}^{inf} phi(k) for a smooth algebraically decaying
/// continuation phi of the series terms, by Euler--Maclaurin summation.
/// Shared by the sinc series and the identity-suite series.
Cplx euler_maclaurin_tail(const std::function<Cplx(double)>& phi, double a,
                          double* err_estimate);

}  // namespace detail

}  // namespace cbinom

#endif
