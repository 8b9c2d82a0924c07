#include <cbinom/binomial.hpp>

#include <cbinom/special.hpp>

#include <algorithm>
#include <cmath>

#include "gk15.hpp"

namespace cbinom {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct KahanSum {
  Cplx sum{0.0, 0.0};
  Cplx comp{0.0, 0.0};
  void add(Cplx term) {
    const Cplx y = term - comp;
    const Cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

// |sinc(z-k)| <= cosh(pi Im z) / (pi |k - Re z|) for k past Re z.
double sinc_envelope(Cplx z, double k) {
  const double denom = kPi * std::max(1.0, k - z.real());
  return std::cosh(kPi * z.imag()) / denom;
}

// Algebraic ratio a_k/a_{k+1} of the series moduli (the sinc factors share
// |sin(pi z)|, so it cancels).
double series_modulus_ratio(Cplx w, Cplx z, double k) {
  return (k + 1.0) * std::abs(z - k - 1.0) /
         (std::abs(w - k) * std::abs(z - k));
}

}  // namespace

Cplx binom_int_k(Cplx w, long k) {
  if (k < 0) return {0.0, 0.0};
  Cplx prod{1.0, 0.0};
  for (long j = 1; j <= k; ++j) {
    prod *= (w - double(j - 1)) / double(j);
    if (std::abs(prod.real()) > 1e300 || std::abs(prod.imag()) > 1e300) {
      throw OverflowError("binom_int_k: intermediate product overflow");
    }
  }
  return prod;
}

Cplx binom_gamma(Cplx w, Cplx z) {
  if (near_nonpositive_integer(w + 1.0, 1e-14)) {
    throw DomainError("binom_gamma: w must not be a negative integer");
  }
  // Denominator gamma at a pole while the numerator is finite: the
  // reciprocal gamma vanishes there, so the coefficient is exactly 0.
  if (near_nonpositive_integer(z + 1.0, 1e-12) ||
      near_nonpositive_integer(w - z + 1.0, 1e-12)) {
    return {0.0, 0.0};
  }
  const Cplx lg = log_gamma(w + 1.0) - log_gamma(z + 1.0) - log_gamma(w - z + 1.0);
  if (lg.real() > 709.0) {
    throw OverflowError("binom_gamma: result exceeds the double range");
  }
  return std::exp(lg);
}

namespace {

// Double-double building blocks (error-free transformations). The finite
// sinc sum cancels down from O(2^m) terms to an O(m!/|z|^{m+1}) result, so
// for |z| ~ 20 and m ~ 12 plain doubles lose up to ~13 digits; carrying the
// partial-fraction accumulation at twice the precision keeps the full 1e-9
// contract with lots of margin.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_renorm(double hi, double lo) {
  const double s = hi + lo;
  return {s, lo - (s - hi)};
}

inline DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  return quick_renorm(s.hi, s.lo + a.lo + b.lo);
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD dd_mul(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  return quick_renorm(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_mul_d(DD a, double b) {
  DD p = two_prod(a.hi, b);
  return quick_renorm(p.hi, p.lo + a.lo * b);
}

inline DD dd_div(DD a, DD b) {
  const double q1 = a.hi / b.hi;
  DD r = dd_add(a, dd_neg(dd_mul_d(b, q1)));
  const double q2 = r.hi / b.hi;
  r = dd_add(r, dd_neg(dd_mul_d(b, q2)));
  const double q3 = r.hi / b.hi;
  DD q = quick_renorm(q1, q2);
  return dd_add(q, DD{q3, 0.0});
}

}  // namespace

Cplx binom_sinc_finite(long m, Cplx z) {
  if (m < 0) throw DomainError("binom_sinc_finite: m must be nonnegative");
  // Near a lattice point of the sum one term dominates and there is no
  // cancellation; sum the sinc terms directly. Likewise fall back when
  // sin(pi z) would overflow.
  bool near_lattice = false;
  if (std::abs(z.imag()) < 1e-6) {
    const double n = std::nearbyint(z.real());
    if (n >= 0.0 && n <= double(m) &&
        std::hypot(z.real() - n, z.imag()) < 1e-6) {
      near_lattice = true;
    }
  }
  if (near_lattice || std::abs(z.imag()) > 200.0) {
    KahanSum acc;
    Cplx binom{1.0, 0.0};
    for (long k = 0; k <= m; ++k) {
      acc.add(binom * sinc(z - double(k)));
      binom *= (double(m) - double(k)) / double(k + 1);
    }
    return acc.sum;
  }
  // Off the lattice every term shares the factor sin(pi z) up to sign:
  // sum = sin(pi z)/pi * sum_k (-1)^k C(m,k) / (z - k). The inner sum is
  // accumulated in double-double, with each pole difference z - k held
  // exactly as a two-term expansion.
  DD sum_re{0.0, 0.0};
  DD sum_im{0.0, 0.0};
  double coeff = 1.0;  // (-1)^k C(m,k)
  for (long k = 0; k <= m; ++k) {
    const DD c = two_sum(z.real(), -double(k));
    const DD d{z.imag(), 0.0};
    const DD denom = dd_add(dd_mul(c, c), dd_mul(d, d));
    sum_re = dd_add(sum_re, dd_div(dd_mul_d(c, coeff), denom));
    sum_im = dd_add(sum_im, dd_div(dd_mul_d(d, -coeff), denom));
    // Multiply before dividing: the intermediate product and the quotient
    // are both integers, so the coefficient stays exact (the pre-divided
    // ratio (m-k)/(k+1) would round and the cancellation amplifies that).
    coeff = -(coeff * (double(m) - double(k))) / double(k + 1);
  }
  const Cplx inner{sum_re.hi + sum_re.lo, sum_im.hi + sum_im.lo};
  return sin_pi(z) / kPi * inner;
}

namespace detail {

Cplx euler_maclaurin_tail(const std::function<Cplx(double)>& phi, double a,
                          double* err_estimate) {
  const Cplx p0 = phi(a);
  // int_a^inf phi(x) dx via x = a e^t: the transformed integrand decays like
  // e^{-p t} with a fixed oscillation frequency, which adaptive bisection
  // handles segment by segment (the 1/u substitution would oscillate at every
  // scale for complex exponents).
  double qerr = 0.0;
  // |p0| * a estimates the integral scale; 1e-10 relative is far below the
  // Euler--Maclaurin truncation error itself, and requesting much more than
  // that only drives the bisection into its roundoff floor.
  const double jtol = 1e-10 * (std::abs(p0) * a + 1e-300);
  const auto transformed = [&](double t) {
    const double x = a * std::exp(t);
    return phi(x) * x;
  };
  Cplx integral{0.0, 0.0};
  const double seg = 4.0;
  for (double t0 = 0.0; t0 < 700.0; t0 += seg) {
    const Cplx part =
        adaptive_gk15(transformed, t0, t0 + seg, jtol, 24, &qerr);
    integral += part;
    if (t0 >= 2.0 * seg &&
        std::abs(part) <= 1e-17 * (std::abs(integral) + 1e-300)) {
      break;
    }
  }
  const double h1 = 0.125;
  const Cplx d1 = (phi(a + h1) - phi(a - h1)) / (2.0 * h1);
  const Cplx d3 =
      (phi(a + 1.0) - 2.0 * phi(a + 0.5) + 2.0 * phi(a - 0.5) - phi(a - 1.0)) /
      0.25;
  const Cplx tail = integral + p0 / 2.0 - d1 / 12.0 + d3 / 720.0;
  if (err_estimate != nullptr) {
    // Dominated by the finite-difference error in the phi'/12 term and the
    // dropped B6 term.
    *err_estimate = qerr + 2e-3 * std::abs(d3) + 1e-16 * std::abs(integral);
  }
  return tail;
}

}  // namespace detail

std::pair<Evaluation, SeriesDiagnostics> binom_sinc_series(
    const BinomialArgs& args, const EvalOptions& opts) {
  const Cplx w = args.w;
  const Cplx z = args.z;
  if (!(w.real() > -1.0)) {
    throw DomainError("binom_sinc_series: requires Re(w) > -1");
  }

  Evaluation ev;
  SeriesDiagnostics diag;
  const double tol = opts.abs_tol;
  const std::size_t plain_cap = std::min<std::size_t>(opts.max_terms, 200000);
  const double p = w.real() + 1.0;  // tail bound decay exponent

  KahanSum acc;
  Cplx binom{1.0, 0.0};
  double bound = 0.0;
  bool plain_converged = false;
  bool switch_to_em = false;
  std::size_t k = 0;
  for (; k < plain_cap; ++k) {
    const Cplx term = binom * sinc(z - double(k));
    acc.add(term);
    diag.last_term_modulus = std::abs(term);
    const double kk = double(k);
    bound = 2.0 * std::abs(binom) * sinc_envelope(z, kk) * std::max(kk, 1.0) / p;
    if (k >= 32 && kk > z.real() + 2.0 && bound <= tol) {
      plain_converged = true;
      ++k;
      break;
    }
    if (k == 4096 && kk > z.real() + 2.0) {
      // Projected bound at the budget cap; bail out to the analytic tail
      // when plain truncation cannot get there.
      const double projected = bound * std::pow(double(plain_cap) / kk, -p);
      if (projected > tol) {
        ++k;
        switch_to_em = true;
        break;
      }
    }
    binom *= (w - double(k)) / double(k + 1);
  }
  diag.terms_used = k;
  ev.terms_used = k;

  if (plain_converged) {
    ev.value = acc.sum;
    ev.abs_error_estimate = bound;
    diag.tail_estimate = bound;
    ev.converged = true;
  } else {
    // Analytic tail: sum_{j>=a} phi(j) with the smooth continuation of the
    // terms, summed by Euler--Maclaurin. The sinc factor's (-1)^k cancels
    // against the one inside C(w,k), leaving an algebraically decaying phi.
    bool em_ok = switch_to_em || k == plain_cap;
    Cplx d{0.0, 0.0};
    if (em_ok) {
      try {
        d = -gamma(w + 1.0) * sin_pi(w) * sin_pi(z) / (kPi * kPi);
      } catch (const Error&) {
        em_ok = false;
      }
    }
    if (em_ok && double(k) > std::abs(z) + 2.0 && double(k) > w.real() + 2.0) {
      const double a = double(k);
      const auto phi = [&](double x) -> Cplx {
        return d *
               std::exp(log_gamma_ratio(Cplx(x + 1.0, 0.0), -w - 1.0)) /
               (z - x);
      };
      double em_err = 0.0;
      Cplx tail{0.0, 0.0};
      if (d != Cplx{0.0, 0.0}) {
        tail = detail::euler_maclaurin_tail(phi, a, &em_err);
      }
      acc.add(tail);
      diag.tail_corrected = true;
      ev.value = acc.sum;
      ev.abs_error_estimate =
          10.0 * em_err + 5e-13 * (1.0 + std::abs(acc.sum));
      diag.tail_estimate = ev.abs_error_estimate;
      ev.converged = ev.abs_error_estimate <=
                     opts.tolerance_for(std::abs(acc.sum));
    } else {
      ev.value = acc.sum;
      ev.abs_error_estimate = bound;
      diag.tail_estimate = bound;
      ev.converged = false;
    }
  }

  if (diag.terms_used >= 64) {
    const double kk = double(diag.terms_used);
    diag.empirical_raabe_limit =
        kk * (series_modulus_ratio(w, z, kk) - 1.0);
  }
  return {ev, diag};
}

Evaluation binom_eval(const BinomialArgs& args, const EvalOptions& opts) {
  Method method = opts.method;
  if (method == Method::Auto) {
    if (near_nonpositive_integer(args.w + 1.0, 1e-14)) {
      throw DomainError("binom_eval: no route valid for w in Z_{<=-1}");
    }
    method = Method::GammaRatio;
  }
  switch (method) {
    case Method::GammaRatio: {
      Evaluation ev;
      ev.value = binom_gamma(args.w, args.z);
      ev.abs_error_estimate = 1e-12 * (1.0 + std::abs(ev.value));
      ev.terms_used = 1;
      ev.converged =
          ev.abs_error_estimate <= opts.tolerance_for(std::abs(ev.value));
      return ev;
    }
    case Method::FiniteSincSum: {
      const double m = std::nearbyint(args.w.real());
      if (m < 0.0 || std::hypot(args.w.real() - m, args.w.imag()) > 1e-12) {
        throw DomainError(
            "binom_eval: finite sinc sum requires a nonnegative integer w");
      }
      Evaluation ev;
      ev.value = binom_sinc_finite(long(m), args.z);
      ev.terms_used = std::size_t(m) + 1;
      ev.abs_error_estimate = 1e-13 * (m + 1.0) * (1.0 + std::abs(ev.value));
      ev.converged = true;
      return ev;
    }
    case Method::InfiniteSincSeries:
      return binom_sinc_series(args, opts).first;
    case Method::Auto:
      break;
  }
  throw DomainError("binom_eval: unresolved method");
}

Evaluation binom_theorem_sum(Cplx w, Cplx z, const EvalOptions& opts) {
  Evaluation ev;
  const double wm = std::nearbyint(w.real());
  const bool w_nonneg_int =
      wm >= 0.0 && std::hypot(w.real() - wm, w.imag()) <= 1e-12;
  const double az = std::abs(z);
  const bool on_circle = std::abs(az - 1.0) <= 1e-12;
  const bool z_minus_one = std::abs(z + 1.0) <= 1e-12;

  if (w_nonneg_int) {
    KahanSum acc;
    Cplx binom{1.0, 0.0};
    Cplx zp{1.0, 0.0};
    for (long k = 0; k <= long(wm); ++k) {
      acc.add(binom * zp);
      binom *= (w - double(k)) / double(k + 1);
      zp *= z;
    }
    ev.value = acc.sum;
    ev.terms_used = std::size_t(wm) + 1;
    ev.abs_error_estimate = 1e-14 * (1.0 + std::abs(acc.sum)) * (wm + 1.0);
    ev.converged = true;
    return ev;
  }
  if (z_minus_one) {
    if (!(w.real() > 0.0)) {
      throw DomainError("binom_theorem_sum: z = -1 requires Re(w) > 0");
    }
  } else if (on_circle) {
    if (!(w.real() > -1.0)) {
      throw DomainError("binom_theorem_sum: |z| = 1 requires Re(w) > -1");
    }
  } else if (az >= 1.0) {
    throw DomainError(
        "binom_theorem_sum: |z| > 1 diverges unless w is a nonnegative integer");
  }

  KahanSum acc;
  Cplx term{1.0, 0.0};  // binom(w,k) z^k
  double tail = 0.0;
  for (std::size_t k = 0; k < opts.max_terms; ++k) {
    acc.add(term);
    const double at = std::abs(term);
    const double kk = double(k);
    if (z_minus_one) {
      tail = 2.0 * at * std::max(kk, 1.0) / w.real();
    } else if (on_circle) {
      tail = 2.0 * at / std::abs(1.0 + z);
    } else {
      const double rho = az * (kk + std::abs(w)) / (kk + 1.0);
      tail = rho < 1.0 ? at * rho / (1.0 - rho) : at * 1e6;
    }
    ev.terms_used = k + 1;
    if (k >= 16 && tail <= opts.tolerance_for(std::abs(acc.sum))) {
      ev.value = acc.sum;
      ev.abs_error_estimate = tail;
      ev.converged = true;
      return ev;
    }
    term *= (w - kk) / (kk + 1.0) * z;
  }
  ev.value = acc.sum;
  ev.abs_error_estimate = tail;
  ev.converged = false;
  return ev;
}

Cplx binom_fourier_transform(Cplx w, double xi) {
  const bool w_zero = std::abs(w) <= 1e-14;
  if (!(w.real() > 0.0) && !w_zero) {
    throw DomainError("binom_fourier_transform: requires Re(w) > 0 or w = 0");
  }
  if (rect(xi) == 0.0) return {0.0, 0.0};
  if (w_zero) return {1.0, 0.0};
  const Cplx arg = 1.0 + std::exp(Cplx(0.0, -2.0 * kPi * xi));
  return std::exp(w * std::log(arg));
}

double raabe_rate(Cplx w, Cplx z, long k_max) {
  if (!(w.real() > -1.0)) throw DomainError("raabe_rate: requires Re(w) > -1");
  if (k_max < 64) throw DomainError("raabe_rate: requires k_max >= 64");
  const double zn = std::nearbyint(z.real());
  if (zn >= 0.0 && zn <= double(k_max) &&
      std::hypot(z.real() - zn, z.imag()) <= 1e-12) {
    throw DomainError("raabe_rate: z must not be a nonnegative integer <= k_max");
  }
  const double k = double(k_max);
  if (std::abs(w - k) <= 1e-12) {
    throw DomainError("raabe_rate: w coincides with k_max");
  }
  return k * (series_modulus_ratio(w, z, k) - 1.0);
}

}  // namespace cbinom
