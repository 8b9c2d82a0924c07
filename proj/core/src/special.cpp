#include <cbinom/special.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "gk15.hpp"

namespace cbinom {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogPi = 1.14472988584940017414;
constexpr double kSqrt2Pi = 2.5066282746310005024;

// Lanczos coefficients, g = 607/128, as popularized by Godfrey.
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr std::array<double, 14> kLanczosC = {
    57.1562356658629235,     -59.5979603554754912,
    14.1360979747417471,     -0.491913816097620199,
    0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3,
    -0.210264441724104883e-3, 0.217439618115212643e-3,
    -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5};
constexpr double kLanczosG = 4.7421875;

// log Gamma on Re(z) >= 1/2 only.
Cplx log_gamma_core(Cplx z) {
  Cplx ser{kLanczosC0, 0.0};
  for (int j = 0; j < 14; ++j) ser += kLanczosC[j] / (z + double(j + 1));
  const Cplx t = z + (kLanczosG + 0.5);
  return (z + 0.5) * std::log(t) - t + std::log(kSqrt2Pi * ser / z);
}

// log(sin(pi z)), safe against overflow for large |Im z|.
Cplx log_sin_pi(Cplx z) {
  if (std::abs(z.imag()) < 100.0) return std::log(sin_pi(z));
  // sin(pi z) ~ -+ e^{-+ i pi z} / (2 i) as Im(z) -> +-inf
  const double m = std::nearbyint(z.real());
  const Cplx zr{z.real() - m, z.imag()};
  const Cplx ipiz = Cplx(0.0, kPi) * zr;
  Cplx lg;
  if (z.imag() > 0.0) {
    lg = -ipiz + std::log(Cplx(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * ipiz));
  } else {
    lg = ipiz + std::log(Cplx(0.0, -0.5)) + std::log(1.0 - std::exp(-2.0 * ipiz));
  }
  if (long(m) % 2 != 0) lg += Cplx(0.0, kPi);  // factor (-1)^m
  return lg;
}

}  // namespace

Cplx sin_pi(Cplx z) {
  double re = z.real();
  if (std::abs(re) > 9.0e15) re = std::fmod(re, 2.0);
  const double m = std::nearbyint(re);
  const Cplx s = std::sin(kPi * Cplx(re - m, z.imag()));
  return (std::fmod(m, 2.0) != 0.0) ? -s : s;
}

Cplx cos_pi(Cplx z) {
  double re = z.real();
  if (std::abs(re) > 9.0e15) re = std::fmod(re, 2.0);
  const double m = std::nearbyint(re);
  const Cplx c = std::cos(kPi * Cplx(re - m, z.imag()));
  return (std::fmod(m, 2.0) != 0.0) ? -c : c;
}

bool near_nonpositive_integer(Cplx z, double eps, long* which) {
  const double n = std::nearbyint(z.real());
  if (n > 0.5) return false;
  if (std::hypot(z.real() - n, z.imag()) > eps) return false;
  if (which != nullptr) *which = long(n);
  return true;
}

Cplx log_gamma(Cplx z) {
  if (near_nonpositive_integer(z, 1e-14)) {
    throw PoleError("log_gamma: argument at a nonpositive integer");
  }
  if (z.real() < 0.5) {
    // Reflection keeps the Lanczos sum on its accurate half-plane.
    return kLogPi - log_sin_pi(z) - log_gamma_core(1.0 - z);
  }
  return log_gamma_core(z);
}

Cplx gamma(Cplx z) {
  const Cplx lg = log_gamma(z);
  if (lg.real() > 709.0) {
    throw OverflowError("gamma: |Gamma(z)| exceeds the double range");
  }
  return std::exp(lg);
}

namespace {

Cplx log1p_cplx(Cplx u) {
  if (std::abs(u) > 0.25) return std::log(1.0 + u);
  Cplx term = u;
  Cplx sum = u;
  for (int n = 2; n < 40; ++n) {
    term *= -u;
    sum += term / double(n);
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

Cplx log_gamma_ratio(Cplx b, Cplx delta) {
  const Cplx a = b + delta;
  if (a.real() < 0.5 || b.real() < 0.5) return log_gamma(a) - log_gamma(b);
  // Same Lanczos approximation as log_gamma_core, rearranged so the two
  // (z+1/2)log(t)-t terms are combined analytically instead of subtracted.
  // The rounded a only enters terms that are insensitive to it; every term
  // proportional to the shift uses the exact delta.
  const Cplx d = delta;
  const Cplx tb = b + (kLanczosG + 0.5);
  Cplx ser_a{kLanczosC0, 0.0};
  Cplx ser_b{kLanczosC0, 0.0};
  for (int j = 0; j < 14; ++j) {
    ser_a += kLanczosC[j] / (a + double(j + 1));
    ser_b += kLanczosC[j] / (b + double(j + 1));
  }
  const Cplx L = log1p_cplx(d / tb);  // log(t_a / t_b)
  return d * std::log(tb) + (a + 0.5) * L - d + std::log(ser_a / ser_b) +
         log1p_cplx(-d / a);  // log(b/a)
}

Cplx reciprocal_gamma_weierstrass(Cplx z, std::size_t n_factors) {
  Cplx prod = z * std::exp(kEulerGamma * z);
  for (std::size_t k = 1; k <= n_factors; ++k) {
    const Cplx zk = z / double(k);
    prod *= (1.0 + zk) * std::exp(-zk);
  }
  return prod;
}

Cplx beta_gamma(Cplx p, Cplx q) {
  if (near_nonpositive_integer(p, 1e-14) || near_nonpositive_integer(q, 1e-14)) {
    throw PoleError("beta_gamma: p and q must avoid nonpositive integers");
  }
  return std::exp(log_gamma(p) + log_gamma(q) - log_gamma(p + q));
}

Evaluation beta_series(Cplx p, Cplx q, double tol, std::size_t max_terms) {
  if (!(p.real() > 0.0)) {
    throw DomainError("beta_series: requires Re(p) > 0");
  }
  if (near_nonpositive_integer(q, 1e-14)) {
    throw DomainError("beta_series: q at a nonpositive integer");
  }
  if (max_terms < 1) throw DomainError("beta_series: max_terms must be >= 1");

  Cplx binom{1.0, 0.0};  // binom(p-1, k)
  Cplx sum{0.0, 0.0};
  Cplx comp{0.0, 0.0};  // Kahan compensation
  double sign = 1.0;
  Evaluation ev;
  for (std::size_t k = 0; k < max_terms; ++k) {
    const Cplx term = binom * sign / (q + double(k));
    const Cplx y = term - comp;
    const Cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    ev.terms_used = k + 1;
    const double tail = std::abs(term) * double(k) / p.real();
    if (k >= 8 && tail <= tol) {
      ev.value = sum;
      ev.abs_error_estimate = tail;
      ev.converged = true;
      return ev;
    }
    binom *= (p - 1.0 - double(k)) / double(k + 1);
    sign = -sign;
    if (binom == Cplx{0.0, 0.0}) {  // p-1 a nonnegative integer: sum is finite
      ev.value = sum;
      ev.abs_error_estimate = 0.0;
      ev.converged = true;
      return ev;
    }
  }
  ev.value = sum;
  ev.abs_error_estimate =
      std::abs(binom / (q + double(max_terms))) * double(max_terms) / p.real();
  ev.converged = false;
  return ev;
}

Cplx sinc(Cplx z) {
  if (std::abs(z) < 1e-4) {
    const Cplx u = (kPi * z) * (kPi * z);
    return 1.0 - u / 6.0 + u * u / 120.0;
  }
  return sin_pi(z) / (kPi * z);
}

namespace {

// Power series for Si, good to roundoff for |z| <= 8.
Cplx si_series(Cplx z) {
  const Cplx mz2 = -z * z;
  Cplx term = z;
  Cplx sum = z;
  for (int n = 0; n < 120; ++n) {
    const double a = 2.0 * n + 1.0;
    const double b = 2.0 * n + 3.0;
    term *= mz2 * a / (b * b * (a + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Auxiliary asymptotic sums: Si(x) = pi/2 - f(x) cos x - g(x) sin x, x >= 40.
void si_asymptotic_aux(double x, double* f, double* g) {
  const double x2 = x * x;
  double tf = 1.0 / x;
  double tg = 1.0 / x2;
  double sf = tf;
  double sg = tg;
  for (int n = 1; n <= 24; ++n) {
    tf *= -(2.0 * n - 1.0) * (2.0 * n) / x2;
    tg *= -(2.0 * n) * (2.0 * n + 1.0) / x2;
    if (std::abs(tf) > std::abs(sf) || std::abs(tg) > std::abs(sg)) break;
    sf += tf;
    sg += tg;
    if (std::abs(tf) < 1e-18 && std::abs(tg) < 1e-18) break;
  }
  *f = sf;
  *g = sg;
}

double si_real(double x) {
  const double ax = std::abs(x);
  if (ax <= 8.0) return si_series(Cplx(x, 0.0)).real();
  double value;
  if (ax >= 40.0) {
    double f, g;
    si_asymptotic_aux(ax, &f, &g);
    value = kPi / 2.0 - f * std::cos(ax) - g * std::sin(ax);
  } else {
    static const double si8 = si_series(Cplx(8.0, 0.0)).real();
    double err = 0.0;
    const Cplx tail = detail::adaptive_gk15(
        [](double t) { return Cplx(std::sin(t) / t, 0.0); }, 8.0, ax, 1e-13, 40,
        &err);
    value = si8 + tail.real();
  }
  return x < 0.0 ? -value : value;
}

}  // namespace

Cplx si(Cplx z) {
  if (z.imag() == 0.0) return Cplx(si_real(z.real()), 0.0);
  const double az = std::abs(z);
  if (az <= 8.0) return si_series(z);
  // Straight-segment quadrature from |z| = 8 outward; Si is entire so the
  // path does not matter.
  const Cplx z8 = z * (8.0 / az);
  const Cplx dir = z - z8;
  double err = 0.0;
  const Cplx tail = detail::adaptive_gk15(
      [&](double s) {
        const Cplx t = z8 + s * dir;
        return std::sin(t) / t * dir;
      },
      0.0, 1.0, 1e-13, 48, &err);
  return si_series(z8) + tail;
}

double rect(double x) { return std::abs(x) < 0.5 ? 1.0 : 0.0; }

}  // namespace cbinom
