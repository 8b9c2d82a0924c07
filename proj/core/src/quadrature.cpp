#include <cbinom/quadrature.hpp>

#include <cbinom/binomial.hpp>
#include <cbinom/special.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "gk15.hpp"

namespace cbinom {
namespace detail {

Cplx adaptive_gk15(const std::function<Cplx(double)>& f, double a, double b,
                   double tol, int max_depth, double* err,
                   std::size_t* panels) {
  const Gk15Result r = gk15(f, a, b);
  if (panels != nullptr) ++*panels;
  const double width = b - a;
  // Panels whose error estimate sits at the roundoff floor of their own
  // integral cannot improve under bisection; accept them regardless of the
  // requested share to keep the recursion from exploding.
  const double floor_tol = 1e-15 * std::abs(r.integral);
  if (r.error <= std::max(tol, floor_tol) || max_depth <= 0 ||
      width <= 1e-15 * (std::abs(a) + std::abs(b) + 1.0)) {
    if (err != nullptr) *err += r.error;
    return r.integral;
  }
  const double m = 0.5 * (a + b);
  return adaptive_gk15(f, a, m, 0.5 * tol, max_depth - 1, err, panels) +
         adaptive_gk15(f, m, b, 0.5 * tol, max_depth - 1, err, panels);
}

namespace {

// Wynn epsilon extrapolation of a sequence of partial sums. The error
// estimate is the spread between the last stable even-column entries.
Cplx wynn_epsilon(const std::vector<Cplx>& sums, double* err_estimate) {
  const std::size_t n = sums.size();
  if (n == 0) {
    if (err_estimate) *err_estimate = 0.0;
    return {0.0, 0.0};
  }
  std::vector<Cplx> prev(n, Cplx{0.0, 0.0});  // epsilon_{-1}
  std::vector<Cplx> cur = sums;               // epsilon_0
  Cplx best = sums.back();
  Cplx last_even = sums.back();
  double best_change = std::abs(n > 1 ? sums[n - 1] - sums[n - 2] : sums[0]);
  for (int col = 1; cur.size() > 1; ++col) {
    std::vector<Cplx> next(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const Cplx diff = cur[i + 1] - cur[i];
      if (std::abs(diff) < 1e-290) {
        // Sequence numerically converged at this entry.
        if (err_estimate) *err_estimate = std::abs(diff);
        return cur[i + 1];
      }
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (col % 2 == 0) {
      const Cplx cand = cur.back();
      const double change = std::abs(cand - last_even);
      if (change < best_change) {
        best_change = change;
        best = cand;
      }
      last_even = cand;
    }
  }
  if (err_estimate) *err_estimate = best_change;
  return best;
}

}  // namespace
}  // namespace detail

Evaluation integrate_finite(const Integrand& f, double a, double b,
                            const QuadratureSpec& spec) {
  if (!(a < b)) throw DomainError("integrate_finite: requires a < b");
  Evaluation ev;
  double err = 0.0;
  std::size_t panels = 0;
  // Depth limit chosen so the panel count cannot exceed max_panels.
  int max_depth = 1;
  while ((std::size_t(1) << max_depth) < spec.max_panels && max_depth < 48) {
    ++max_depth;
  }
  ev.value = detail::adaptive_gk15(f, a, b, spec.panel_tol, max_depth, &err,
                                   &panels);
  ev.abs_error_estimate = err;
  ev.terms_used = panels;
  ev.converged = err <= 4.0 * spec.panel_tol && panels <= spec.max_panels;
  return ev;
}

namespace {

// One period-aligned panel [c - p/4, c + 3p/4]; the quarter offset keeps
// quadrature nodes off the integer lattice.
Cplx osc_panel(const Integrand& f, double center, double period, double tol,
               double* err, std::size_t* panels) {
  return detail::adaptive_gk15(f, center - 0.25 * period,
                               center + 0.75 * period, tol, 24, err, panels);
}

}  // namespace

Evaluation integrate_line(const Integrand& f, const QuadratureSpec& spec) {
  Evaluation ev;
  if (spec.oscillation_period.has_value()) {
    const double p = *spec.oscillation_period;
    if (!(p > 0.0)) throw DomainError("integrate_line: bad oscillation_period");
    const long central =
        std::max<long>(8, long(std::ceil(spec.truncation_radius > 0.0
                                             ? spec.truncation_radius
                                             : 8.0)));
    const long tail_len = 48;
    double err = 0.0;
    std::size_t panels = 0;
    const double ptol = spec.panel_tol / double(2 * central + 2 * tail_len);
    Cplx center_sum{0.0, 0.0};
    for (long m = -central; m <= central; ++m) {
      center_sum += osc_panel(f, double(m) * p, p, ptol, &err, &panels);
    }
    double tail_err_total = 0.0;
    Cplx tails{0.0, 0.0};
    for (int side = 0; side < 2; ++side) {
      std::vector<Cplx> partial;
      partial.reserve(tail_len);
      Cplx run{0.0, 0.0};
      for (long j = 1; j <= tail_len; ++j) {
        const long m = side == 0 ? central + j : -central - j;
        run += osc_panel(f, double(m) * p, p, ptol, &err, &panels);
        partial.push_back(run);
      }
      double tail_err = 0.0;
      tails += detail::wynn_epsilon(partial, &tail_err);
      tail_err_total += tail_err;
    }
    ev.value = center_sum + tails;
    ev.abs_error_estimate = err + 2.0 * tail_err_total;
    ev.terms_used = panels;
    ev.converged = ev.abs_error_estimate <=
                   std::max(100.0 * spec.panel_tol, 1e-9) +
                       1e-12 * std::abs(ev.value);
    return ev;
  }

  // Plain symmetric truncation with an analytic algebraic tail bound.
  const double radius =
      spec.truncation_radius > 0.0 ? spec.truncation_radius : 100.0;
  const double f_r = std::abs(f(radius)) + std::abs(f(-radius));
  const double f_h = std::abs(f(0.5 * radius)) + std::abs(f(-0.5 * radius));
  double tail = 0.0;
  if (f_r > 0.0) {
    const double q = std::log2(f_h / f_r);
    if (q <= 1.01) {
      throw DivergentTailError(
          "integrate_line: integrand does not decay faster than 1/|x|");
    }
    tail = f_r * radius / (q - 1.0);
  }
  QuadratureSpec inner = spec;
  Evaluation ev2 = integrate_finite(f, -radius, radius, inner);
  ev2.abs_error_estimate += tail;
  ev2.converged = ev2.converged && tail <= std::max(spec.panel_tol * 100.0, 1e-9);
  return ev2;
}

// ---------------------------------------------------------------------------
// Kernels

Kernel Kernel::rational_simple(Cplx alpha) {
  const double n = std::nearbyint(alpha.real());
  const bool pos_int =
      n >= 1.0 && std::hypot(alpha.real() - n, alpha.imag()) <= 1e-12;
  if (!(alpha.imag() > 0.0) && !pos_int) {
    throw DomainError(
        "Kernel::rational_simple: requires Im(alpha) > 0 or alpha in Z_{>=1}");
  }
  return Kernel(Id::RationalSimple, alpha);
}

Kernel Kernel::rational_square(Cplx alpha) {
  if (!(alpha.real() > 0.0)) {
    throw DomainError("Kernel::rational_square: requires Re(alpha) > 0");
  }
  return Kernel(Id::RationalSquare, alpha);
}

Kernel Kernel::sech(Cplx alpha) {
  if (!(alpha.real() > 0.0)) {
    throw DomainError("Kernel::sech: requires Re(alpha) > 0");
  }
  return Kernel(Id::Sech, alpha);
}

Kernel Kernel::sinc_shift(Cplx a) { return Kernel(Id::SincShift, a); }

Kernel Kernel::tabulated(std::vector<double> xi, std::vector<Cplx> fhat) {
  if (xi.size() != fhat.size()) {
    throw DomainError("Kernel::tabulated: grid/value size mismatch");
  }
  if (xi.size() < 64) {
    throw DomainError("Kernel::tabulated: needs at least 64 grid points");
  }
  if (std::abs(xi.front() + 0.5) > 1e-9 || std::abs(xi.back() - 0.5) > 1e-9) {
    throw DomainError("Kernel::tabulated: grid must cover [-1/2, 1/2]");
  }
  const double h = 1.0 / double(xi.size() - 1);
  for (std::size_t i = 1; i < xi.size(); ++i) {
    const double d = xi[i] - xi[i - 1];
    if (!(d > 0.0)) {
      throw DomainError("Kernel::tabulated: grid must be strictly increasing");
    }
    if (std::abs(d - h) > 1e-6) {
      throw DomainError("Kernel::tabulated: grid must be uniform");
    }
  }
  Kernel k(Id::Tabulated, Cplx{0.0, 0.0});
  k.grid_ = std::move(xi);
  k.table_ = std::move(fhat);
  return k;
}

Kernel Kernel::tabulated_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("Kernel::tabulated_from_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw DomainError("Kernel::tabulated_from_csv: empty file");
  }
  // tolerate whitespace and \r in the header
  std::string header;
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) header += c;
  }
  if (header != "xi,re,im") {
    throw DomainError("Kernel::tabulated_from_csv: expected header xi,re,im");
  }
  std::vector<double> xi;
  std::vector<Cplx> vals;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::istringstream row(line);
    std::string field;
    double v[3];
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(row, field, ',')) {
        throw DomainError("Kernel::tabulated_from_csv: short row: " + line);
      }
      try {
        v[i] = std::stod(field);
      } catch (const std::exception&) {
        throw DomainError("Kernel::tabulated_from_csv: bad number: " + field);
      }
    }
    xi.push_back(v[0]);
    vals.emplace_back(v[1], v[2]);
  }
  return tabulated(std::move(xi), std::move(vals));
}

bool Kernel::has_fhat() const { return id_ != Id::RationalSimple; }

Cplx Kernel::value(double x) const {
  switch (id_) {
    case Id::RationalSimple:
      return 1.0 / (x + param_);
    case Id::RationalSquare:
      return 1.0 / (x * x + param_ * param_);
    case Id::Sech: {
      const double kPi = 3.14159265358979323846;
      return 1.0 / std::cosh(kPi * x / param_);
    }
    case Id::SincShift:
      return sinc(Cplx(x, 0.0) - param_);
    case Id::Tabulated:
      throw DomainError("Kernel::value: tabulated kernel has no closed form f");
  }
  throw DomainError("Kernel::value: unknown kernel");
}

Cplx Kernel::fhat(double xi) const {
  const double kPi = 3.14159265358979323846;
  switch (id_) {
    case Id::RationalSimple:
      throw DomainError("Kernel::fhat: not available for rational_simple");
    case Id::RationalSquare:
      return kPi / param_ * std::exp(-2.0 * kPi * param_ * std::abs(xi));
    case Id::Sech:
      return param_ / std::cosh(kPi * param_ * xi);
    case Id::SincShift:
      return std::exp(Cplx(0.0, -2.0 * kPi * xi) * param_);
    case Id::Tabulated: {
      // local 4-point Lagrange interpolation on the uniform grid
      const std::size_t n = grid_.size();
      const double h = 1.0 / double(n - 1);
      double t = (xi + 0.5) / h;
      long i1 = long(std::floor(t));
      long i0 = std::clamp<long>(i1 - 1, 0, long(n) - 4);
      const double x = (xi - grid_[i0]) / h;  // in units of h from node i0
      Cplx out{0.0, 0.0};
      for (int j = 0; j < 4; ++j) {
        double lj = 1.0;
        for (int m = 0; m < 4; ++m) {
          if (m != j) lj *= (x - double(m)) / double(j - m);
        }
        out += lj * table_[std::size_t(i0) + std::size_t(j)];
      }
      return out;
    }
  }
  throw DomainError("Kernel::fhat: unknown kernel");
}

double Kernel::suggested_radius() const {
  if (id_ == Id::Sech) {
    const double a2 = std::norm(param_);
    return 16.0 * a2 / param_.real() + 5.3;
  }
  return 0.0;
}

// ---------------------------------------------------------------------------

Cplx fourier_coefficient(const FhatFn& fhat, long k, const QuadratureSpec& spec) {
  const double kPi = 3.14159265358979323846;
  const long subdiv = std::max<long>(1, std::min<long>(std::labs(k), 64));
  const double tol = spec.panel_tol / double(4 * subdiv);
  double err = 0.0;
  Cplx total{0.0, 0.0};
  for (int half = 0; half < 2; ++half) {
    const double lo = half == 0 ? -0.5 : 0.0;
    for (long j = 0; j < subdiv; ++j) {
      const double a = lo + 0.5 * double(j) / double(subdiv);
      const double b = lo + 0.5 * double(j + 1) / double(subdiv);
      total += detail::adaptive_gk15(
          [&](double xi) {
            return fhat(xi) * std::exp(Cplx(0.0, 2.0 * kPi * xi * double(k)));
          },
          a, b, tol, 18, &err);
    }
  }
  return total;
}

Cplx sinc_project(const Kernel& f, double a, const QuadratureSpec& spec,
                  double* residual) {
  if (!f.has_fhat()) {
    throw DomainError("sinc_project: kernel has no Fourier descriptor");
  }
  const double kPi = 3.14159265358979323846;
  double err = 0.0;
  Cplx rhs{0.0, 0.0};
  // split at 0: several fhat forms have a kink there
  for (int half = 0; half < 2; ++half) {
    rhs += detail::adaptive_gk15(
        [&](double xi) {
          return f.fhat(xi) * std::exp(Cplx(0.0, 2.0 * kPi * xi * a));
        },
        half == 0 ? -0.5 : 0.0, half == 0 ? 0.0 : 0.5, spec.panel_tol, 24, &err);
  }
  if (residual != nullptr) {
    QuadratureSpec line = spec;
    line.oscillation_period = line.oscillation_period.value_or(1.0);
    line.truncation_radius = std::max(line.truncation_radius, std::abs(a) + 8.0);
    const Evaluation lhs = integrate_line(
        [&](double x) { return f.value(x) * sinc(Cplx(x - a, 0.0)); }, line);
    *residual = std::abs(lhs.value - rhs);
  }
  return rhs;
}

namespace {

// In-place radix-2 FFT with the e^{+2 pi i jk/n} convention (unnormalized).
void fft_plus(std::vector<Cplx>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<Cplx> tw(n / 2);
  const double kPi = 3.14159265358979323846;
  for (std::size_t j = 0; j < n / 2; ++j) {
    tw[j] = std::polar(1.0, 2.0 * kPi * double(j) / double(n));
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Cplx u = a[i + j];
        const Cplx v = a[i + j + len / 2] * tw[j * stride];
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

// Lazily computed table of int_{-1/2}^{1/2} fhat(xi) e^{2 pi i xi k} dxi for
// every k at once, via one long trapezoid grid and an FFT. The only error
// besides roundoff is spectral aliasing, which the caller bounds from the
// decay of the exact small-k coefficients.
struct CoefficientBatch {
  static constexpr std::size_t kSize = 1 << 16;
  std::vector<Cplx> c;      // c[k] for k = 0 .. kSize-1 (mod kSize)
  double alias_scale = 0.0; // |c_k| ~ alias_scale / k^2 fit
  double edge_jump = 0.0;   // |fhat(1/2) - fhat(-1/2)|

  void build(const std::function<Cplx(double)>& fhat, double known_abs,
             long known_k) {
    c.resize(kSize);
    const Cplx lo = fhat(-0.5);
    const Cplx hi = fhat(0.5);
    c[0] = 0.5 * (lo + hi);
    for (std::size_t j = 1; j < kSize; ++j) {
      c[j] = fhat(-0.5 + double(j) / double(kSize));
    }
    fft_plus(c);
    for (std::size_t k = 0; k < kSize; ++k) {
      c[k] /= double(kSize);
      if (k & 1) c[k] = -c[k];
    }
    edge_jump = std::abs(hi - lo);
    alias_scale = 4.0 * known_abs * double(known_k) * double(known_k);
  }

  double alias_bound(long k) const {
    const double kPi = 3.14159265358979323846;
    const double m = double(kSize) - double(k);
    return alias_scale / (m * m) + edge_jump / (kPi * m);
  }
};

}  // namespace

Evaluation theorem3_evaluate(Cplx w, const Kernel& kernel,
                             const EvalOptions& opts,
                             const QuadratureSpec& spec) {
  if (!(w.real() > -1.0)) {
    throw DomainError("theorem3_evaluate: requires Re(w) > -1");
  }
  if (!kernel.has_fhat()) {
    throw DomainError("theorem3_evaluate: kernel has no Fourier descriptor");
  }
  const auto fhat = [&kernel](double xi) { return kernel.fhat(xi); };
  // The adaptive quadrature cost of one coefficient grows linearly with k
  // (it must resolve k oscillations), so past kSwitch the coefficients come
  // from a single FFT batch instead; for the shifted-sinc kernel they are
  // known in closed form.
  const bool sinc_closed_form = kernel.id() == Kernel::Id::SincShift;
  const long kSwitch = 256;
  CoefficientBatch batch;
  double last_adaptive_abs = 0.0;
  double alias_acc = 0.0;
  const auto coefficient = [&](long k) -> Cplx {
    if (sinc_closed_form) return sinc(double(k) - kernel.param());
    if (k <= kSwitch) {
      const Cplx ck = fourier_coefficient(fhat, k, spec);
      if (k == kSwitch) last_adaptive_abs = std::abs(ck);
      return ck;
    }
    if (batch.c.empty()) {
      batch.build(fhat, std::max(last_adaptive_abs, 1e-300), kSwitch);
    }
    return batch.c[std::size_t(k)];
  };
  Evaluation ev;
  Cplx binom{1.0, 0.0};
  Cplx sum{0.0, 0.0};
  Cplx comp{0.0, 0.0};
  double last4[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t cap = std::min<std::size_t>(opts.max_terms, 20000);
  double tail = 0.0;
  for (std::size_t k = 0; k < cap; ++k) {
    const Cplx term = binom * coefficient(long(k));
    if (!sinc_closed_form && long(k) > kSwitch) {
      alias_acc += std::abs(binom) * batch.alias_bound(long(k));
    }
    const Cplx y = term - comp;
    const Cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    last4[k % 4] = std::abs(term);
    ev.terms_used = k + 1;
    const double peak = std::max(std::max(last4[0], last4[1]),
                                 std::max(last4[2], last4[3]));
    tail = 2.0 * peak * double(k) / (w.real() + 1.0);
    if (k >= 32 && tail <= opts.tolerance_for(std::abs(sum))) {
      ev.value = sum;
      ev.abs_error_estimate =
          tail + alias_acc +
          spec.panel_tol * double(std::min<std::size_t>(k, kSwitch));
      ev.converged = true;
      return ev;
    }
    binom *= (w - double(k)) / double(k + 1);
  }
  ev.value = sum;
  ev.abs_error_estimate = tail + alias_acc;
  ev.converged = false;
  return ev;
}

Evaluation corollary_sum(Cplx w, const std::function<Cplx(double)>& g,
                         const EvalOptions& opts) {
  if (!(w.real() > -1.0)) {
    throw DomainError("corollary_sum: requires Re(w) > -1");
  }
  Evaluation ev;
  Cplx binom{1.0, 0.0};
  Cplx sum{0.0, 0.0};
  Cplx comp{0.0, 0.0};
  double last4[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t cap = std::min<std::size_t>(opts.max_terms, 300000);
  double tail = 0.0;
  for (std::size_t k = 0; k < cap; ++k) {
    const Cplx term = binom * g(double(k));
    const Cplx y = term - comp;
    const Cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    last4[k % 4] = std::abs(term);
    ev.terms_used = k + 1;
    const double peak = std::max(std::max(last4[0], last4[1]),
                                 std::max(last4[2], last4[3]));
    tail = 2.0 * peak * double(k) / (w.real() + 1.0);
    if (k >= 32 && tail <= opts.tolerance_for(std::abs(sum))) {
      ev.value = sum;
      ev.abs_error_estimate = tail;
      ev.converged = true;
      return ev;
    }
    binom *= (w - double(k)) / double(k + 1);
  }
  ev.value = sum;
  ev.abs_error_estimate = tail;
  ev.converged = false;
  return ev;
}

}  // namespace cbinom
