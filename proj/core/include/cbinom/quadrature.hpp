#ifndef CBINOM_QUADRATURE_HPP
#define CBINOM_QUADRATURE_HPP

#include <cbinom/errors.hpp>
#include <cbinom/types.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cbinom {

using Integrand = std::function<Cplx(double)>;
using FhatFn = std::function<Cplx(double)>;

struct QuadratureSpec {
  double panel_tol = 1e-10;
  std::size_t max_panels = std::size_t(1) << 16;
  /// 0 means: choose from the integrand decay (integrate_line only).
  double truncation_radius = 0.0;
  /// When set, integrate_line walks period-aligned panels and accelerates
  /// the resulting oscillating partial sums instead of truncating.
  std::optional<double> oscillation_period;
};

/// Built-in integrand kernels for Theorem-3 style evaluations. Each knows its
/// pointwise values and (when available) the closed form of its Fourier
/// transform restricted to [-1/2, 1/2].
class Kernel {
 public:
  enum class Id { RationalSimple, RationalSquare, Sech, SincShift, Tabulated };

  static Kernel rational_simple(Cplx alpha);  // 1/(x+alpha), Im a>0 or a in Z>=1
  static Kernel rational_square(Cplx alpha);  // 1/(x^2+alpha^2), Re a > 0
  static Kernel sech(Cplx alpha);             // sech(pi x / alpha), Re a > 0
  static Kernel sinc_shift(Cplx a);           // sinc(x - a)
  /// Piecewise-cubic interpolation of fhat on a uniform grid over [-1/2,1/2].
  static Kernel tabulated(std::vector<double> xi, std::vector<Cplx> fhat);
  /// CSV with header "xi,re,im", strictly increasing xi covering both
  /// endpoints, at least 64 points.
  static Kernel tabulated_from_csv(const std::string& path);

  Id id() const { return id_; }
  Cplx param() const { return param_; }

  bool has_fhat() const;
  bool has_value() const { return id_ != Id::Tabulated; }

  /// f(x) on the real line. Throws DomainError for Tabulated.
  Cplx value(double x) const;
  /// fhat(xi) on [-1/2, 1/2]. Throws DomainError when unavailable.
  Cplx fhat(double xi) const;

  /// True when |f| decays exponentially (plain truncation is enough).
  bool exponential_decay() const { return id_ == Id::Sech; }
  /// Suggested truncation radius for integrate_line of binom * f.
  double suggested_radius() const;

 private:
  Kernel(Id id, Cplx param) : id_(id), param_(param) {}
  Id id_;
  Cplx param_;
  std::vector<double> grid_;
  std::vector<Cplx> table_;
};

/// Adaptive Gauss--Kronrod (7/15) quadrature on [a, b]; per-panel error is
/// |kronrod - gauss| and panels are bisected until the total meets panel_tol.
Evaluation integrate_finite(const Integrand& f, double a, double b,
                            const QuadratureSpec& spec);

/// Integral over the whole real line. With oscillation_period set, sums
/// period-aligned panels and accelerates the two-sided tails (Wynn epsilon);
/// otherwise truncates at +-truncation_radius and adds an analytic tail bound,
/// throwing DivergentTailError when the sampled decay is slower than 1/x.
Evaluation integrate_line(const Integrand& f, const QuadratureSpec& spec);

/// Plancherel bridge: returns int_{-1/2}^{1/2} fhat(xi) e^{2 pi i xi a} dxi,
/// which equals int f(x) sinc(x-a) dx. When residual is non-null the left
/// side is also computed by integrate_line and |lhs-rhs| stored.
Cplx sinc_project(const Kernel& f, double a, const QuadratureSpec& spec,
                  double* residual = nullptr);

/// int_{-1/2}^{1/2} fhat(xi) e^{2 pi i xi k} dxi with oscillation-aware
/// panel splitting for large k.
Cplx fourier_coefficient(const FhatFn& fhat, long k, const QuadratureSpec& spec);

/// Theorem-3 series: sum_k C(w,k) * fourier_coefficient(fhat, k), Re(w) > -1.
Evaluation theorem3_evaluate(Cplx w, const Kernel& kernel,
                             const EvalOptions& opts,
                             const QuadratureSpec& spec);

/// Bandlimited shortcut: sum_k C(w,k) g(k) for g of bandwidth <= 1/2.
Evaluation corollary_sum(Cplx w, const std::function<Cplx(double)>& g,
                         const EvalOptions& opts);

}  // namespace cbinom

#endif
