#ifndef CBINOM_SRC_GK15_HPP
#define CBINOM_SRC_GK15_HPP

#include <cbinom/types.hpp>

#include <array>
#include <cmath>
#include <functional>

namespace cbinom::detail {

// Nodes and weights of the 7-point Gauss / 15-point Kronrod pair (QUADPACK
// dqk15 values).
inline constexpr std::array<double, 8> kGk15Nodes = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
};
inline constexpr std::array<double, 8> kGk15Weights = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr std::array<double, 4> kGauss7Weights = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Gk15Result {
  Cplx integral{0.0, 0.0};
  double error = 0.0;
};

// One 7/15 pair on [a, b]; error = |kronrod - gauss|.
inline Gk15Result gk15(const std::function<Cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Cplx gauss{0.0, 0.0};
  Cplx kron{0.0, 0.0};
  for (int i = 0; i < 7; ++i) {
    const double x = kGk15Nodes[i];
    const Cplx v = f(c + h * x) + f(c - h * x);
    kron += kGk15Weights[i] * v;
    if (i % 2 == 1) gauss += kGauss7Weights[i / 2] * v;
  }
  const Cplx fc = f(c);
  kron += kGk15Weights[7] * fc;
  gauss += kGauss7Weights[3] * fc;
  return {kron * h, std::abs(kron - gauss) * h};
}

// Recursive bisection until each panel error fits its proportional share of
// tol. Depth-limited; the accumulated error estimate is added to *err and the
// panel count to *panels.
Cplx adaptive_gk15(const std::function<Cplx(double)>& f, double a, double b,
                   double tol, int max_depth, double* err,
                   std::size_t* panels = nullptr);

}  // namespace cbinom::detail

#endif
