#ifndef CBINOM_IDENTITIES_HPP
#define CBINOM_IDENTITIES_HPP

#include <cbinom/quadrature.hpp>
#include <cbinom/types.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cbinom {

enum class IdentityId {
  Antiderivative,
  CotIdentity,
  TripleProduct,
  RationalSimpleIntegral,
  RationalSquareIntegral,
  SechIntegral,
  SincRepresentation,
};

const char* to_string(IdentityId id);

struct IdentityReport {
  IdentityId identity_id = IdentityId::Antiderivative;
  Cplx lhs{0.0, 0.0};
  Cplx rhs{0.0, 0.0};
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string diagnostics;
};

/// Antiderivative of z -> C(w,z): F(z) = (1/pi) sum_k C(w,k) Si(pi z - pi k),
/// summed in the recentred form (1/pi) sum_k C(w,k)[Si(pi z - pi k) + pi/2]
/// - 2^{w-1} so the terms decay fast enough for a usable tail bound.
Evaluation binom_antiderivative(Cplx w, Cplx z, const EvalOptions& opts);

/// Central-difference derivative of binom_antiderivative at real z against
/// binom_gamma(w, z).
IdentityReport verify_antiderivative(Cplx w, double z, const EvalOptions& opts);

/// sum_k C(w,k) cos(pi z - pi k)/(pi z - pi k) = C(w,z) cot(pi z).
IdentityReport verify_cot_identity(Cplx w, Cplx z, const EvalOptions& opts);

/// sum_k C(w,k) C(k,z) C(z,k) = C(w,z); the product C(k,z)C(z,k) is computed
/// through gamma ratios, not through sinc.
IdentityReport verify_triple_product(Cplx w, Cplx z, const EvalOptions& opts);

/// int C(w,x)/(x+alpha) dx = sum_k C(w,k)/(k+alpha) - e^{i pi alpha} B(w+1, alpha).
IdentityReport verify_rational_simple(Cplx w, Cplx alpha, const EvalOptions& opts,
                                      const QuadratureSpec& spec);

/// int C(w,x)/(x^2+alpha^2) dx = sum_k C(w,k)/(k^2+alpha^2)
///   - pi/(alpha (e^{2 pi alpha}-1)) [C(w, i alpha) + C(w, -i alpha)].
IdentityReport verify_rational_square(Cplx w, Cplx alpha, const EvalOptions& opts,
                                      const QuadratureSpec& spec);

/// int C(i a, x) sech(pi x / a) dx = a 2^{i a} Gamma(i a/2 + 1/2) /
/// (sqrt(pi) Gamma(i a/2 + 1)).
IdentityReport verify_sech_integral(Cplx alpha, const EvalOptions& opts,
                                    const QuadratureSpec& spec);

/// int C(w,x) sinc(x-z) dx = C(w,z), checked by both the lattice-sum route
/// and direct quadrature.
IdentityReport verify_sinc_representation(Cplx w, Cplx z, const EvalOptions& opts,
                                          const QuadratureSpec& spec);

/// Seeded random sweep over every verifier; failures are recorded in the
/// reports, never thrown. Deterministic for a fixed seed.
std::vector<IdentityReport> run_identity_battery(std::size_t sample_count,
                                                 std::uint64_t seed,
                                                 const EvalOptions& opts,
                                                 const QuadratureSpec& spec);

std::string report_to_json(const IdentityReport& report);
std::string reports_to_json(const std::vector<IdentityReport>& reports);

}  // namespace cbinom

#endif
