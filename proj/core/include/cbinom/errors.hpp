#ifndef CBINOM_ERRORS_HPP
#define CBINOM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cbinom {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument sits on a pole of the gamma function.
struct PoleError : Error {
  using Error::Error;
};

/// Argument outside the validity region of the requested formula.
struct DomainError : Error {
  using Error::Error;
};

/// Intermediate value exceeds the double range.
struct OverflowError : Error {
  using Error::Error;
};

/// Budget exhausted without meeting the tolerance (thrown only where the
/// contract cannot report a partial result).
struct NoConvergenceError : Error {
  using Error::Error;
};

/// The declared decay of an infinite-range integrand does not hold numerically.
struct DivergentTailError : Error {
  using Error::Error;
};

}  // namespace cbinom

#endif
