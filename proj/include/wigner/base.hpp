#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace wigner {

using complexd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

// State construction found no usable overlap coefficients.
struct DegenerateState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature failed its node-doubling tolerance.
struct QuadratureNotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A gridded momentum kernel does not decay inside its window.
struct WindowTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid run configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wigner
