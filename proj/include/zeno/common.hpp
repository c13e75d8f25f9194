#pragma once

#include <complex>
#include <stdexcept>

namespace zeno {

using cplx = std::complex<double>;

inline constexpr cplx im{0.0, 1.0};

constexpr double pi = 3.14159265358979323846;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when the spin-+ channel wavenumber vanishes (zeta == 1/2): the
/// log-derived rapidity diverges and the slab transfer matrix is undefined.
struct DegenerateChannel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateCell : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace zeno
