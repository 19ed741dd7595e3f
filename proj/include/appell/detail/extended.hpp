#pragma once

// Quad-precision scalars for the coefficient oracle and root polishing.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "appell/log_complex.hpp"

namespace appell::detail {

using xreal = boost::multiprecision::cpp_bin_float_quad;
using xcomplex = boost::multiprecision::cpp_complex_quad;

inline xcomplex to_x(cplx z) { return xcomplex(xreal(z.real()), xreal(z.imag())); }

inline cplx to_c(const xcomplex& z) {
  return {z.real().convert_to<double>(), z.imag().convert_to<double>()};
}

/// Quad value to LogComplex without passing through a (possibly overflowing)
/// double.
inline LogComplex to_log(const xcomplex& z) {
  xreal m = abs(z);
  if (m == 0) return LogComplex::zero();
  return {log(m).convert_to<double>(), atan2(z.imag(), z.real()).convert_to<double>()};
}

}  // namespace appell::detail
