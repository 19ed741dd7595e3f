#pragma once

// Exact coefficient route to the Appell polynomials: the series of 1/g, the
// coefficients of p_n, and direct evaluation of pi_n(x)/n! = p_n(n x)/n!.
// Everything here runs in quad precision; it is the ground truth the contour
// representations are checked against.

#include <cmath>
#include <vector>

#include "appell/detail/extended.hpp"
#include "appell/errors.hpp"
#include "appell/generating_function.hpp"
#include "appell/log_complex.hpp"
#include "appell/polynomial.hpp"

namespace appell {

/// n above which p_n coefficients no longer fit in plain doubles.
inline int plain_factorial_limit = 170;

/// c_0..c_N with (sum c_k z^k) g(z) = 1 + O(z^{N+1}), in quad precision.
inline std::vector<detail::xcomplex> inverse_taylor_extended(const GeneratingFunction& g, int N) {
  if (N < 0) throw domain_error("inverse_taylor: N must be >= 0");
  const auto gk = g.taylor0_extended(N);
  if (detail::to_c(gk[0]) == cplx{} || std::abs(detail::to_c(gk[0])) < kTolZero)
    throw domain_error("inverse_taylor: g(0) = 0");
  std::vector<detail::xcomplex> c(static_cast<std::size_t>(N + 1), detail::xcomplex(0));
  const detail::xcomplex inv_g0 = detail::xcomplex(1) / gk[0];
  c[0] = inv_g0;
  for (int n = 1; n <= N; ++n) {
    detail::xcomplex acc(0);
    for (int j = 1; j <= n; ++j)
      if (gk[j] != detail::xcomplex(0)) acc += gk[j] * c[n - j];
    c[n] = -acc * inv_g0;
  }
  return c;
}

inline std::vector<cplx> inverse_taylor(const GeneratingFunction& g, int N) {
  std::vector<cplx> out;
  for (const auto& c : inverse_taylor_extended(g, N)) out.push_back(detail::to_c(c));
  return out;
}

/// Coefficients of pi_n(x)/n! = sum_j a_j x^j, a_j = c_{n-j} n^j / j!.
inline std::vector<detail::xcomplex> rescaled_coefficients_extended(const GeneratingFunction& g, int n) {
  if (n < 0) throw domain_error("degree must be >= 0");
  const auto c = inverse_taylor_extended(g, n);
  std::vector<detail::xcomplex> a(static_cast<std::size_t>(n + 1));
  detail::xreal w = 1;  // n^j / j!
  for (int j = 0; j <= n; ++j) {
    if (j > 0) w = w * n / j;
    a[j] = c[n - j] * w;
  }
  return a;
}

/// Coefficients of p_n as LogComplex: [x^j] p_n = n!/j! c_{n-j}.
inline std::vector<LogComplex> appell_coefficients_log(const GeneratingFunction& g, int n) {
  if (n < 0) throw domain_error("degree must be >= 0");
  const auto c = inverse_taylor_extended(g, n);
  std::vector<LogComplex> out(static_cast<std::size_t>(n + 1));
  double log_ratio = 0.0;  // log(n!/j!), built from j = n downwards
  for (int j = n; j >= 0; --j) {
    if (j < n) log_ratio += std::log(double(j + 1));
    LogComplex v = detail::to_log(c[n - j]);
    if (!v.is_zero()) v.log_mag += log_ratio;
    out[j] = v;
  }
  return out;
}

/// p_n in plain doubles; throws std::overflow_error past plain_factorial_limit.
inline PolynomialC appell_coefficients(const GeneratingFunction& g, int n) {
  if (n > plain_factorial_limit)
    throw std::overflow_error("appell_coefficients: use appell_coefficients_log for large n");
  std::vector<cplx> out;
  for (const auto& v : appell_coefficients_log(g, n)) out.push_back(v.value());
  return PolynomialC(std::move(out));
}

/// Horner in quad precision.
inline detail::xcomplex horner_extended(const std::vector<detail::xcomplex>& a, const detail::xcomplex& x) {
  detail::xcomplex acc(0);
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * x + a[k];
  return acc;
}

/// pi_n(x)/n! by quad-precision Horner on the exact coefficient list.
inline LogComplex eval_rescaled_direct(const GeneratingFunction& g, int n, cplx x) {
  const auto a = rescaled_coefficients_extended(g, n);
  return detail::to_log(horner_extended(a, detail::to_x(x)));
}

}  // namespace appell
