#pragma once

// The steepest-descent curve C through the saddle theta = 0, parametrized by
// real tau via e^{i theta} - i theta = 1 - tau^2.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "appell/errors.hpp"
#include "appell/log_complex.hpp"
#include "appell/quadrature.hpp"

namespace appell {

struct SDPoint {
  double tau = 0.0;
  cplx theta{};
  cplx theta_prime{};
};

/// theta^{(k)}(0) for k = 1..K (derivs[0] is the first derivative).
struct SeriesCoeffs {
  std::vector<cplx> derivs;

  /// Taylor coefficient of tau^k, k >= 1.
  cplx taylor(int k) const {
    double f = 1.0;
    for (int j = 2; j <= k; ++j) f *= j;
    return derivs[static_cast<std::size_t>(k - 1)] / f;
  }

  cplx eval(double tau) const {
    cplx acc{};
    for (int k = static_cast<int>(derivs.size()); k >= 1; --k) acc = (acc + taylor(k)) * tau;
    return acc;
  }

  cplx eval_derivative(double tau) const {
    cplx acc{};
    for (int k = static_cast<int>(derivs.size()); k >= 1; --k) acc = acc * tau + double(k) * taylor(k);
    return acc;
  }
};

inline constexpr double kTauSwitch = 0.05;
inline constexpr int kTaylorOrder = 12;

/// Derivatives of theta at 0 from e^{f} - f = 1 - tau^2, f = i theta.
///
/// With a_k = f^{(k)}(0) the n-th derivative gives Y_n(a_1..a_n) - a_n = -2 [n = 2].
/// The n = 2 equation fixes a_1 = i sqrt 2; the equation of order m + 1 is linear
/// in a_m with coefficient (m + 1) a_1.
inline SeriesCoeffs theta_taylor_coeffs(int K) {
  if (K < 1) throw domain_error("theta_taylor_coeffs: K must be >= 1");
  std::vector<cplx> a(static_cast<std::size_t>(K + 2), cplx{});  // a[k] = a_k, a[0] unused
  a[1] = cplx(0.0, std::numbers::sqrt2);

  auto bell = [&](int n) {
    // Y_{j+1} = sum_{k=0}^{j} C(j,k) Y_{j-k} a_{k+1}
    std::vector<cplx> Y(static_cast<std::size_t>(n + 1));
    Y[0] = 1.0;
    for (int j = 0; j < n; ++j) {
      cplx acc{};
      double c = 1.0;
      for (int k = 0; k <= j; ++k) {
        acc += c * Y[j - k] * a[k + 1];
        c = c * double(j - k) / double(k + 1);
      }
      Y[j + 1] = acc;
    }
    return Y[n];
  };

  for (int m = 2; m <= K; ++m) {
    a[m] = 0.0;
    a[m + 1] = 0.0;
    const cplx D = bell(m + 1);
    a[m] = -D / (double(m + 1) * a[1]);
  }
  SeriesCoeffs out;
  for (int k = 1; k <= K; ++k) out.derivs.push_back(cplx(0.0, -1.0) * a[k]);
  return out;
}

namespace detail {

inline const SeriesCoeffs& shared_series() {
  static const SeriesCoeffs s = theta_taylor_coeffs(kTaylorOrder);
  return s;
}

/// tau^2 as a function of s = Re theta on the upper half of C.
inline double tau_sq_of_s(double s) {
  return 1.0 - s / std::tan(s) + std::log(s / std::sin(s));
}

inline double tau_sq_of_s_derivative(double s) {
  const double sn = std::sin(s);
  return s / (sn * sn) - 2.0 / std::tan(s) + 1.0 / s;
}

/// s in (0, pi) with tau_sq_of_s(s) = tau^2; safeguarded Newton.
inline double solve_s(double tau) {
  const double target = tau * tau;
  double lo = 1e-12, hi = std::numbers::pi - 1e-15;
  double s = tau < 1.0 ? std::min(std::numbers::sqrt2 * tau, 2.0) : std::numbers::pi - std::numbers::pi / (target + 1.0);
  s = std::clamp(s, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double f = tau_sq_of_s(s) - target;
    if (f > 0.0) hi = s; else lo = s;
    const double df = tau_sq_of_s_derivative(s);
    double next = s - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) <= 4.0 * std::numeric_limits<double>::epsilon() * s) return next;
    s = next;
    if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * hi) return s;
  }
  return s;
}

inline cplx polish_theta(cplx theta, double tau) {
  const cplx i{0.0, 1.0};
  const double t2 = tau * tau;
  auto F = [&](cplx t) { return std::exp(i * t) - i * t - 1.0 + t2; };
  double best = std::abs(F(theta));
  for (int it = 0; it < 3; ++it) {
    const cplx e = std::exp(i * theta);
    const cplx step = F(theta) / (i * e - i);
    const cplx cand = theta - step;
    const double r = std::abs(F(cand));
    if (!(r < best)) break;
    theta = cand;
    best = r;
  }
  return theta;
}

}  // namespace detail

/// W(-e^{tau^2 - 1}) on the branch with imaginary part in (-pi, 0); equals W_{-1}.
inline cplx lambert_branch(double tau) {
  if (!(tau > 0.0)) throw domain_error("lambert_branch: tau must be > 0");
  const double s = detail::solve_s(tau);
  const double y = -s;
  const cplx W{-y / std::tan(y), y};
  const double rhs = std::exp(tau * tau - 1.0);
  const double residual = std::abs(W * std::exp(W) + rhs);
  if (!(residual <= 1e-9 * rhs)) throw convergence_error("lambert_branch: residual check failed");
  return W;
}

/// Point of C at parameter tau, with theta'(tau).
inline SDPoint theta_of_tau(double tau) {
  const auto& series = detail::shared_series();
  SDPoint p;
  p.tau = tau;
  const double a = std::abs(tau);
  if (a <= kTauSwitch) {
    p.theta = series.eval(tau);
    p.theta_prime = series.eval_derivative(tau);
    return p;
  }
  const double s = detail::solve_s(a);
  cplx th{s, std::log(std::sin(s) / s)};
  th = detail::polish_theta(th, a);
  if (tau < 0) th = -std::conj(th);
  p.theta = th;
  const cplx i{0.0, 1.0};
  p.theta_prime = 2.0 * i * tau / (i * th - tau * tau);
  return p;
}

/// Im theta - log(sin X / X), X = Re theta; positive above C, zero on it.
inline double psi(cplx theta) {
  const double X = theta.real();
  if (!(std::abs(X) < std::numbers::pi)) throw domain_error("psi: |Re theta| must be < pi");
  if (X == 0.0) return theta.imag();
  return theta.imag() - std::log(std::sin(X) / X);
}

/// Local inverse of theta(tau): tau = theta sqrt(h(theta)), h = (1 + i theta - e^{i theta})/theta^2.
/// Valid for theta near C (|Re theta| < pi); the square root has positive real part.
inline cplx tau_of_theta(cplx theta) {
  const cplx i{0.0, 1.0};
  cplx h;
  if (std::abs(theta) < 1e-3) {
    // h = 1/2 + t/6 + t^2/24 + t^3/120 + t^4/720 with t = i theta
    const cplx t = i * theta;
    h = 0.5 + t * (1.0 / 6 + t * (1.0 / 24 + t * (1.0 / 120 + t / 720.0)));
  } else {
    h = (1.0 + i * theta - std::exp(i * theta)) / (theta * theta);
  }
  return theta * std::sqrt(h);
}

/// Diagnostic: W via the argument-principle integral over the boundary of
/// R = {Re z > -1, Im z in (-pi, 0)}, truncated at Re z = re_max.
inline cplx lambert_branch_contour(double tau, double re_max = 40.0) {
  const double zt = -std::exp(tau * tau - 1.0);
  auto integrand = [&](cplx xi) { return (xi + 1.0) / (xi * std::exp(xi) - zt); };
  const double pi = std::numbers::pi;
  quad::Options opt;
  opt.rel_tol = 1e-12;
  // Positively oriented rectangle: bottom (Im = -pi, left to right), right side, top (right to left), left side.
  const cplx corners[4] = {{-1.0, -pi}, {re_max, -pi}, {re_max, 0.0}, {-1.0, 0.0}};
  cplx total{};
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[e], b = corners[(e + 1) % 4], d = b - a;
    total += quad::integrate([&](double t) { return integrand(a + t * d) * d; }, 0.0, 1.0, opt).value;
  }
  return zt / (2.0 * pi * cplx(0.0, 1.0)) * total;
}

/// Diagnostic: theta_+(tau) via the argument-principle integral over the boundary of
/// Omega = {Re theta in (0, pi), Im theta < 0}, truncated at Im theta = -im_depth.
inline cplx theta_plus_contour(double tau, double im_depth = 40.0) {
  const cplx i{0.0, 1.0};
  const double t2 = tau * tau, pi = std::numbers::pi;
  auto integrand = [&](cplx xi) { return xi * (i * xi - t2) / (std::exp(i * xi) - i * xi - 1.0 + t2); };
  quad::Options opt;
  opt.rel_tol = 1e-12;
  const cplx corners[4] = {{0.0, -im_depth}, {pi, -im_depth}, {pi, 0.0}, {0.0, 0.0}};
  cplx total{};
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[e], b = corners[(e + 1) % 4], d = b - a;
    total += quad::integrate([&](double t) { return integrand(a + t * d) * d; }, 0.0, 1.0, opt).value;
  }
  return total / (2.0 * pi);
}

}  // namespace appell
