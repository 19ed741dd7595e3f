#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>

namespace appell {

using cplx = std::complex<double>;

/// Wraps an angle into (-pi, pi].
inline double wrap_phase(double phase) {
  double r = std::remainder(phase, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

/// A complex number stored as (log |z|, arg z).
///
/// Products of factors such as (e x)^n or (e^{zeta x}/(zeta x))^n stay
/// representable for n in the hundreds. Zero is encoded by
/// log_mag = -infinity.
struct LogComplex {
  double log_mag = -std::numeric_limits<double>::infinity();
  double phase = 0.0;

  static LogComplex zero() { return {}; }
  static LogComplex one() { return {0.0, 0.0}; }

  static LogComplex from(cplx z) {
    if (z == cplx(0.0, 0.0)) return zero();
    return {std::log(std::abs(z)), std::arg(z)};
  }

  /// exp(w) without ever forming it in plain doubles.
  static LogComplex exp(cplx w) { return {w.real(), wrap_phase(w.imag())}; }

  /// Principal complex logarithm of the represented value.
  cplx log() const { return {log_mag, phase}; }

  bool is_zero() const { return std::isinf(log_mag) && log_mag < 0; }

  /// Plain complex value; overflows to infinity for log_mag above ~709.
  cplx value() const {
    if (is_zero()) return {0.0, 0.0};
    return std::polar(std::exp(log_mag), phase);
  }

  /// |z|, possibly +inf.
  double abs() const { return is_zero() ? 0.0 : std::exp(log_mag); }

  LogComplex operator-() const {
    if (is_zero()) return *this;
    return {log_mag, wrap_phase(phase + std::numbers::pi)};
  }

  LogComplex& operator*=(const LogComplex& o) {
    if (is_zero() || o.is_zero()) return *this = zero();
    log_mag += o.log_mag;
    phase = wrap_phase(phase + o.phase);
    return *this;
  }
  LogComplex& operator/=(const LogComplex& o) {
    if (is_zero()) return *this;
    log_mag -= o.log_mag;
    phase = wrap_phase(phase - o.phase);
    return *this;
  }
  friend LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
  friend LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }
  friend LogComplex operator*(LogComplex a, cplx b) { return a *= from(b); }
  friend LogComplex operator*(cplx b, LogComplex a) { return a *= from(b); }

  LogComplex pow(int n) const {
    if (is_zero()) return n == 0 ? one() : zero();
    return {log_mag * n, wrap_phase(phase * n)};
  }
};

/// Sum of LogComplex terms; scales by the largest magnitude before adding.
inline LogComplex log_sum(std::span<const LogComplex> terms) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) top = std::max(top, t.log_mag);
  if (std::isinf(top) && top < 0) return LogComplex::zero();
  cplx acc{0.0, 0.0};
  for (const auto& t : terms) {
    if (t.is_zero()) continue;
    acc += std::polar(std::exp(t.log_mag - top), t.phase);
  }
  if (acc == cplx(0.0, 0.0)) return LogComplex::zero();
  return {top + std::log(std::abs(acc)), std::arg(acc)};
}

inline LogComplex operator+(const LogComplex& a, const LogComplex& b) {
  const LogComplex t[2] = {a, b};
  return log_sum(t);
}
inline LogComplex operator-(const LogComplex& a, const LogComplex& b) { return a + (-b); }

/// |a - b| / |b| computed in log space.
inline double relative_gap(const LogComplex& a, const LogComplex& b) {
  if (b.is_zero()) return a.is_zero() ? 0.0 : std::numeric_limits<double>::infinity();
  LogComplex ratio = a / b;
  return std::abs(ratio.value() - 1.0);
}

/// cos(w) as a LogComplex; safe for large |Im w|.
inline LogComplex log_cos(cplx w) {
  const cplx i{0.0, 1.0};
  const LogComplex t[2] = {LogComplex::exp(i * w), LogComplex::exp(-i * w)};
  LogComplex s = log_sum(t);
  s.log_mag -= std::log(2.0);
  return s;
}

}  // namespace appell
