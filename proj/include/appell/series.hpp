#pragma once

// Truncated power series arithmetic. A series is a vector of coefficients,
// lowest order first; every operation keeps the length of its inputs.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "appell/errors.hpp"

namespace appell::series {

template <class T>
using Series = std::vector<T>;

template <class T>
Series<T> mul(const Series<T>& a, const Series<T>& b) {
  const std::size_t len = std::min(a.size(), b.size());
  Series<T> out(len, T(0));
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = 0; i + j < len; ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// 1/a; requires a[0] != 0.
template <class T>
Series<T> reciprocal(const Series<T>& a) {
  if (a.empty() || a[0] == T(0)) throw domain_error("series reciprocal: zero constant term");
  Series<T> out(a.size(), T(0));
  out[0] = T(1) / a[0];
  for (std::size_t k = 1; k < a.size(); ++k) {
    T acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += a[j] * out[k - j];
    out[k] = -acc / a[0];
  }
  return out;
}

template <class T>
Series<T> div(const Series<T>& a, const Series<T>& b) {
  return mul(a, reciprocal(b));
}

/// exp(a) via the derivative recurrence k e_k = sum_j j a_j e_{k-j}.
/// e0 is exp(a[0]) supplied by the caller (lets it live outside T's range).
template <class T>
Series<T> exp(const Series<T>& a, T e0) {
  Series<T> out(a.size(), T(0));
  if (a.empty()) return out;
  out[0] = e0;
  for (std::size_t k = 1; k < a.size(); ++k) {
    T acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += T(double(j)) * a[j] * out[k - j];
    out[k] = acc / T(double(k));
  }
  return out;
}

template <class T>
Series<T> derivative(const Series<T>& a) {
  if (a.size() <= 1) return Series<T>(a.size(), T(0));
  Series<T> out(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) out[k - 1] = T(double(k)) * a[k];
  return out;
}

/// sum_m coeffs[m] * w^m where w has zero constant term.
template <class T>
Series<T> compose(const Series<T>& coeffs, const Series<T>& w) {
  const std::size_t len = w.size();
  Series<T> out(len, T(0));
  Series<T> power(len, T(0));
  if (len == 0) return out;
  power[0] = T(1);
  for (std::size_t m = 0; m < coeffs.size(); ++m) {
    for (std::size_t k = 0; k < len; ++k) out[k] += coeffs[m] * power[k];
    power = mul(power, w);
  }
  return out;
}

/// Drops the first `shift` coefficients (division by t^shift when they vanish).
template <class T>
Series<T> shift_down(const Series<T>& a, std::size_t shift) {
  if (shift >= a.size()) return {};
  return Series<T>(a.begin() + static_cast<std::ptrdiff_t>(shift), a.end());
}

template <class T, class U>
T evaluate(const Series<T>& a, U t) {
  T acc(0);
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * t + a[k];
  return acc;
}

}  // namespace appell::series
