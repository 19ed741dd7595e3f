#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature for complex integrands.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <vector>

namespace appell::quad {

using cplx = std::complex<double>;

struct Options {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  int max_intervals = 4000;
};

struct Result {
  cplx value{0.0, 0.0};
  double error = 0.0;
  double abs_integral = 0.0;  // integral of |f|, for roundoff floors
  int evaluations = 0;
  bool converged = false;
};

namespace detail {

// QUADPACK qk15 abscissae and weights.
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b;
  cplx value;
  double error;
  double abs_value;
  bool operator<(const Piece& o) const { return error < o.error; }
};

template <class F>
Piece gk15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<cplx, 15> fv;
  fv[14] = f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[2 * j] = f(center - dx);
    fv[2 * j + 1] = f(center + dx);
  }
  cplx kronrod = fv[14] * kWgk[7];
  cplx gauss = fv[14] * kWg[3];
  double abs_k = std::abs(fv[14]) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const cplx pair = fv[2 * j] + fv[2 * j + 1];
    kronrod += pair * kWgk[j];
    abs_k += (std::abs(fv[2 * j]) + std::abs(fv[2 * j + 1])) * kWgk[j];
    if (j % 2 == 1) gauss += pair * kWg[j / 2];
  }
  const cplx mean = 0.5 * kronrod;
  double resasc = std::abs(fv[14] - mean) * kWgk[7];
  for (int j = 0; j < 7; ++j)
    resasc += (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean)) * kWgk[j];
  resasc *= std::abs(half);

  Piece p{a, b, kronrod * half, 0.0, abs_k * std::abs(half)};
  double err = std::abs((kronrod - gauss) * half);
  // QUADPACK's heuristic sharpening of the raw Gauss/Kronrod gap.
  if (resasc > 0.0 && err > 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * p.abs_value);
  p.error = err;
  return p;
}

}  // namespace detail

/// Integrates f over [a, b]. Never throws; callers inspect `converged`.
template <class F>
Result integrate(F&& f, double a, double b, const Options& opt = {}) {
  std::priority_queue<detail::Piece> heap;
  Result res;
  auto first = detail::gk15(f, a, b);
  res.evaluations = 15;
  heap.push(first);
  cplx total = first.value;
  double error = first.error;
  double abs_total = first.abs_value;
  const double eps = std::numeric_limits<double>::epsilon();
  auto target = [&] {
    // Twice the per-piece roundoff floor: a sum of floored piece errors cannot be bisected below it.
    return std::max({opt.abs_tol, opt.rel_tol * std::abs(total), 100.0 * eps * abs_total});
  };
  int intervals = 1;
  while (error > target() && intervals < opt.max_intervals) {
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {  // interval exhausted
      heap.push(worst);
      break;
    }
    auto left = detail::gk15(f, worst.a, mid);
    auto right = detail::gk15(f, mid, worst.b);
    res.evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_total += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum from the pieces to shed accumulated update drift.
  total = 0.0;
  error = 0.0;
  abs_total = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    error += heap.top().error;
    abs_total += heap.top().abs_value;
    heap.pop();
  }
  res.value = total;
  res.error = error;
  res.abs_integral = abs_total;
  res.converged = error <= target() && std::isfinite(std::abs(total));
  return res;
}

}  // namespace appell::quad
