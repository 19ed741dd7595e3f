#pragma once

// Aberth-Ehrlich simultaneous root iteration.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <thread>
#include <vector>

#include "appell/errors.hpp"

namespace appell::roots {

using cplx = std::complex<double>;

struct AberthOptions {
  int max_iterations = 500;
  double tol = 1e-14;  // relative step size at which a root is frozen
  unsigned threads = 1;
};

struct AberthResult {
  std::vector<cplx> roots;
  std::vector<bool> converged;
  int iterations = 0;
};

namespace detail {

inline void value_and_derivative(const std::vector<cplx>& c, cplx z, cplx& p, cplx& dp) {
  p = c.back();
  dp = 0.0;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
}

}  // namespace detail

/// Roots of sum_k c[k] z^k (lowest degree first, leading coefficient nonzero).
///
/// Jacobi-style sweeps: every correction in a sweep reads the previous
/// iterate, so the sweep splits across `threads` workers with a join as the
/// barrier.
inline AberthResult aberth(const std::vector<cplx>& coeffs, const AberthOptions& opt = {}) {
  std::vector<cplx> c = coeffs;
  while (!c.empty() && c.back() == cplx{}) c.pop_back();
  if (c.size() < 2) return {};
  // Exact zero roots from vanishing low-order coefficients.
  std::size_t zeros_at_origin = 0;
  while (c[zeros_at_origin] == cplx{}) ++zeros_at_origin;
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(zeros_at_origin));
  if (c.size() < 2) {
    AberthResult trivial;
    trivial.roots.assign(zeros_at_origin, cplx{});
    trivial.converged.assign(zeros_at_origin, true);
    return trivial;
  }
  const std::size_t deg = c.size() - 1;

  double radius = 0.0;
  for (std::size_t k = 0; k < deg; ++k) radius = std::max(radius, std::abs(c[k] / c[deg]));
  radius = 1.2 * std::pow(radius, 1.0 / double(deg));
  if (!(radius > 0.0)) radius = 1.0;

  AberthResult res;
  res.roots.resize(deg);
  res.converged.assign(deg, false);
  for (std::size_t k = 0; k < deg; ++k) {
    const double angle = 2.0 * std::numbers::pi * double(k) / double(deg) + 0.4;
    res.roots[k] = std::polar(radius, angle);
  }

  std::vector<cplx> next(deg);
  const unsigned workers = std::max(1u, std::min<unsigned>(opt.threads, unsigned(deg)));
  auto sweep = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const cplx z = res.roots[i];
      if (res.converged[i]) {
        next[i] = z;
        continue;
      }
      cplx p, dp;
      detail::value_and_derivative(c, z, p, dp);
      if (p == cplx{}) {
        next[i] = z;
        continue;
      }
      const cplx ratio = p / dp;
      cplx repulsion{};
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) repulsion += 1.0 / (z - res.roots[j]);
      next[i] = z - ratio / (1.0 - ratio * repulsion);
    }
  };

  for (int it = 0; it < opt.max_iterations; ++it) {
    if (workers == 1) {
      sweep(0, deg);
    } else {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (deg + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk, hi = std::min(deg, lo + chunk);
        if (lo < hi) pool.emplace_back(sweep, lo, hi);
      }
    }
    bool all = true;
    for (std::size_t i = 0; i < deg; ++i) {
      if (!res.converged[i]) {
        const double step = std::abs(next[i] - res.roots[i]);
        if (!std::isfinite(step)) throw convergence_error("aberth: iteration diverged");
        if (step <= opt.tol * std::max(std::abs(next[i]), 1e-3 * radius)) res.converged[i] = true;
      }
      res.roots[i] = next[i];
      all = all && res.converged[i];
    }
    res.iterations = it + 1;
    if (all) break;
  }
  res.roots.insert(res.roots.end(), zeros_at_origin, cplx{});
  res.converged.insert(res.converged.end(), zeros_at_origin, true);
  return res;
}

}  // namespace appell::roots
