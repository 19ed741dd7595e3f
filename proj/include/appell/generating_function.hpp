#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "appell/detail/extended.hpp"
#include "appell/errors.hpp"
#include "appell/polynomial.hpp"
#include "appell/roots.hpp"

namespace appell {

/// Threshold on |g(zeta)| (relative to the coefficient scale for polynomials).
inline constexpr double kTolZero = 1e-10;

struct Zero {
  cplx value;
  int multiplicity = 1;
};

/// The entire function g of the generating relation sum p_n(x) z^n/n! = e^{xz}/g(z).
///
/// Two kinds are supported: complex polynomials (zeros located once at
/// construction) and the Bernoulli choice g(z) = (e^z - 1)/z with zeros
/// 2 pi i k, k != 0.
class GeneratingFunction {
 public:
  enum class Kind { polynomial, bernoulli };

  static GeneratingFunction polynomial(std::vector<cplx> coefficients) {
    GeneratingFunction g;
    g.kind_ = Kind::polynomial;
    g.poly_ = PolynomialC(std::move(coefficients));
    if (g.poly_.is_zero() || std::abs(g.poly_[0]) < kTolZero)
      throw domain_error("generating function must satisfy g(0) != 0");
    g.locate_polynomial_zeros();
    return g;
  }

  static GeneratingFunction polynomial(const PolynomialC& p) { return polynomial(p.coefficients()); }

  static GeneratingFunction bernoulli() {
    GeneratingFunction g;
    g.kind_ = Kind::bernoulli;
    return g;
  }

  Kind kind() const { return kind_; }
  const PolynomialC& poly() const { return poly_; }

  std::string describe() const {
    if (kind_ == Kind::bernoulli) return "bernoulli";
    std::string s;
    for (int k = 0; k <= poly_.degree(); ++k) {
      if (k) s += ",";
      char buf[64];
      const cplx c = poly_[k];
      if (c.imag() == 0.0)
        std::snprintf(buf, sizeof buf, "%.17g", c.real());
      else
        std::snprintf(buf, sizeof buf, "%.17g%+.17gi", c.real(), c.imag());
      s += buf;
    }
    return s;
  }

  cplx eval(cplx z) const {
    if (kind_ == Kind::polynomial) return poly_(z);
    if (std::abs(z) < 0.5) {
      cplx term{1.0, 0.0}, acc{1.0, 0.0};
      for (int k = 1; k < 30; ++k) {
        term *= z / double(k + 1);
        acc += term;
      }
      return acc;
    }
    return (std::exp(z) - 1.0) / z;
  }

  /// 1/g(z), finite wherever g is nonzero; no overflow for Bernoulli at large Re z.
  cplx reciprocal(cplx z) const {
    if (kind_ == Kind::bernoulli && z.real() > 30.0) {
      const cplx em = std::exp(-z);
      return z * em / (1.0 - em);
    }
    return 1.0 / eval(z);
  }

  /// m-th derivative g^{(m)}(z).
  cplx deriv(int m, cplx z) const {
    if (m < 0) throw domain_error("derivative order must be >= 0");
    if (m == 0) return eval(z);
    if (kind_ == Kind::polynomial) {
      PolynomialC d = poly_;
      for (int k = 0; k < m; ++k) d = d.derivative();
      return d(z);
    }
    // g^{(m)}(z) = int_0^1 t^m e^{zt} dt.
    if (std::abs(z) <= 2.0 * m + 2.0) {
      cplx term{1.0, 0.0}, acc = 1.0 / double(m + 1);
      for (int k = 1; k < 200; ++k) {
        term *= z / double(k);
        const cplx add = term / double(k + m + 1);
        acc += add;
        if (std::abs(add) < 1e-18 * std::abs(acc) && k > std::abs(z)) break;
      }
      return acc;
    }
    // Integration by parts: e^z sum_j (-1)^j m!/(m-j)! z^{-j-1} - (-1)^m m! z^{-m-1}.
    const cplx ez = std::exp(z);
    cplx acc{}, coef{1.0, 0.0}, zp = 1.0 / z;
    for (int j = 0; j <= m; ++j) {
      acc += coef * zp;
      coef *= -double(m - j);
      zp /= z;
    }
    double fact = 1.0;
    for (int j = 2; j <= m; ++j) fact *= j;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return ez * acc - sign * fact * std::pow(z, -(m + 1));
  }

  /// Taylor coefficients g_0..g_N at the origin, in quad precision.
  std::vector<detail::xcomplex> taylor0_extended(int N) const {
    std::vector<detail::xcomplex> out(static_cast<std::size_t>(N + 1), detail::xcomplex(0));
    if (kind_ == Kind::polynomial) {
      for (int k = 0; k <= std::min(N, poly_.degree()); ++k) out[k] = detail::to_x(poly_[k]);
      return out;
    }
    detail::xreal inv_fact = 1;  // 1/(k+1)!
    for (int k = 0; k <= N; ++k) {
      inv_fact /= (k + 1);
      out[k] = detail::xcomplex(inv_fact);
    }
    return out;
  }

  std::vector<cplx> taylor0(int N) const {
    std::vector<cplx> out;
    for (const auto& c : taylor0_extended(N)) out.push_back(detail::to_c(c));
    return out;
  }

  /// Zeros with |zeta| <= radius, sorted by modulus.
  std::vector<Zero> zeros_within(double radius) const {
    std::vector<Zero> out;
    if (kind_ == Kind::polynomial) {
      for (const auto& z : poly_zeros_)
        if (std::abs(z.value) <= radius) out.push_back(z);
      return out;
    }
    const double kmax = std::floor(radius / (2.0 * std::numbers::pi));
    if (kmax > 5e6) throw domain_error("zero listing radius too large for the Bernoulli kind");
    for (long k = 1; k <= static_cast<long>(kmax); ++k) {
      out.push_back({cplx(0.0, 2.0 * std::numbers::pi * double(k)), 1});
      out.push_back({cplx(0.0, -2.0 * std::numbers::pi * double(k)), 1});
    }
    return out;
  }

  /// Every zero for polynomials; Bernoulli zeros are infinite in number.
  const std::vector<Zero>& all_polynomial_zeros() const { return poly_zeros_; }

  /// Smallest zero modulus (infinity when g has no zeros).
  double r0() const {
    if (kind_ == Kind::bernoulli) return 2.0 * std::numbers::pi;
    if (poly_zeros_.empty()) return std::numeric_limits<double>::infinity();
    return std::abs(poly_zeros_.front().value);
  }

 private:
  void locate_polynomial_zeros();

  Kind kind_ = Kind::polynomial;
  PolynomialC poly_;
  std::vector<Zero> poly_zeros_;
};

inline void GeneratingFunction::locate_polynomial_zeros() {
  poly_zeros_.clear();
  if (poly_.degree() < 1) return;
  auto found = roots::aberth(poly_.coefficients()).roots;

  // Clusters of nearly coincident roots become one zero of higher order.
  std::vector<bool> used(found.size(), false);
  auto scale_at = [&](cplx z) {
    double s = 0.0, p = 1.0;
    for (const auto& c : poly_.coefficients()) {
      s += std::abs(c) * p;
      p *= std::abs(z);
    }
    return s;
  };
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> cluster{i};
    used[i] = true;
    for (std::size_t j = i + 1; j < found.size(); ++j)
      if (!used[j] && std::abs(found[j] - found[i]) < 1e-4 * (1.0 + std::abs(found[i]))) {
        cluster.push_back(j);
        used[j] = true;
      }
    const int p = static_cast<int>(cluster.size());
    cplx mean{};
    for (auto k : cluster) mean += found[k];
    mean /= double(p);
    // Newton on g^{(p-1)}, which has a simple zero there.
    for (int it = 0; it < 20; ++it) {
      const cplx step = deriv(p - 1, mean) / deriv(p, mean);
      if (!std::isfinite(std::abs(step))) break;
      mean -= step;
      if (std::abs(step) < 1e-16 * (1.0 + std::abs(mean))) break;
    }
    bool genuine = true;
    const double s = scale_at(mean);
    for (int m = 0; m < p; ++m)
      if (std::abs(deriv(m, mean)) > kTolZero * s * std::pow(1.0 + std::abs(mean), m)) genuine = false;
    if (genuine || p == 1) {
      poly_zeros_.push_back({mean, p});
    } else {
      for (auto k : cluster) poly_zeros_.push_back({found[k], 1});
    }
  }
  std::sort(poly_zeros_.begin(), poly_zeros_.end(),
            [](const Zero& a, const Zero& b) { return std::abs(a.value) < std::abs(b.value); });
}

}  // namespace appell
