#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace appell {

/// Dense univariate polynomial with complex coefficients, lowest degree first.
class PolynomialC {
 public:
  using cplx = std::complex<double>;

  PolynomialC() = default;
  explicit PolynomialC(std::vector<cplx> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

  const std::vector<cplx>& coefficients() const { return coeffs_; }

  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  cplx operator[](std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : cplx{}; }

  cplx operator()(cplx x) const {
    cplx acc{};
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
    return acc;
  }

  /// Term-by-term sum; reference for Horner in tests.
  cplx evaluate_terms(cplx x) const {
    cplx acc{}, power{1.0, 0.0};
    for (const auto& c : coeffs_) {
      acc += c * power;
      power *= x;
    }
    return acc;
  }

  PolynomialC derivative() const {
    std::vector<cplx> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(coeffs_[k] * double(k));
    return PolynomialC(std::move(d));
  }

  friend PolynomialC operator*(const PolynomialC& a, const PolynomialC& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<cplx> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return PolynomialC(std::move(out));
  }

  friend PolynomialC operator+(const PolynomialC& a, const PolynomialC& b) {
    std::vector<cplx> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return PolynomialC(std::move(out));
  }

  friend PolynomialC operator-(const PolynomialC& a) {
    std::vector<cplx> out = a.coeffs_;
    for (auto& c : out) c = -c;
    return PolynomialC(std::move(out));
  }

  friend PolynomialC operator-(const PolynomialC& a, const PolynomialC& b) { return a + (-b); }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == cplx{}) coeffs_.pop_back();
  }

  std::vector<cplx> coeffs_;
};

}  // namespace appell
