#pragma once

// Large-n expansions of pi_n(x)/n!: the saddle term, residue terms, and the
// two-term steepest-descent forms (regular and pole-at-the-saddle cases).
//
// Every scale carries the common factor x^n, so a term evaluates directly to
// its share of pi_n(x)/n!.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "appell/contour.hpp"
#include "appell/errors.hpp"
#include "appell/generating_function.hpp"
#include "appell/log_complex.hpp"
#include "appell/sdpath.hpp"
#include "appell/series.hpp"

namespace appell {

enum class TermKind { saddle, residue, saddle_pole };

inline const char* to_string(TermKind k) {
  switch (k) {
    case TermKind::saddle: return "saddle";
    case TermKind::residue: return "residue";
    default: return "saddle_pole";
  }
}

struct AsymptoticTerm {
  TermKind kind = TermKind::saddle;
  cplx zeta{};           // residue terms only
  LogComplex scale;      // includes x^n
  double power = 0.0;    // n-power
  std::vector<cplx> series;  // coefficients of 1, 1/n
  double log_base = 0.0;     // log|scale^{1/n} / x|: 1 for the saddle, Re(zeta x) - log|zeta x| for residues

  LogComplex evaluate(int n, int terms = 2) const {
    cplx s{};
    double inv = 1.0;
    for (int k = 0; k < terms && k < static_cast<int>(series.size()); ++k) {
      s += series[static_cast<std::size_t>(k)] * inv;
      inv /= double(n);
    }
    LogComplex out = scale * LogComplex::from(s);
    out.log_mag += power * std::log(double(n));
    return out;
  }
  LogComplex leading(int n) const { return evaluate(n, 1); }
};

struct AsymptoticTerms {
  std::vector<AsymptoticTerm> terms;  // dominant first
  bool boundary = false;              // top two scales tie within 1e-9
  bool saddle_omitted = false;        // g(1/x) = 0
  std::vector<std::string> warnings;
};

/// Laurent data of F(tau) = theta'(tau)/g(e^{i theta(tau)}/x) at tau = 0.
struct IntegrandSeries {
  cplx inverse{};          // coefficient of 1/tau (pole case)
  std::vector<cplx> c;     // c[j] multiplies tau^j
  bool pole = false;
};

namespace detail {

/// The zero of g at 1/x, if any.
inline std::optional<Zero> zero_at_saddle(const GeneratingFunction& g, cplx x) {
  for (const auto& z : g.zeros_within((1.0 + 1e-9) / std::abs(x)))
    if (std::abs(x * z.value - 1.0) <= kTolOn) return z;
  return std::nullopt;
}

inline std::vector<cplx> scaled_derivatives(const GeneratingFunction& g, cplx z, int count) {
  std::vector<cplx> out;
  double fact = 1.0;
  for (int m = 0; m < count; ++m) {
    if (m > 0) fact *= m;
    out.push_back(g.deriv(m, z) / fact);
  }
  return out;
}

inline LogComplex stirling_scale(int n, cplx x) {
  LogComplex s = LogComplex::from(x).pow(n);
  s.log_mag += double(n) - 0.5 * std::log(2.0 * std::numbers::pi);
  return s;
}

}  // namespace detail

/// tau-series of theta'/g(e^{i theta}/x), with `len` regular coefficients.
inline IntegrandSeries integrand_series(const GeneratingFunction& g, cplx x, int len = 5) {
  using series::Series;
  if (x == cplx{}) throw domain_error("x must be nonzero");
  const int L = len + 2;
  const SeriesCoeffs th = theta_taylor_coeffs(L);
  Series<cplx> T(static_cast<std::size_t>(L + 1), cplx{}), iT(T.size(), cplx{});
  for (int k = 1; k <= L; ++k) {
    T[k] = th.taylor(k);
    iT[k] = cplx(0.0, 1.0) * T[k];
  }
  const Series<cplx> E = series::exp(iT, cplx(1.0));
  Series<cplx> delta(E.size(), cplx{});
  for (std::size_t k = 1; k < E.size(); ++k) delta[k] = E[k] / x;
  const Series<cplx> dT = series::derivative(T);  // length L

  IntegrandSeries out;
  const auto z = detail::zero_at_saddle(g, x);
  if (!z) {
    const auto gm = detail::scaled_derivatives(g, 1.0 / x, L + 1);
    const Series<cplx> G = series::compose(gm, delta);
    out.c = series::mul(dT, series::reciprocal(G));
  } else {
    if (z->multiplicity > 1)
      throw degeneracy_error("1/x is a zero of order " + std::to_string(z->multiplicity) + "; only simple poles at the saddle are supported");
    // g(1/x + delta) = delta * sum_{m>=1} g_m/m! delta^{m-1}, delta = tau * dhat.
    const auto gm = detail::scaled_derivatives(g, z->value, L + 2);
    const Series<cplx> gshift(gm.begin() + 1, gm.end());
    const Series<cplx> Gt = series::compose(gshift, delta);
    const Series<cplx> dhat = series::shift_down(delta, 1);
    const Series<cplx> H = series::mul(dT, series::reciprocal(series::mul(dhat, Gt)));
    out.pole = true;
    out.inverse = H[0];
    out.c.assign(H.begin() + 1, H.end());
  }
  out.c.resize(static_cast<std::size_t>(len));
  return out;
}

/// Two-term expansion of the integral along C, from Watson's lemma on the tau-series.
inline AsymptoticTerm asymp_steepest_two_term(const GeneratingFunction& g, int n, cplx x) {
  if (n < 1) throw domain_error("n must be >= 1");
  const IntegrandSeries F = integrand_series(g, x, 3);
  AsymptoticTerm t;
  t.kind = F.pole ? TermKind::saddle_pole : TermKind::saddle;
  t.scale = detail::stirling_scale(n, x);
  t.power = -0.5;
  t.log_base = 1.0;
  // (1/2pi) int e^{-n tau^2} F = (1/sqrt(2 pi n)) (F0/sqrt2 + F2/(2 sqrt2 n) + ...); the odd 1/tau part has zero PV.
  t.series = {F.c[0] / std::numbers::sqrt2, F.c[2] / (2.0 * std::numbers::sqrt2)};
  return t;
}

/// Leading data of a residue term: coefficients of n^m, m = 0..p-1, in [u^{p-1}](S/G)
/// with S = exp(n (x zeta (e^{iu} - 1) - iu)).
inline std::vector<cplx> residue_polynomial(const GeneratingFunction& g, const Zero& z, cplx x) {
  using series::Series;
  const int p = z.multiplicity;
  const cplx i{0.0, 1.0}, zeta = z.value, w = x * zeta;
  Series<cplx> expm1(static_cast<std::size_t>(p + 1), cplx{});
  cplx t = 1.0;
  for (int k = 1; k <= p; ++k) {
    t *= i / double(k);
    expm1[k] = t;
  }
  // hat G(u) as in the principal part (length p).
  Series<cplx> hatw(static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) hatw[k] = zeta * expm1[k + 1];
  Series<cplx> G(static_cast<std::size_t>(p), cplx{}), pw(static_cast<std::size_t>(p), cplx{});
  pw[0] = 1.0;
  for (int m = 0; m < p; ++m) pw = series::mul(pw, hatw);
  double fact = 1.0;
  for (int m = 2; m <= p; ++m) fact *= m;
  for (int m = p; m <= 2 * p - 1; ++m) {
    if (m > p) {
      fact *= m;
      pw = series::mul(pw, hatw);
    }
    const cplx coef = g.deriv(m, zeta) / fact;
    for (int k = 0; k + (m - p) < p; ++k) G[k + (m - p)] += coef * pw[k];
  }
  const Series<cplx> invG = series::reciprocal(G);
  Series<cplx> A(static_cast<std::size_t>(p), cplx{});
  for (int k = 1; k < p; ++k) A[k] = w * expm1[k];
  if (p > 1) A[1] -= i;
  std::vector<cplx> out(static_cast<std::size_t>(p), cplx{});
  Series<cplx> Am(static_cast<std::size_t>(p), cplx{});
  Am[0] = 1.0;
  double mfact = 1.0;
  for (int m = 0; m < p; ++m) {
    if (m > 0) {
      Am = series::mul(Am, A);
      mfact *= m;
    }
    cplx acc{};
    for (int j = 0; j < p; ++j) acc += Am[j] * invG[p - 1 - j];
    out[m] = acc / mfact;
  }
  return out;
}

/// Saddle term plus one residue term per zero with |zeta x| <= 1, dominant first.
inline AsymptoticTerms asymp_theorem1_terms(const GeneratingFunction& g, int n, cplx x) {
  if (n < 1) throw domain_error("n must be >= 1");
  if (x == cplx{}) throw domain_error("x must be nonzero");
  AsymptoticTerms out;
  if (detail::zero_at_saddle(g, x)) {
    out.saddle_omitted = true;
    out.warnings.push_back("g(1/x) = 0: saddle term omitted");
  } else {
    out.terms.push_back(asymp_steepest_two_term(g, n, x));
  }
  for (const auto& z : g.zeros_within((1.0 + kTolOn) / std::abs(x))) {
    const Singularity s = classify_singularity(z, x);
    if (s.axis == Position::below) continue;
    const double weight = s.axis == Position::on ? 0.5 : 1.0;
    const cplx w = x * z.value;
    const auto P = residue_polynomial(g, z, x);
    const int p = z.multiplicity;
    AsymptoticTerm t;
    t.kind = TermKind::residue;
    t.zeta = z.value;
    t.power = double(p - 1);
    t.log_base = w.real() - std::log(std::abs(w));
    // x^n (e^{w}/w)^n = e^{n w} / zeta^n
    t.scale = LogComplex::exp(double(n) * w) / LogComplex::from(z.value).pow(n);
    const cplx c = cplx(0.0, -1.0) * weight;
    t.series = {c * P[p - 1], p > 1 ? c * P[p - 2] : cplx{}};
    out.terms.push_back(t);
  }
  std::stable_sort(out.terms.begin(), out.terms.end(),
                   [](const AsymptoticTerm& a, const AsymptoticTerm& b) { return a.log_base > b.log_base; });
  if (out.terms.size() >= 2 && out.terms[0].log_base - out.terms[1].log_base <= 1e-9) {
    out.boundary = true;
    out.warnings.push_back("boundary: expansion non-uniform");
  }
  return out;
}

}  // namespace appell
