#pragma once

// Bernoulli polynomials, g(z) = (e^z - 1)/z: rational oracle, the cosine form of
// Theorem 1, the steepest-descent forms (with the polylog on Re x = 0), and the
// two-term asymptotics.

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "appell/asym.hpp"
#include "appell/contour.hpp"
#include "appell/core.hpp"
#include "appell/detail/extended.hpp"
#include "appell/errors.hpp"
#include "appell/generating_function.hpp"
#include "appell/log_complex.hpp"
#include "appell/polynomial.hpp"
#include "appell/sdrep.hpp"

namespace appell {

using rational = boost::multiprecision::cpp_rational;

/// B_0..B_n (B_1 = -1/2), from sum_{j=0}^{m} C(m+1, j) B_j = 0.
inline std::vector<rational> bernoulli_numbers(int n) {
  if (n < 0) throw domain_error("n must be >= 0");
  static std::mutex mu;
  static std::vector<rational> cache{rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(cache.size()) <= n) {
    const int m = static_cast<int>(cache.size());
    rational acc = 0;
    boost::multiprecision::cpp_int binom = 1;  // C(m+1, j)
    for (int j = 0; j < m; ++j) {
      acc += rational(binom) * cache[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    cache.push_back(-acc / (m + 1));
  }
  return {cache.begin(), cache.begin() + n + 1};
}

namespace detail {

inline xreal to_xreal(const rational& r) {
  return xreal(boost::multiprecision::numerator(r)) / xreal(boost::multiprecision::denominator(r));
}

}  // namespace detail

/// B_n(x) = sum_k C(n, k) B_{n-k} x^k.
inline PolynomialC bernoulli_oracle(int n) {
  const auto B = bernoulli_numbers(n);
  std::vector<cplx> c(static_cast<std::size_t>(n + 1));
  boost::multiprecision::cpp_int binom = 1;
  for (int k = 0; k <= n; ++k) {
    c[k] = detail::to_xreal(rational(binom) * B[n - k]).convert_to<double>();
    binom = binom * (n - k) / (k + 1);
  }
  return PolynomialC(c);
}

/// B_n(n x)/n! in quad precision from the rational coefficients.
inline LogComplex bernoulli_oracle_rescaled(int n, cplx x) {
  const auto B = bernoulli_numbers(n);
  std::vector<detail::xcomplex> a(static_cast<std::size_t>(n + 1));
  // a_k = B_{n-k}/(n-k)! * n^k/k!
  rational inv_fact_nk = 1;  // 1/(n-k)!
  for (int j = 2; j <= n; ++j) inv_fact_nk /= j;
  detail::xreal w = 1;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      w = w * n / k;
      inv_fact_nk *= (n - k + 1);
    }
    a[k] = detail::xcomplex(detail::to_xreal(B[n - k] * inv_fact_nk) * w);
  }
  return detail::to_log(horner_extended(a, detail::to_x(x)));
}

/// Li_s(z) = sum_{k>=1} z^k/k^s for |z| < 1.
inline cplx polylog(int s, cplx z) {
  if (std::abs(z) >= 1.0) throw domain_error("polylog series needs |z| < 1");
  cplx sum{}, zk = 1.0;
  for (long k = 1; k < 100000000; ++k) {
    zk *= z;
    const cplx term = zk / std::pow(double(k), s);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) return sum;
    if (zk == cplx{}) return sum;
  }
  throw convergence_error("polylog series did not converge");
}

struct BernoulliEval {
  int n = 0;
  cplx x{};
  int k_max = 0;                    // floor(1/(2 pi |x|))
  RepresentationBreakdown breakdown;  // integral, prefactor and the psi/axis residue list
  LogComplex sums;                  // the closed-form residue part
  LogComplex total;
  std::vector<std::string> diagnostics;
};

namespace detail {

/// Heaviside weight with 1/2 at |log(bound/k)| <= tol.
inline double theta_weight(double bound, int k, double tol) {
  if (bound <= 0.0) return 0.0;
  const double l = std::log(bound / double(k));
  if (std::abs(l) <= tol) return 0.5;
  return l > 0 ? 1.0 : 0.0;
}

inline int bernoulli_kmax(cplx x) {
  int k = 0;
  while (2.0 * std::numbers::pi * (k + 1) * std::abs(x) <= 1.0 + kTolOn) ++k;
  return k;
}

/// -(2 pi)^{-n} e^{sign 2 pi i k n x} / (sign i k)^n
inline LogComplex bernoulli_family_term(int n, cplx x, int k, double sign) {
  const cplx i{0.0, 1.0};
  LogComplex t = LogComplex::exp(sign * 2.0 * std::numbers::pi * i * double(k) * double(n) * x);
  t /= LogComplex::from(sign * i * double(k)).pow(n);
  t.log_mag -= double(n) * std::log(2.0 * std::numbers::pi);
  return -t;
}

}  // namespace detail

/// Theorem 1 with the residues folded into a cosine sum.
inline BernoulliEval eval_corollary1(int n, cplx x, const ContourOptions& opt = {}) {
  BernoulliEval out;
  out.n = n;
  out.x = x;
  out.breakdown = eval_theorem1(GeneratingFunction::bernoulli(), n, x, opt);
  out.k_max = detail::bernoulli_kmax(x);
  const double pi = std::numbers::pi;
  std::vector<LogComplex> terms;
  for (int k = 1; k <= out.k_max; ++k) {
    const double r = 2.0 * pi * k * std::abs(x);
    const double weight = std::abs(r - 1.0) <= kTolOn ? 0.5 : 1.0;
    // -(2/(2 pi)^n) k^{-n} cos(n (pi/2 - 2 pi k x))
    LogComplex t = log_cos(double(n) * (pi / 2.0 - 2.0 * pi * double(k) * x));
    t.log_mag += std::log(2.0 * weight) - double(n) * std::log(2.0 * pi * k);
    terms.push_back(-t);
  }
  out.sums = log_sum(terms);
  out.total = out.breakdown.prefactor * out.breakdown.integral + out.sums;
  return out;
}

/// Theorem 2 with the residues as closed-form finite sums (Re x != 0) or the polylog form (Re x = 0).
inline BernoulliEval eval_sd_bernoulli(int n, cplx x, const SteepestOptions& opt = {}) {
  if (n < 1) throw domain_error("n must be >= 1");
  if (x == cplx{}) throw domain_error("x must be nonzero");
  const double pi = std::numbers::pi;
  const auto g = GeneratingFunction::bernoulli();

  if (x.real() == 0.0 && x.imag() < 0.0) {
    BernoulliEval c = eval_sd_bernoulli(n, std::conj(x), opt);
    auto flip = [](LogComplex& v) { v.phase = wrap_phase(-v.phase); };
    c.x = x;
    flip(c.sums);
    flip(c.total);
    flip(c.breakdown.integral);
    flip(c.breakdown.total);
    flip(c.breakdown.prefactor);
    return c;
  }

  BernoulliEval out;
  out.n = n;
  out.x = x;
  out.k_max = detail::bernoulli_kmax(x);
  std::vector<LogComplex> terms;

  if (x.real() != 0.0) {
    out.breakdown = eval_theorem2(g, n, x, opt);
    int counted[2] = {0, 0};  // [0]: zeta = +2 pi i k, [1]: zeta = -2 pi i k
    for (int f = 0; f < 2; ++f) {
      const double sign = f == 0 ? 1.0 : -1.0;
      const cplx ix = cplx(0.0, sign) * x;
      const double bound = std::arg(ix) / (2.0 * pi * ix.imag());
      for (int k = 1; double(k) <= bound * (1.0 + 1e-9); ++k) {
        const double w = detail::theta_weight(bound, k, kTolOnC);
        if (w == 0.0) continue;
        ++counted[f];
        terms.push_back(detail::bernoulli_family_term(n, x, k, sign) * cplx(w));
      }
    }
    int classified[2] = {0, 0};
    for (const auto& r : out.breakdown.residues) ++classified[r.sing.zeta.imag() > 0 ? 0 : 1];
    for (int f = 0; f < 2; ++f)
      if (counted[f] != classified[f])
        out.diagnostics.push_back(std::string("family ") + (f == 0 ? "+" : "-") + ": Theta count " +
                                  std::to_string(counted[f]) + " differs from psi classification " +
                                  std::to_string(classified[f]));
  } else {
    const double q = x.imag();
    // zeta = -2 pi i k gives x zeta = 2 pi q k on the positive axis; zeta = +2 pi i k lies on Re theta = pi.
    std::vector<Singularity> cands;
    for (int k = 1; 2.0 * pi * q * k <= std::numbers::e; ++k)
      cands.push_back(classify_singularity({cplx(0.0, -2.0 * pi * k), 1}, x));
    out.breakdown = detail::theorem2_core(g, n, x, opt, cands);
    const double bound = 1.0 / (2.0 * pi * q);
    int counted = 0;
    for (int k = 1; double(k) <= bound * (1.0 + 1e-9); ++k) {
      const double w = detail::theta_weight(bound, k, kTolOnC);
      if (w == 0.0) continue;
      ++counted;
      terms.push_back(detail::bernoulli_family_term(n, x, k, -1.0) * cplx(w));
    }
    // -Li_n(e^{2 pi i n x}) / (2 pi i)^n
    LogComplex li = LogComplex::from(polylog(n, std::exp(-2.0 * pi * double(n) * q)));
    li /= LogComplex::from(cplx(0.0, 2.0 * pi)).pow(n);
    terms.push_back(-li);
    if (counted != static_cast<int>(out.breakdown.residues.size()))
      out.diagnostics.push_back("finite family: Theta count " + std::to_string(counted) +
                                " differs from psi classification " +
                                std::to_string(out.breakdown.residues.size()));
  }
  out.sums = log_sum(terms);
  out.total = out.breakdown.prefactor * out.breakdown.integral + out.sums;
  return out;
}

/// Closed-form two-term Bernoulli asymptotics: regular case and 1/x = 2 pi i m.
inline AsymptoticTerm bernoulli_asymp(int n, cplx x) {
  if (n < 1) throw domain_error("n must be >= 1");
  if (x == cplx{}) throw domain_error("x must be nonzero");
  const double pi = std::numbers::pi;
  const cplx i{0.0, 1.0};
  AsymptoticTerm t;
  t.scale = detail::stirling_scale(n, x);
  t.power = -0.5;
  t.log_base = 1.0;
  const cplx m = 1.0 / (2.0 * pi * i * x);
  const double mr = std::round(m.real());
  if (mr != 0.0 && std::abs(m - mr) <= kTolOn * std::abs(m)) {
    t.kind = TermKind::saddle_pole;
    t.series = {(2.0 / 3.0 - 2.0 * pi * i * mr) / 2.0,
                (1.0 / 270.0 + mr * pi * i / 6.0 + 2.0 * mr * mr * pi * pi / 3.0) / 2.0};
    return t;
  }
  t.kind = TermKind::saddle;
  const cplx e1 = std::exp(1.0 / x), d = e1 - 1.0;
  const cplx lead = 1.0 / (x * d);
  const cplx corr = (x * x + e1 * e1 * (6.0 - 12.0 * x + x * x) - 2.0 * e1 * (x * x - 6.0 * x - 3.0)) /
                    (12.0 * x * x * d * d);
  t.series = {lead, -lead * corr};
  return t;
}

}  // namespace appell
