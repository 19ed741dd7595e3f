#pragma once

// Theorem 1: pi_n(x)/n! as a principal-value integral over theta in [-pi, pi]
// plus residues at the singularities theta_k lying above the real axis.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "appell/errors.hpp"
#include "appell/generating_function.hpp"
#include "appell/log_complex.hpp"
#include "appell/quadrature.hpp"
#include "appell/sdpath.hpp"
#include "appell/series.hpp"

namespace appell {

/// | |zeta x| - 1 | below this counts as on the real axis.
inline constexpr double kTolOn = 1e-12;
/// |psi(theta)| below this counts as on C.
inline constexpr double kTolOnC = 1e-12;

enum class Position { above, on, below };

inline const char* to_string(Position p) {
  switch (p) {
    case Position::above: return "above";
    case Position::on: return "on";
    default: return "below";
  }
}

enum class Reference { real_axis, curve_C };

struct Singularity {
  cplx theta;  // Arg(x zeta) - i log|x zeta|
  cplx zeta;
  int order = 1;
  Position axis = Position::below;
  Position curve = Position::below;
  double psi = 0.0;  // +inf when Re theta = pi
};

struct ResidueTerm {
  Singularity sing;
  LogComplex residue;  // scaled by e^{-n}, like the integrand
  double weight = 0.0;
};

struct RepresentationBreakdown {
  LogComplex integral;
  std::vector<ResidueTerm> residues;
  LogComplex total;
  LogComplex prefactor;
  double eta_x = std::numeric_limits<double>::quiet_NaN();  // diagnostics only
  double quad_error = 0.0;
  int evaluations = 0;
};

struct ContourOptions {
  double rel_tol = 1e-12;
  int max_intervals = 20000;
};

inline Singularity classify_singularity(const Zero& z, cplx x) {
  Singularity s;
  s.zeta = z.value;
  s.order = z.multiplicity;
  const cplx w = x * z.value;
  const double r = std::abs(w);
  s.theta = cplx(std::arg(w), -std::log(r));
  if (s.theta.real() <= -std::numbers::pi) s.theta.real(std::numbers::pi);
  if (std::abs(r - 1.0) <= kTolOn)
    s.axis = Position::on;
  else
    s.axis = r < 1.0 ? Position::above : Position::below;
  if (s.theta.real() == std::numbers::pi) {
    // C runs off to Im theta = -infinity as Re theta -> pi, so this line lies above it.
    s.psi = std::numeric_limits<double>::infinity();
    s.curve = Position::above;
  } else {
    s.psi = psi(s.theta);
    s.curve = std::abs(s.psi) <= kTolOnC ? Position::on : (s.psi > 0 ? Position::above : Position::below);
  }
  return s;
}

namespace detail {

inline void sort_by_height(std::vector<Singularity>& v) {
  std::stable_sort(v.begin(), v.end(),
                   [](const Singularity& a, const Singularity& b) { return a.theta.imag() > b.theta.imag(); });
}

/// Upper bound on |zeta| for Bernoulli zeros whose theta lies above C, scaled by `slack`.
inline double bernoulli_curve_radius(cplx x, double slack) {
  double bound = 0.0;
  for (double sign : {1.0, -1.0}) {
    const double X = std::arg(cplx(0.0, sign) * x);
    if (std::abs(X) >= std::numbers::pi)
      throw domain_error("infinitely many singularities above C (Bernoulli g with Re x = 0)");
    const double ratio = X == 0.0 ? 1.0 : X / std::sin(X);
    bound = std::max(bound, ratio);
  }
  return slack * bound / std::abs(x);
}

/// Every zero of g whose theta could matter: |x zeta| <= limit.
inline std::vector<Singularity> singularities_within(const GeneratingFunction& g, cplx x, double limit) {
  std::vector<Singularity> out;
  const double radius = limit / std::abs(x);
  for (const auto& z : g.zeros_within(radius * (1.0 + 1e-12))) out.push_back(classify_singularity(z, x));
  return out;
}

/// The log of exp(n (x zeta - Log(x zeta) - 1)): the e^{-n}-scaled integrand factor at theta_k.
inline LogComplex residue_scale(const Singularity& s, int n, cplx x) {
  const cplx w = x * s.zeta;
  const cplx logw{std::log(std::abs(w)), s.theta.real()};
  return LogComplex::exp(double(n) * (w - logw - 1.0));
}

}  // namespace detail

/// Laurent principal part of exp(n(e^{i theta} - i theta - 1))/g(e^{i theta}/x) at theta_k,
/// returned as scale * q with q[j-1] the coefficient of (theta - theta_k)^{-j}, j = 1..p.
struct PrincipalPart {
  LogComplex scale;
  std::vector<cplx> q;
  LogComplex coefficient(int j) const { return scale * q[static_cast<std::size_t>(j - 1)]; }
  LogComplex residue() const { return coefficient(1); }
};

inline PrincipalPart principal_part(const GeneratingFunction& g, const Singularity& s, int n, cplx x) {
  using series::Series;
  const int p = s.order;
  const cplx i{0.0, 1.0};
  const cplx zeta = s.zeta, w = x * zeta;
  // e^{iu} - 1 = sum_{k>=1} (iu)^k / k!
  Series<cplx> expm1(static_cast<std::size_t>(p + 1), cplx{});
  {
    cplx t = 1.0;
    for (int k = 1; k <= p; ++k) {
      t *= i / double(k);
      expm1[k] = t;
    }
  }
  // hat w(u) = zeta (e^{iu} - 1)/u, length p
  Series<cplx> hatw(static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) hatw[k] = zeta * expm1[k + 1];
  // hat G(u) = sum_{m=p}^{2p-1} g^{(m)}(zeta)/m! u^{m-p} hat w^m
  Series<cplx> G(static_cast<std::size_t>(p), cplx{});
  Series<cplx> hatw_pow(static_cast<std::size_t>(p), cplx{});
  hatw_pow[0] = 1.0;
  for (int m = 0; m < p; ++m) hatw_pow = series::mul(hatw_pow, hatw);
  double fact = 1.0;
  for (int m = 2; m <= p; ++m) fact *= m;
  for (int m = p; m <= 2 * p - 1; ++m) {
    if (m > p) {
      fact *= m;
      hatw_pow = series::mul(hatw_pow, hatw);
    }
    const cplx coef = g.deriv(m, zeta) / fact;
    for (int k = 0; k + (m - p) < p; ++k) G[k + (m - p)] += coef * hatw_pow[k];
  }
  // S(u) = exp(n A(u)), A(u) = x zeta (e^{iu} - 1) - iu
  Series<cplx> A(static_cast<std::size_t>(p), cplx{});
  for (int k = 1; k < p; ++k) A[k] = double(n) * w * expm1[k];
  if (p > 1) A[1] -= double(n) * i;
  const Series<cplx> S = series::exp(A, cplx(1.0));
  const Series<cplx> Q = series::div(S, G);
  PrincipalPart pp;
  pp.scale = detail::residue_scale(s, n, x);
  pp.q.resize(static_cast<std::size_t>(p));
  for (int j = 1; j <= p; ++j) pp.q[j - 1] = Q[p - j];
  return pp;
}

/// Singularities relevant to Theorem 1 (|zeta x| <= 1 + tol_on) or Theorem 2
/// (on or above C), in descending order of Im theta.
inline std::vector<Singularity> theta_singularities(const GeneratingFunction& g, cplx x, Reference reference) {
  if (x == cplx{}) throw domain_error("x must be nonzero");
  std::vector<Singularity> out;
  if (reference == Reference::real_axis) {
    for (auto& s : detail::singularities_within(g, x, 1.0 + kTolOn))
      if (s.axis != Position::below) out.push_back(s);
  } else {
    const double limit = g.kind() == GeneratingFunction::Kind::bernoulli
                             ? detail::bernoulli_curve_radius(x, 1.0 + 1e-9) * std::abs(x)
                             : std::numeric_limits<double>::infinity();
    for (auto& s : detail::singularities_within(g, x, limit))
      if (s.curve != Position::below) out.push_back(s);
  }
  detail::sort_by_height(out);
  return out;
}

namespace detail {

/// A pole part r_j/(t - c)^j subtracted from a real-line integrand.
struct SubtractedPole {
  cplx center;
  bool on_line = false;
  std::vector<cplx> coeffs;  // coeffs[j-1] multiplies (t - c)^{-j}

  cplx value(double t) const {
    const cplx d = t - center;
    cplx acc{}, inv = 1.0 / d, pw = inv;
    for (const auto& c : coeffs) {
      acc += c * pw;
      pw *= inv;
    }
    return acc;
  }

  /// Exact integral over [a, b]; principal value for a simple pole on the line.
  cplx integral(double a, double b) const {
    cplx acc{};
    for (std::size_t j = 1; j <= coeffs.size(); ++j) {
      if (j == 1) {
        if (on_line)
          acc += coeffs[0] * (std::log(std::abs(b - center.real())) - std::log(std::abs(a - center.real())));
        else
          acc += coeffs[0] * (std::log(cplx(b) - center) - std::log(cplx(a) - center));
      } else {
        const double e = 1.0 - double(j);
        acc += coeffs[j - 1] * (std::pow(cplx(b) - center, e) - std::pow(cplx(a) - center, e)) / e;
      }
    }
    return acc;
  }

  /// Closer than this, evaluate the remainder by interpolation instead.
  double guard() const { return coeffs.size() == 1 ? 1e-6 : 1e-4; }
};

/// f minus all subtracted pole parts, with interpolation across the cancellation zone.
template <class F>
cplx subtracted(const F& f, const std::vector<SubtractedPole>& poles, double t) {
  auto raw = [&](double s) {
    cplx v = f(s);
    for (const auto& p : poles) v -= p.value(s);
    return v;
  };
  for (const auto& p : poles) {
    const double h = p.guard();
    if (std::abs(cplx(t) - p.center) < h) {
      const double l = p.center.real() - h, r = p.center.real() + h;
      const cplx fl = raw(l), fr = raw(r);
      return fl + (fr - fl) * ((t - l) / (r - l));
    }
  }
  return raw(t);
}

inline LogComplex assemble_total(const LogComplex& prefactor, const LogComplex& integral,
                                 const std::vector<ResidueTerm>& residues) {
  std::vector<LogComplex> terms{integral};
  const LogComplex minus_two_pi_i = LogComplex::from(cplx(0.0, -2.0 * std::numbers::pi));
  for (const auto& r : residues)
    if (r.weight != 0.0) terms.push_back(minus_two_pi_i * r.residue * cplx(r.weight));
  return prefactor * log_sum(terms);
}

inline double eta_x_of(const GeneratingFunction& g, cplx x) {
  const double r0 = g.r0();
  if (!std::isfinite(r0)) return std::numeric_limits<double>::infinity();
  return -std::log(0.5 * r0 * std::abs(x));
}

}  // namespace detail

/// (e x)^n / (2 pi) as a LogComplex.
inline LogComplex saddle_prefactor(int n, cplx x) {
  LogComplex p = LogComplex::from(x).pow(n);
  p.log_mag += double(n) - std::log(2.0 * std::numbers::pi);
  return p;
}

/// exp(n(e^{i theta} - i theta - 1)) / g(e^{i theta}/x): the Theorem 1 integrand with e^n factored out.
inline cplx theorem1_integrand(const GeneratingFunction& g, int n, cplx x, double theta) {
  const cplx e = std::polar(1.0, theta);
  return std::exp(double(n) * (e - cplx(0.0, theta) - 1.0)) * g.reciprocal(e / x);
}

/// pi_n(x)/n! via Theorem 1.
inline RepresentationBreakdown eval_theorem1(const GeneratingFunction& g, int n, cplx x,
                                             const ContourOptions& opt = {}) {
  if (n < 1) throw domain_error("n must be >= 1");
  if (x == cplx{}) throw domain_error("x must be nonzero");
  const double pi = std::numbers::pi;
  const double near = std::min(0.25, 2.0 / std::sqrt(double(n)));

  RepresentationBreakdown out;
  out.prefactor = saddle_prefactor(n, x);
  out.eta_x = detail::eta_x_of(g, x);

  // Base period shifted off +-pi so that an on-axis pole at pi is interior.
  const double a = -pi + 0.1234567, b = a + 2.0 * pi;
  std::vector<detail::SubtractedPole> poles;
  for (const auto& s : detail::singularities_within(g, x, std::exp(near))) {
    if (s.axis == Position::on && s.order > 1)
      throw degeneracy_error("zero of order " + std::to_string(s.order) + " on the integration contour");
    const bool residue_needed = s.axis != Position::below;
    const bool subtract = std::abs(s.theta.imag()) <= near || s.axis == Position::on;
    if (!residue_needed && !subtract) continue;
    const PrincipalPart pp = principal_part(g, s, n, x);
    if (residue_needed)
      out.residues.push_back({s, pp.residue(), s.axis == Position::on ? 0.5 : 1.0});
    if (subtract) {
      std::vector<cplx> coeffs;
      for (int j = 1; j <= s.order; ++j) coeffs.push_back(pp.coefficient(j).value());
      for (int m = -1; m <= 1; ++m) {
        cplx c = s.theta + 2.0 * pi * double(m);
        if (s.axis == Position::on) c.imag(0.0);
        if (c.real() < a - 1.0 || c.real() > b + 1.0) continue;
        poles.push_back({c, s.axis == Position::on, coeffs});
      }
    }
  }
  std::stable_sort(out.residues.begin(), out.residues.end(), [](const ResidueTerm& l, const ResidueTerm& r) {
    return l.sing.theta.imag() > r.sing.theta.imag();
  });

  auto f = [&](double t) { return theorem1_integrand(g, n, x, t); };
  quad::Options qo;
  qo.rel_tol = opt.rel_tol;
  qo.max_intervals = opt.max_intervals;
  auto res = quad::integrate([&](double t) { return detail::subtracted(f, poles, t); }, a, b, qo);
  if (!res.converged) throw convergence_error("theorem 1: quadrature did not reach tolerance");
  cplx integral = res.value;
  for (const auto& p : poles) integral += p.integral(a, b);
  out.integral = LogComplex::from(integral);
  out.quad_error = res.error;
  out.evaluations = res.evaluations;
  out.total = detail::assemble_total(out.prefactor, out.integral, out.residues);
  return out;
}

}  // namespace appell
