#pragma once

// Theorem 2: pi_n(x)/n! as an integral along the steepest-descent curve C,
// parametrized by tau, plus residues at the singularities on or above C.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "appell/contour.hpp"
#include "appell/sdpath.hpp"

namespace appell {

struct SteepestOptions {
  double rel_tol = 1e-12;
  int max_intervals = 20000;
  double T = 0.0;  // truncation of the tau-integral; 0 selects sqrt(36/n) + 1
};

inline double truncation_T(int n) { return std::sqrt(36.0 / double(n)) + 1.0; }

/// theta'(tau) e^{-n tau^2} / g(e^{i theta(tau)}/x).
inline cplx theorem2_integrand(const GeneratingFunction& g, int n, cplx x, double tau) {
  const SDPoint p = theta_of_tau(tau);
  const cplx e = std::exp(cplx(0.0, 1.0) * p.theta);
  return p.theta_prime * std::exp(-double(n) * tau * tau) * g.reciprocal(e / x);
}

namespace detail {

/// Candidate zeros for Theorem 2: everything that can lie on, above, or close below C.
inline std::vector<Singularity> curve_candidates(const GeneratingFunction& g, cplx x) {
  if (g.kind() == GeneratingFunction::Kind::bernoulli) {
    // psi drops by log(slack) when |x zeta| grows by slack, so e^1 keeps psi >= -1.
    return singularities_within(g, x, bernoulli_curve_radius(x, std::numbers::e) * std::abs(x));
  }
  return singularities_within(g, x, std::numeric_limits<double>::infinity());
}

}  // namespace detail

namespace detail {

/// Theorem 2 over an explicit candidate list (residues and near-C subtraction).
inline RepresentationBreakdown theorem2_core(const GeneratingFunction& g, int n, cplx x, const SteepestOptions& opt,
                                             const std::vector<Singularity>& candidates) {
  const double T = opt.T > 0.0 ? opt.T : truncation_T(n);
  const double near = std::min(0.5, 1.5 / std::sqrt(double(n)));

  RepresentationBreakdown out;
  out.prefactor = saddle_prefactor(n, x);
  out.eta_x = eta_x_of(g, x);

  std::vector<SubtractedPole> poles;
  double closest_psi = std::numeric_limits<double>::infinity();
  for (const auto& s : candidates) {
    if (s.curve == Position::on && s.order > 1)
      throw degeneracy_error("zero of order " + std::to_string(s.order) + " on the steepest-descent curve");
    closest_psi = std::min(closest_psi, std::abs(s.psi));
    const double weight = s.curve == Position::above ? 1.0 : (s.curve == Position::on ? 0.5 : 0.0);
    bool subtract = false;
    cplx tau_k{};
    if (s.order == 1 && std::abs(s.theta.real()) < std::numbers::pi) {
      tau_k = tau_of_theta(s.theta);
      if (s.curve == Position::on) tau_k.imag(0.0);
      if (std::abs(tau_k.imag()) <= near && std::abs(tau_k.real()) < T + 1.0) {
        // Guard against a root of tau^2 = 1 + i theta - e^{i theta} on another sheet.
        const SDPoint p = theta_of_tau(tau_k.real());
        subtract = std::abs(p.theta - s.theta) <= 4.0 * std::abs(tau_k.imag()) * std::abs(p.theta_prime) + 1e-9;
      }
    }
    if (weight == 0.0 && !subtract) continue;
    const PrincipalPart pp = principal_part(g, s, n, x);
    if (weight > 0.0) out.residues.push_back({s, pp.residue(), weight});
    // The residue is invariant under theta -> tau, so the tau-space pole part is r/(tau - tau_k).
    if (subtract) poles.push_back({tau_k, s.curve == Position::on, {pp.residue().value()}});
  }
  std::stable_sort(out.residues.begin(), out.residues.end(), [](const ResidueTerm& l, const ResidueTerm& r) {
    return l.sing.theta.imag() > r.sing.theta.imag();
  });

  auto f = [&](double tau) { return theorem2_integrand(g, n, x, tau); };
  quad::Options qo;
  qo.rel_tol = opt.rel_tol;
  qo.max_intervals = opt.max_intervals;
  auto res = quad::integrate([&](double t) { return subtracted(f, poles, t); }, -T, T, qo);
  if (!res.converged) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "theorem 2: quadrature did not reach tolerance (closest |psi| = %.3g)", closest_psi);
    throw convergence_error(buf);
  }
  cplx integral = res.value;
  for (const auto& p : poles) integral += p.integral(-T, T);
  out.integral = LogComplex::from(integral);
  out.quad_error = res.error;
  out.evaluations = res.evaluations;
  out.total = assemble_total(out.prefactor, out.integral, out.residues);
  return out;
}

}  // namespace detail

/// pi_n(x)/n! via Theorem 2.
inline RepresentationBreakdown eval_theorem2(const GeneratingFunction& g, int n, cplx x,
                                             const SteepestOptions& opt = {}) {
  if (n < 1) throw domain_error("n must be >= 1");
  if (x == cplx{}) throw domain_error("x must be nonzero");
  if (g.kind() == GeneratingFunction::Kind::bernoulli && x.real() == 0.0)
    throw domain_error("theorem 2 needs finitely many singularities above C; use the polylog form for Re x = 0");
  return detail::theorem2_core(g, n, x, opt, detail::curve_candidates(g, x));
}

}  // namespace appell
