#pragma once

// Zero attractors: the dominance function, Szego arcs and equimodulus lines,
// and the roots of pi_n for comparison.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "appell/core.hpp"
#include "appell/detail/extended.hpp"
#include "appell/errors.hpp"
#include "appell/generating_function.hpp"
#include "appell/roots.hpp"
#include "appell/sdrep.hpp"

namespace appell {

/// Largest degree accepted by roots_rescaled (double-precision Aberth start).
inline constexpr int kMaxRootDegree = 200;
/// A third term beating the tying pair by more than this clips an arc.
inline constexpr double kClipTol = 1e-12;

struct DominanceReport {
  cplx x{};
  int champion = -1;      // -1: saddle; otherwise an index into attractor_zeros(g)
  cplx champion_zeta{};
  double phi = std::numbers::e;  // max{e, |e^{zeta x}/(zeta x)|}
  double log_phi = 1.0;
  double margin = std::numeric_limits<double>::infinity();  // log-gap to the runner-up
  bool saddle() const { return champion < 0; }
};

enum class ArcKind { szego, line };

struct AttractorArc {
  ArcKind kind = ArcKind::szego;
  cplx zeta_k{};
  cplx zeta_j{};  // line only
  std::vector<cplx> samples;
  std::vector<double> params;  // Szego: angle of zeta x; line: signed distance along the line
  bool closed = false;
  bool clipped_start = false;  // ends where a third term takes over
  bool clipped_end = false;
};

inline const char* to_string(ArcKind k) { return k == ArcKind::szego ? "szego" : "line"; }

/// The zeros that can shape the attractor: every polynomial zero, or the
/// Bernoulli zeros 2 pi i k with 0 < |k| <= bernoulli_k.
inline std::vector<cplx> attractor_zeros(const GeneratingFunction& g, int bernoulli_k = 2) {
  std::vector<cplx> out;
  if (g.kind() == GeneratingFunction::Kind::bernoulli) {
    for (int k = 1; k <= bernoulli_k; ++k) {
      out.emplace_back(0.0, 2.0 * std::numbers::pi * k);
      out.emplace_back(0.0, -2.0 * std::numbers::pi * k);
    }
  } else {
    for (const auto& z : g.all_polynomial_zeros()) out.push_back(z.value);
  }
  return out;
}

namespace detail {

/// log|e^{w}/w|
inline double residue_log_base(cplx w) { return w.real() - std::log(std::abs(w)); }

/// Largest log-magnitude among the saddle (1) and admissible zeros, skipping the listed ones.
inline double best_other(const std::vector<cplx>& zeros, cplx x, bool skip_saddle, cplx skip1, cplx skip2) {
  double best = skip_saddle ? -std::numeric_limits<double>::infinity() : 1.0;
  for (const auto& z : zeros) {
    if (z == skip1 || z == skip2) continue;
    const cplx w = z * x;
    if (std::abs(w) >= 1.0) continue;
    best = std::max(best, residue_log_base(w));
  }
  return best;
}

/// r in (0, 1] with log r + 1 - r cos(phi) = 0, the Szego curve in polar form.
inline double szego_radius(double phi) {
  const double c = std::cos(phi);
  if (c >= 1.0) return 1.0;
  double lo = 0.1, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
    const double mid = 0.5 * (lo + hi);
    (std::log(mid) + 1.0 - mid * c < 0.0 ? lo : hi) = mid;
  }
  double r = 0.5 * (lo + hi);
  // One Newton step for the last bits away from the corner.
  const double f = std::log(r) + 1.0 - r * c, fp = 1.0 / r - c;
  if (fp > 1e-3) r -= f / fp;
  return std::min(r, 1.0);
}

template <class Point, class Keep>
void clip_runs(int count, bool circular, const Point& point, const Keep& keep, ArcKind kind, cplx zk, cplx zj,
               std::vector<AttractorArc>& out) {
  std::vector<char> flag(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) flag[i] = keep(point(double(i)).first);
  const bool all = std::all_of(flag.begin(), flag.end(), [](char f) { return f; });
  if (all && circular) {
    AttractorArc a{kind, zk, zj};
    for (int i = 0; i <= count; ++i) {
      const auto [x, t] = point(double(i % count));
      a.samples.push_back(x);
      a.params.push_back(i == count ? t + 2.0 * std::numbers::pi : t);
    }
    a.closed = true;
    out.push_back(a);
    return;
  }
  int start = 0;
  if (circular) {
    while (start < count && flag[start]) ++start;  // begin scanning at a dropped sample
  }
  auto at = [&](double s) { return circular ? std::fmod(double(start) + s + count, double(count)) : s; };
  // Boundary between a kept and a dropped position, refined in the continuous index.
  auto refine = [&](double in, double outside) {
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (in + outside);
      (keep(point(at(mid)).first) ? in : outside) = mid;
    }
    return in;
  };
  for (int step = 0; step < count;) {
    const int i = (start + step) % count;
    if (!flag[i]) {
      ++step;
      continue;
    }
    const int first = step;
    while (step < count && flag[(start + step) % count]) ++step;
    const int last = step - 1;
    AttractorArc a{kind, zk, zj};
    auto push = [&](double s, double unwrapped) {
      const auto [x, t] = point(at(s));
      a.samples.push_back(x);
      a.params.push_back(circular ? t + 2.0 * std::numbers::pi * std::floor((double(start) + unwrapped) / count) : t);
    };
    if (circular || first > 0) {
      const double s = refine(double(first), double(first) - 1.0);
      push(s, s);
      a.clipped_start = true;
    }
    for (int s = first; s <= last; ++s) push(double(s), double(s));
    if (circular || last < count - 1) {
      const double s = refine(double(last), double(last) + 1.0);
      push(s, s);
      a.clipped_end = true;
    }
    out.push_back(a);
  }
}

}  // namespace detail

inline DominanceReport dominance(const GeneratingFunction& g, cplx x) {
  if (x == cplx{}) throw domain_error("x must be nonzero");
  DominanceReport r;
  r.x = x;
  double second = -std::numeric_limits<double>::infinity();
  auto offer = [&](double v, int idx, cplx z) {
    if (v > r.log_phi) {
      second = r.log_phi;
      r.log_phi = v;
      r.champion = idx;
      r.champion_zeta = z;
    } else {
      second = std::max(second, v);
    }
  };
  if (g.kind() == GeneratingFunction::Kind::bernoulli) {
    const double kmax = std::floor(1.0 / (2.0 * std::numbers::pi * std::abs(x)));
    for (int k = 1; k <= static_cast<int>(kmax); ++k)
      for (int s : {1, -1}) {
        const cplx z(0.0, 2.0 * std::numbers::pi * k * s);
        if (std::abs(z * x) < 1.0) offer(detail::residue_log_base(z * x), s * k, z);
      }
  } else {
    const auto& zs = g.all_polynomial_zeros();
    for (std::size_t k = 0; k < zs.size(); ++k) {
      const cplx w = zs[k].value * x;
      if (std::abs(w) < 1.0) offer(detail::residue_log_base(w), static_cast<int>(k), zs[k].value);
    }
  }
  r.phi = std::exp(r.log_phi);
  r.margin = r.log_phi - second;
  return r;
}

/// Szego arcs x = z/zeta and equimodulus lines, clipped to where the tying pair is the global maximum.
inline std::vector<AttractorArc> attractor_arcs(const GeneratingFunction& g, int resolution, int bernoulli_k = 2) {
  if (resolution < 8) throw domain_error("resolution must be >= 8");
  const int count = resolution + (resolution % 2);  // even, so the corner z = 1 is a sample
  std::vector<cplx> zeros = attractor_zeros(g, bernoulli_k);
  // Higher-order zeros appear once.
  std::vector<cplx> distinct;
  for (const auto& z : zeros)
    if (std::none_of(distinct.begin(), distinct.end(), [&](cplx d) { return std::abs(d - z) < 1e-12 * std::abs(z); }))
      distinct.push_back(z);

  std::vector<AttractorArc> out;
  const double pi = std::numbers::pi;
  for (const auto& z : distinct) {
    auto point = [&](double s) {
      const double phi = -pi + 2.0 * pi * s / double(count);
      const double r = detail::szego_radius(phi);
      return std::pair<cplx, double>{std::polar(r, phi) / z, phi};
    };
    auto keep = [&](cplx x) { return detail::best_other(distinct, x, true, z, z) <= 1.0 + kClipTol; };
    detail::clip_runs(count, true, point, keep, ArcKind::szego, z, cplx{}, out);
  }
  for (std::size_t a = 0; a < distinct.size(); ++a) {
    for (std::size_t b = a + 1; b < distinct.size(); ++b) {
      const cplx zk = distinct[a], zj = distinct[b];
      const cplx d = zk - zj;
      const double c = std::log(std::abs(zk)) - std::log(std::abs(zj));
      const cplx x0 = c * std::conj(d) / std::norm(d);
      const cplx u = cplx(0.0, 1.0) * std::conj(d) / std::abs(d);
      const double R = std::min(1.0 / std::abs(zk), 1.0 / std::abs(zj));
      if (std::abs(x0) >= R) continue;
      const double half = std::sqrt(R * R - std::norm(x0));
      auto point = [&](double s) {
        const double t = -half + 2.0 * half * (s + 0.5) / double(count);
        return std::pair<cplx, double>{x0 + t * u, t};
      };
      auto keep = [&](cplx x) {
        if (std::abs(zk * x) >= 1.0 || std::abs(zj * x) >= 1.0) return false;
        const double v = detail::residue_log_base(zk * x);
        return v >= 1.0 - kClipTol && detail::best_other(distinct, x, false, zk, zj) <= v + kClipTol;
      };
      detail::clip_runs(count, false, point, keep, ArcKind::line, zk, zj, out);
    }
  }
  return out;
}

/// Equation residual of a sample: |Re(zeta x) - log|zeta x| - 1| for Szego arcs,
/// the log-modulus gap of the pair for lines.
inline double arc_residual(const AttractorArc& a, cplx x) {
  const double vk = detail::residue_log_base(a.zeta_k * x);
  if (a.kind == ArcKind::szego) return std::abs(vk - 1.0);
  return std::abs(vk - detail::residue_log_base(a.zeta_j * x));
}

/// Sample points where an arc turns by more than min_turn radians (Szego corners).
inline std::vector<cplx> arc_corners(const std::vector<AttractorArc>& arcs, double min_turn = std::numbers::pi / 6.0) {
  std::vector<cplx> out;
  for (const auto& a : arcs) {
    const std::size_t m = a.samples.size();
    if (m < 3) continue;
    for (std::size_t i = 1; i + 1 < m; ++i) {
      const cplx d1 = a.samples[i] - a.samples[i - 1], d2 = a.samples[i + 1] - a.samples[i];
      if (std::abs(d1) == 0.0 || std::abs(d2) == 0.0) continue;
      if (std::abs(std::arg(d2 / d1)) > min_turn) out.push_back(a.samples[i]);
    }
  }
  return out;
}

/// Endpoints where a third contribution takes over, merged within `merge`.
inline std::vector<cplx> triple_points(const std::vector<AttractorArc>& arcs, double merge = 1e-6) {
  std::vector<cplx> out;
  auto add = [&](cplx p) {
    for (const auto& q : out)
      if (std::abs(p - q) < merge) return;
    out.push_back(p);
  };
  for (const auto& a : arcs) {
    if (a.clipped_start) add(a.samples.front());
    if (a.clipped_end) add(a.samples.back());
  }
  return out;
}

/// Distance from p to the polyline set.
inline double distance_to_arcs(cplx p, const std::vector<AttractorArc>& arcs) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : arcs) {
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
      if (i + 1 == a.samples.size()) {
        best = std::min(best, std::abs(p - a.samples[i]));
        break;
      }
      const cplx s = a.samples[i], e = a.samples[i + 1], d = e - s;
      const double len2 = std::norm(d);
      double t = len2 > 0.0 ? ((p - s) * std::conj(d)).real() / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      best = std::min(best, std::abs(p - (s + t * d)));
    }
  }
  return best;
}

/// max over points of the distance to the arc set.
inline double one_sided_hausdorff(const std::vector<cplx>& points, const std::vector<AttractorArc>& arcs) {
  double d = 0.0;
  for (const auto& p : points) d = std::max(d, distance_to_arcs(p, arcs));
  return d;
}

struct RootsResult {
  std::vector<cplx> roots;
  std::vector<double> newton_step;  // last |p/p'| per root
  std::vector<int> unconverged;     // indices failing |p/p'| < 1e-10 max(1, |root|)
};

/// Roots of pi_n: Aberth on the normalized double coefficients, then Aberth sweeps with accurate p/p'.
inline RootsResult roots_rescaled(const GeneratingFunction& g, int n, unsigned threads = 1) {
  if (n < 1) throw domain_error("n must be >= 1");
  if (n > kMaxRootDegree)
    throw domain_error("roots_rescaled: n > " + std::to_string(kMaxRootDegree) +
                       " is beyond double-precision root finding");
  const auto a = rescaled_coefficients_extended(g, n);
  detail::xreal big = 0;
  for (const auto& c : a) big = std::max(big, detail::xreal(abs(c)));
  std::vector<cplx> c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) c[k] = detail::to_c(a[k] / big);
  roots::AberthOptions opt;
  opt.threads = threads;
  opt.max_iterations = 500;
  auto ab = roots::aberth(c, opt);

  std::vector<detail::xcomplex> da(a.size() > 1 ? a.size() - 1 : 1, detail::xcomplex(0));
  for (std::size_t k = 1; k < a.size(); ++k) da[k - 1] = a[k] * detail::xreal(double(k));

  // Simultaneous refinement with accurate p/p'. Quad Horner is used while its
  // cancellation leaves enough digits; past that, the steepest-descent representation
  // (pi_n' (x)/n! = n pi_{n-1}(n x/(n-1))/(n-1)!) has no cancellation problem.
  const std::size_t m = ab.roots.size();
  std::vector<cplx> z = ab.roots, next(m);
  std::vector<double> step(m, std::numeric_limits<double>::infinity());
  std::vector<char> done(m, 0);
  auto newton_ratio = [&](cplx x) -> cplx {
    const detail::xcomplex xx = detail::to_x(x);
    const detail::xcomplex p = horner_extended(a, xx), dp = horner_extended(da, xx);
    if (p == detail::xcomplex(0)) return cplx{};
    detail::xreal size = 0, pw = 1;
    for (const auto& c : a) {
      size += abs(c) * pw;
      pw *= abs(xx);
    }
    if (abs(p) > detail::xreal(1e-28) * size || n == 1) {
      if (dp == detail::xcomplex(0)) return std::numeric_limits<double>::infinity();
      return detail::to_c(p / dp);
    }
    try {
      const LogComplex v = eval_theorem2(g, n, x).total;
      const LogComplex d =
          eval_theorem2(g, n - 1, x * (double(n) / double(n - 1))).total * LogComplex::from(double(n));
      return (v / d).value();
    } catch (const std::exception&) {
      return detail::to_c(p / dp);
    }
  };
  for (int it = 0; it < 80; ++it) {
    bool all = true;
    for (std::size_t i = 0; i < m; ++i) {
      next[i] = z[i];
      if (done[i]) continue;
      const cplx ratio = newton_ratio(z[i]);
      step[i] = std::abs(ratio);
      if (ratio == cplx{}) {
        done[i] = 1;
        continue;
      }
      cplx rep{};
      for (std::size_t j = 0; j < m; ++j)
        if (j != i && z[j] != z[i]) rep += 1.0 / (z[i] - z[j]);
      const cplx corr = ratio / (1.0 - ratio * rep);
      next[i] = z[i] - corr;
      if (std::abs(corr) <= 1e-14 * std::max(1.0, std::abs(z[i]))) done[i] = 1;
      all = all && done[i];
    }
    z.swap(next);
    if (all) break;
  }
  struct Found {
    cplx root;
    double step;
  };
  std::vector<Found> found;
  for (std::size_t i = 0; i < m; ++i) found.push_back({z[i], step[i]});
  std::sort(found.begin(), found.end(), [](const Found& l, const Found& r) {
    return l.root.real() != r.root.real() ? l.root.real() < r.root.real() : l.root.imag() < r.root.imag();
  });
  RootsResult res;
  for (std::size_t i = 0; i < found.size(); ++i) {
    res.roots.push_back(found[i].root);
    res.newton_step.push_back(found[i].step);
    if (!(found[i].step < 1e-10 * std::max(1.0, std::abs(found[i].root)))) res.unconverged.push_back(static_cast<int>(i));
  }
  return res;
}

}  // namespace appell
