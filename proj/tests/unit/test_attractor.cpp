#include <gtest/gtest.h>

#include <random>

#include "appell/attractor.hpp"

using namespace appell;

namespace {

const double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

GeneratingFunction cubic() { return GeneratingFunction::polynomial({-2.0, 2.0, -1.0, 1.0}); }

// Proper intersection of segments ab and cd.
bool crosses(cplx a, cplx b, cplx c, cplx d) {
  auto cross = [](cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); };
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

bool crosses_any(cplx a, cplx b, const std::vector<AttractorArc>& arcs) {
  for (const auto& arc : arcs)
    for (std::size_t i = 0; i + 1 < arc.samples.size(); ++i)
      if (crosses(a, b, arc.samples[i], arc.samples[i + 1])) return true;
  return false;
}

}  // namespace

TEST(Dominance, SingleZero) {
  const auto g = GeneratingFunction::polynomial({-1.0, 1.0});
  const auto r = dominance(g, 0.1);
  EXPECT_FALSE(r.saddle());
  EXPECT_EQ(r.champion_zeta, cplx(1.0));
  EXPECT_NEAR(r.phi, std::exp(0.1) / 0.1, 1e-12);
  EXPECT_NEAR(r.margin, std::log(std::exp(0.1) / 0.1) - 1.0, 1e-12);
}

TEST(Dominance, NoAdmissibleZero) {
  const auto g = cubic();
  for (cplx x : {cplx(2.0), cplx(0.0, -1.0), cplx(-1.0, 1.0)}) {
    const auto r = dominance(g, x);
    EXPECT_TRUE(r.saddle()) << x;
    EXPECT_DOUBLE_EQ(r.phi, std::numbers::e);
  }
}

TEST(Dominance, CubicRegions) {
  const auto g = cubic();
  const cplx zp(0.0, std::sqrt(2.0));
  // D_1 along the positive axis near 0, D_+ and D_- on the imaginary axis, A outside.
  EXPECT_LT(std::abs(dominance(g, 0.3).champion_zeta - 1.0), 1e-12);
  EXPECT_LT(std::abs(dominance(g, cplx(0.0, -0.3)).champion_zeta - zp), 1e-12);
  EXPECT_LT(std::abs(dominance(g, cplx(0.0, 0.3)).champion_zeta - std::conj(zp)), 1e-12);
  EXPECT_TRUE(dominance(g, -0.5).saddle());
  EXPECT_TRUE(dominance(g, 1.2).saddle());

  int counts[4] = {0, 0, 0, 0};
  for (int i = 0; i < 61; ++i) {
    for (int j = 0; j < 61; ++j) {
      const cplx x(-1.5 + 0.05 * i, -1.5 + 0.05 * j);
      if (x == cplx{}) continue;
      const auto r = dominance(g, x);
      if (r.saddle()) {
        ++counts[0];
        continue;
      }
      const cplx z = r.champion_zeta;
      if (std::abs(z - 1.0) < 1e-9) ++counts[1];
      else if (std::abs(z - zp) < 1e-9) ++counts[2];
      else if (std::abs(z - std::conj(zp)) < 1e-9) ++counts[3];
      else ADD_FAILURE() << "unexpected champion " << z;
      if (x.imag() != 0.0) {
        const auto c = dominance(g, std::conj(x));
        EXPECT_LT(std::abs(c.champion_zeta - std::conj(z)), 1e-9) << x;
      }
    }
  }
  for (int c : counts) EXPECT_GT(c, 0);
  EXPECT_EQ(counts[2], counts[3]);
  EXPECT_GT(counts[0], counts[1] + counts[2] + counts[3]);
}

TEST(Attractor, SzegoRadius) {
  EXPECT_DOUBLE_EQ(detail::szego_radius(0.0), 1.0);
  EXPECT_NEAR(detail::szego_radius(kPi), 0.27846454276107380, 1e-15);  // W(1/e)
  for (double phi : {0.3, 1.0, 2.0, -2.5}) {
    const double r = detail::szego_radius(phi);
    EXPECT_LT(std::abs(std::log(r) + 1.0 - r * std::cos(phi)), 1e-14) << phi;
  }
}

TEST(Attractor, SingleZeroIsScaledSzegoCurve) {
  for (cplx zeta : {cplx(1.0), cplx(0.0, 2.0), cplx(-1.5, 0.5)}) {
    const auto g = GeneratingFunction::polynomial({-zeta, 1.0});
    const auto arcs = attractor_arcs(g, 400);
    ASSERT_EQ(arcs.size(), 1u);
    EXPECT_TRUE(arcs[0].closed);
    EXPECT_EQ(arcs[0].kind, ArcKind::szego);
    for (const auto& x : arcs[0].samples) {
      const cplx z = zeta * x;
      EXPECT_LE(std::abs(z), 1.0 + 1e-12);
      EXPECT_NEAR(std::abs(z * std::exp(1.0 - z)), 1.0, 1e-12);
    }
  }
}

TEST(Attractor, CubicGeometry) {
  const auto arcs = attractor_arcs(cubic(), 4000);
  int lines = 0;
  for (const auto& a : arcs) {
    lines += a.kind == ArcKind::line;
    for (const auto& x : a.samples) EXPECT_LE(arc_residual(a, x), 1e-10) << to_string(a.kind) << " " << x;
  }
  EXPECT_EQ(lines, 2);

  const auto corners = arc_corners(arcs);
  const std::vector<cplx> cusps{1.0, kI / std::sqrt(2.0), -kI / std::sqrt(2.0)};
  for (const auto& c : cusps) {
    double best = 1e9;
    for (const auto& p : corners) best = std::min(best, std::abs(p - c));
    EXPECT_LT(best, 0.02) << c;
  }
  for (const auto& p : corners) {
    double best = 1e9;
    for (const auto& c : cusps) best = std::min(best, std::abs(p - c));
    EXPECT_LT(best, 0.02) << "extra corner " << p;
  }

  // Three contributions tie at every triple point.
  const auto tp = triple_points(arcs);
  EXPECT_EQ(tp.size(), 4u);
  const std::vector<cplx> zeros{1.0, cplx(0.0, std::sqrt(2.0)), cplx(0.0, -std::sqrt(2.0))};
  for (const auto& x : tp) {
    std::vector<double> v{1.0};
    for (const auto& z : zeros)
      if (std::abs(z * x) < 1.0) v.push_back((z * x).real() - std::log(std::abs(z * x)));
    std::sort(v.rbegin(), v.rend());
    ASSERT_GE(v.size(), 3u);
    EXPECT_LT(v[0] - v[2], 1e-9) << x;
  }
}

TEST(Attractor, BernoulliRealAxisLine) {
  const auto arcs = attractor_arcs(GeneratingFunction::bernoulli(), 2000);
  bool found = false;
  for (const auto& a : arcs) {
    for (const auto& x : a.samples) EXPECT_LE(arc_residual(a, x), 1e-10);
    if (a.kind != ArcKind::line) continue;
    if (std::abs(a.zeta_k + a.zeta_j) > 1e-12 || std::abs(std::abs(a.zeta_k) - 2.0 * kPi) > 1e-12) continue;
    found = true;
    for (const auto& x : a.samples) EXPECT_LT(std::abs(x.imag()), 1e-15);
    // Pair ties against the saddle at |x| = 1/(2 pi e).
    EXPECT_NEAR(std::abs(a.samples.front()), 1.0 / (2.0 * kPi * std::numbers::e), 1e-10);
    EXPECT_NEAR(std::abs(a.samples.back()), 1.0 / (2.0 * kPi * std::numbers::e), 1e-10);
  }
  EXPECT_TRUE(found);
}

TEST(Attractor, ChampionContinuity) {
  const auto g = cubic();
  const auto arcs = attractor_arcs(g, 4000);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.5, 1.5), len(0.01, 0.3), ang(-kPi, kPi);
  int probed = 0;
  for (int s = 0; s < 1000; ++s) {
    const cplx a(u(rng), u(rng));
    const cplx b = a + std::polar(len(rng), ang(rng));
    if (crosses_any(a, b, arcs)) continue;
    ++probed;
    const cplx ref = dominance(g, a).champion_zeta;
    for (int k = 1; k <= 20; ++k) {
      const cplx x = a + (b - a) * (k / 20.0);
      if (std::abs(x) < 1e-9) continue;
      EXPECT_EQ(dominance(g, x).champion_zeta, ref) << a << " -> " << b;
    }
  }
  EXPECT_GT(probed, 500);
}

TEST(Roots, ConstantG) {
  const auto r = roots_rescaled(GeneratingFunction::polynomial({1.0}), 5);
  ASSERT_EQ(r.roots.size(), 5u);
  for (const auto& z : r.roots) EXPECT_LT(std::abs(z), 1e-12);
}

TEST(Roots, BernoulliDegreeTwo) {
  const auto r = roots_rescaled(GeneratingFunction::bernoulli(), 2);
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_TRUE(r.unconverged.empty());
  // 4x^2 - 2x + 1/6 = 0
  const double disc = std::sqrt(4.0 - 4.0 * 4.0 / 6.0);
  EXPECT_NEAR(r.roots[0].real(), (2.0 - disc) / 8.0, 1e-15);
  EXPECT_NEAR(r.roots[1].real(), (2.0 + disc) / 8.0, 1e-15);
  for (const auto& z : r.roots) EXPECT_LT(std::abs(z.imag()), 1e-15);
}

TEST(Roots, ApproachAttractor) {
  const auto g = cubic();
  const auto arcs = attractor_arcs(g, 4000);
  std::vector<double> d;
  for (int n : {50, 100}) {
    const auto r = roots_rescaled(g, n);
    ASSERT_EQ(r.roots.size(), static_cast<std::size_t>(n));
    EXPECT_TRUE(r.unconverged.empty()) << n;
    d.push_back(one_sided_hausdorff(r.roots, arcs));
  }
  EXPECT_GT(d[0], d[1]);
  EXPECT_LE(d[1], 0.08);
}

TEST(Roots, DegreeLimits) {
  EXPECT_THROW(roots_rescaled(cubic(), 0), domain_error);
  EXPECT_THROW(roots_rescaled(cubic(), kMaxRootDegree + 1), domain_error);
}
