#include <gtest/gtest.h>

#include <random>

#include "appell/core.hpp"
#include "appell/sdrep.hpp"

using namespace appell;

namespace {

const double kPi = std::numbers::pi;

std::vector<GeneratingFunction> test_functions() {
  return {GeneratingFunction::polynomial({1.0}),
          GeneratingFunction::polynomial({-1.0, 1.0}),
          GeneratingFunction::polynomial({cplx(0, -2), 1.0}),
          GeneratingFunction::polynomial({-2.0, 2.0, -1.0, 1.0}),
          GeneratingFunction::bernoulli()};
}

cplx random_x(std::mt19937_64& rng, double rmin, double rmax) {
  std::uniform_real_distribution<double> r(std::log(rmin), std::log(rmax)), a(-kPi, kPi);
  return std::polar(std::exp(r(rng)), a(rng));
}

}  // namespace

TEST(Theorem2, BernoulliMatchesOracle) {
  const auto g = GeneratingFunction::bernoulli();
  const cplx x{0.4, 0.1};
  EXPECT_LT(relative_gap(eval_theorem2(g, 20, x).total, eval_rescaled_direct(g, 20, x)), 1e-8);
}

TEST(Theorem2, ConstantGeneratingFunctionDegreeOne) {
  auto r = eval_theorem2(GeneratingFunction::polynomial({1.0}), 1, 1.0);
  EXPECT_TRUE(r.residues.empty());
  EXPECT_NEAR(std::abs(r.total.value() - 1.0), 0.0, 1e-11);
}

TEST(Theorem2, BernoulliResidueSetFollowsPsi) {
  const auto g = GeneratingFunction::bernoulli();
  const cplx x = std::polar(1.0 / (6.0 * kPi), 2.0 * kPi / 3.0);
  const int n = 12;
  auto r = eval_theorem2(g, n, x);
  int kmax_minus = 0, kmax_plus = 0;  // families Arg(-ix) and Arg(ix)
  for (const auto& t : r.residues) {
    EXPECT_EQ(t.weight, 1.0);
    const int k = int(std::lround(std::abs(t.sing.zeta) / (2.0 * kPi)));
    if (t.sing.zeta.imag() > 0) kmax_plus = std::max(kmax_plus, k);
    else kmax_minus = std::max(kmax_minus, k);
  }
  // Bound X / (2 pi |x| sin X): pi for X = pi/6, 5 pi for X = -5 pi/6.
  EXPECT_EQ(kmax_minus, 3);
  EXPECT_EQ(kmax_plus, 15);
  EXPECT_EQ(r.residues.size(), 18u);
  const auto exact = eval_rescaled_direct(g, n, x);
  EXPECT_LT(relative_gap(r.total, exact), 1e-8);

  // The alternative counts 8 (Arg(-ix) family) and 3 (Arg(ix) family) do not reproduce the polynomial.
  std::vector<ResidueTerm> alt;
  for (int k = 1; k <= 8; ++k) {
    auto s = classify_singularity({cplx(0.0, -2.0 * kPi * k), 1}, x);
    alt.push_back({s, principal_part(g, s, n, x).residue(), 1.0});
  }
  for (int k = 1; k <= 3; ++k) {
    auto s = classify_singularity({cplx(0.0, 2.0 * kPi * k), 1}, x);
    alt.push_back({s, principal_part(g, s, n, x).residue(), 1.0});
  }
  const LogComplex alt_total = detail::assemble_total(r.prefactor, r.integral, alt);
  EXPECT_GT(relative_gap(alt_total, exact), 1e-3);
}

TEST(Theorem2, AgreesWithTheorem1Property) {
  std::mt19937_64 rng(99);
  for (const auto& g : test_functions()) {
    for (int n : {1, 2, 4, 9, 16, 30, 45, 60}) {
      for (int k = 0; k < 20; ++k) {
        const cplx x = random_x(rng, 0.05, 3.0);
        const auto t1 = eval_theorem1(g, n, x);
        const auto t2 = eval_theorem2(g, n, x);
        EXPECT_LT(relative_gap(t2.total, t1.total), 1e-8) << g.describe() << " n=" << n << " x=" << x;
        EXPECT_LT(relative_gap(t2.total, eval_rescaled_direct(g, n, x)), 1e-8) << g.describe() << " n=" << n << " x=" << x;
      }
    }
  }
}

TEST(Theorem2, TruncationSoundness) {
  std::mt19937_64 rng(3);
  for (const auto& g : test_functions()) {
    for (int n : {1, 10, 60}) {
      const cplx x = random_x(rng, 0.1, 2.0);
      SteepestOptions wide;
      wide.T = 2.0 * truncation_T(n);
      const auto a = eval_theorem2(g, n, x), b = eval_theorem2(g, n, x, wide);
      EXPECT_LT(relative_gap(b.integral, a.integral), 1e-12) << g.describe() << " n=" << n;
    }
  }
}

TEST(Theorem2, ExtraResiduesLieBetweenAxisAndCurve) {
  std::mt19937_64 rng(17);
  for (const auto& g : test_functions()) {
    for (int k = 0; k < 20; ++k) {
      const cplx x = random_x(rng, 0.05, 3.0);
      const auto s1 = theta_singularities(g, x, Reference::real_axis);
      const auto s2 = theta_singularities(g, x, Reference::curve_C);
      auto contains = [](const std::vector<Singularity>& v, cplx zeta) {
        for (const auto& s : v)
          if (s.zeta == zeta) return true;
        return false;
      };
      for (const auto& s : s2) {
        if (!contains(s1, s.zeta)) {
          EXPECT_LT(s.theta.imag(), 0.0);
          EXPECT_GE(s.psi, 0.0);
        }
      }
      // Everything above the axis is also above C.
      for (const auto& s : s1) EXPECT_TRUE(contains(s2, s.zeta));
    }
  }
}

TEST(Theorem2, SingularityOnBranchLine) {
  // g = z + 1 at x = 2: x zeta = -2, Re theta = pi.
  const auto g = GeneratingFunction::polynomial({1.0, 1.0});
  for (int n : {3, 25}) {
    auto r = eval_theorem2(g, n, 2.0);
    ASSERT_EQ(r.residues.size(), 1u);
    EXPECT_EQ(r.residues[0].sing.curve, Position::above);
    EXPECT_LT(relative_gap(r.total, eval_rescaled_direct(g, n, 2.0)), 1e-8);
  }
}

TEST(Theorem2, PoleOnCurveHalfWeight) {
  const auto g = GeneratingFunction::polynomial({-1.0, 1.0});
  for (double tau0 : {-1.7, 0.02, 0.8, 2.5}) {
    const cplx x = std::exp(cplx(0.0, 1.0) * theta_of_tau(tau0).theta);
    for (int n : {5, 30}) {
      auto r = eval_theorem2(g, n, x);
      ASSERT_EQ(r.residues.size(), 1u) << tau0;
      EXPECT_EQ(r.residues[0].weight, 0.5);
      EXPECT_LT(relative_gap(r.total, eval_rescaled_direct(g, n, x)), 1e-8) << tau0 << " n=" << n;
    }
  }
}

TEST(Theorem2, Rejections) {
  const auto b = GeneratingFunction::bernoulli();
  EXPECT_THROW(eval_theorem2(b, 5, cplx(0.0, 0.3)), domain_error);
  EXPECT_THROW(eval_theorem2(b, 0, cplx(0.2, 0.3)), domain_error);
  const auto dbl = GeneratingFunction::polynomial({3.0, -5.0, 1.0, 1.0});  // (z - 1)^2 (z + 3)
  const cplx x = std::exp(cplx(0.0, 1.0) * theta_of_tau(0.9).theta);
  EXPECT_THROW(eval_theorem2(dbl, 5, x), degeneracy_error);
}
