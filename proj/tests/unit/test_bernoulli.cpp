#include <gtest/gtest.h>

#include <random>

#include "appell/bernoulli.hpp"
#include "appell/core.hpp"

using namespace appell;

namespace {

const double kPi = std::numbers::pi;

}  // namespace

TEST(BernoulliOracle, LowOrders) {
  auto b1 = bernoulli_oracle(1);
  EXPECT_EQ(b1[0], cplx(-0.5));
  EXPECT_EQ(b1[1], cplx(1.0));
  auto b2 = bernoulli_oracle(2);
  EXPECT_NEAR(b2[0].real(), 1.0 / 6.0, 1e-16);
  EXPECT_EQ(b2[1], cplx(-1.0));
  EXPECT_EQ(b2[2], cplx(1.0));
  EXPECT_EQ(bernoulli_numbers(6)[6], rational(1, 42));
  EXPECT_EQ(bernoulli_numbers(12)[12], rational(-691, 2730));
  EXPECT_EQ(bernoulli_numbers(7)[7], rational(0));
}

TEST(BernoulliOracle, AgreesWithGeneratingFunction) {
  const auto g = GeneratingFunction::bernoulli();
  for (int n = 1; n <= 30; ++n) {
    const auto a = appell_coefficients(g, n), b = bernoulli_oracle(n);
    for (int k = 0; k <= n; ++k) {
      const double scale = std::max(std::abs(b[k]), 1e-300);
      if (b[k] == cplx{})
        EXPECT_LT(std::abs(a[k]), 1e-12 * std::abs(b[n])) << n << " " << k;
      else
        EXPECT_LT(std::abs(a[k] - b[k]), 1e-12 * scale) << n << " " << k;
    }
  }
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n : {10, 40, 60}) {
    const cplx x{u(rng), u(rng)};
    EXPECT_LT(relative_gap(bernoulli_oracle_rescaled(n, x), eval_rescaled_direct(g, n, x)), 1e-20) << n;
  }
}

TEST(Polylog, Identities) {
  EXPECT_NEAR(polylog(1, 0.5).real(), std::log(2.0), 1e-15);
  EXPECT_NEAR(polylog(2, 0.5).real(), kPi * kPi / 12.0 - std::log(2.0) * std::log(2.0) / 2.0, 1e-15);
  EXPECT_EQ(polylog(20, 1e-30), cplx(1e-30));
  EXPECT_THROW(polylog(3, 1.0), domain_error);
}

TEST(Corollary1, KmaxAndHalfWeight) {
  auto r = eval_corollary1(8, 1.0 / (4.0 * kPi));
  EXPECT_EQ(r.k_max, 2);
  ASSERT_EQ(r.breakdown.residues.size(), 4u);
  int halves = 0;
  for (const auto& t : r.breakdown.residues) halves += t.weight == 0.5;
  EXPECT_EQ(halves, 2);
  EXPECT_LT(relative_gap(r.total, bernoulli_oracle_rescaled(8, 1.0 / (4.0 * kPi))), 1e-8);

  EXPECT_EQ(eval_corollary1(5, std::polar(1.0 / (6.0 * kPi), 2.0 * kPi / 3.0)).k_max, 3);

  auto e = eval_corollary1(10, cplx(0.1, 0.2));
  EXPECT_EQ(e.k_max, 0);
  EXPECT_TRUE(e.sums.is_zero());
  EXPECT_LT(relative_gap(e.total, bernoulli_oracle_rescaled(10, cplx(0.1, 0.2))), 1e-8);
}

TEST(Corollary1, CosineSumEqualsResidues) {
  for (cplx x : {cplx(0.03, 0.01), cplx(-0.02, 0.05), cplx(0.07, 0.0)}) {
    auto r = eval_corollary1(11, x);
    EXPECT_LT(relative_gap(r.total, r.breakdown.total), 1e-12) << x;
  }
}

TEST(Corollary1, KmaxDiscreteness) {
  // |x| decreasing through 1/(4 pi): one more cosine term, continuous total.
  const int n = 9;
  const cplx dir = std::polar(1.0, 0.4);
  const double r0 = 1.0 / (4.0 * kPi);
  auto above = eval_corollary1(n, dir * (r0 * (1.0 + 1e-9)));
  auto on = eval_corollary1(n, dir * r0);
  auto below = eval_corollary1(n, dir * (r0 * (1.0 - 1e-9)));
  EXPECT_EQ(above.k_max, 1);
  EXPECT_EQ(on.k_max, 2);
  EXPECT_EQ(below.k_max, 2);
  EXPECT_LT(relative_gap(above.total, on.total), 1e-6);
  EXPECT_LT(relative_gap(below.total, on.total), 1e-6);
}

TEST(SteepestBernoulli, FamiliesOfDifferentLength) {
  const cplx x{0.05, 0.02};
  auto r = eval_sd_bernoulli(12, x);
  EXPECT_TRUE(r.diagnostics.empty());
  int plus = 0, minus = 0;
  for (const auto& t : r.breakdown.residues) (t.sing.zeta.imag() > 0 ? plus : minus)++;
  EXPECT_NE(plus, minus);
  EXPECT_LT(relative_gap(r.total, bernoulli_oracle_rescaled(12, x)), 1e-8);
  EXPECT_LT(relative_gap(r.total, r.breakdown.total), 1e-12);
}

TEST(SteepestBernoulli, ImaginaryAxisPolylog) {
  for (double q : {0.3, -0.3, 0.05, -0.02, 1.0 / (4.0 * kPi)}) {
    for (int n : {10, 31}) {
      const cplx x{0.0, q};
      auto r = eval_sd_bernoulli(n, x);
      EXPECT_TRUE(r.diagnostics.empty());
      EXPECT_LT(relative_gap(r.total, bernoulli_oracle_rescaled(n, x)), 1e-8) << q << " n=" << n;
    }
  }
}

TEST(SteepestBernoulli, TripleAgreement) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lr(std::log(0.02), std::log(3.0)), ang(-kPi, kPi);
  std::vector<cplx> xs;
  for (int k = 0; k < 41; ++k) xs.push_back(std::polar(std::exp(lr(rng)), ang(rng)));
  for (int k = 1; k <= 3; ++k) xs.push_back(std::polar(1.0 / (2.0 * kPi * k), ang(rng)));  // on-contour k
  for (double q : {0.04, -0.15, 0.8}) xs.push_back({0.0, q});
  for (double a : {0.5, 2.5, -1.0}) xs.push_back(std::polar(0.25, a));
  ASSERT_EQ(xs.size(), 50u);
  for (int n : {1, 4, 15, 33, 60}) {
    for (cplx x : xs) {
      const LogComplex o = bernoulli_oracle_rescaled(n, x);
      const auto c = eval_corollary1(n, x);
      const auto s = eval_sd_bernoulli(n, x);
      EXPECT_TRUE(s.diagnostics.empty()) << x;
      EXPECT_LT(relative_gap(c.total, o), 1e-8) << "n=" << n << " x=" << x;
      EXPECT_LT(relative_gap(s.total, o), 1e-8) << "n=" << n << " x=" << x;
      EXPECT_LT(relative_gap(s.total, c.total), 1e-8) << "n=" << n << " x=" << x;
    }
  }
}

TEST(BernoulliAsymptotics, ClosedRegularFormMatchesEngine) {
  const auto g = GeneratingFunction::bernoulli();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> lr(std::log(0.3), std::log(3.0)), ang(-kPi, kPi);
  std::vector<cplx> xs{1.7};
  for (int k = 0; k < 10; ++k) xs.push_back(std::polar(std::exp(lr(rng)), ang(rng)));
  for (cplx x : xs) {
    const auto a = bernoulli_asymp(40, x), b = asymp_steepest_two_term(g, 40, x);
    EXPECT_EQ(a.kind, TermKind::saddle);
    for (int j = 0; j < 2; ++j)
      EXPECT_LT(std::abs(a.series[j] - b.series[j]), 1e-12 * std::abs(b.series[j])) << x << " j=" << j;
  }
}

TEST(BernoulliAsymptotics, PoleForm) {
  const cplx i{0.0, 1.0};
  for (int m : {1, -2, 3}) {
    const cplx x = 1.0 / (2.0 * kPi * i * double(m));
    const auto a = bernoulli_asymp(20, x);
    EXPECT_EQ(a.kind, TermKind::saddle_pole);
    EXPECT_LT(std::abs(2.0 * a.series[0] - (2.0 / 3.0 - 2.0 * kPi * i * double(m))), 1e-14);
    // Same coefficients from the general Watson-lemma engine.
    const auto b = asymp_steepest_two_term(GeneratingFunction::bernoulli(), 20, x);
    EXPECT_EQ(b.kind, TermKind::saddle_pole);
    for (int j = 0; j < 2; ++j)
      EXPECT_LT(std::abs(a.series[j] - b.series[j]), 1e-10 * std::abs(a.series[j])) << m << " j=" << j;
  }
}

TEST(BernoulliAsymptotics, LeadingOrderAtTwo) {
  std::vector<double> C;
  for (int n : {64, 128, 256}) {
    const LogComplex exact = eval_corollary1(n, 2.0).total;
    C.push_back(n * relative_gap(exact, bernoulli_asymp(n, 2.0).leading(n)));
  }
  for (double c : C) EXPECT_NEAR(c / C.back(), 1.0, 0.2);
}
