#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "pickzeta/dirichlet_arith.hpp"

using namespace pickzeta;

TEST(HalfPlanePoint, RejectsPointsOnOrLeftOfTheBoundary) {
  EXPECT_NO_THROW(HalfPlanePoint(cplx(0.51, 3.0), 0.5));
  EXPECT_THROW(HalfPlanePoint(cplx(0.5, 0.0), 0.5), DomainError);
  EXPECT_THROW(HalfPlanePoint(cplx(-1.0, 0.0), 0.0), DomainError);
  const HalfPlanePoint p(cplx(2.0, -1.5), 0.0);
  EXPECT_EQ(p.sigma(), 2.0);
  EXPECT_EQ(p.t(), -1.5);
}

TEST(PrimeTable, NthPrimeAndOverflow) {
  const PrimeTable t(100);
  EXPECT_EQ(t.nth(1), 2);
  EXPECT_EQ(t.nth(5), 11);
  EXPECT_EQ(t.primes().size(), 25u);
  EXPECT_THROW(t.nth(26), OverflowError);
  EXPECT_THROW(t.nth(0), Error);
}

TEST(Mobius, SingleValuesMatchTrialDivision) {
  const PrimeTable t(1000);
  for (std::int64_t n : {1, 2, 3, 4, 6, 30, 97, 210, 1001, 999983, 1000000}) EXPECT_EQ(mobius(n, t), oracle::mobius(n)) << n;
}

TEST(Mobius, SequenceMatchesTrialDivision) {
  const auto mu = mobius_sequence(10000);
  for (std::int64_t n = 1; n <= 10000; ++n) ASSERT_EQ(mu[std::size_t(n)], oracle::mobius(n)) << n;
}

TEST(Mobius, InversionIsExact) {
  const std::size_t N = 10000;
  const auto c = dirichlet_convolve(mobius_coeffs(N), CoefficientSeries<std::int64_t>::ones(N));
  EXPECT_EQ(c, CoefficientSeries<std::int64_t>::unit(N, c.label()));
}

TEST(CoefficientSeries, ConvolutionRejectsMismatchedTruncation) {
  EXPECT_THROW(dirichlet_convolve(CoefficientSeries<std::int64_t>::ones(5), CoefficientSeries<std::int64_t>::ones(6)),
               InputError);
}

TEST(CoefficientSeries, ZetaPowerCoefficientsMatchDivisorCounts) {
  for (int m = 1; m <= 4; ++m) {
    const auto d = zeta_power_coeffs(m, 200);
    for (std::size_t n = 1; n <= 200; ++n) ASSERT_EQ(d[n], oracle::divisor_count(m, std::int64_t(n))) << m << " " << n;
  }
}

TEST(CoefficientSeries, EvaluateIsTheFiniteSum) {
  CoefficientSeries<cplx> a({1.0, cplx(0.0, 2.0), 0.0, -1.0});
  const cplx s(1.5, 0.7);
  const cplx expect = 1.0 + cplx(0.0, 2.0) * std::pow(2.0, -s) - std::pow(4.0, -s);
  EXPECT_LT(std::abs(a.evaluate(s) - expect), 1e-15);
}

TEST(Zeta, ClosedForms) {
  const double pi = std::numbers::pi;
  EXPECT_NEAR(zeta(2.0), pi * pi / 6.0, 1e-12);
  EXPECT_NEAR(zeta(4.0), std::pow(pi, 4) / 90.0, 1e-12);
  EXPECT_NEAR(zeta(12.0), 691.0 * std::pow(pi, 12) / 638512875.0, 1e-12);
}

TEST(Zeta, RealValuesInsideIndependentBracket) {
  for (double s : {1.5, 2.0, 3.0, 7.0}) {
    const auto b = oracle::zeta_bracket(s, 200000);
    const double z = zeta(s);
    EXPECT_GE(z, b.lo - 1e-12) << s;
    EXPECT_LE(z, b.hi + 1e-12) << s;
  }
}

TEST(Zeta, ComplexValuesMatchAlternatingSeries) {
  for (cplx s : {cplx(1.5, 0.0), cplx(2.0, 1.0), cplx(1.1, 5.0), cplx(3.0, -10.0), cplx(1.01, 0.3)}) {
    const cplx z = zeta(s), o = oracle::zeta(s);
    EXPECT_LT(std::abs(z - o), 1e-10) << s;
  }
}

TEST(Zeta, ConjugateSymmetry) {
  const cplx s(1.7, 3.3);
  EXPECT_LT(std::abs(zeta(std::conj(s)) - std::conj(zeta(s))), 1e-13);
}

TEST(Zeta, DomainErrorAtOrLeftOfOne) {
  EXPECT_THROW(zeta(cplx(1.0, 0.0)), DomainError);
  EXPECT_THROW(zeta(cplx(0.9, 2.0)), DomainError);
  EXPECT_THROW(zeta_reciprocal(cplx(0.5, 0.0)), DomainError);
}

TEST(Zeta, ReciprocalTimesZetaIsOne) {
  for (cplx s : {cplx(1.2, 0.0), cplx(2.0, 4.0), cplx(1.05, -1.0)}) {
    const cplx prod = zeta(s) * zeta_reciprocal(s);
    EXPECT_LT(std::abs(prod - 1.0), 1e-10) << s;
  }
}

TEST(Zeta, ReciprocalMatchesMobiusSeries) {
  const cplx s(3.0, 1.0);
  const auto mu = mobius_coeffs(20000).cast<cplx>();
  EXPECT_LT(std::abs(zeta_reciprocal(s) - mu.evaluate(s)), 1e-8);
}

TEST(EulerProduct, SmoothSumsConvergeForLargeSigma) {
  const PrimeTable t(100);
  for (double sigma : {1.0, 2.0})
    for (std::size_t n = 1; n <= 5; ++n) {
      const double prod = euler_product(n, sigma, t);
      const double sum = smooth_partial_sum(n, sigma, 1000000, t);
      EXPECT_LE(sum, prod) << n << " " << sigma;
      EXPECT_LT(prod - sum, 1e-3) << n << " " << sigma;
    }
}

TEST(EulerProduct, SmoothSumsIncreaseWithN) {
  const PrimeTable t(100);
  double prev = 0.0;
  for (std::int64_t N : {10, 100, 1000, 10000}) {
    const double s = smooth_partial_sum(3, 0.6, N, t);
    EXPECT_GT(s, prev);
    prev = s;
  }
  EXPECT_LT(prev, euler_product(3, 0.6, t));
}

TEST(EulerProduct, SinglePrimeIsGeometricSeries) {
  const PrimeTable t(10);
  // 1 + 2^{-1} + ... + 2^{-19} with 2^19 <= 10^6 < 2^20.
  EXPECT_NEAR(smooth_partial_sum(1, 1.0, 1000000, t), 2.0 - std::pow(2.0, -19), 1e-14);
  EXPECT_NEAR(euler_product(1, 1.0, t), 2.0, 1e-15);
}
