#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pickzeta/realization.hpp"

using namespace pickzeta;

namespace {

const std::vector<cplx> kPoints{{1.0, 0.0}, {1.3, 0.5}, {1.7, -0.8}, {2.5, 1.2}};

// Dense (n+1) x (n+1) block matrix [[a, beta^*], [gamma, D]].
Eigen::MatrixXcd dense_block(const RealizationModel& m) {
  const Eigen::Index n = m.dim();
  Eigen::MatrixXcd V(n + 1, n + 1);
  V(0, 0) = m.a;
  V.block(0, 1, 1, n) = m.beta.adjoint();
  V.block(1, 0, n, 1) = m.gamma;
  V.block(1, 1, n, n) = m.D.left * m.D.right.adjoint();
  return V;
}

Eigen::MatrixXcd kron_identity(const Eigen::MatrixXcd& T, Eigen::Index r) {
  Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(T.rows() * r, T.cols() * r);
  for (Eigen::Index i = 0; i < T.rows(); ++i)
    for (Eigen::Index j = 0; j < T.cols(); ++j)
      for (Eigen::Index l = 0; l < r; ++l) K(i * r + l, j * r + l) = T(i, j);
  return K;
}

}  // namespace

TEST(TestMultiplier, NormCertificate) {
  EXPECT_NO_THROW(TestMultiplier::monomial(0.5, 2));
  EXPECT_NO_THROW(TestMultiplier(CoefficientSeries<cplx>({0.5, cplx(0.0, 0.5)})));
  EXPECT_THROW(TestMultiplier(CoefficientSeries<cplx>({0.7, 0.7})), CertificateError);
  const auto phi = TestMultiplier::monomial(cplx(0.0, 0.5), 2);
  EXPECT_DOUBLE_EQ(phi.declared_norm(), 0.5);
  EXPECT_LT(std::abs(phi(cplx(1.0, 0.0)) - cplx(0.0, 0.25)), 1e-15);
}

TEST(KappaPhiGram, EntriesAndPositivity) {
  const auto phi = TestMultiplier::monomial(-0.8, 2);
  const auto G = kappa_phi_gram(phi, kPoints);
  const cplx expect = (1.0 - phi(kPoints[1]) * std::conj(phi(kPoints[2]))) * oracle::zeta(kPoints[1] + std::conj(kPoints[2]));
  EXPECT_LT(std::abs(G(1, 2) - expect), 1e-10);
  EXPECT_GE(oracle::min_eigenvalue(G), 0.0);
}

TEST(KappaPhiGram, NonContractiveMultiplierIsRejected) {
  const auto big = [](cplx s) { return 3.0 * std::exp(-s * std::log(2.0)); };
  EXPECT_THROW(kappa_phi_gram(big, {cplx(1.0, 0.0), cplx(3.0, 0.0)}), CertificateError);
}

TEST(FactorPsi, ReconstructsAndCountsRank) {
  const auto G = kappa_phi_gram(TestMultiplier::monomial(0.3, 2), kPoints);
  const auto f = factor_psi(G, 1e-12);
  EXPECT_EQ(f.rank, 4);
  EXPECT_LE(f.reconstruction_error, 10 * 1e-12 * G.norm());
  Eigen::VectorXcd v(3);
  v << 1.0, cplx(0.0, 2.0), -1.0;
  const auto g = factor_psi(v * v.adjoint(), 1e-10);
  EXPECT_EQ(g.rank, 1);
  EXPECT_LT(g.reconstruction_error, 1e-14);
}

TEST(FeatureSpace, MatchesKernelFeatureMaps) {
  const FeatureSpace fs(300);
  const HalfPlanePoint s(cplx(1.2, 0.4), 0.5);
  EXPECT_LT((fs.zeta_features(s.value()) - feature_map(KernelSpec::szego_dirichlet(), s, 300).coords).norm(), 1e-14);
  EXPECT_LT((fs.mu_features(s.value()) - feature_map(KernelSpec::kappa_mu(), s, 300).coords).norm(), 1e-14);
}

TEST(LowRankMap, NormMatchesDenseSvd) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  LowRankMap D{Eigen::MatrixXcd(40, 3), Eigen::MatrixXcd(40, 3)};
  for (Eigen::Index i = 0; i < 40; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) D.left(i, j) = cplx(g(rng), g(rng)), D.right(i, j) = cplx(g(rng), g(rng));
  const Eigen::MatrixXcd dense = D.left * D.right.adjoint();
  EXPECT_NEAR(D.norm(), Eigen::JacobiSVD<Eigen::MatrixXcd>(dense).singularValues()(0), 1e-10 * D.norm());
}

TEST(TLambda, MapsTheReproducingVectorAndHasTheClaimedInverseNorm) {
  const auto T = build_t_lambda(cplx(1.0, 0.3), cplx(2.0, 1.0), 200);
  EXPECT_LT(T.defining_residual(), 1e-13);
  const Eigen::MatrixXcd M = T.dense();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(200, 200);
  EXPECT_LT((M * T.apply_inverse(I) - I).norm(), 1e-12);
  const double smin = Eigen::JacobiSVD<Eigen::MatrixXcd>(M).singularValues().minCoeff();
  EXPECT_NEAR(1.0 / smin, T.inverse_norm(), 1e-12);
  EXPECT_NEAR(T.v_inverse_norm(), T.source().norm() / T.target().norm(), 1e-14);
}

TEST(TLambda, ComplementIsMappedIsometricallyUpToAlpha) {
  const auto T = build_t_lambda(cplx(1.5, -0.4), 3.0, 100);
  const Eigen::VectorXcd u = T.source().normalized();
  Eigen::VectorXcd x = Eigen::VectorXcd::LinSpaced(100, 0.0, 1.0).cast<cplx>();
  x -= u * u.dot(x);
  const Eigen::VectorXcd y = T.apply(x);
  EXPECT_NEAR(y.norm(), 3.0 * x.norm(), 1e-12);
  EXPECT_LT(std::abs(T.target().normalized().dot(y)), 1e-12);
}

TEST(TLambda, InverseNormBoundAndKappaMuDiagonal) {
  for (double sigma : {0.6, 0.75, 1.0, 2.0, 5.0}) {
    const auto T = build_t_lambda(cplx(sigma, 0.0), 2.0, 20000);
    const double z = oracle::zeta(cplx(2 * sigma, 0.0)).real();
    EXPECT_NEAR(T.epsilon_tilde(), std::sqrt((z * z + 0.5) / (z * z + 1.0)), 1e-10);
    EXPECT_LT(T.epsilon_tilde(), 1.0);
    EXPECT_LE(T.v_inverse_norm(), T.epsilon_tilde()) << sigma;
    EXPECT_TRUE(T.remark_holds());
    EXPECT_LT(T.inverse_norm_bound(), 1.0);
  }
  const auto T1 = build_t_lambda(cplx(1.0, 0.0), 2.0, 100000);
  EXPECT_NEAR(T1.v_inverse_norm(), 0.8545, 1e-4);
  EXPECT_NEAR(T1.exact_v_inverse_norm(), 0.8545, 1e-4);
  EXPECT_NEAR(T1.epsilon_tilde(), 0.9301, 1e-4);
}

TEST(TLambda, RejectsSmallAlphaAndOutOfDomainLambda) {
  EXPECT_THROW(build_t_lambda(cplx(1.0, 0.0), 1.0, 10), DomainError);
  EXPECT_THROW(build_t_lambda(cplx(0.5, 0.0), 2.0, 10), DomainError);
}

TEST(Realization, SmallTruncationMatchesDenseOracles) {
  const auto phi = TestMultiplier::monomial(0.5, 2);
  RealizationOptions opt;
  opt.tol = 1e-2;
  const auto m = build_lurking_isometry(phi, {cplx(2.0, 0.0), cplx(3.0, 1.0)}, 60, opt);
  const Eigen::MatrixXcd V = dense_block(m);
  const double smax = Eigen::JacobiSVD<Eigen::MatrixXcd>(V).singularValues()(0);
  EXPECT_NEAR(m.contraction_norm(), smax, 1e-12);
  EXPECT_LE(smax, 1.0 + 1e-12);

  const cplx s(2.2, -0.5);
  const FeatureSpace fs(60);
  const TLambdaModel T(std::conj(s), m.alpha, fs);
  const Eigen::MatrixXcd A = kron_identity(T.dense(), m.r) - m.D.left * m.D.right.adjoint();
  const Eigen::VectorXcd z = A.fullPivLu().solve(m.gamma);
  const cplx expect = m.a + m.beta.dot(z);
  EXPECT_LT(std::abs(evaluate_realization(m, s).value - expect), 1e-12);
}

TEST(Realization, DesktopPipelineAtModerateTruncation) {
  for (cplx c : {cplx(0.3, 0.0), cplx(0.0, 0.5), cplx(-0.8, 0.0)}) {
    const auto phi = TestMultiplier::monomial(c, 2);
    const auto m = build_lurking_isometry(phi, kPoints, 20000);
    const auto& d = m.diagnostics;
    EXPECT_LE(d.gram_identity_residual, 1e-6);
    EXPECT_LE(d.isometry_defect, 1e-8);
    EXPECT_LE(d.contraction_norm, 1.0 + 1e-8);
    EXPECT_LE(d.d_contraction_residual, 1e-6);
    EXPECT_LE(d.sample_reconstruction, 1e-4);
    for (const auto& s : kPoints) EXPECT_LT(std::abs(evaluate_realization(m, s).value - phi(s)), 1e-4);
    const auto rep = verify_direction_ii_to_i(m, default_verification_grid());
    EXPECT_TRUE(rep.passed);
    EXPECT_TRUE(rep.multiplier_norm_certificate);
    EXPECT_FALSE(verify_direction_ii_to_i(m.with_scaled_D(1.5), default_verification_grid()).passed);
  }
}

TEST(Realization, ConstantMultiplierReconstructs) {
  const auto phi = TestMultiplier(CoefficientSeries<cplx>({cplx(0.4, 0.2)}));
  const auto m = build_lurking_isometry(phi, kPoints, 20000);
  for (const auto& s : {cplx(1.4, 0.2), cplx(3.0, -1.0)}) EXPECT_LT(std::abs(evaluate_realization(m, s).value - phi(s)), 1e-2);
  EXPECT_LE(m.diagnostics.sample_reconstruction, 1e-4);
}

TEST(Realization, TruncationTooSmallIsReported) {
  EXPECT_THROW(build_lurking_isometry(TestMultiplier::monomial(0.5, 2), kPoints, 20), AccuracyError);
}

TEST(Realization, NeumannCertificateGuardsTheSolve) {
  const auto m = build_lurking_isometry(TestMultiplier::monomial(0.5, 2), kPoints, 5000);
  EXPECT_THROW(evaluate_realization(m.with_scaled_D(1.5), cplx(1.2, 0.0)), CertificateError);
}
