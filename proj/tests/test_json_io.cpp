#include <gtest/gtest.h>

#include "pickzeta/json_io.hpp"

using namespace pickzeta;
using io::json;

namespace {

json reparse(const json& j) { return io::parse_json_text(j.dump()); }

}  // namespace

TEST(JsonIo, ComplexEncoding) {
  EXPECT_EQ(io::to_json(cplx(1.5, -2.0)), json::parse("[1.5, -2.0]"));
  EXPECT_EQ(io::complex_from_json(json::parse("[0.25, 3]"), "x"), cplx(0.25, 3.0));
  EXPECT_EQ(io::complex_from_json(json::parse("2"), "x"), cplx(2.0, 0.0));
  EXPECT_THROW(io::complex_from_json(json::parse("[1, 2, 3]"), "x"), InputError);
  EXPECT_THROW(io::complex_from_json(json::parse("\"1+2i\""), "x"), InputError);
}

TEST(JsonIo, KernelSpecsRoundTrip) {
  for (const auto& k : {KernelSpec::szego_disc(), KernelSpec::szego_half_plane(), KernelSpec::szego_dirichlet(3),
                        KernelSpec::kappa_mu(), KernelSpec::diagonal_dirichlet({1.0, 0.0, 2.5}),
                        KernelSpec::diagonal_dirichlet({1.0, 2.0}, TailModel::ZetaPower, 2),
                        KernelSpec::diagonal_dirichlet({1.0, 0.0}, TailModel::KappaMu)})
    EXPECT_EQ(io::kernel_from_json(reparse(io::to_json(k))), k) << k.name();
  EXPECT_THROW(io::kernel_from_json(json::parse(R"({"kind": "bergman"})")), InputError);
  EXPECT_THROW(io::kernel_from_json(json::parse(R"({"kind": "diagonal_dirichlet", "coeffs": [1, -1]})")), InputError);
  EXPECT_THROW(io::kernel_from_json(json::parse(R"({"power": 2})")), InputError);
}

TEST(JsonIo, ProblemRoundTrip) {
  InterpolationProblem p{{cplx(1.0, 0.5), cplx(2.0, -1.0)}, {cplx(0.1, 0.2), cplx(-0.3, 0.0)},
                         KernelSpec::szego_dirichlet(2), 1e-9, 1e-7};
  EXPECT_EQ(io::problem_from_json(reparse(io::to_json(p))), p);
}

TEST(JsonIo, ProblemDefaultsAndValidation) {
  const auto p = io::problem_from_json(json::parse(R"({"nodes": [[1, 0]], "targets": [[0.5, 0]]})"), 1e-9, 1e-6);
  EXPECT_EQ(p.kernel, KernelSpec::szego_dirichlet(1));
  EXPECT_EQ(p.psd_tol, 1e-9);
  EXPECT_EQ(p.rank_tol, 1e-6);
  EXPECT_THROW(io::problem_from_json(json::parse(R"({"nodes": [[1, 0]]})")), InputError);
  EXPECT_THROW(io::problem_from_json(json::parse(R"({"nodes": [[1, 0]], "targets": []})")), InputError);
  EXPECT_THROW(io::problem_from_json(json::parse(R"({"schema": "other/2", "nodes": [[1, 0]], "targets": [0]})")),
               InputError);
  EXPECT_THROW(io::problem_from_json(json::parse(R"({"nodes": [[0.3, 0]], "targets": [0]})")), DomainError);
}

TEST(JsonIo, SyntaxErrorsNameLineAndColumn) {
  const std::string text = "{\n  \"nodes\": [1,\n  oops]\n}";
  try {
    io::parse_json_text(text, "problem.json");
    FAIL() << "expected a parse error";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("problem.json:3:"), std::string::npos) << e.what();
  }
}

TEST(JsonIo, CertificateCarriesTolerancesAndConvention) {
  Eigen::MatrixXcd M(2, 2);
  M << 0.5, 1.0 / 7.0, 1.0 / 7.0, 1.0 / 24.0;
  const json j = io::to_json(certify_psd(M, 1e-9, 1e-7));
  EXPECT_EQ(j["psd_tol"], 1e-9);
  EXPECT_EQ(j["rank_tol"], 1e-7);
  EXPECT_TRUE(j["psd"].get<bool>());
  EXPECT_GT(j["margin"].get<double>(), 0.0);
  EXPECT_EQ(j["conjugation_convention"], kConjugationConvention);
  EXPECT_EQ(j["matrix"].size(), 2u);
}

TEST(JsonIo, SolutionRoundTrip) {
  // targets of 0.5 C(s), a Schur function
  InterpolationProblem p{{1.0, cplx(2.0, 1.0), 3.0}, {0.0, cplx(0.2, 0.1), 0.25}, KernelSpec::szego_half_plane()};
  const auto sol = solve_halfplane(p);
  ASSERT_TRUE(sol.feasible());
  const auto stored = io::solution_from_json(reparse(io::to_json(sol)));
  for (cplx s : {cplx(3.0, 1.0), cplx(0.2, -4.0), cplx(1.0, 0.0)}) EXPECT_LT(std::abs(stored(s) - sol(s)), 1e-14);
}

TEST(JsonIo, DegenerateSolutionRoundTrip) {
  const std::vector<cplx> zeros{cplx(0.2, 0.1)};
  InterpolationProblem p{{1.0, 2.0, 3.0}, {}, KernelSpec::szego_half_plane()};
  for (const auto& x : p.nodes) {
    const cplx z = cayley(x);
    p.targets.push_back((z - zeros[0]) / (1.0 - std::conj(zeros[0]) * z));
  }
  const auto sol = solve_halfplane(p);
  ASSERT_TRUE(sol.disc.unique);
  const auto j = io::to_json(sol);
  EXPECT_EQ(j["function"]["form"], "blaschke");
  const auto stored = io::solution_from_json(reparse(j));
  EXPECT_LT(std::abs(stored(cplx(0.5, 2.0)) - sol(cplx(0.5, 2.0))), 1e-14);
}

TEST(JsonIo, InfeasibleSolutionCannotBeEvaluated) {
  InterpolationProblem p{{1.0, 2.0}, {0.0, 0.4}, KernelSpec::szego_half_plane()};
  EXPECT_THROW(io::solution_from_json(io::to_json(solve_halfplane(p))), InputError);
}

TEST(JsonIo, ModelRoundTrip) {
  const auto phi = TestMultiplier::monomial(0.5, 2);
  RealizationOptions opt;
  opt.tol = 1e-3;
  const auto m = build_lurking_isometry(phi, {cplx(1.5, 0.0), cplx(2.0, 1.0)}, 200, opt);
  const auto back = io::model_from_json(reparse(io::to_json(m)));
  EXPECT_EQ(back.N, m.N);
  EXPECT_EQ(back.r, m.r);
  EXPECT_LT(std::abs(evaluate_realization(back, cplx(2.5, 0.5)).value - evaluate_realization(m, cplx(2.5, 0.5)).value),
            1e-13);
  json bad = io::to_json(m);
  bad["beta"].erase(0);
  EXPECT_THROW(io::model_from_json(bad), InputError);
}

TEST(JsonIo, MultiplierSpec) {
  const auto phi = io::multiplier_from_json(json::parse(R"({"coeffs": [[0, 0], [0.5, 0]]})"));
  EXPECT_DOUBLE_EQ(phi.declared_norm(), 0.5);
  EXPECT_THROW(io::multiplier_from_json(json::parse(R"({"coeffs": [[0.9, 0], [0.5, 0]]})")), CertificateError);
  EXPECT_THROW(io::multiplier_from_json(json::parse(R"({"coeffs": []})")), InputError);
}
