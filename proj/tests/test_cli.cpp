#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

#include "pickzeta/cli_io.hpp"

using namespace pickzeta;
using namespace pickzeta::cli;
namespace fs = std::filesystem;

namespace {

const std::string kData = PICKZETA_DATA_DIR;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pickzeta_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

int run(const std::string& args, const std::string& out_file) {
  const std::string cmd = std::string(PICKZETA_CLI) + " " + args + " > " + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("2"), cplx(2.0, 0.0));
  EXPECT_EQ(parse_complex("3+1i"), cplx(3.0, 1.0));
  EXPECT_EQ(parse_complex("1.5-2e-3i"), cplx(1.5, -2e-3));
  EXPECT_EQ(parse_complex("2i"), cplx(0.0, 2.0));
  EXPECT_EQ(parse_complex("-i"), cplx(0.0, -1.0));
  EXPECT_EQ(parse_complex("1e-2+1e+1i"), cplx(0.01, 10.0));
  EXPECT_THROW(parse_complex("abc"), InputError);
  EXPECT_THROW(parse_complex(""), InputError);
}

TEST(RunConfigTest, MergeAndValidate) {
  const RunConfig c = RunConfig{}.merged(io::json::parse(R"({"psd_tol": 1e-9, "trunc": 500, "format": "human"})"));
  EXPECT_EQ(c.psd_tol, 1e-9);
  EXPECT_EQ(c.trunc, 500u);
  EXPECT_EQ(c.format, Format::Human);
  EXPECT_THROW(RunConfig{}.merged(io::json::parse(R"({"trunc": 5})")), InputError);
  EXPECT_THROW(RunConfig{}.merged(io::json::parse(R"({"psd_tol": -1})")), InputError);
  EXPECT_THROW(RunConfig{}.merged(io::json::parse(R"({"colour": "red"})")), InputError);
}

TEST_F(CliTest, ZetaCommand) {
  const auto r = cmd_zeta({"2", "12", "2+1i"}, RunConfig{});
  ASSERT_EQ(r.exit_code, 0) << r.error;
  const auto& v = r.certificates["values"];
  EXPECT_NEAR(v[0]["value"][0].get<double>(), 1.6449340668482264, 1e-12);
  EXPECT_NEAR(v[1]["value"][0].get<double>(), 1.000246, 1e-6);
  EXPECT_EQ(cmd_zeta({"0.9"}, RunConfig{}).exit_code, 2);
  EXPECT_EQ(cmd_zeta({"x"}, RunConfig{}).exit_code, 2);
}

TEST_F(CliTest, PickCheckTwoNodeProblem) {
  const auto r = cmd_pick_check(kData + "/two_node_problem.json", RunConfig{});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_FALSE(r.certificates["theorem21"]["cond_i"]["psd"].get<bool>());
  EXPECT_TRUE(r.certificates["theorem21"]["cond_ii"]["psd"].get<bool>());
  EXPECT_EQ(io::problem_from_json(r.to_json()["certificates"]["problem"]),
            io::problem_from_json(cli::read_json_file(kData + "/two_node_problem.json")));
}

TEST_F(CliTest, PickCheckSingleNodeAndTransfer) {
  const auto one = write("one.json", R"({"nodes": [[1.5, 0.5]], "targets": [[0.2, 0.1]]})");
  const auto r = cmd_pick_check(one, RunConfig{});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_TRUE(r.certificates["theorem21"]["necessary_conditions_hold"].get<bool>());
  const auto hp = cmd_pick_check(kData + "/three_point.json", RunConfig{});
  EXPECT_EQ(hp.exit_code, 0);
  EXPECT_TRUE(hp.certificates.contains("transfer"));
}

TEST_F(CliTest, PickCheckMalformed) {
  const auto bad = write("bad.json", "{\n  \"nodes\": [[1, 0]],\n  \"targets\": [0.1,,]\n}");
  const auto r = cmd_pick_check(bad, RunConfig{});
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.error.find("bad.json:3:"), std::string::npos) << r.error;
  EXPECT_EQ(cmd_pick_check((dir_ / "missing.json").string(), RunConfig{}).exit_code, 2);
}

TEST_F(CliTest, Counterexample) {
  const auto r = cmd_counterexample(1, 5, 0.4, RunConfig{});
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.certificates["passed"], 5);
  const auto out = cmd_counterexample(1, 1, 0.2, RunConfig{});
  EXPECT_EQ(out.exit_code, 1);
  EXPECT_NE(out.error.find("0.434"), std::string::npos) << out.error;
  EXPECT_EQ(cmd_counterexample(1, 1, 0.43, RunConfig{}).exit_code, 0);
}

TEST_F(CliTest, SolveAndEvaluate) {
  const auto sol_path = (dir_ / "sol.json").string();
  const auto r = cmd_solve(kData + "/three_point.json", RunConfig{}, sol_path);
  ASSERT_EQ(r.exit_code, 0) << r.error;
  for (const auto& row : r.certificates["node_residuals"]) EXPECT_LE(row["residual"].get<double>(), 1e-8);
  const auto e = cmd_evaluate(sol_path, {"3+1i"}, RunConfig{});
  ASSERT_EQ(e.exit_code, 0) << e.error;
  EXPECT_EQ(e.certificates["values"].size(), 1u);
  const auto w = cmd_solve(kData + "/two_point_witness.json", RunConfig{});
  EXPECT_EQ(w.exit_code, 1);
  EXPECT_EQ(w.certificates["solution"]["pick"]["witness"].size(), 2u);
}

TEST_F(CliTest, RealizeAndVerify) {
  RunConfig cfg;
  cfg.trunc = 5000;
  const auto model = (dir_ / "model.json").string();
  const auto r = cmd_realize(kData + "/phi_half_two.json", {}, cfg, model);
  ASSERT_EQ(r.exit_code, 0) << r.error;
  EXPECT_LE(r.certificates["diagnostics"]["gram_identity_residual"].get<double>(), 1e-6);
  const auto v = cmd_verify(model, {"default"}, cfg);
  EXPECT_EQ(v.exit_code, 0) << v.error;
  const auto bad = write("bad_phi.json", R"({"coeffs": [[0.6, 0], [0.6, 0]]})");
  EXPECT_EQ(cmd_realize(bad, {}, cfg).exit_code, 1);
}

TEST_F(CliTest, SearchDirichlet) {
  const auto r = cmd_search_dirichlet(kData + "/two_node_problem.json", {}, 6, RunConfig{});
  ASSERT_EQ(r.exit_code, 0) << r.error;
  EXPECT_EQ(r.certificates["search"]["entries"].size(), 3u);
  EXPECT_FALSE(r.warnings.empty());
}

TEST_F(CliTest, RenderFormats) {
  const auto r = cmd_zeta({"2"}, RunConfig{});
  const auto human = render(r, Format::Human);
  EXPECT_NE(human.find("1.64493"), std::string::npos) << human;
  const auto csv = render(r, Format::Csv);
  EXPECT_EQ(csv.rfind("key,value\n", 0), 0u);
  EXPECT_NE(csv.find("certificates.values[0].value[0],"), std::string::npos);
  EXPECT_EQ(io::json::parse(render(r, Format::Json))["schema"], "pickzeta/1");
}

TEST_F(CliTest, BinaryExitCodesAndDeterminism) {
  const auto a = (dir_ / "a.json").string(), b = (dir_ / "b.json").string(), o = (dir_ / "o.txt").string();
  EXPECT_EQ(run("pick-check " + kData + "/two_node_problem.json --out " + a, o), 1);
  EXPECT_EQ(run("pick-check " + kData + "/two_node_problem.json --out " + b, o), 1);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(fs::exists(a + ".tmp"));
  EXPECT_EQ(run("zeta --s 0.9", o), 2);
  EXPECT_NE(slurp(o).find("\"error\""), std::string::npos);
  EXPECT_EQ(run("zeta --s 2 --format human", o), 0);
  EXPECT_NE(slurp(o).find("1.64493"), std::string::npos);
  EXPECT_EQ(run("counterexample --m 1..5 --w2 0.4", o), 0);
  EXPECT_EQ(run("counterexample --m 1 --w2 0.2", o), 1);
  EXPECT_EQ(run("counterexample --m x..2", o), 2);
  EXPECT_EQ(run("no-such-command", o), 2);
  const auto cfg = write("cfg.json", R"({"trunc": 5})");
  EXPECT_EQ(run("zeta --s 2 --config " + cfg, o), 2);
  EXPECT_EQ(run("zeta --s 2 --seed 3 --tol 1e-9", o), 0);
  EXPECT_EQ(io::json::parse(slurp(o))["config"]["seed"], 3);
}

TEST_F(CliTest, ConfigFromEnvironment) {
  const auto cfg = write("env.json", R"({"psd_tol": 1e-7})");
  const auto o = (dir_ / "o.txt").string();
  const std::string cmd = "PICKZETA_CONFIG=" + cfg + " " + std::string(PICKZETA_CLI) + " zeta --s 3 > " + o;
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(io::json::parse(slurp(o))["config"]["psd_tol"], 1e-7);
}
