#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pickzeta/cli_io.hpp"

using namespace pickzeta;
using namespace pickzeta::cli;

namespace {

std::pair<int, int> parse_m_range(const std::string& s) {
  try {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
      const int m = std::stoi(s);
      return {m, m};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw InputError("--m: expected an integer or a range like 1..5, got \"" + s + "\"");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pickzeta: Pick-property certificates for Dirichlet-series kernels"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_path, format;
  std::optional<double> tol;
  std::optional<std::size_t> trunc;
  std::optional<std::uint64_t> seed;
  bool timing = false;
  app.add_option("--config", config_path, "JSON configuration file (default: $PICKZETA_CONFIG)");
  app.add_option("--out", out_path, "write the report here (atomically) instead of stdout");
  app.add_option("--format", format, "json | csv | human")->check(CLI::IsMember({"json", "csv", "human"}));
  app.add_option("--tol", tol, "PSD tolerance");
  app.add_option("--trunc", trunc, "feature truncation N (>= 10)");
  app.add_option("--seed", seed, "random seed (echoed in the report)");
  app.add_flag("--timing", timing, "include wall-clock timing in the report");

  std::vector<std::string> zeta_points;
  auto* zeta_cmd = app.add_subcommand("zeta", "evaluate the Riemann zeta function for Re(s) > 1");
  zeta_cmd->add_option("--s", zeta_points, "points such as 2, 3+1i")->required();

  std::string problem_path;
  auto* pick_cmd = app.add_subcommand("pick-check", "Pick-matrix certificates for a problem file");
  pick_cmd->add_option("problem", problem_path, "problem JSON")->required();

  std::string m_range = "1..5", w2_text = "0.4";
  auto* cx_cmd = app.add_subcommand("counterexample", "two-point certificates at lambda = (1, 2), w = (0, w2)");
  cx_cmd->add_option("--m", m_range, "power or range, e.g. 1..5");
  cx_cmd->add_option("--w2", w2_text, "second target");

  std::string solution_out, evaluate_path;
  std::vector<std::string> at_points;
  auto* solve_cmd = app.add_subcommand("solve", "solve a half-plane interpolation problem");
  solve_cmd->add_option("problem", problem_path, "problem JSON");
  solve_cmd->add_option("--solution-out", solution_out, "write the solution JSON here");
  solve_cmd->add_option("--evaluate", evaluate_path, "evaluate a stored solution instead of solving");
  solve_cmd->add_option("--at", at_points, "evaluation points for --evaluate");

  std::string phi_path, model_out, verify_path;
  std::vector<std::string> realize_points, grid{"default"};
  auto* realize_cmd = app.add_subcommand("realize", "finite-truncation realization of a test multiplier");
  realize_cmd->add_option("phi", phi_path, "multiplier spec JSON {\"coeffs\": [...]}");
  realize_cmd->add_option("--points", realize_points, "sample points");
  realize_cmd->add_option("--model-out", model_out, "write the model JSON here");
  realize_cmd->add_option("--verify", verify_path, "verify a stored model instead of building one");
  realize_cmd->add_option("--grid", grid, "verification grid: default or a list of points");

  std::vector<std::string> h_values;
  std::size_t search_n = 8;
  auto* search_cmd = app.add_subcommand("search-dirichlet", "fit Dirichlet polynomials to parametrized solutions");
  search_cmd->add_option("problem", problem_path, "problem JSON")->required();
  search_cmd->add_option("--param", h_values, "constant Schur parameters (default 0 0.3 -0.7i)");
  search_cmd->add_option("--N", search_n, "Dirichlet polynomial length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunConfig cfg;
  Report report;
  std::string path = config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("PICKZETA_CONFIG")) path = env;
  }
  bool config_ok = true;
  try {
    if (!path.empty()) cfg = cfg.merged(read_json_file(path), path);
    if (!format.empty()) cfg.format = parse_format(format);
    if (tol) cfg.psd_tol = *tol;
    if (trunc) cfg.trunc = *trunc;
    if (seed) cfg.seed = *seed;
    if (timing) cfg.timing = true;
    cfg.validate();
  } catch (const std::exception& e) {
    config_ok = false;
    report.command = "config";
    report.config = cfg;
    report.exit_code = 2;
    report.error = e.what();
  }

  if (config_ok) {
    if (zeta_cmd->parsed()) {
      report = cmd_zeta(zeta_points, cfg);
    } else if (pick_cmd->parsed()) {
      report = cmd_pick_check(problem_path, cfg);
    } else if (cx_cmd->parsed()) {
      report = run_guarded("counterexample", {{"m", m_range}, {"w2", w2_text}}, cfg, [&](Report&) {
        parse_m_range(m_range);
        parse_complex(w2_text);
      });
      if (report.ok()) {
        const auto [lo, hi] = parse_m_range(m_range);
        report = cmd_counterexample(lo, hi, parse_complex(w2_text), cfg);
      }
    } else if (solve_cmd->parsed()) {
      if (!evaluate_path.empty()) report = cmd_evaluate(evaluate_path, at_points, cfg);
      else if (!problem_path.empty()) report = cmd_solve(problem_path, cfg, solution_out);
      else report = run_guarded("solve", json::object(), cfg, [](Report&) { throw InputError("solve: a problem file or --evaluate is required"); });
    } else if (realize_cmd->parsed()) {
      if (!verify_path.empty()) report = cmd_verify(verify_path, grid, cfg);
      else if (!phi_path.empty()) report = cmd_realize(phi_path, realize_points, cfg, model_out);
      else report = run_guarded("realize", json::object(), cfg, [](Report&) { throw InputError("realize: a phi spec file or --verify is required"); });
    } else if (search_cmd->parsed()) {
      report = cmd_search_dirichlet(problem_path, h_values, search_n, cfg);
    }
  }

  const std::string text = render(report, cfg.format);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    try {
      write_atomic(out_path, text);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }
  return report.exit_code;
}
