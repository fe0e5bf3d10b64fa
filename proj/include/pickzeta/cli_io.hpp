#pragma once

// Run configuration, reports and the command implementations behind the
// pickzeta executable. Commands never throw: every failure is folded into the
// report with exit code 1 (failed certificate or infeasibility) or 2 (input
// error).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pickzeta/json_io.hpp"

namespace pickzeta::cli {

using io::json;

enum class Format { Json, Csv, Human };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "human") return Format::Human;
  throw InputError("unknown format \"" + s + "\" (expected json, csv or human)");
}

inline std::string format_name(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Human: return "human";
  }
  return "json";
}

struct RunConfig {
  double zeta_abs_err = 1e-12;
  double psd_tol = kDefaultPsdTol;
  double rank_tol = kDefaultRankTol;
  std::size_t trunc = 1000;
  std::int64_t prime_limit = 10'000'000;
  Format format = Format::Json;
  std::uint64_t seed = 0;
  /// Wall-clock timing makes reports nondeterministic, so it is opt-in.
  bool timing = false;

  void validate() const {
    if (!(zeta_abs_err > 0.0) || !(psd_tol > 0.0) || !(rank_tol > 0.0))
      throw InputError("config: tolerances must be positive");
    if (trunc < 10) throw InputError("config: trunc must be >= 10");
    if (prime_limit < 2) throw InputError("config: prime_limit must be >= 2");
  }

  ZetaOptions zeta_options() const {
    ZetaOptions z;
    z.target_abs_err = zeta_abs_err;
    return z;
  }

  json to_json() const {
    return {{"zeta_abs_err", zeta_abs_err}, {"psd_tol", psd_tol},       {"rank_tol", rank_tol},
            {"trunc", trunc},               {"prime_limit", prime_limit}, {"format", format_name(format)},
            {"seed", seed},                 {"timing", timing}};
  }

  /// Fields present in j override this configuration.
  RunConfig merged(const json& j, const std::string& source = "config") const {
    if (!j.is_object()) throw InputError(source + ": expected an object");
    RunConfig c = *this;
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      const json& v = it.value();
      const std::string path = source + "." + k;
      auto num = [&] { return io::detail::number(v, path); };
      auto integer = [&] { return io::detail::integer(v, path); };
      if (k == "zeta_abs_err") c.zeta_abs_err = num();
      else if (k == "psd_tol") c.psd_tol = num();
      else if (k == "rank_tol") c.rank_tol = num();
      else if (k == "trunc") {
        const auto n = integer();
        if (n < 10) throw InputError(path + ": must be >= 10");
        c.trunc = std::size_t(n);
      } else if (k == "prime_limit") c.prime_limit = integer();
      else if (k == "seed") {
        const auto s = integer();
        if (s < 0) throw InputError(path + ": must be >= 0");
        c.seed = std::uint64_t(s);
      } else if (k == "format") {
        if (!v.is_string()) throw InputError(path + ": expected a string");
        c.format = parse_format(v.get<std::string>());
      } else if (k == "timing") {
        if (!v.is_boolean()) throw InputError(path + ": expected a boolean");
        c.timing = v.get<bool>();
      } else if (k == "schema") {
        io::detail::check_schema(j, source);
      } else {
        throw InputError(path + ": unknown configuration field");
      }
    }
    c.validate();
    return c;
  }
};

struct Report {
  std::string command;
  json args = json::object();
  RunConfig config;
  json certificates = json::object();
  std::vector<std::string> warnings;
  int exit_code = 0;
  std::string error;
  std::optional<double> elapsed_seconds;

  bool ok() const { return exit_code == 0; }

  json to_json() const {
    json j = {{"schema", io::kSchema}, {"command", command},   {"args", args},
              {"config", config.to_json()}, {"ok", ok()}, {"exit_code", exit_code},
              {"certificates", certificates}, {"warnings", warnings}};
    if (!error.empty()) j["error"] = error;
    if (elapsed_seconds) j["timing"] = {{"elapsed_seconds", *elapsed_seconds}};
    return j;
  }
};

// ---------------------------------------------------------------------------
// Files and parsing helpers

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline json read_json_file(const std::string& path) { return io::parse_json_text(read_file(path), path); }

/// Writes to a sibling temporary file, then renames over the target.
inline void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw InputError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError("cannot move output into place at " + path + ": " + ec.message());
  }
}

/// "2", "-0.5", "3+1i", "1.5-2e-3i", "2i", "-i".
inline cplx parse_complex(std::string s) {
  std::string t;
  for (char c : s)
    if (c != ' ') t += c;
  auto fail = [&] { return InputError("cannot parse complex number \"" + s + "\""); };
  if (t.empty()) throw fail();
  auto to_double = [&](const std::string& x) {
    if (x.empty() || x == "+") return 1.0;
    if (x == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(x, &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (used != x.size() || !std::isfinite(v)) throw fail();
    return v;
  };
  if (t.back() != 'i' && t.back() != 'j') return {to_double(t), 0.0};
  t.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, to_double(t)};
  return {to_double(t.substr(0, split)), to_double(t.substr(split))};
}

inline std::vector<cplx> parse_complex_list(const std::vector<std::string>& items) {
  std::vector<cplx> v;
  for (const auto& s : items) v.push_back(parse_complex(s));
  return v;
}

/// Runs body, folding exceptions into the report's exit code.
inline Report run_guarded(const std::string& command, json args, const RunConfig& cfg,
                          const std::function<void(Report&)>& body) {
  Report r;
  r.command = command;
  r.args = std::move(args);
  r.config = cfg;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    cfg.validate();
    body(r);
  } catch (const CertificateError& e) {
    r.exit_code = 1;
    r.error = e.what();
  } catch (const PreconditionError& e) {
    r.exit_code = 1;
    r.error = e.what();
  } catch (const AccuracyError& e) {
    r.exit_code = 1;
    r.error = e.what();
  } catch (const Error& e) {
    r.exit_code = 2;
    r.error = e.what();
  } catch (const nlohmann::json::exception& e) {
    r.exit_code = 2;
    r.error = std::string("malformed input: ") + e.what();
  } catch (const std::exception& e) {
    r.exit_code = 2;
    r.error = e.what();
  }
  if (cfg.timing)
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

inline std::string g6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline bool is_complex(const json& j) { return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(); }

inline std::string scalar(const json& j) {
  if (j.is_number_float()) return g6(j.get<double>());
  if (j.is_number()) return j.dump();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_null()) return "n/a";
  if (j.is_string()) return j.get<std::string>();
  if (is_complex(j)) {
    const double re = j[0].get<double>(), im = j[1].get<double>();
    return g6(re) + (std::signbit(im) ? "-" : "+") + g6(std::abs(im)) + "i";
  }
  return j.dump();
}

inline bool is_flat(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (!(e.is_primitive() || is_complex(e))) return false;
  return true;
}

inline void human(std::ostream& os, const json& j, int indent) {
  const std::string pad(std::size_t(indent) * 2, ' ');
  constexpr std::size_t kMaxShown = 12;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = j.is_object() ? it.key() : "-";
    const json& v = *it;
    if (v.is_primitive() || is_complex(v)) {
      os << pad << key << ": " << scalar(v) << "\n";
    } else if (is_flat(v)) {
      os << pad << key << ": [";
      for (std::size_t i = 0; i < v.size() && i < kMaxShown; ++i) os << (i ? ", " : "") << scalar(v[i]);
      if (v.size() > kMaxShown) os << ", ... (" << v.size() << " entries)";
      os << "]\n";
    } else if (v.is_array() && !v.empty() && is_flat(v[0])) {
      os << pad << key << ":\n";
      for (std::size_t i = 0; i < v.size() && i < kMaxShown; ++i) {
        os << pad << "  [";
        for (std::size_t k = 0; k < v[i].size() && k < kMaxShown; ++k) os << (k ? ", " : "") << scalar(v[i][k]);
        if (v[i].size() > kMaxShown) os << ", ...";
        os << "]\n";
      }
      if (v.size() > kMaxShown) os << pad << "  ... (" << v.size() << " rows)\n";
    } else {
      os << pad << key << ":\n";
      human(os, v, indent + 1);
    }
  }
}

inline void csv(std::ostream& os, const json& j, const std::string& path) {
  if (j.is_structured()) {
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it) csv(os, *it, path.empty() ? it.key() : path + "." + it.key());
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) csv(os, j[i], path + "[" + std::to_string(i) + "]");
    }
    return;
  }
  std::string v = j.is_string() ? j.get<std::string>() : j.dump();
  if (v.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : v) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    v = q + "\"";
  }
  os << path << "," << v << "\n";
}

}  // namespace detail

inline std::string render(const Report& r, Format f) {
  std::ostringstream os;
  switch (f) {
    case Format::Json: os << r.to_json().dump(2) << "\n"; break;
    case Format::Csv:
      os << "key,value\n";
      detail::csv(os, r.to_json(), "");
      break;
    case Format::Human: {
      os << "pickzeta " << r.command << ": " << (r.ok() ? "ok" : "FAILED") << " (exit " << r.exit_code << ")\n";
      if (!r.error.empty()) os << "error: " << r.error << "\n";
      for (const auto& w : r.warnings) os << "warning: " << w << "\n";
      if (!r.certificates.empty()) detail::human(os, r.certificates, 0);
      if (r.elapsed_seconds) os << "elapsed: " << detail::g6(*r.elapsed_seconds) << " s\n";
      break;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Commands

inline Report cmd_zeta(const std::vector<std::string>& points, const RunConfig& cfg) {
  return run_guarded("zeta", {{"s", points}}, cfg, [&](Report& r) {
    if (points.empty()) throw InputError("zeta: at least one point is required");
    json values = json::array();
    for (const auto& p : points) {
      const cplx s = parse_complex(p);
      const cplx z = zeta(s, cfg.zeta_options());
      values.push_back({{"s", io::to_json(s)}, {"value", io::to_json(z)}, {"abs_err_bound", cfg.zeta_abs_err}});
    }
    r.certificates["values"] = std::move(values);
  });
}

inline Report cmd_pick_check(const std::string& problem_path, const RunConfig& cfg) {
  return run_guarded("pick-check", {{"problem", problem_path}}, cfg, [&](Report& r) {
    const auto p = io::problem_from_json(read_json_file(problem_path), cfg.psd_tol, cfg.rank_tol);
    r.certificates["problem"] = io::to_json(p);
    KernelOptions ko;
    ko.zeta = cfg.zeta_options();
    const auto pick = certify_psd(pick_matrix(p, ko), p.psd_tol, p.rank_tol);
    r.certificates["pick"] = io::to_json(pick);
    if (pick.inconclusive) r.warnings.push_back("pick: verdict within 10x tolerance of the threshold");

    bool dirichlet_ok = true;
    for (const auto& x : p.nodes) dirichlet_ok = dirichlet_ok && x.real() > 0.5;
    for (const auto& w : p.targets) dirichlet_ok = dirichlet_ok && std::abs(w) < 1.0;
    if (dirichlet_ok) {
      const auto t21 = theorem21_check(p, ko);
      r.certificates["theorem21"] = io::to_json(t21);
      if (t21.cond_i.inconclusive) r.warnings.push_back("theorem21.cond_i: verdict within 10x tolerance");
      if (t21.cond_ii.inconclusive) r.warnings.push_back("theorem21.cond_ii: verdict within 10x tolerance");
    } else {
      r.warnings.push_back("theorem21 skipped: needs nodes with Re > 1/2 and targets in the unit disc");
    }
    if (p.kernel.kind() == KernelKind::SzegoHalfPlane) {
      const auto tr = lemma22_transfer(p);
      r.certificates["transfer"] = io::to_json(tr);
      if (tr.borderline) r.warnings.push_back("transfer: borderline verdict or rank");
    }
    if (!pick.psd) r.exit_code = 1;
  });
}

/// m in [m_lo, m_hi], lambda = (1, 2), w = (0, w2).
inline Report cmd_counterexample(int m_lo, int m_hi, cplx w2, const RunConfig& cfg) {
  return run_guarded("counterexample", {{"m", {m_lo, m_hi}}, {"w2", io::to_json(w2)}}, cfg, [&](Report& r) {
    if (m_lo < 1 || m_hi < m_lo) throw InputError("counterexample: need 1 <= m_lo <= m_hi");
    json certs = json::array();
    int passed = 0;
    for (int m = m_lo; m <= m_hi; ++m) {
      const auto rep = theorem12_certificate(m, w2, cfg.psd_tol, cfg.rank_tol, cfg.zeta_options());
      certs.push_back(io::to_json(rep));
      if (rep.holds) ++passed;
      if (rep.inconclusive) r.warnings.push_back("m = " + std::to_string(m) + ": margin within 10x tolerance");
    }
    r.certificates["theorem12"] = std::move(certs);
    r.certificates["passed"] = passed;
    r.certificates["total"] = m_hi - m_lo + 1;
    if (passed != m_hi - m_lo + 1) r.exit_code = 1;
  });
}

inline Report cmd_solve(const std::string& problem_path, const RunConfig& cfg,
                        const std::string& solution_out = {}) {
  return run_guarded("solve", {{"problem", problem_path}, {"solution_out", solution_out}}, cfg, [&](Report& r) {
    const auto p = io::problem_from_json(read_json_file(problem_path), cfg.psd_tol, cfg.rank_tol);
    r.certificates["problem"] = io::to_json(p);
    const auto sol = solve_halfplane(p);
    const json sj = io::to_json(sol);
    r.certificates["solution"] = sj;
    for (const auto& w : sol.disc.warnings) r.warnings.push_back(w);
    if (!sol.feasible()) {
      r.exit_code = 1;
      r.error = "infeasible: disc Pick matrix is not PSD (witness in certificates.solution.pick.witness)";
      return;
    }
    json residuals = json::array();
    for (std::size_t i = 0; i < p.size(); ++i)
      residuals.push_back({{"node", io::to_json(p.nodes[i])}, {"target", io::to_json(p.targets[i])},
                           {"value", io::to_json(sol(p.nodes[i]))}, {"residual", std::abs(sol(p.nodes[i]) - p.targets[i])}});
    r.certificates["node_residuals"] = std::move(residuals);
    if (!sol.disc.boundary.ok) r.warnings.push_back("boundary sampling exceeded 1 + 1e-6");
    if (!solution_out.empty()) write_atomic(solution_out, sj.dump(2) + "\n");
  });
}

inline Report cmd_evaluate(const std::string& solution_path, const std::vector<std::string>& points,
                           const RunConfig& cfg) {
  return run_guarded("solve", {{"evaluate", solution_path}, {"at", points}}, cfg, [&](Report& r) {
    if (points.empty()) throw InputError("--evaluate needs at least one --at point");
    const auto sol = io::solution_from_json(read_json_file(solution_path));
    json values = json::array();
    for (const auto& s : parse_complex_list(points))
      values.push_back({{"s", io::to_json(s)}, {"value", io::to_json(sol(s))}});
    r.certificates["values"] = std::move(values);
  });
}

inline std::vector<cplx> default_realization_points() { return {{1.0, 0.0}, {1.3, 0.5}, {1.7, -0.8}, {2.5, 1.2}}; }

inline std::vector<cplx> grid_from_spec(const std::vector<std::string>& spec) {
  if (spec.empty() || (spec.size() == 1 && spec[0] == "default")) return default_verification_grid();
  return parse_complex_list(spec);
}

/// phi spec file: {"coeffs": [...], "points": [...]?}. Explicit points override the file.
inline Report cmd_realize(const std::string& phi_path, const std::vector<std::string>& points, const RunConfig& cfg,
                          const std::string& model_out = {}) {
  return run_guarded(
      "realize", {{"phi", phi_path}, {"points", points}, {"model_out", model_out}}, cfg, [&](Report& r) {
        const json spec = read_json_file(phi_path);
        const auto phi = io::multiplier_from_json(spec);
        std::vector<cplx> pts = default_realization_points();
        if (!points.empty()) pts = parse_complex_list(points);
        else if (auto it = spec.find("points"); it != spec.end()) pts = io::complex_list_from_json(*it, "phi.points");
        r.certificates["phi"] = io::to_json(phi);
        RealizationOptions opt;
        opt.psd_tol = cfg.psd_tol;
        opt.zeta = cfg.zeta_options();
        const auto model = build_lurking_isometry(phi, pts, cfg.trunc, opt);
        r.certificates["diagnostics"] = io::to_json(model.diagnostics);
        r.certificates["N"] = model.N;
        r.certificates["r"] = model.r;

        const FeatureSpace fs(model.N);
        auto table = [&](const std::vector<cplx>& where) {
          json rows = json::array();
          for (const auto& s : where) {
            const auto v = evaluate_realization(model, s, fs, opt.zeta);
            rows.push_back({{"s", io::to_json(s)}, {"realized", io::to_json(v.value)}, {"phi", io::to_json(phi(s))},
                            {"abs_error", std::abs(v.value - phi(s))}, {"neumann_bound", v.neumann_bound}});
          }
          return rows;
        };
        r.certificates["reconstruction_samples"] = table(pts);
        r.certificates["reconstruction_held_out"] = table(default_verification_grid());
        const auto ver = verify_direction_ii_to_i(model, default_verification_grid());
        r.certificates["verification"] = io::to_json(ver);
        if (!ver.passed) r.exit_code = 1;
        if (!model_out.empty()) write_atomic(model_out, io::to_json(model).dump() + "\n");
      });
}

inline Report cmd_verify(const std::string& model_path, const std::vector<std::string>& grid, const RunConfig& cfg) {
  return run_guarded("realize", {{"verify", model_path}, {"grid", grid}}, cfg, [&](Report& r) {
    const auto model = io::model_from_json(read_json_file(model_path));
    VerificationOptions vo;
    vo.psd_tol = cfg.psd_tol;
    vo.zeta = cfg.zeta_options();
    const auto ver = verify_direction_ii_to_i(model, grid_from_spec(grid), vo);
    r.certificates["verification"] = io::to_json(ver);
    if (!ver.passed) r.exit_code = 1;
  });
}

inline Report cmd_search_dirichlet(const std::string& problem_path, const std::vector<std::string>& h_values,
                                   std::size_t N, const RunConfig& cfg) {
  return run_guarded("search-dirichlet", {{"problem", problem_path}, {"h", h_values}, {"N", N}}, cfg, [&](Report& r) {
    const auto p = io::problem_from_json(read_json_file(problem_path), cfg.psd_tol, cfg.rank_tol);
    std::vector<SchurParameter> family;
    const std::vector<std::string> hs = h_values.empty() ? std::vector<std::string>{"0", "0.3", "-0.7i"} : h_values;
    for (const auto& h : hs) {
      try {
        family.push_back(SchurParameter::constant_value(parse_complex(h), "h=" + h));
      } catch (const DomainError& e) {
        throw InputError(std::string("--h ") + h + ": " + e.what());
      }
    }
    const auto rep = search_dirichlet_solution(p, family, N);
    r.certificates["problem"] = io::to_json(p);
    r.certificates["search"] = io::to_json(rep);
    if (!rep.conditions.necessary_conditions_hold)
      r.warnings.push_back("necessary conditions of the Dirichlet-series Pick test fail; fits are reported only");
  });
}

}  // namespace pickzeta::cli
