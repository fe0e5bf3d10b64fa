#pragma once

// JSON encoding for problems, certificates, solutions and realization models.
// Schema "pickzeta/1": complex numbers are [re, im], matrices are arrays of
// rows, field names are snake_case. Decoding errors are InputError with the
// JSON path or, for syntax errors, the line and column.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pickzeta/disc_solver.hpp"
#include "pickzeta/errors.hpp"
#include "pickzeta/kernels.hpp"
#include "pickzeta/pick_core.hpp"
#include "pickzeta/realization.hpp"

namespace pickzeta::io {

using json = nlohmann::json;

inline constexpr const char* kSchema = "pickzeta/1";

/// Parses text; syntax errors name the line and column.
inline json parse_json_text(const std::string& text, const std::string& source = "<input>") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << source << ":" << line << ":" << col << ": malformed JSON (" << e.what() << ")";
    throw InputError(os.str());
  }
}

// ---------------------------------------------------------------------------
// Scalars, vectors, matrices

inline json real_to_json(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

inline json to_json(cplx z) { return json::array({real_to_json(z.real()), real_to_json(z.imag())}); }

inline cplx complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError(path + ": expected a complex number [re, im]");
}

inline json to_json(const std::vector<cplx>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

inline json to_json(const Eigen::VectorXcd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

inline json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(real_to_json(v(i)));
  return a;
}

inline json to_json(const Eigen::MatrixXcd& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(to_json(M(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<cplx> complex_list_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected an array");
  std::vector<cplx> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(complex_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline Eigen::VectorXcd cvector_from_json(const json& j, const std::string& path) {
  const auto v = complex_list_from_json(j, path);
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), Eigen::Index(v.size()));
}

inline Eigen::MatrixXcd cmatrix_from_json(const json& j, const std::string& path, Eigen::Index cols_if_empty = 0) {
  if (!j.is_array()) throw InputError(path + ": expected an array of rows");
  if (j.empty()) return Eigen::MatrixXcd(0, cols_if_empty);
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Eigen::MatrixXcd M(Eigen::Index(j.size()), Eigen::Index(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != cols) throw InputError(rp + ": ragged matrix row");
    for (std::size_t k = 0; k < cols; ++k)
      M(Eigen::Index(i), Eigen::Index(k)) = complex_from_json(j[i][k], rp + "[" + std::to_string(k) + "]");
  }
  return M;
}

namespace detail {

inline const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path + ": missing field \"" + key + "\"");
  return *it;
}

inline double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw InputError(path + ": expected a number");
  return j.get<double>();
}

inline long long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw InputError(path + ": expected an integer");
  return j.get<long long>();
}

inline void check_schema(const json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  auto it = j.find("schema");
  if (it != j.end() && (!it->is_string() || it->get<std::string>() != kSchema))
    throw InputError(path + ".schema: unsupported schema (expected \"" + std::string(kSchema) + "\")");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// KernelSpec

inline std::string tail_name(TailModel t) {
  switch (t) {
    case TailModel::Finite: return "finite";
    case TailModel::ZetaPower: return "zeta_power";
    case TailModel::KappaMu: return "kappa_mu";
  }
  return "finite";
}

inline json to_json(const KernelSpec& k) {
  json j = {{"kind", k.name()}};
  if (k.kind() == KernelKind::SzegoDirichlet) j["power"] = k.power();
  if (k.kind() == KernelKind::DiagonalDirichlet) {
    j["coeffs"] = k.coeffs();
    j["tail"] = tail_name(k.tail());
    if (k.tail() == TailModel::ZetaPower) j["power"] = k.power();
  }
  return j;
}

inline KernelSpec kernel_from_json(const json& j, const std::string& path = "kernel") {
  const auto& kind = detail::require(j, "kind", path);
  if (!kind.is_string()) throw InputError(path + ".kind: expected a string");
  const std::string name = kind.get<std::string>();
  int power = 1;
  if (auto it = j.find("power"); it != j.end()) power = int(detail::integer(*it, path + ".power"));
  if (name == "szego_disc") return KernelSpec::szego_disc();
  if (name == "szego_half_plane") return KernelSpec::szego_half_plane();
  if (name == "szego_dirichlet") return KernelSpec::szego_dirichlet(power);
  if (name == "kappa_mu") return KernelSpec::kappa_mu();
  if (name == "diagonal_dirichlet") {
    const auto& c = detail::require(j, "coeffs", path);
    if (!c.is_array()) throw InputError(path + ".coeffs: expected an array");
    std::vector<double> coeffs;
    for (std::size_t i = 0; i < c.size(); ++i) coeffs.push_back(detail::number(c[i], path + ".coeffs[" + std::to_string(i) + "]"));
    TailModel tail = TailModel::Finite;
    if (auto it = j.find("tail"); it != j.end()) {
      const std::string t = it->is_string() ? it->get<std::string>() : "";
      if (t == "finite") tail = TailModel::Finite;
      else if (t == "zeta_power") tail = TailModel::ZetaPower;
      else if (t == "kappa_mu") tail = TailModel::KappaMu;
      else throw InputError(path + ".tail: expected \"finite\", \"zeta_power\" or \"kappa_mu\"");
    }
    return KernelSpec::diagonal_dirichlet(std::move(coeffs), tail, power);
  }
  throw InputError(path + ".kind: unknown kernel \"" + name + "\"");
}

// ---------------------------------------------------------------------------
// InterpolationProblem

inline json to_json(const InterpolationProblem& p) {
  return {{"schema", kSchema}, {"nodes", to_json(p.nodes)}, {"targets", to_json(p.targets)},
          {"kernel", to_json(p.kernel)}, {"psd_tol", p.psd_tol}, {"rank_tol", p.rank_tol}};
}

/// Missing tolerances take the given defaults; the kernel defaults to
/// szego_dirichlet(1).
inline InterpolationProblem problem_from_json(const json& j, double psd_tol = kDefaultPsdTol,
                                              double rank_tol = kDefaultRankTol) {
  detail::check_schema(j, "problem");
  InterpolationProblem p;
  p.nodes = complex_list_from_json(detail::require(j, "nodes", "problem"), "problem.nodes");
  p.targets = complex_list_from_json(detail::require(j, "targets", "problem"), "problem.targets");
  if (auto it = j.find("kernel"); it != j.end()) p.kernel = kernel_from_json(*it, "problem.kernel");
  p.psd_tol = psd_tol;
  p.rank_tol = rank_tol;
  if (auto it = j.find("psd_tol"); it != j.end()) p.psd_tol = detail::number(*it, "problem.psd_tol");
  if (auto it = j.find("rank_tol"); it != j.end()) p.rank_tol = detail::number(*it, "problem.rank_tol");
  p.validate();
  return p;
}

// ---------------------------------------------------------------------------
// Certificates

inline json to_json(const PickCertificate& c) {
  return {{"matrix", to_json(c.matrix)},
          {"conjugation_convention", kConjugationConvention},
          {"eigenvalues", to_json(c.eigenvalues)},
          {"min_eigenvalue", real_to_json(c.min_eigenvalue)},
          {"max_eigenvalue", real_to_json(c.max_eigenvalue)},
          {"spectral_norm", real_to_json(c.spectral_norm)},
          {"numerical_rank", c.numerical_rank},
          {"psd", c.psd},
          {"decision_value", real_to_json(c.decision_value)},
          {"margin", real_to_json(c.psd ? c.decision_value + c.psd_tol : -(c.decision_value + c.psd_tol))},
          {"scaled_min_eigenvalue", real_to_json(c.scaled_min_eigenvalue)},
          {"inconclusive", c.inconclusive},
          {"witness", to_json(c.witness)},
          {"psd_tol", c.psd_tol},
          {"rank_tol", c.rank_tol}};
}

inline json to_json(const TransferReport& r) {
  return {{"P", to_json(r.cert_P)}, {"Q", to_json(r.cert_Q)}, {"R", to_json(r.R)},
          {"rank_R", r.rank_R},     {"schur_residual", r.schur_residual},
          {"psd_agree", r.psd_agree}, {"rank_agree", r.rank_agree}, {"borderline", r.borderline}};
}

inline json to_json(const Theorem21Report& r) {
  return {{"cond_i", to_json(r.cond_i)},
          {"cond_ii", to_json(r.cond_ii)},
          {"rank_full", r.rank_full},
          {"necessary_conditions_hold", r.necessary_conditions_hold}};
}

inline json to_json(const Theorem12Report& r) {
  return {{"m", r.m},
          {"w2", to_json(r.w2)},
          {"window", json::array({r.window_low, r.window_high})},
          {"zeta_side", to_json(r.zeta_side)},
          {"szego_side", to_json(r.szego_side)},
          {"zeta_det", r.zeta_det},
          {"szego_det", r.szego_det},
          {"det_lower_bound", r.det_lower_bound},
          {"zeta_side_psd", r.zeta_side_psd},
          {"szego_side_not_psd", r.szego_side_not_psd},
          {"holds", r.holds},
          {"inconclusive", r.inconclusive}};
}

inline json to_json(const SchurClassCertificate& c) {
  return {{"samples", c.samples}, {"sampled_sup", c.sampled_sup}, {"lipschitz_bound", c.lipschitz_bound},
          {"ok", c.ok}};
}

// ---------------------------------------------------------------------------
// Solutions

inline json to_json(const RationalSchurFunction& f) {
  json j;
  if (f.form() == RationalSchurFunction::Form::Blaschke) {
    j["form"] = "blaschke";
    j["zeros"] = to_json(f.zeros());
    j["unimodular"] = to_json(f.unimodular());
  } else {
    if (!f.terminal().constant) throw InputError("only Schur chains closed by a constant can be serialized");
    j["form"] = "schur_steps";
    json steps = json::array();
    for (const auto& s : f.steps()) steps.push_back({{"node", to_json(s.node)}, {"parameter", to_json(s.parameter)}});
    j["steps"] = std::move(steps);
    j["terminal"] = to_json(*f.terminal().constant);
  }
  j["degree"] = f.degree();
  return j;
}

inline RationalSchurFunction schur_function_from_json(const json& j, const std::string& path) {
  const auto& form = detail::require(j, "form", path);
  if (form == "blaschke") {
    const auto zeros = complex_list_from_json(detail::require(j, "zeros", path), path + ".zeros");
    for (const auto& a : zeros)
      if (!(std::abs(a) < 1.0)) throw InputError(path + ".zeros: zeros must lie in the open unit disc");
    const cplx u = complex_from_json(detail::require(j, "unimodular", path), path + ".unimodular");
    if (std::abs(std::abs(u) - 1.0) > 1e-12) throw InputError(path + ".unimodular: |u| must be 1");
    return RationalSchurFunction::blaschke(zeros, u);
  }
  if (form == "schur_steps") {
    const auto& s = detail::require(j, "steps", path);
    if (!s.is_array()) throw InputError(path + ".steps: expected an array");
    std::vector<SchurStep> steps;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string sp = path + ".steps[" + std::to_string(i) + "]";
      const cplx z = complex_from_json(detail::require(s[i], "node", sp), sp + ".node");
      const cplx g = complex_from_json(detail::require(s[i], "parameter", sp), sp + ".parameter");
      if (!(std::abs(z) < 1.0) || !(std::abs(g) < 1.0)) throw InputError(sp + ": node and parameter must lie in the disc");
      steps.push_back({z, g});
    }
    const cplx h = complex_from_json(detail::require(j, "terminal", path), path + ".terminal");
    try {
      return RationalSchurFunction::from_steps(std::move(steps), SchurParameter::constant_value(h));
    } catch (const DomainError& e) {
      throw InputError(path + ".terminal: " + e.what());
    }
  }
  throw InputError(path + ".form: expected \"blaschke\" or \"schur_steps\"");
}

/// A serialized solution on the right half-plane: phi(s) = f(C(s)).
struct StoredSolution {
  RationalSchurFunction function;
  cplx operator()(cplx s) const {
    HalfPlanePoint(s, 0.0);
    return function(cayley(s));
  }
};

inline json to_json(const HalfPlaneSolution& s) {
  json j = {{"schema", kSchema},
            {"type", "halfplane_solution"},
            {"map", "phi(s) = f((s - 1)/(s + 1))"},
            {"feasible", s.disc.feasible},
            {"unique", s.disc.unique},
            {"disc_nodes", to_json(s.disc_nodes)},
            {"pick", to_json(s.disc.pick)},
            {"warnings", s.disc.warnings}};
  if (s.disc.feasible) {
    j["function"] = to_json(*s.disc.function);
    j["steps_form"] = to_json(*s.disc.steps_form);
    j["max_node_residual"] = s.disc.max_node_residual;
    j["step_decisions"] = s.disc.step_decisions;
    j["boundary"] = to_json(s.disc.boundary);
  }
  return j;
}

inline StoredSolution solution_from_json(const json& j) {
  detail::check_schema(j, "solution");
  const auto& t = detail::require(j, "type", "solution");
  if (t != "halfplane_solution") throw InputError("solution.type: expected \"halfplane_solution\"");
  const auto& f = detail::require(j, "feasible", "solution");
  if (!f.is_boolean() || !f.get<bool>()) throw InputError("solution: problem was infeasible; nothing to evaluate");
  return {schur_function_from_json(detail::require(j, "function", "solution"), "solution.function")};
}

// ---------------------------------------------------------------------------
// Test multipliers and realization models

inline json to_json(const TestMultiplier& phi) {
  return {{"schema", kSchema}, {"coeffs", to_json(phi.coeffs().coeffs())}, {"declared_norm", phi.declared_norm()}};
}

inline TestMultiplier multiplier_from_json(const json& j, const std::string& path = "phi") {
  detail::check_schema(j, path);
  auto c = complex_list_from_json(detail::require(j, "coeffs", path), path + ".coeffs");
  if (c.empty()) throw InputError(path + ".coeffs: at least one coefficient is required");
  return TestMultiplier(CoefficientSeries<cplx>(std::move(c), "phi"));
}

inline json to_json(const RealizationDiagnostics& d) {
  return {{"gram_identity_residual", d.gram_identity_residual},
          {"tail_bound", d.tail_bound},
          {"isometry_defect", d.isometry_defect},
          {"contraction_norm", d.contraction_norm},
          {"d_contraction_residual", d.d_contraction_residual},
          {"sample_reconstruction", d.sample_reconstruction},
          {"span_rank", d.span_rank},
          {"polar_correction", d.polar_correction}};
}

inline json to_json(const RealizationModel& m) {
  return {{"schema", kSchema},
          {"type", "realization_model"},
          {"layout", "H^2 (x) K coordinates indexed m * r + l, m = 0..N-1"},
          {"N", m.N},
          {"r", m.r},
          {"alpha", to_json(m.alpha)},
          {"a", to_json(m.a)},
          {"beta", to_json(m.beta)},
          {"gamma", to_json(m.gamma)},
          {"D_left", to_json(m.D.left)},
          {"D_right", to_json(m.D.right)},
          {"psi", to_json(m.psi)},
          {"sample_points", to_json(m.sample_points)},
          {"phi_values", to_json(m.phi_values)},
          {"diagnostics", to_json(m.diagnostics)}};
}

inline RealizationModel model_from_json(const json& j) {
  detail::check_schema(j, "model");
  if (detail::require(j, "type", "model") != "realization_model")
    throw InputError("model.type: expected \"realization_model\"");
  RealizationModel m;
  const long long N = detail::integer(detail::require(j, "N", "model"), "model.N");
  const long long r = detail::integer(detail::require(j, "r", "model"), "model.r");
  if (N < 1 || r < 0) throw InputError("model: N must be >= 1 and r >= 0");
  m.N = std::size_t(N);
  m.r = int(r);
  m.alpha = complex_from_json(detail::require(j, "alpha", "model"), "model.alpha");
  if (!(std::abs(m.alpha) > 1.0)) throw InputError("model.alpha: |alpha| must exceed 1");
  m.a = complex_from_json(detail::require(j, "a", "model"), "model.a");
  m.beta = cvector_from_json(detail::require(j, "beta", "model"), "model.beta");
  m.gamma = cvector_from_json(detail::require(j, "gamma", "model"), "model.gamma");
  m.D.left = cmatrix_from_json(detail::require(j, "D_left", "model"), "model.D_left");
  m.D.right = cmatrix_from_json(detail::require(j, "D_right", "model"), "model.D_right", m.D.left.cols());
  m.psi = cmatrix_from_json(detail::require(j, "psi", "model"), "model.psi", r);
  m.sample_points = complex_list_from_json(detail::require(j, "sample_points", "model"), "model.sample_points");
  m.phi_values = complex_list_from_json(detail::require(j, "phi_values", "model"), "model.phi_values");
  const Eigen::Index n = m.dim();
  if (m.beta.size() != n || m.gamma.size() != n || m.D.left.rows() != n || m.D.right.rows() != n ||
      m.D.left.cols() != m.D.right.cols())
    throw InputError("model: block dimensions disagree with N * r = " + std::to_string(n));
  if (m.psi.rows() != Eigen::Index(m.sample_points.size()) || m.psi.cols() != r ||
      m.phi_values.size() != m.sample_points.size())
    throw InputError("model: psi, sample_points and phi_values disagree in size");
  for (const auto& s : m.sample_points) {
    if (!(s.real() > 0.5)) throw InputError("model.sample_points: points must lie in Re(s) > 1/2");
  }
  if (auto it = j.find("diagnostics"); it != j.end() && it->is_object()) {
    const auto& d = *it;
    auto num = [&](const char* k) { return d.contains(k) && d[k].is_number() ? d[k].get<double>() : 0.0; };
    m.diagnostics.gram_identity_residual = num("gram_identity_residual");
    m.diagnostics.tail_bound = num("tail_bound");
    m.diagnostics.isometry_defect = num("isometry_defect");
    m.diagnostics.contraction_norm = num("contraction_norm");
    m.diagnostics.d_contraction_residual = num("d_contraction_residual");
    m.diagnostics.sample_reconstruction = num("sample_reconstruction");
    m.diagnostics.span_rank = int(num("span_rank"));
    m.diagnostics.polar_correction = num("polar_correction");
  }
  return m;
}

inline json to_json(const VerificationReport& r) {
  json j = {{"grid", to_json(r.grid)},
            {"values", to_json(r.values)},
            {"contraction_norm", r.contraction_norm},
            {"isometry_defect", r.isometry_defect},
            {"d_contraction_residual", r.d_contraction_residual},
            {"max_neumann_bound", r.max_neumann_bound},
            {"multiplier_norm_certificate", r.multiplier_norm_certificate},
            {"passed", r.passed},
            {"failures", r.failures}};
  if (r.gram) j["gram"] = to_json(*r.gram);
  return j;
}

inline json to_json(const DirichletSearchReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"label", e.label},
                       {"rms_residual", e.rms_residual},
                       {"relative_residual", e.relative_residual},
                       {"coeffs", to_json(e.coeffs)}});
  return {{"conditions", to_json(r.conditions)},
          {"N", r.N},
          {"fit", {{"sigma0", r.fit.sigma0}, {"t_max", r.fit.t_max}, {"samples", r.fit.samples}}},
          {"membership_claim", false},
          {"entries", std::move(entries)}};
}

}  // namespace pickzeta::io
