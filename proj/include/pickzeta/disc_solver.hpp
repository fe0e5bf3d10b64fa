#pragma once

// Constructive Nevanlinna-Pick interpolation in the unit disc by the
// Schur-Nevanlinna recursion, the linear-fractional description of all
// solutions, and the transfer to the right half-plane through the Cayley map.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pickzeta/errors.hpp"
#include "pickzeta/kernels.hpp"
#include "pickzeta/pick_core.hpp"

namespace pickzeta {

using SchurFunction = std::function<cplx(cplx)>;

/// Disc automorphism b_a(z) = (z - a)/(1 - conj(a) z).
inline cplx blaschke_factor(cplx a, cplx z) { return (z - a) / (1.0 - std::conj(a) * z); }

/// Free parameter h of the solution set; constants are serializable.
struct SchurParameter {
  std::string label;
  SchurFunction fn;
  std::optional<cplx> constant;

  static SchurParameter constant_value(cplx c, std::string label = {}) {
    if (!(std::abs(c) <= 1.0 + 1e-14)) throw DomainError("Schur parameter constant must satisfy |c| <= 1");
    if (label.empty()) {
      std::ostringstream os;
      os << "h=" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
      label = os.str();
    }
    return {std::move(label), [c](cplx) { return c; }, c};
  }
  static SchurParameter function(SchurFunction f, std::string label) {
    return {std::move(label), std::move(f), std::nullopt};
  }
  cplx operator()(cplx z) const { return fn(z); }
};

/// One reduction of the Schur recursion: node z_k and Schur parameter
/// gamma_k (the reduced target at z_k).
struct SchurStep {
  cplx node;
  cplx parameter;
};

/// A rational Schur-class function, held either as a finite Blaschke product
/// or as a chain of elementary Schur steps closed by a terminal parameter h:
///   f_{k-1} = (gamma_k + b_k f_k) / (1 + conj(gamma_k) b_k f_k),  f_n = h.
class RationalSchurFunction {
 public:
  enum class Form { Blaschke, SchurSteps };

  static RationalSchurFunction blaschke(std::vector<cplx> zeros, cplx unimodular) {
    RationalSchurFunction f;
    f.form_ = Form::Blaschke;
    f.zeros_ = std::move(zeros);
    f.unimodular_ = unimodular;
    f.degree_ = static_cast<int>(f.zeros_.size());
    return f;
  }

  static RationalSchurFunction from_steps(std::vector<SchurStep> steps, SchurParameter terminal) {
    RationalSchurFunction f;
    f.form_ = Form::SchurSteps;
    f.steps_ = std::move(steps);
    f.terminal_ = std::move(terminal);
    f.degree_ = static_cast<int>(f.steps_.size());
    return f;
  }

  cplx operator()(cplx z) const {
    if (form_ == Form::Blaschke) {
      cplx v = unimodular_;
      for (const auto& a : zeros_) v *= blaschke_factor(a, z);
      return v;
    }
    cplx f = terminal_(z);
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
      const cplx bf = blaschke_factor(it->node, z) * f;
      f = (it->parameter + bf) / (1.0 + std::conj(it->parameter) * bf);
    }
    return f;
  }

  Form form() const { return form_; }
  /// Number of Blaschke factors, or of Schur steps (plus 0 for constant h).
  int degree() const { return degree_; }
  const std::vector<cplx>& zeros() const { return zeros_; }
  cplx unimodular() const { return unimodular_; }
  const std::vector<SchurStep>& steps() const { return steps_; }
  const SchurParameter& terminal() const { return terminal_; }

 private:
  Form form_ = Form::SchurSteps;
  int degree_ = 0;
  std::vector<cplx> zeros_;
  cplx unimodular_{1.0, 0.0};
  std::vector<SchurStep> steps_;
  SchurParameter terminal_ = SchurParameter::constant_value(0.0, "h=0");
};

/// Boundary-sampling evidence that sup_T |f| <= 1.
struct SchurClassCertificate {
  int samples = 0;
  double sampled_sup = 0.0;
  /// sampled_sup + (largest sampled difference quotient) * half the spacing.
  double lipschitz_bound = 0.0;
  bool ok = false;
};

/// Samples sit on |z| = 1 - 1e-12 so that callables defined only on the open disc are accepted.
template <class F>
SchurClassCertificate certify_schur_class(const F& f, int samples = 2048, double tol = 1e-8) {
  constexpr double radius = 1.0 - 1e-12;
  SchurClassCertificate c;
  c.samples = samples;
  const double h = 2.0 * std::numbers::pi / samples;
  std::vector<cplx> vals(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    vals[std::size_t(k)] = f(std::polar(radius, k * h));
    c.sampled_sup = std::max(c.sampled_sup, std::abs(vals[std::size_t(k)]));
  }
  double slope = 0.0;
  for (int k = 0; k < samples; ++k)
    slope = std::max(slope, std::abs(vals[std::size_t((k + 1) % samples)] - vals[std::size_t(k)]) / h);
  c.lipschitz_bound = c.sampled_sup + slope * h / 2.0;
  c.ok = c.sampled_sup <= 1.0 + tol;
  return c;
}

struct DiscSolverOptions {
  double psd_tol = kDefaultPsdTol;
  double rank_tol = kDefaultRankTol;
  /// A reduced target of modulus >= 1 - this triggers the unique-solution branch.
  double degenerate_threshold = 1e-10;
  /// Nodes closer than this are rejected.
  double min_node_separation = 1e-6;
  /// Certify the reduced Pick matrix after every reduction.
  bool check_steps = true;
  int boundary_samples = 2048;
};

struct DiscSolution {
  bool feasible = false;
  /// Unique solution (rank-deficient Pick matrix), a Blaschke product.
  bool unique = false;
  std::optional<RationalSchurFunction> function;
  /// The same solution in Schur-step form (always present when feasible).
  std::optional<RationalSchurFunction> steps_form;
  PickCertificate pick;
  /// decision_value of the reduced Pick matrix after each reduction.
  std::vector<double> step_decisions;
  bool steps_psd = true;
  double max_node_residual = 0.0;
  SchurClassCertificate boundary;
  std::vector<std::string> warnings;

  cplx operator()(cplx z) const {
    if (!function) throw PreconditionError("problem is infeasible; no solution to evaluate");
    return (*function)(z);
  }
};

namespace detail {

struct Reduction {
  std::vector<SchurStep> steps;
  /// Set when a reduced target reached the unit circle: index of that node
  /// and the unimodular constant closing the chain.
  std::optional<std::size_t> degenerate_at;
  cplx unimodular{1.0, 0.0};
  std::vector<double> step_decisions;
  bool steps_psd = true;
  /// max |reduced target - unimodular| over the nodes after the degenerate one.
  double tail_mismatch = 0.0;
};

inline Eigen::MatrixXcd disc_pick(const std::vector<cplx>& z, const std::vector<cplx>& w) {
  const auto n = static_cast<Eigen::Index>(z.size());
  Eigen::MatrixXcd Q(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      Q(i, j) = (1.0 - w[std::size_t(i)] * std::conj(w[std::size_t(j)])) /
                (1.0 - z[std::size_t(i)] * std::conj(z[std::size_t(j)]));
  for (Eigen::Index i = 0; i < n; ++i) Q(i, i).imag(0.0);
  return Q;
}

inline Reduction schur_reduce(const std::vector<cplx>& z, std::vector<cplx> w,
                              const DiscSolverOptions& opt) {
  Reduction red;
  const std::size_t n = z.size();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx g = w[k];
    if (std::abs(g) >= 1.0 - opt.degenerate_threshold) {
      red.degenerate_at = k;
      red.unimodular = g / std::abs(g);
      for (std::size_t j = k + 1; j < n; ++j)
        red.tail_mismatch = std::max(red.tail_mismatch, std::abs(w[j] - red.unimodular));
      return red;
    }
    red.steps.push_back({z[k], g});
    for (std::size_t j = k + 1; j < n; ++j)
      w[j] = ((w[j] - g) / (1.0 - std::conj(g) * w[j])) / blaschke_factor(z[k], z[j]);
    if (opt.check_steps && k + 1 < n) {
      std::vector<cplx> zr(z.begin() + std::ptrdiff_t(k + 1), z.end());
      std::vector<cplx> wr(w.begin() + std::ptrdiff_t(k + 1), w.end());
      const auto c = certify_psd(disc_pick(zr, wr), opt.psd_tol, opt.rank_tol);
      red.step_decisions.push_back(c.decision_value);
      red.steps_psd = red.steps_psd && c.psd;
    }
  }
  return red;
}

// Polynomials as ascending coefficient vectors.
using Poly = std::vector<cplx>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline Poly poly_add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

inline Poly poly_scale(Poly a, cplx s) {
  for (auto& c : a) c *= s;
  return a;
}

inline std::vector<cplx> poly_roots(Poly p, std::size_t degree) {
  p.resize(degree + 1);
  const auto d = static_cast<Eigen::Index>(degree);
  if (d == 0) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < d; ++i) comp(i, d - 1) = -p[std::size_t(i)] / p[degree];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
  return roots;
}

// Zeros of the degree-d Blaschke product T_Theta(u), Theta = prod of the
// (unnormalized) polynomial step matrices, u unimodular.
inline RationalSchurFunction blaschke_from_steps(const std::vector<SchurStep>& steps, cplx u) {
  Poly p11{1.0}, p12{0.0}, p21{0.0}, p22{1.0};
  for (const auto& s : steps) {
    const Poly zk{-s.node, 1.0};                 // z - z_k
    const Poly ck{1.0, -std::conj(s.node)};      // 1 - conj(z_k) z
    const Poly a11 = zk, a12 = poly_scale(ck, s.parameter);
    const Poly a21 = poly_scale(zk, std::conj(s.parameter)), a22 = ck;
    Poly n11 = poly_add(poly_mul(p11, a11), poly_mul(p12, a21));
    Poly n12 = poly_add(poly_mul(p11, a12), poly_mul(p12, a22));
    Poly n21 = poly_add(poly_mul(p21, a11), poly_mul(p22, a21));
    Poly n22 = poly_add(poly_mul(p21, a12), poly_mul(p22, a22));
    p11 = std::move(n11), p12 = std::move(n12), p21 = std::move(n21), p22 = std::move(n22);
  }
  const Poly num = poly_add(poly_scale(p11, u), p12);
  const std::size_t d = steps.size();
  auto zeros = poly_roots(num, d);
  const auto chain = RationalSchurFunction::from_steps(steps, SchurParameter::constant_value(u));
  cplx z0 = 0.0;
  double best = -1.0;
  for (cplx cand : {cplx(0.0), cplx(0.5, 0.0), cplx(0.0, -0.5), cplx(-0.5, 0.0), cplx(0.0, 0.5)}) {
    double dmin = 1e300;
    for (const auto& a : zeros) dmin = std::min(dmin, std::abs(cand - a));
    if (dmin > best) best = dmin, z0 = cand;
  }
  cplx prod = 1.0;
  for (const auto& a : zeros) prod *= blaschke_factor(a, z0);
  const cplx c = chain(z0) / prod;
  return RationalSchurFunction::blaschke(std::move(zeros), c / std::abs(c));
}

inline void validate_disc_data(const std::vector<cplx>& z, const std::vector<cplx>& w,
                               const DiscSolverOptions& opt, std::vector<std::string>& warnings) {
  if (z.empty()) throw InputError("solve_disc: no nodes");
  if (z.size() != w.size()) throw InputError("solve_disc: node and target counts differ");
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!(std::abs(z[i]) < 1.0)) throw DomainError("solve_disc: node " + std::to_string(i) + " is not in the disc");
    if (!(std::abs(w[i]) <= 1.0 + 1e-14))
      throw DomainError("solve_disc: |w_" + std::to_string(i) + "| > 1");
    if (std::abs(w[i]) > 1.0 - 1e-8)
      warnings.push_back("target " + std::to_string(i) + " is within 1e-8 of the unit circle (ill-conditioned)");
  }
  if (min_separation(z) < opt.min_node_separation)
    throw InputError("solve_disc: nodes closer than " + sci(opt.min_node_separation));
}

}  // namespace detail

/// Solves phi(z_i) = w_i with phi in the closed unit ball of H^infinity(D),
/// or reports infeasibility with the Pick-matrix witness.
inline DiscSolution solve_disc(const std::vector<cplx>& z, const std::vector<cplx>& w,
                               const DiscSolverOptions& opt = {}) {
  DiscSolution sol;
  detail::validate_disc_data(z, w, opt, sol.warnings);
  sol.pick = certify_psd(detail::disc_pick(z, w), opt.psd_tol, opt.rank_tol);
  if (!sol.pick.psd) return sol;
  if (sol.pick.inconclusive) sol.warnings.push_back("Pick matrix minimum eigenvalue is within 10x tolerance of 0");

  auto red = detail::schur_reduce(z, w, opt);
  sol.step_decisions = red.step_decisions;
  sol.steps_psd = red.steps_psd;
  sol.feasible = true;
  if (red.degenerate_at) {
    sol.unique = true;
    sol.steps_form = RationalSchurFunction::from_steps(red.steps, SchurParameter::constant_value(red.unimodular));
    sol.function = detail::blaschke_from_steps(red.steps, red.unimodular);
    if (red.tail_mismatch > 1e-6)
      sol.warnings.push_back("reduced targets after the unimodular step disagree by " +
                             std::to_string(red.tail_mismatch));
  } else {
    sol.steps_form = RationalSchurFunction::from_steps(red.steps, SchurParameter::constant_value(0.0, "h=0"));
    sol.function = sol.steps_form;
  }
  for (std::size_t i = 0; i < z.size(); ++i)
    sol.max_node_residual = std::max(sol.max_node_residual, std::abs((*sol.function)(z[i]) - w[i]));
  sol.boundary = certify_schur_class(*sol.function, opt.boundary_samples);
  return sol;
}

// ---------------------------------------------------------------------------
// Right half-plane

struct HalfPlaneSolution {
  DiscSolution disc;
  std::vector<cplx> disc_nodes;

  bool feasible() const { return disc.feasible; }
  /// phi(s) = f(C(s)), Re(s) > 0.
  cplx operator()(cplx s) const { return disc(cayley(s)); }
};

/// H^infinity_1(H_0) = { f o C : f in H^infinity_1(D) }.
inline HalfPlaneSolution solve_halfplane(const InterpolationProblem& p, const DiscSolverOptions& opt = {}) {
  if (p.nodes.size() != p.targets.size()) throw InputError("solve_halfplane: node and target counts differ");
  for (const auto& x : p.nodes) HalfPlanePoint(x, 0.0);
  HalfPlaneSolution hs;
  for (const auto& x : p.nodes) hs.disc_nodes.push_back(cayley(x));
  if (min_separation(hs.disc_nodes) < opt.min_node_separation)
    throw InputError("solve_halfplane: Cayley images of the nodes are closer than " +
                     sci(opt.min_node_separation));
  DiscSolverOptions o = opt;
  o.psd_tol = p.psd_tol;
  o.rank_tol = p.rank_tol;
  hs.disc = solve_disc(hs.disc_nodes, p.targets, o);
  return hs;
}

/// sup |phi| over a log-spaced grid of Re in [1e-3, 1e3] and |Im| <= 1e3.
template <class F>
double halfplane_grid_sup(const F& phi, int re_count = 25, int im_count = 40) {
  double sup = 0.0;
  for (int i = 0; i < re_count; ++i) {
    const double re = std::pow(10.0, -3.0 + 6.0 * i / (re_count - 1));
    for (int j = 0; j < im_count; ++j) {
      const double im = -1e3 + 2e3 * j / (im_count - 1);
      sup = std::max(sup, std::abs(phi(cplx(re, im))));
    }
  }
  return sup;
}

// ---------------------------------------------------------------------------
// All solutions

/// [[g11, g12], [g21, g22]] with phi_h = g11 + g12 g21 h (1 - g22 h)^{-1}.
/// Built from the chain Theta = Theta_1 ... Theta_n of J-unitary steps
/// Theta_k = (1 - |gamma_k|^2)^{-1/2} [[b_k, gamma_k], [conj(gamma_k) b_k, 1]]
/// as G = [[t12/t22, det/t22], [1/t22, -t21/t22]].
class ParametrizationMatrix {
 public:
  explicit ParametrizationMatrix(std::vector<SchurStep> steps) : steps_(std::move(steps)) {}

  Eigen::Matrix2cd theta(cplx z) const {
    Eigen::Matrix2cd T = Eigen::Matrix2cd::Identity();
    for (const auto& s : steps_) {
      const cplx b = blaschke_factor(s.node, z);
      const double c = 1.0 / std::sqrt(1.0 - std::norm(s.parameter));
      Eigen::Matrix2cd step;
      step << c * b, c * s.parameter, c * std::conj(s.parameter) * b, c;
      T = T * step;
    }
    return T;
  }

  Eigen::Matrix2cd at(cplx z) const {
    const Eigen::Matrix2cd T = theta(z);
    const cplx t22 = T(1, 1);
    Eigen::Matrix2cd G;
    G << T(0, 1) / t22, T.determinant() / t22, 1.0 / t22, -T(1, 0) / t22;
    return G;
  }

  cplx apply(cplx z, cplx h) const {
    const auto G = at(z);
    return G(0, 0) + G(0, 1) * G(1, 0) * h / (1.0 - G(1, 1) * h);
  }

  /// max over boundary samples of ||G* G - I||.
  double unitarity_defect(int samples = 512) const {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
      const auto G = at(std::polar(1.0, 2.0 * std::numbers::pi * k / samples));
      worst = std::max(worst, (G.adjoint() * G - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff());
    }
    return worst;
  }

  /// max_i |g12(z_i)|.
  double node_vanishing() const {
    double worst = 0.0;
    for (const auto& s : steps_) worst = std::max(worst, std::abs(at(s.node)(0, 1)));
    return worst;
  }

  const std::vector<SchurStep>& steps() const { return steps_; }

 private:
  std::vector<SchurStep> steps_;
};

struct ParametrizedSolution {
  RationalSchurFunction phi;
  ParametrizationMatrix G;
  SchurParameter h;
  double max_node_residual = 0.0;
  SchurClassCertificate boundary;

  cplx operator()(cplx z) const { return phi(z); }
  /// The same value through the matrix entries.
  cplx via_matrix(cplx z) const { return G.apply(z, h(z)); }
};

/// phi_h for a Schur-class h; requires a Pick matrix that is PSD with full rank.
inline ParametrizedSolution parametrize_solutions(const std::vector<cplx>& z, const std::vector<cplx>& w,
                                                  const SchurParameter& h, const DiscSolverOptions& opt = {}) {
  std::vector<std::string> warnings;
  detail::validate_disc_data(z, w, opt, warnings);
  const auto pick = certify_psd(detail::disc_pick(z, w), opt.psd_tol, opt.rank_tol);
  if (!pick.psd) throw PreconditionError("parametrize_solutions: Pick matrix is not PSD (no solution)");
  if (pick.numerical_rank < static_cast<int>(z.size()))
    throw InputError("parametrize_solutions: Pick matrix is rank deficient, the solution is unique; use solve_disc");
  auto red = detail::schur_reduce(z, w, opt);
  if (red.degenerate_at)
    throw InputError("parametrize_solutions: degenerate reduction, the solution is unique; use solve_disc");
  ParametrizedSolution ps{RationalSchurFunction::from_steps(red.steps, h), ParametrizationMatrix(red.steps), h};
  for (std::size_t i = 0; i < z.size(); ++i)
    ps.max_node_residual = std::max(ps.max_node_residual, std::abs(ps.phi(z[i]) - w[i]));
  ps.boundary = certify_schur_class(ps.phi, opt.boundary_samples);
  return ps;
}

/// h with T_Theta(h) = f: runs the Schur reductions on the values of f.
/// Undefined at the nodes themselves.
inline SchurParameter inverse_schur_parameter(const std::vector<SchurStep>& steps, SchurFunction f,
                                              std::string label) {
  return SchurParameter::function(
      [steps, f = std::move(f)](cplx z) {
        cplx g = f(z);
        for (const auto& s : steps)
          g = ((g - s.parameter) / (1.0 - std::conj(s.parameter) * g)) / blaschke_factor(s.node, z);
        return g;
      },
      std::move(label));
}

// ---------------------------------------------------------------------------
// Exploratory: distance of phi_h to Dirichlet polynomials

struct DirichletFitOptions {
  /// Samples lie on the line Re(s) = sigma0 > 1/2.
  double sigma0 = 0.75;
  double t_max = 30.0;
  int samples = 0;  // 0: max(64, 8 N)
};

struct DirichletFit {
  std::string label;
  double rms_residual = 0.0;
  double relative_residual = 0.0;
  std::vector<cplx> coeffs;
};

struct DirichletSearchReport {
  Theorem21Report conditions;
  std::size_t N = 0;
  DirichletFitOptions fit;
  /// Ascending by rms_residual. No membership claim is made.
  std::vector<DirichletFit> entries;
};

/// Least-squares fit of sum_{n<=N} c_n n^{-s} to f on the sampling line.
template <class F>
DirichletFit fit_dirichlet_polynomial(const F& f, std::size_t N, const DirichletFitOptions& fo) {
  if (N < 1) throw InputError("fit_dirichlet_polynomial: N must be >= 1");
  if (!(fo.sigma0 > 0.5)) throw DomainError("fit_dirichlet_polynomial: sigma0 must exceed 1/2");
  const int M = fo.samples > 0 ? fo.samples : std::max<int>(64, 8 * static_cast<int>(N));
  Eigen::MatrixXcd A(M, static_cast<Eigen::Index>(N));
  Eigen::VectorXcd y(M);
  for (int j = 0; j < M; ++j) {
    const cplx s(fo.sigma0, -fo.t_max + 2.0 * fo.t_max * j / (M - 1));
    y(j) = f(s);
    for (std::size_t n = 1; n <= N; ++n) A(j, Eigen::Index(n - 1)) = std::exp(-s * std::log(double(n)));
  }
  const Eigen::VectorXcd c = A.colPivHouseholderQr().solve(y);
  DirichletFit fit;
  const double r = (A * c - y).norm();
  fit.rms_residual = r / std::sqrt(double(M));
  fit.relative_residual = y.norm() > 0.0 ? r / y.norm() : r;
  fit.coeffs.assign(c.data(), c.data() + c.size());
  return fit;
}

inline DirichletSearchReport search_dirichlet_solution(const InterpolationProblem& p,
                                                       const std::vector<SchurParameter>& h_family,
                                                       std::size_t N, const DirichletFitOptions& fo = {},
                                                       const DiscSolverOptions& opt = {}) {
  DirichletSearchReport rep;
  rep.N = N;
  rep.fit = fo;
  for (const auto& x : p.nodes) HalfPlanePoint(x, 0.5);
  rep.conditions = theorem21_check(p);
  if (h_family.empty()) return rep;
  std::vector<cplx> z;
  for (const auto& x : p.nodes) z.push_back(cayley(x));
  DiscSolverOptions o = opt;
  o.psd_tol = p.psd_tol;
  o.rank_tol = p.rank_tol;
  for (const auto& h : h_family) {
    const auto ps = parametrize_solutions(z, p.targets, h, o);
    auto fit = fit_dirichlet_polynomial([&](cplx s) { return ps.phi(cayley(s)); }, N, fo);
    fit.label = h.label;
    rep.entries.push_back(std::move(fit));
  }
  std::stable_sort(rep.entries.begin(), rep.entries.end(),
                   [](const auto& a, const auto& b) { return a.rms_residual < b.rms_residual; });
  return rep;
}

}  // namespace pickzeta
