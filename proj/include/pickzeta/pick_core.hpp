#pragma once

// Pick matrices and their PSD/rank certificates, the Cayley transform, Schur
// products, the half-plane/disc transfer, and the concrete certificates for
// the failure of the 2-point Pick property of zeta(s + conj(u))^m.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pickzeta/dirichlet_arith.hpp"
#include "pickzeta/errors.hpp"
#include "pickzeta/kernels.hpp"

namespace pickzeta {

inline constexpr double kDefaultPsdTol = 1e-10;
inline constexpr double kDefaultRankTol = 1e-8;
/// Verdicts within this multiple of their tolerance are reported inconclusive.
inline constexpr double kBorderlineFactor = 10.0;

struct InterpolationProblem {
  std::vector<cplx> nodes;
  std::vector<cplx> targets;
  KernelSpec kernel = KernelSpec::szego_dirichlet(1);
  double psd_tol = kDefaultPsdTol;
  double rank_tol = kDefaultRankTol;

  std::size_t size() const { return nodes.size(); }

  /// Sizes, distinctness and node domain; with require_disc_targets, also
  /// |w_i| < 1.
  void validate(bool require_disc_targets = false) const {
    if (nodes.empty()) throw InputError("interpolation problem has no nodes");
    if (nodes.size() != targets.size())
      throw InputError("interpolation problem: " + std::to_string(nodes.size()) + " nodes but " +
                       std::to_string(targets.size()) + " targets");
    require_distinct(nodes);
    for (const auto& x : nodes) check_in_domain(kernel, x);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (!std::isfinite(targets[i].real()) || !std::isfinite(targets[i].imag()))
        throw InputError("target " + std::to_string(i) + " is not finite");
      if (require_disc_targets && !(std::abs(targets[i]) < 1.0))
        throw DomainError("target " + std::to_string(i) + " is not in the open unit disc");
    }
    if (!(psd_tol > 0.0) || !(rank_tol > 0.0)) throw InputError("tolerances must be positive");
  }

  friend bool operator==(const InterpolationProblem&, const InterpolationProblem&) = default;
};

/// M(i, j) = (1 - w_i conj(w_j)) k(lambda_i, lambda_j).
inline Eigen::MatrixXcd pick_matrix(const InterpolationProblem& p, const KernelOptions& opt = {}) {
  p.validate();
  Eigen::MatrixXcd M = gram_matrix(p.kernel, p.nodes, opt);
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j)
      M(i, j) *= 1.0 - p.targets[std::size_t(i)] * std::conj(p.targets[std::size_t(j)]);
  for (Eigen::Index i = 0; i < M.rows(); ++i) M(i, i).imag(0.0);
  return M;
}

// ---------------------------------------------------------------------------
// PSD certificates

struct PickCertificate {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXd eigenvalues;  // ascending
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double spectral_norm = 0.0;
  int numerical_rank = 0;
  bool psd = false;
  /// Unit eigenvector of the minimum eigenvalue.
  Eigen::VectorXcd witness;
  /// min_eigenvalue / max(1, spectral_norm): the quantity the verdict compares
  /// against -psd_tol.
  double decision_value = 0.0;
  /// |decision_value| within kBorderlineFactor * psd_tol.
  bool inconclusive = false;
  /// Minimum eigenvalue of diag^{-1/2} M diag^{-1/2} when the diagonal is
  /// positive (NaN otherwise); a scale-free margin for the PSD verdict.
  double scaled_min_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  double psd_tol = kDefaultPsdTol;
  double rank_tol = kDefaultRankTol;

  double witness_quadratic_form() const {
    return (witness.adjoint() * matrix * witness)(0, 0).real();
  }
};

/// Eigen-decomposition based PSD verdict: psd iff
/// lambda_min >= -psd_tol * max(1, ||M||); rank counts |lambda| above
/// rank_tol * max |lambda|.
inline PickCertificate certify_psd(const Eigen::MatrixXcd& M, double psd_tol = kDefaultPsdTol,
                                   double rank_tol = kDefaultRankTol) {
  if (M.rows() != M.cols()) throw InputError("certify_psd: matrix is not square");
  if (M.rows() == 0) throw InputError("certify_psd: empty matrix");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  const double asym = (M - M.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-12 * scale)) {
    std::ostringstream os;
    os << "certify_psd: matrix is not Hermitian (max |M - M*| = " << asym << ")";
    throw InputError(os.str());
  }
  PickCertificate c;
  c.matrix = M;
  c.psd_tol = psd_tol;
  c.rank_tol = rank_tol;
  const Eigen::MatrixXcd H = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  if (es.info() != Eigen::Success) throw CertificateError("certify_psd: eigensolver failed");
  c.eigenvalues = es.eigenvalues();
  c.min_eigenvalue = c.eigenvalues(0);
  c.max_eigenvalue = c.eigenvalues(c.eigenvalues.size() - 1);
  c.spectral_norm = c.eigenvalues.cwiseAbs().maxCoeff();
  c.witness = es.eigenvectors().col(0);
  c.decision_value = c.min_eigenvalue / std::max(1.0, c.spectral_norm);
  c.psd = c.decision_value >= -psd_tol;
  c.inconclusive = std::abs(c.decision_value) <= kBorderlineFactor * psd_tol;
  for (Eigen::Index i = 0; i < c.eigenvalues.size(); ++i)
    if (std::abs(c.eigenvalues(i)) > rank_tol * c.spectral_norm) ++c.numerical_rank;

  const Eigen::VectorXd diag = H.diagonal().real();
  if ((diag.array() > 0.0).all()) {
    const Eigen::VectorXd d = diag.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXcd S = d.asDiagonal() * H * d.asDiagonal();
    c.scaled_min_eigenvalue = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(S, Eigen::EigenvaluesOnly)
                                  .eigenvalues()(0);
  }
  return c;
}

/// True when some eigenvalue sits within kBorderlineFactor of the rank
/// threshold, so that the numerical rank is not robust.
inline bool rank_is_borderline(const PickCertificate& c) {
  const double thr = c.rank_tol * c.spectral_norm;
  for (Eigen::Index i = 0; i < c.eigenvalues.size(); ++i) {
    const double a = std::abs(c.eigenvalues(i));
    if (a > thr / kBorderlineFactor && a < thr * kBorderlineFactor) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Cayley transform and Schur products

/// C(z) = (z - 1)/(z + 1), H_0 -> D.
inline cplx cayley(cplx z) {
  if (!(z.real() > 0.0)) throw DomainError("cayley: Re(z) must be > 0");
  return (z - 1.0) / (z + 1.0);
}

inline cplx cayley(const HalfPlanePoint& z) { return cayley(z.value()); }

/// C^{-1}(w) = (1 + w)/(1 - w), D -> H_0.
inline cplx inverse_cayley(cplx w) {
  if (!(std::abs(w) < 1.0)) throw DomainError("inverse_cayley: |w| must be < 1");
  return (1.0 + w) / (1.0 - w);
}

inline Eigen::MatrixXcd schur_product(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw InputError("schur_product: dimension mismatch");
  return A.cwiseProduct(B);
}

// ---------------------------------------------------------------------------
// Half-plane <-> disc transfer

struct TransferReport {
  Eigen::MatrixXcd P;  // half-plane Pick matrix
  Eigen::MatrixXcd Q;  // disc Pick matrix at the Cayley images
  Eigen::MatrixXcd R;  // (lambda_i + 1)(conj(lambda_j) + 1)/2
  PickCertificate cert_P;
  PickCertificate cert_Q;
  int rank_R = 0;
  double schur_residual = 0.0;  // max |Q - P o R|
  bool psd_agree = false;
  bool rank_agree = false;
  /// Either verdict or either rank sits near its tolerance.
  bool borderline = false;
};

inline TransferReport lemma22_transfer(const InterpolationProblem& p) {
  if (p.kernel.kind() != KernelKind::SzegoHalfPlane)
    throw InputError("lemma22_transfer: kernel must be szego_half_plane");
  p.validate();
  TransferReport r;
  r.P = pick_matrix(p);
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::VectorXcd lift(n);
  std::vector<cplx> z(p.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    lift(i) = p.nodes[std::size_t(i)] + 1.0;
    z[std::size_t(i)] = cayley(p.nodes[std::size_t(i)]);
  }
  r.R = 0.5 * lift * lift.adjoint();
  InterpolationProblem disc{z, p.targets, KernelSpec::szego_disc(), p.psd_tol, p.rank_tol};
  r.Q = pick_matrix(disc);
  r.schur_residual = (r.Q - schur_product(r.P, r.R)).cwiseAbs().maxCoeff();
  r.cert_P = certify_psd(r.P, p.psd_tol, p.rank_tol);
  r.cert_Q = certify_psd(r.Q, p.psd_tol, p.rank_tol);
  r.rank_R = certify_psd(r.R, p.psd_tol, p.rank_tol).numerical_rank;
  r.psd_agree = r.cert_P.psd == r.cert_Q.psd;
  r.rank_agree = r.cert_P.numerical_rank == r.cert_Q.numerical_rank;
  r.borderline = r.cert_P.inconclusive || r.cert_Q.inconclusive || rank_is_borderline(r.cert_P) ||
                 rank_is_borderline(r.cert_Q);
  return r;
}

// ---------------------------------------------------------------------------
// Failure of the 2-point Pick property for zeta^m

struct Theorem12Report {
  int m = 1;
  cplx w2;
  double window_low = 1.0 / 3.0;
  double window_high = 0.0;
  /// [(1 - w_i conj w_j) zeta^m(lambda_i + conj lambda_j)] at lambda = (1, 2), w1 = 0.
  PickCertificate zeta_side;
  /// [(1 - w_i conj w_j)/(lambda_i + conj lambda_j)]
  PickCertificate szego_side;
  double zeta_det = 0.0;
  double szego_det = 0.0;
  /// zeta(3)^{2m} ((zeta(2) zeta(4)/zeta(3)^2)(1 - |w2|^2) - 1)
  double det_lower_bound = 0.0;
  bool zeta_side_psd = false;   // diagonal > 0 and det > 0, agreeing with certify_psd
  bool szego_side_not_psd = false;
  bool holds = false;
  bool inconclusive = false;
};

/// The w2 window (1/3, sqrt(1 - zeta(3)^2/(zeta(2) zeta(4)))).
inline std::pair<double, double> theorem12_window(const ZetaOptions& zo = {}) {
  const double z2 = zeta(2.0, zo), z3 = zeta(3.0, zo), z4 = zeta(4.0, zo);
  return {1.0 / 3.0, std::sqrt(1.0 - z3 * z3 / (z2 * z4))};
}

inline Theorem12Report theorem12_certificate(int m, cplx w2, double psd_tol = kDefaultPsdTol,
                                             double rank_tol = kDefaultRankTol,
                                             const ZetaOptions& zo = {}) {
  if (m < 1) throw InputError("theorem12_certificate: m must be >= 1");
  Theorem12Report r;
  r.m = m;
  r.w2 = w2;
  std::tie(r.window_low, r.window_high) = theorem12_window(zo);
  const double a = std::abs(w2);
  if (!(a > r.window_low && a < r.window_high)) {
    std::ostringstream os;
    os.precision(6);
    os << "|w2| = " << a << " is outside the window (1/3, " << r.window_high
       << ") = (" << r.window_low << ", " << r.window_high << ")";
    throw PreconditionError(os.str());
  }
  const std::vector<cplx> nodes{1.0, 2.0};
  const std::vector<cplx> targets{0.0, w2};
  KernelOptions ko;
  ko.zeta = zo;
  InterpolationProblem zp{nodes, targets, KernelSpec::szego_dirichlet(m), psd_tol, rank_tol};
  InterpolationProblem hp{nodes, targets, KernelSpec::szego_half_plane(), psd_tol, rank_tol};
  const Eigen::MatrixXcd Z = pick_matrix(zp, ko);
  const Eigen::MatrixXcd H = pick_matrix(hp, ko);
  r.zeta_side = certify_psd(Z, psd_tol, rank_tol);
  r.szego_side = certify_psd(H, psd_tol, rank_tol);
  r.zeta_det = Z.determinant().real();
  r.szego_det = H.determinant().real();
  const double z2 = zeta(2.0, zo), z3 = zeta(3.0, zo), z4 = zeta(4.0, zo);
  r.det_lower_bound = std::pow(z3, 2 * m) * ((z2 * z4 / (z3 * z3)) * (1.0 - a * a) - 1.0);
  const bool diag_pos = Z(0, 0).real() > 0.0 && Z(1, 1).real() > 0.0;
  r.zeta_side_psd = diag_pos && r.zeta_det > 0.0 && r.zeta_side.psd;
  r.szego_side_not_psd = r.szego_det < 0.0 && !r.szego_side.psd;
  r.holds = r.zeta_side_psd && r.szego_side_not_psd;
  r.inconclusive = r.zeta_side.inconclusive || r.szego_side.inconclusive;
  return r;
}

// ---------------------------------------------------------------------------
// Grid search for two-point witnesses

struct SearchGrid {
  std::vector<cplx> nodes{0.6, 0.8, 1.0, 1.5, 2.0, 3.0};
  std::vector<cplx> w1_values{0.0};
  std::vector<double> w2_moduli = [] {
    std::vector<double> v;
    for (int k = 1; k <= 19; ++k) v.push_back(0.05 * k);
    return v;
  }();
  std::vector<double> w2_phases{0.0, std::numbers::pi / 2.0, std::numbers::pi};
};

struct TwoPointWitness {
  cplx lambda1, lambda2, w1, w2;
  double kernel_side_decision = 0.0;  // >= 10 psd_tol
  double szego_side_decision = 0.0;   // <= -10 psd_tol

  auto key() const {
    return std::make_tuple(lambda1.real(), lambda1.imag(), lambda2.real(), lambda2.imag(),
                           w1.real(), w1.imag(), w2.real(), w2.imag());
  }
};

/// All grid points where the kernel's 2x2 Pick matrix is PSD and the
/// half-plane Szego Pick matrix is not, both with margin >= 10 psd_tol.
/// Sorted lexicographically.
inline std::vector<TwoPointWitness> counterexample_search(const KernelSpec& kernel,
                                                          const SearchGrid& grid = {},
                                                          double psd_tol = kDefaultPsdTol,
                                                          const KernelOptions& ko = {}) {
  if (kernel.on_disc()) throw InputError("counterexample_search: kernel must live on a half-plane");
  std::vector<TwoPointWitness> out;
  const double margin = kBorderlineFactor * psd_tol;
  for (const auto& l1 : grid.nodes)
    for (const auto& l2 : grid.nodes) {
      if (std::abs(l1 - l2) <= 1e-12) continue;
      for (const auto& w1 : grid.w1_values)
        for (double rho : grid.w2_moduli)
          for (double th : grid.w2_phases) {
            const cplx w2 = std::polar(rho, th);
            if (!(std::abs(w1) < 1.0) || !(rho < 1.0)) continue;
            InterpolationProblem kp{{l1, l2}, {w1, w2}, kernel, psd_tol, kDefaultRankTol};
            InterpolationProblem hp{{l1, l2}, {w1, w2}, KernelSpec::szego_half_plane(), psd_tol,
                                    kDefaultRankTol};
            const auto kc = certify_psd(pick_matrix(kp, ko), psd_tol);
            if (kc.decision_value < margin) continue;
            const auto hc = certify_psd(pick_matrix(hp, ko), psd_tol);
            if (hc.decision_value > -margin) continue;
            out.push_back({l1, l2, w1, w2, kc.decision_value, hc.decision_value});
          }
    }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
  return out;
}

// ---------------------------------------------------------------------------
// Necessary conditions for a contractive Dirichlet-series interpolant

struct Theorem21Report {
  /// [(1 - w_i conj w_j) zeta(lambda_i + conj lambda_j)]
  PickCertificate cond_i;
  /// [(1 - w_i conj w_j)/(lambda_i + conj lambda_j)]
  PickCertificate cond_ii;
  bool rank_full = false;
  /// cond_i.psd && cond_ii.psd && rank_full. Necessary, not sufficient.
  bool necessary_conditions_hold = false;
};

inline Theorem21Report theorem21_check(const InterpolationProblem& p, const KernelOptions& ko = {}) {
  InterpolationProblem zp = p;
  zp.kernel = KernelSpec::szego_dirichlet(1);
  zp.validate(true);
  InterpolationProblem hp = p;
  hp.kernel = KernelSpec::szego_half_plane();
  Theorem21Report r;
  r.cond_i = certify_psd(pick_matrix(zp, ko), p.psd_tol, p.rank_tol);
  r.cond_ii = certify_psd(pick_matrix(hp, ko), p.psd_tol, p.rank_tol);
  r.rank_full = r.cond_ii.numerical_rank == static_cast<int>(p.size());
  r.necessary_conditions_hold = r.cond_i.psd && r.cond_ii.psd && r.rank_full;
  return r;
}

}  // namespace pickzeta
