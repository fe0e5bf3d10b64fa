#pragma once

// Finite-truncation network realization of contractive Dirichlet-series
// multipliers of the Hardy space of Dirichlet series.
//
// Coordinates: H^2 and H_mu are modelled on C^N with orthonormal basis m^{-s},
// m = 1..N (H_mu coordinates carry the weight sqrt(1 + mu(m))). The
// reproducing vector varkappa_{conj(s)} has coordinates m^{-s}, and
// kappa_{mu, conj(s)} has coordinates sqrt(1 + mu(m)) m^{-s}. Tensor products
// with K = C^r are stored with index m * r + l.
//
// D is the lower-right block of a rank <= k partial isometry and is held in
// factored form D = L R^*; solves against T (x) I - D use the Woodbury identity
// with a k x k capacitance factorization.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "pickzeta/dirichlet_arith.hpp"
#include "pickzeta/errors.hpp"
#include "pickzeta/kernels.hpp"
#include "pickzeta/pick_core.hpp"

namespace pickzeta {

/// phi(s) = sum_n c_n n^{-s} with sum |c_n| <= 1, which certifies
/// sup_{H_0} |phi| <= 1.
class TestMultiplier {
 public:
  explicit TestMultiplier(CoefficientSeries<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.truncation() == 0) throw InputError("test multiplier needs at least one coefficient");
    declared_norm_ = 0.0;
    for (const auto& c : coeffs_.coeffs()) declared_norm_ += std::abs(c);
    if (!(declared_norm_ <= 1.0 + 1e-15))
      throw CertificateError("test multiplier: sum |c_n| = " + sci(declared_norm_) +
                             " > 1, no norm certificate");
  }

  /// c * n^{-s}
  static TestMultiplier monomial(cplx c, std::size_t n) {
    std::vector<cplx> v(n, 0.0);
    v[n - 1] = c;
    return TestMultiplier(CoefficientSeries<cplx>(std::move(v), "phi"));
  }

  cplx operator()(cplx s) const { return coeffs_.evaluate(s); }
  double declared_norm() const { return declared_norm_; }
  const CoefficientSeries<cplx>& coeffs() const { return coeffs_; }

 private:
  CoefficientSeries<cplx> coeffs_;
  double declared_norm_ = 0.0;
};

/// G(i, j) = (1 - phi(s_i) conj(phi(s_j))) zeta(s_i + conj(s_j)).
template <class Phi>
Eigen::MatrixXcd kappa_phi_gram(const Phi& phi, const std::vector<cplx>& points,
                                double psd_tol = kDefaultPsdTol, const KernelOptions& ko = {}) {
  Eigen::MatrixXcd G = gram_matrix(KernelSpec::szego_dirichlet(1), points, ko);
  std::vector<cplx> v;
  for (const auto& s : points) v.push_back(phi(s));
  for (Eigen::Index i = 0; i < G.rows(); ++i)
    for (Eigen::Index j = 0; j < G.cols(); ++j) G(i, j) *= 1.0 - v[std::size_t(i)] * std::conj(v[std::size_t(j)]);
  for (Eigen::Index i = 0; i < G.rows(); ++i) G(i, i).imag(0.0);
  const auto cert = certify_psd(G, psd_tol);
  if (!cert.psd)
    throw CertificateError("kappa_phi Gram is not PSD (min eigenvalue " + sci(cert.min_eigenvalue) +
                           "); phi is likely not a contractive multiplier");
  return G;
}

struct PsiFactor {
  /// Row i is psi(s_i) in C^r.
  Eigen::MatrixXcd psi;
  int rank = 0;
  double reconstruction_error = 0.0;  // max |G - Psi Psi^*|
};

/// G = Psi Psi^* from the eigenpairs above tol * lambda_max.
inline PsiFactor factor_psi(const Eigen::MatrixXcd& G, double tol) {
  const auto cert = certify_psd(G, tol);
  if (!cert.psd) throw CertificateError("factor_psi: matrix is not PSD within tolerance");
  PsiFactor f;
  const Eigen::Index k = G.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (G + G.adjoint()));
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double top = std::max(0.0, ev(k - 1));
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = k - 1; i >= 0; --i)
    if (top > 0.0 && ev(i) > tol * top) keep.push_back(i);
  f.rank = static_cast<int>(keep.size());
  f.psi.resize(k, f.rank);
  for (int l = 0; l < f.rank; ++l) f.psi.col(l) = es.eigenvectors().col(keep[std::size_t(l)]) * std::sqrt(ev(keep[std::size_t(l)]));
  f.reconstruction_error = (G - f.psi * f.psi.adjoint()).cwiseAbs().maxCoeff();
  return f;
}

/// L R^*
struct LowRankMap {
  Eigen::MatrixXcd left;
  Eigen::MatrixXcd right;

  Eigen::Index rows() const { return left.rows(); }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const { return left * (right.adjoint() * x); }

  double norm() const {
    if (left.cols() == 0 || left.rows() == 0) return 0.0;
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(right);
    const Eigen::Index k = std::min(right.rows(), right.cols());
    const Eigen::MatrixXcd S = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXcd LS = left * S.adjoint();
    const Eigen::MatrixXcd small = LS.adjoint() * LS;
    const double top = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(small, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff();
    return std::sqrt(std::max(0.0, top));
  }
};

/// Coefficient tables shared by every feature vector of one truncation.
class FeatureSpace {
 public:
  explicit FeatureSpace(std::size_t N) : N_(N), logm_(N), mu_weight_(N) {
    if (N < 1) throw InputError("feature truncation must be >= 1");
    const auto mu = mobius_sequence(N);
    for (std::size_t m = 1; m <= N; ++m) {
      logm_[m - 1] = std::log(double(m));
      mu_weight_[m - 1] = std::sqrt(1.0 + mu[m]);
    }
  }

  std::size_t N() const { return N_; }

  /// varkappa_{conj(s)}: coordinates m^{-s}.
  Eigen::VectorXcd zeta_features(cplx s) const {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(N_));
    for (std::size_t m = 0; m < N_; ++m) v(Eigen::Index(m)) = std::exp(-s * logm_[m]);
    return v;
  }

  /// kappa_{mu, conj(s)}: coordinates sqrt(1 + mu(m)) m^{-s}.
  Eigen::VectorXcd mu_features(cplx s) const {
    Eigen::VectorXcd v = zeta_features(s);
    for (std::size_t m = 0; m < N_; ++m) v(Eigen::Index(m)) *= mu_weight_[m];
    return v;
  }

 private:
  std::size_t N_;
  std::vector<double> logm_;
  std::vector<double> mu_weight_;
};

/// f (x) psi with index m * r + l.
inline Eigen::VectorXcd tensor(const Eigen::VectorXcd& f, const Eigen::VectorXcd& psi) {
  const Eigen::Index r = psi.size();
  Eigen::VectorXcd out(f.size() * r);
  for (Eigen::Index m = 0; m < f.size(); ++m) out.segment(m * r, r) = f(m) * psi;
  return out;
}

// ---------------------------------------------------------------------------
// T_lambda

/// T_lambda = V_lambda (+) alpha U_lambda on C^N, sending u = varkappa_lambda to
/// v = kappa_{mu, lambda}. With Householder reflections H_u, H_v that send the
/// unit vectors of u and v to multiples of e_1,
///   T = H_v diag(sigma_1, alpha, ..., alpha) H_u,
/// so U_lambda maps the complement of u onto the complement of v.
class TLambdaModel {
 public:
  TLambdaModel(cplx lambda, cplx alpha, const FeatureSpace& fs, const ZetaOptions& zo = {})
      : lambda_(lambda), alpha_(alpha) {
    HalfPlanePoint(lambda, 0.5);
    if (!(std::abs(alpha) > 1.0)) throw DomainError("T_lambda: |alpha| must exceed 1");
    // varkappa_lambda has coordinates m^{-conj(lambda)}.
    u_ = fs.zeta_features(std::conj(lambda));
    v_ = fs.mu_features(std::conj(lambda));
    const double nu = u_.norm(), nv = v_.norm();
    cplx pu, pv;
    wu_ = householder(u_ / nu, pu);
    wv_ = householder(v_ / nv, pv);
    sigma1_ = (nv / nu) * pv / pu;
    v_inverse_norm_ = nu / nv;

    const double z = zeta(2.0 * lambda.real(), zo);
    epsilon_tilde_ = std::sqrt((z * z + 0.5) / (z * z + 1.0));
    exact_v_inverse_norm_ = std::sqrt(z / (z + 1.0 / z));
    remark_holds_ = z < z + 1.0 / z;
  }

  cplx lambda() const { return lambda_; }
  cplx alpha() const { return alpha_; }
  std::size_t N() const { return std::size_t(u_.size()); }
  const Eigen::VectorXcd& source() const { return u_; }
  const Eigen::VectorXcd& target() const { return v_; }

  /// T X, columns of X in C^N.
  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& X) const {
    Eigen::MatrixXcd Y = reflect(wu_, X);
    Y.row(0) *= sigma1_;
    Y.bottomRows(Y.rows() - 1) *= alpha_;
    return reflect(wv_, Y);
  }

  Eigen::MatrixXcd apply_inverse(const Eigen::MatrixXcd& X) const {
    Eigen::MatrixXcd Y = reflect(wv_, X);
    Y.row(0) /= sigma1_;
    Y.bottomRows(Y.rows() - 1) /= alpha_;
    return reflect(wu_, Y);
  }

  /// (T (x) I) x for x in C^{N r} with index m * r + l.
  Eigen::VectorXcd apply_tensor_inverse(const Eigen::VectorXcd& x, Eigen::Index r) const {
    using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> X(x.data(), u_.size(), r);
    RowMat Y = apply_inverse(Eigen::MatrixXcd(X));
    return Eigen::Map<const Eigen::VectorXcd>(Y.data(), Y.size());
  }

  Eigen::VectorXcd apply_tensor(const Eigen::VectorXcd& x, Eigen::Index r) const {
    using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> X(x.data(), u_.size(), r);
    RowMat Y = apply(Eigen::MatrixXcd(X));
    return Eigen::Map<const Eigen::VectorXcd>(Y.data(), Y.size());
  }

  /// Dense N x N matrix; intended for small N.
  Eigen::MatrixXcd dense() const { return apply(Eigen::MatrixXcd::Identity(u_.size(), u_.size())); }

  /// ||V_lambda^{-1}|| = ||u|| / ||v|| at this truncation.
  double v_inverse_norm() const { return v_inverse_norm_; }
  /// ||T^{-1}|| = max(||V_lambda^{-1}||, 1/|alpha|).
  double inverse_norm() const { return std::max(v_inverse_norm_, 1.0 / std::abs(alpha_)); }
  /// sqrt((zeta(2 sigma)^2 + 1/2)/(zeta(2 sigma)^2 + 1))
  double epsilon_tilde() const { return epsilon_tilde_; }
  /// sqrt(zeta(2 sigma)/(zeta(2 sigma) + 1/zeta(2 sigma))), the untruncated norm ratio.
  double exact_v_inverse_norm() const { return exact_v_inverse_norm_; }
  /// zeta(2 sigma) < zeta(2 sigma) + 1/zeta(2 sigma)
  bool remark_holds() const { return remark_holds_; }
  /// Certified bound on ||T^{-1}||.
  double inverse_norm_bound() const { return std::max(epsilon_tilde_, 1.0 / std::abs(alpha_)); }
  /// ||T u - v|| / ||v||
  double defining_residual() const { return (apply(u_) - v_).norm() / v_.norm(); }

 private:
  // w with (I - 2 w w^* / |w|^2) x = phase * e_1, for unit x.
  static Eigen::VectorXcd householder(const Eigen::VectorXcd& x, cplx& phase) {
    const cplx x0 = x(0);
    const cplx e = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cplx(1.0, 0.0);
    Eigen::VectorXcd w = x;
    w(0) += e;
    phase = -e;
    return w;
  }

  static Eigen::MatrixXcd reflect(const Eigen::VectorXcd& w, const Eigen::MatrixXcd& X) {
    return X - (2.0 / w.squaredNorm()) * w * (w.adjoint() * X);
  }

  cplx lambda_, alpha_;
  Eigen::VectorXcd u_, v_, wu_, wv_;
  cplx sigma1_;
  double v_inverse_norm_ = 0.0;
  double epsilon_tilde_ = 0.0;
  double exact_v_inverse_norm_ = 0.0;
  bool remark_holds_ = false;
};

// ---------------------------------------------------------------------------
// Realization model

struct RealizationDiagnostics {
  /// max |<x_i, x_j> - <y_i, y_j>|
  double gram_identity_residual = 0.0;
  /// Bound on the part of the Gram residual caused by truncating the features.
  double tail_bound = 0.0;
  /// max |<V x_i, V x_j> - <x_i, x_j>| / (|x_i| |x_j|)
  double isometry_defect = 0.0;
  /// Largest singular value of the assembled block matrix.
  double contraction_norm = 0.0;
  /// max ||D(varkappa (x) psi) - (kappa_mu (x) psi - gamma)|| / max(1, ||kappa_mu (x) psi||)
  double d_contraction_residual = 0.0;
  /// max |a + <varkappa (x) psi, beta> - phi(s_i)|
  double sample_reconstruction = 0.0;
  int span_rank = 0;
  /// Frobenius distance moved when projecting onto isometries of the span.
  double polar_correction = 0.0;
};

struct RealizationModel {
  cplx a{0.0, 0.0};
  Eigen::VectorXcd beta;   // in H^2 (x) K
  Eigen::VectorXcd gamma;  // in H_mu (x) K
  LowRankMap D;
  Eigen::MatrixXcd psi;    // row i = psi(s_i)
  std::vector<cplx> sample_points;
  std::vector<cplx> phi_values;
  std::size_t N = 0;
  int r = 0;
  cplx alpha{2.0, 0.0};
  RealizationDiagnostics diagnostics;

  Eigen::Index dim() const { return Eigen::Index(N) * r; }

  RealizationModel with_scaled_D(double factor) const {
    RealizationModel m = *this;
    m.D.left *= factor;
    return m;
  }

  /// V [1; x] for x in H^2 (x) K.
  std::pair<cplx, Eigen::VectorXcd> apply(cplx head, const Eigen::VectorXcd& x) const {
    return {a * head + beta.dot(x), gamma * head + D.apply(x)};
  }

  /// sigma_max of [[a, beta^*], [gamma, D]], through the factorization
  /// B C^* with B = [e0, 0 (+) gamma, 0 (+) L], C = [conj(a) e0 + 0 (+) beta, e0, 0 (+) R].
  double contraction_norm() const {
    const Eigen::Index n = dim(), k = D.left.cols();
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(n + 1, k + 2), C = Eigen::MatrixXcd::Zero(n + 1, k + 2);
    B(0, 0) = 1.0;
    C(0, 0) = std::conj(a);
    C(0, 1) = 1.0;
    if (n > 0) {
      C.col(0).tail(n) = beta;
      B.col(1).tail(n) = gamma;
      B.block(1, 2, n, k) = D.left;
      C.block(1, 2, n, k) = D.right;
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qb(B), qc(C);
    const Eigen::Index kb = std::min(B.rows(), B.cols());
    const Eigen::MatrixXcd RB = qb.matrixQR().topRows(kb).triangularView<Eigen::Upper>();
    const Eigen::MatrixXcd RC = qc.matrixQR().topRows(kb).triangularView<Eigen::Upper>();
    const Eigen::MatrixXcd core = RB * RC.adjoint();
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(core).singularValues()(0);
  }
};

struct RealizationOptions {
  /// Largest admissible Gram-identity residual.
  double tol = 1e-6;
  /// Eigenvalue cutoff (relative) for the factorization of the kappa_phi Gram.
  double factor_tol = 1e-12;
  /// Column-pivoted QR drop tolerance for the span of the lifted vectors.
  double span_drop_tol = 1e-12;
  double psd_tol = kDefaultPsdTol;
  cplx alpha{2.0, 0.0};
  ZetaOptions zeta{};
};

namespace detail {

inline void lifted_vectors(const FeatureSpace& fs, const std::vector<cplx>& pts, const std::vector<cplx>& phi,
                           const Eigen::MatrixXcd& psi, Eigen::MatrixXcd& X, Eigen::MatrixXcd& Y) {
  const Eigen::Index r = psi.cols(), k = Eigen::Index(pts.size());
  const Eigen::Index n = Eigen::Index(fs.N()) * r;
  X.resize(n + 1, k);
  Y.resize(n + 1, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    X(0, i) = 1.0;
    Y(0, i) = phi[std::size_t(i)];
    if (r == 0) continue;
    const Eigen::VectorXcd p = psi.row(i).transpose();
    X.col(i).tail(n) = tensor(fs.zeta_features(pts[std::size_t(i)]), p);
    Y.col(i).tail(n) = tensor(fs.mu_features(pts[std::size_t(i)]), p);
  }
}

inline RealizationDiagnostics diagnose(const RealizationModel& m, const Eigen::MatrixXcd& X,
                                       const Eigen::MatrixXcd& Y) {
  RealizationDiagnostics d;
  const Eigen::Index k = X.cols(), n = m.dim();
  d.gram_identity_residual = (X.adjoint() * X - Y.adjoint() * Y).cwiseAbs().maxCoeff();
  Eigen::MatrixXcd VX(n + 1, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::VectorXcd x = X.col(i).tail(n);
    auto [head, tail] = m.apply(X(0, i), x);
    VX(0, i) = head;
    VX.col(i).tail(n) = tail;
    d.sample_reconstruction = std::max(d.sample_reconstruction, std::abs(head - m.phi_values[std::size_t(i)]));
    const Eigen::VectorXcd target = Y.col(i).tail(n);
    const Eigen::VectorXcd dres = m.D.apply(x) - (target - m.gamma);
    d.d_contraction_residual = std::max(d.d_contraction_residual, dres.norm() / std::max(1.0, target.norm()));
  }
  const Eigen::MatrixXcd GX = X.adjoint() * X, GV = VX.adjoint() * VX;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      d.isometry_defect = std::max(d.isometry_defect, std::abs(GV(i, j) - GX(i, j)) /
                                                          std::sqrt(GX(i, i).real() * GX(j, j).real()));
  d.contraction_norm = m.contraction_norm();
  return d;
}

}  // namespace detail

/// Lurking-isometry construction at finitely many sample points: V sends
/// x_i = 1 (+) varkappa_{conj s_i} (x) psi(s_i) to
/// y_i = phi(s_i) (+) kappa_{mu, conj s_i} (x) psi(s_i) and is zero on the
/// orthogonal complement of span{x_i}.
template <class Phi>
RealizationModel build_lurking_isometry(const Phi& phi, const std::vector<cplx>& points, std::size_t N,
                                        const RealizationOptions& opt = {}) {
  if (points.empty()) throw InputError("build_lurking_isometry: no sample points");
  for (const auto& s : points) HalfPlanePoint(s, 0.5);
  KernelOptions ko;
  ko.zeta = opt.zeta;
  const Eigen::MatrixXcd G = kappa_phi_gram(phi, points, opt.psd_tol, ko);
  const PsiFactor pf = factor_psi(G, opt.factor_tol);

  RealizationModel m;
  m.sample_points = points;
  for (const auto& s : points) m.phi_values.push_back(phi(s));
  m.psi = pf.psi;
  m.r = pf.rank;
  m.N = N;
  m.alpha = opt.alpha;

  const FeatureSpace fs(N);
  Eigen::MatrixXcd X, Y;
  detail::lifted_vectors(fs, points, m.phi_values, m.psi, X, Y);
  const double gram_res = (X.adjoint() * X - Y.adjoint() * Y).cwiseAbs().maxCoeff();
  if (gram_res > opt.tol)
    throw AccuracyError("build_lurking_isometry: Gram-identity residual " + sci(gram_res) + " exceeds " +
                        sci(opt.tol) + " at N = " + std::to_string(N) + "; increase the truncation (try N = " +
                        std::to_string(N * 10) + ")");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(X);
  qr.setThreshold(opt.span_drop_tol);
  const Eigen::Index rho = qr.rank();
  const Eigen::Index n = m.dim();
  const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n + 1, rho);
  const Eigen::MatrixXcd R11 = qr.matrixR().topLeftCorner(rho, rho).triangularView<Eigen::Upper>();
  Eigen::MatrixXcd Yp(n + 1, rho);
  for (Eigen::Index j = 0; j < rho; ++j) Yp.col(j) = Y.col(qr.colsPermutation().indices()(j));
  // V Q = Y_p R11^{-1}
  const Eigen::MatrixXcd W0 = R11.triangularView<Eigen::Upper>().solve<Eigen::OnTheRight>(Yp);
  // Truncation leaves W0 only nearly isometric; replace it by its polar factor
  // so that V is an exact partial isometry.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(W0.adjoint() * W0);
  if (!(es.eigenvalues().minCoeff() > 0.0))
    throw CertificateError("build_lurking_isometry: image of the sample span is degenerate");
  const Eigen::MatrixXcd inv_sqrt = es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                    es.eigenvectors().adjoint();
  const Eigen::MatrixXcd W = W0 * inv_sqrt;

  m.a = (W.row(0) * Q.row(0).adjoint())(0, 0);
  m.beta = Q.bottomRows(n) * W.row(0).adjoint();
  m.gamma = W.bottomRows(n) * Q.row(0).adjoint();
  m.D = LowRankMap{W.bottomRows(n), Q.bottomRows(n)};

  m.diagnostics = detail::diagnose(m, X, Y);
  m.diagnostics.span_rank = static_cast<int>(rho);
  m.diagnostics.polar_correction = (W - W0).norm();
  double sigma_min = points.front().real();
  for (const auto& s : points) sigma_min = std::min(sigma_min, s.real());
  const double gmax = G.cwiseAbs().maxCoeff();
  m.diagnostics.tail_bound =
      gmax * (feature_tail_bound(KernelSpec::szego_dirichlet(1), sigma_min, sigma_min, N, opt.zeta) +
              feature_tail_bound(KernelSpec::kappa_mu(), sigma_min, sigma_min, N, opt.zeta));
  if (rho < Eigen::Index(points.size()) && m.diagnostics.sample_reconstruction > opt.tol)
    throw CertificateError("build_lurking_isometry: lifted sample vectors are numerically dependent "
                           "and inconsistent (ill-conditioned points)");
  return m;
}

struct RealizationValue {
  cplx value;
  double t_inverse_norm = 0.0;
  double d_norm = 0.0;
  /// ||T^{-1}|| ||D||; must be < 1.
  double neumann_bound = 0.0;
};

/// a + <(T_{conj s} (x) I - D)^{-1} gamma, beta>.
inline RealizationValue evaluate_realization(const RealizationModel& m, const TLambdaModel& T, double d_norm) {
  RealizationValue rv;
  rv.t_inverse_norm = T.inverse_norm();
  rv.d_norm = d_norm;
  rv.neumann_bound = rv.t_inverse_norm * d_norm;
  if (!(rv.neumann_bound < 1.0))
    throw CertificateError("evaluate_realization: invertibility certificate fails, ||T^{-1}|| ||D|| = " +
                           sci(rv.neumann_bound));
  if (m.r == 0) {
    rv.value = m.a;
    return rv;
  }
  const Eigen::Index r = m.r, k = m.D.left.cols();
  const Eigen::VectorXcd y0 = T.apply_tensor_inverse(m.gamma, r);
  Eigen::MatrixXcd AinvL(m.dim(), k);
  for (Eigen::Index j = 0; j < k; ++j) AinvL.col(j) = T.apply_tensor_inverse(m.D.left.col(j), r);
  const Eigen::MatrixXcd cap = Eigen::MatrixXcd::Identity(k, k) - m.D.right.adjoint() * AinvL;
  const Eigen::VectorXcd corr = cap.fullPivLu().solve(m.D.right.adjoint() * y0);
  const Eigen::VectorXcd z = y0 + AinvL * corr;
  rv.value = m.a + m.beta.dot(z);
  return rv;
}

inline RealizationValue evaluate_realization(const RealizationModel& m, cplx s, const FeatureSpace& fs,
                                             const ZetaOptions& zo = {}) {
  if (fs.N() != m.N) throw InputError("evaluate_realization: feature space truncation differs from the model");
  const TLambdaModel T(std::conj(s), m.alpha, fs, zo);
  return evaluate_realization(m, T, m.D.norm());
}

inline RealizationValue evaluate_realization(const RealizationModel& m, cplx s) {
  return evaluate_realization(m, s, FeatureSpace(m.N));
}

/// T_lambda for lambda in H_{1/2}.
inline TLambdaModel build_t_lambda(cplx lambda, cplx alpha, std::size_t N, const ZetaOptions& zo = {}) {
  return TLambdaModel(lambda, alpha, FeatureSpace(N), zo);
}

// ---------------------------------------------------------------------------
// Direction (ii) => (i)

struct VerificationReport {
  std::vector<cplx> grid;
  std::vector<cplx> values;
  double contraction_norm = 0.0;
  double isometry_defect = 0.0;
  double d_contraction_residual = 0.0;
  double max_neumann_bound = 0.0;
  std::optional<PickCertificate> gram;
  /// (1 - phi phi^*) zeta Gram on the grid is PSD, so phi passes the
  /// multiplier-norm test on the grid.
  bool multiplier_norm_certificate = false;
  bool passed = false;
  std::vector<std::string> failures;
};

struct VerificationOptions {
  double contraction_tol = 1e-8;
  double isometry_tol = 1e-8;
  double d_contraction_tol = 1e-6;
  double psd_tol = kDefaultPsdTol;
  ZetaOptions zeta{};
};

/// Eight points of H_{1/2} with Re >= 1.25.
inline std::vector<cplx> default_verification_grid() {
  return {{1.25, 0.0}, {1.4, 0.5}, {1.6, -0.8}, {2.0, 1.2}, {2.5, -0.3}, {3.0, 2.0}, {1.3, -1.5}, {4.0, 0.0}};
}

inline VerificationReport verify_direction_ii_to_i(const RealizationModel& m, const std::vector<cplx>& grid,
                                                   const VerificationOptions& opt = {}) {
  VerificationReport rep;
  rep.grid = grid;
  const FeatureSpace fs(m.N);
  rep.contraction_norm = m.contraction_norm();
  if (rep.contraction_norm > 1.0 + opt.contraction_tol)
    rep.failures.push_back("block matrix is not a contraction: sigma_max = " + sci(rep.contraction_norm));

  if (!m.sample_points.empty()) {
    Eigen::MatrixXcd X, Y;
    detail::lifted_vectors(fs, m.sample_points, m.phi_values, m.psi, X, Y);
    const auto d = detail::diagnose(m, X, Y);
    rep.isometry_defect = d.isometry_defect;
    rep.d_contraction_residual = d.d_contraction_residual;
    if (d.isometry_defect > opt.isometry_tol)
      rep.failures.push_back("not isometric on the sample span: defect " + std::to_string(d.isometry_defect));
    if (d.d_contraction_residual > opt.d_contraction_tol)
      rep.failures.push_back("D-contraction identity fails: residual " + sci(d.d_contraction_residual));
  }

  const double dn = m.D.norm();
  try {
    for (const auto& s : grid) {
      const TLambdaModel T(std::conj(s), m.alpha, fs, opt.zeta);
      const auto v = evaluate_realization(m, T, dn);
      rep.values.push_back(v.value);
      rep.max_neumann_bound = std::max(rep.max_neumann_bound, v.neumann_bound);
    }
  } catch (const CertificateError& e) {
    rep.failures.push_back(e.what());
  }
  if (rep.values.size() == grid.size() && !grid.empty()) {
    KernelOptions ko;
    ko.zeta = opt.zeta;
    Eigen::MatrixXcd G = gram_matrix(KernelSpec::szego_dirichlet(1), grid, ko);
    for (Eigen::Index i = 0; i < G.rows(); ++i)
      for (Eigen::Index j = 0; j < G.cols(); ++j)
        G(i, j) *= 1.0 - rep.values[std::size_t(i)] * std::conj(rep.values[std::size_t(j)]);
    for (Eigen::Index i = 0; i < G.rows(); ++i) G(i, i).imag(0.0);
    rep.gram = certify_psd(G, opt.psd_tol);
    rep.multiplier_norm_certificate = rep.gram->psd;
    if (!rep.gram->psd)
      rep.failures.push_back("(1 - phi phi^*) zeta Gram is not PSD on the grid: min eigenvalue " +
                             sci(rep.gram->min_eigenvalue));
  }
  rep.passed = rep.failures.empty();
  return rep;
}

}  // namespace pickzeta
