#pragma once

// Kernel zoo on the disc and the right half-planes, Gram assembly and
// truncated feature coordinates of the diagonal Dirichlet kernels.
//
// Convention: Gram/Pick entry (i, j) is k(x_i, x_j), e.g.
// zeta(lambda_i + conj(lambda_j)) for the Szego-Dirichlet kernel. This is the
// conjugate transpose of the indexing zeta(conj(lambda_i) + lambda_j); the two
// matrices have the same spectrum.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pickzeta/dirichlet_arith.hpp"
#include "pickzeta/errors.hpp"

namespace pickzeta {

inline constexpr const char* kConjugationConvention =
    "entry(i,j) = k(x_i, x_j), e.g. zeta(lambda_i + conj(lambda_j))";

enum class KernelKind { SzegoDisc, SzegoHalfPlane, SzegoDirichlet, KappaMu, DiagonalDirichlet };

/// How the coefficients of a DiagonalDirichlet kernel continue past the
/// stored truncation. The tail of sum_{m>N} a_m m^{-x} is exact (as a
/// difference against a closed form) for ZetaPower and KappaMu, and zero for
/// Finite.
enum class TailModel { Finite, ZetaPower, KappaMu };

class KernelSpec {
 public:
  static KernelSpec szego_disc() { return KernelSpec(KernelKind::SzegoDisc); }
  static KernelSpec szego_half_plane() { return KernelSpec(KernelKind::SzegoHalfPlane); }
  static KernelSpec szego_dirichlet(int power = 1) {
    if (power < 1) throw InputError("SzegoDirichlet power must be >= 1");
    KernelSpec k(KernelKind::SzegoDirichlet);
    k.power_ = power;
    return k;
  }
  static KernelSpec kappa_mu() { return KernelSpec(KernelKind::KappaMu); }

  /// kappa_a(s, u) = sum a_m m^{-s-conj(u)} with a_m >= 0.
  static KernelSpec diagonal_dirichlet(std::vector<double> coeffs,
                                       TailModel tail = TailModel::Finite,
                                       int tail_power = 1) {
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (!(coeffs[i] >= 0.0) || !std::isfinite(coeffs[i]))
        throw InputError("DiagonalDirichlet coefficient a_" + std::to_string(i + 1) +
                         " must be a finite nonnegative real");
    if (coeffs.empty()) throw InputError("DiagonalDirichlet needs at least one coefficient");
    KernelSpec k(KernelKind::DiagonalDirichlet);
    k.coeffs_ = std::make_shared<const std::vector<double>>(std::move(coeffs));
    k.tail_ = tail;
    k.power_ = tail_power;
    return k;
  }

  KernelKind kind() const { return kind_; }
  int power() const { return power_; }
  TailModel tail() const { return tail_; }
  const std::vector<double>& coeffs() const {
    static const std::vector<double> empty;
    return coeffs_ ? *coeffs_ : empty;
  }

  bool on_disc() const { return kind_ == KernelKind::SzegoDisc; }
  /// The delta of H_delta for half-plane kernels.
  double domain_floor() const {
    switch (kind_) {
      case KernelKind::SzegoHalfPlane: return 0.0;
      case KernelKind::SzegoDisc: return -std::numeric_limits<double>::infinity();
      default: return 0.5;
    }
  }

  std::string name() const {
    switch (kind_) {
      case KernelKind::SzegoDisc: return "szego_disc";
      case KernelKind::SzegoHalfPlane: return "szego_half_plane";
      case KernelKind::SzegoDirichlet: return "szego_dirichlet";
      case KernelKind::KappaMu: return "kappa_mu";
      case KernelKind::DiagonalDirichlet: return "diagonal_dirichlet";
    }
    return "?";
  }

  friend bool operator==(const KernelSpec& a, const KernelSpec& b) {
    return a.kind_ == b.kind_ && a.power_ == b.power_ && a.tail_ == b.tail_ &&
           a.coeffs() == b.coeffs();
  }

 private:
  explicit KernelSpec(KernelKind kind) : kind_(kind) {}

  KernelKind kind_;
  int power_ = 1;
  TailModel tail_ = TailModel::Finite;
  std::shared_ptr<const std::vector<double>> coeffs_;
};

struct KernelOptions {
  ZetaOptions zeta{};
  /// Largest admissible tail bound for DiagonalDirichlet evaluation.
  double tail_tol = 1e-8;
};

inline void check_in_domain(const KernelSpec& k, cplx x) {
  if (k.on_disc()) {
    if (!(std::abs(x) < 1.0)) throw DomainError(k.name() + ": point is not in the open unit disc");
    return;
  }
  HalfPlanePoint(x, k.domain_floor());
}

struct KernelValue {
  cplx value;
  /// Bound on |exact - value|; zero for closed-form kernels.
  double tail_bound = 0.0;
};

namespace detail {

// sum_{m<=N} a_m m^{-x} for real x.
inline double diagonal_partial(const std::vector<double>& a, double x) {
  double sum = 0.0;
  for (std::size_t m = a.size(); m >= 1; --m)
    if (a[m - 1] != 0.0) sum += a[m - 1] * std::pow(double(m), -x);
  return sum;
}

// Exact total sum_{m>=1} a_m m^{-x} for the closed-form tail models.
inline double diagonal_total(const KernelSpec& k, double x, const ZetaOptions& zo) {
  switch (k.tail()) {
    case TailModel::ZetaPower: return std::pow(zeta(x, zo), k.power());
    case TailModel::KappaMu: {
      const double z = zeta(x, zo);
      return z + 1.0 / z;
    }
    case TailModel::Finite: break;
  }
  return diagonal_partial(k.coeffs(), x);
}

}  // namespace detail

/// sum_{m>N} a_m m^{-x} for a DiagonalDirichlet kernel, x real.
inline double diagonal_tail(const KernelSpec& k, double x, const ZetaOptions& zo = {}) {
  if (k.tail() == TailModel::Finite) return 0.0;
  const double tail = detail::diagonal_total(k, x, zo) - detail::diagonal_partial(k.coeffs(), x);
  return std::max(tail, 0.0) + 4.0 * zo.target_abs_err;
}

/// k(s, u) together with a truncation bound where relevant.
inline KernelValue kernel_eval_bounded(const KernelSpec& k, cplx s, cplx u,
                                       const KernelOptions& opt = {}) {
  check_in_domain(k, s);
  check_in_domain(k, u);
  const cplx x = s + std::conj(u);
  switch (k.kind()) {
    case KernelKind::SzegoDisc: return {1.0 / (1.0 - s * std::conj(u))};
    case KernelKind::SzegoHalfPlane: return {1.0 / x};
    case KernelKind::SzegoDirichlet: {
      const cplx z = zeta(x, opt.zeta);
      cplx p = z;
      for (int i = 1; i < k.power(); ++i) p *= z;
      return {p};
    }
    case KernelKind::KappaMu: {
      const cplx z = zeta(x, opt.zeta);
      return {z + 1.0 / z};
    }
    case KernelKind::DiagonalDirichlet: {
      const auto& a = k.coeffs();
      cplx sum{0.0, 0.0};
      for (std::size_t m = a.size(); m >= 1; --m)
        if (a[m - 1] != 0.0) sum += a[m - 1] * std::exp(-x * std::log(double(m)));
      const double tail = diagonal_tail(k, x.real(), opt.zeta);
      if (tail > opt.tail_tol)
        throw AccuracyError("diagonal_dirichlet: tail bound " + sci(tail) +
                            " exceeds tolerance " + sci(opt.tail_tol) +
                            "; supply more coefficients");
      return {sum, tail};
    }
  }
  throw InputError("unknown kernel kind");
}

inline cplx kernel_eval(const KernelSpec& k, cplx s, cplx u, const KernelOptions& opt = {}) {
  return kernel_eval_bounded(k, s, u, opt).value;
}

inline cplx kernel_eval(const KernelSpec& k, const HalfPlanePoint& s, const HalfPlanePoint& u,
                        const KernelOptions& opt = {}) {
  return kernel_eval(k, s.value(), u.value(), opt);
}

/// Smallest pairwise distance; +inf for fewer than two points.
inline double min_separation(const std::vector<cplx>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, std::abs(pts[i] - pts[j]));
  return best;
}

inline void require_distinct(const std::vector<cplx>& pts, double min_sep = 1e-12) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (!(std::abs(pts[i] - pts[j]) > min_sep))
        throw InputError("points " + std::to_string(i) + " and " + std::to_string(j) +
                         " coincide (separation <= " + sci(min_sep) + ")");
}

/// G(i, j) = k(x_i, x_j). Exactly Hermitian: the lower triangle is mirrored.
inline Eigen::MatrixXcd gram_matrix(const KernelSpec& k, const std::vector<cplx>& pts,
                                    const KernelOptions& opt = {}) {
  require_distinct(pts);
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::MatrixXcd G(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      G(i, j) = kernel_eval(k, pts[std::size_t(i)], pts[std::size_t(j)], opt);
      if (i == j) G(i, i).imag(0.0);
      else G(j, i) = std::conj(G(i, j));
    }
  }
  return G;
}

inline Eigen::MatrixXcd gram_matrix(const KernelSpec& k, const std::vector<HalfPlanePoint>& pts,
                                    const KernelOptions& opt = {}) {
  std::vector<cplx> raw;
  raw.reserve(pts.size());
  for (const auto& p : pts) raw.push_back(p.value());
  return gram_matrix(k, raw, opt);
}

// ---------------------------------------------------------------------------
// Feature coordinates

/// a_1..a_N of a kernel with a diagonal Dirichlet representation.
inline std::vector<double> kernel_coefficients(const KernelSpec& k, std::size_t N) {
  switch (k.kind()) {
    case KernelKind::SzegoDirichlet: {
      if (k.power() == 1) return std::vector<double>(N, 1.0);
      auto d = zeta_power_coeffs(k.power(), N);
      return std::vector<double>(d.coeffs().begin(), d.coeffs().end());
    }
    case KernelKind::KappaMu: {
      auto mu = mobius_sequence(N);
      std::vector<double> a(N);
      for (std::size_t m = 1; m <= N; ++m) a[m - 1] = 1.0 + mu[m];
      return a;
    }
    case KernelKind::DiagonalDirichlet: {
      const auto& c = k.coeffs();
      if (k.tail() == TailModel::Finite || N <= c.size()) {
        std::vector<double> a(N, 0.0);
        std::copy_n(c.begin(), std::min(N, c.size()), a.begin());
        return a;
      }
      // Extend through the closed-form model.
      return kernel_coefficients(k.tail() == TailModel::KappaMu
                                     ? KernelSpec::kappa_mu()
                                     : KernelSpec::szego_dirichlet(k.power()),
                                 N);
    }
    default:
      throw InputError(k.name() + " has no Dirichlet coefficient representation");
  }
}

struct FeatureVector {
  Eigen::VectorXcd coords;  // coords(m-1) = sqrt(a_m) m^{-s}
  cplx point;
};

/// Coordinates sqrt(a_m) m^{-s}, m <= a.size(), from precomputed coefficients.
inline Eigen::VectorXcd feature_coords(const std::vector<double>& a, cplx s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t m = 1; m <= a.size(); ++m)
    v(Eigen::Index(m - 1)) =
        a[m - 1] == 0.0 ? cplx(0.0, 0.0) : std::sqrt(a[m - 1]) * std::exp(-s * std::log(double(m)));
  return v;
}

/// <feature_map(s), feature_map(u)> = sum_{m<=N} a_m m^{-s-conj(u)}.
inline FeatureVector feature_map(const KernelSpec& k, const HalfPlanePoint& s, std::size_t N) {
  if (!(s.sigma() > 0.5)) throw DomainError("feature_map: Re(s) must exceed 1/2");
  return {feature_coords(kernel_coefficients(k, N), s.value()), s.value()};
}

/// Inner product linear in the first slot: sum x_m conj(y_m).
inline cplx inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) { return y.dot(x); }

/// sum_{m>N} a_m m^{-2 min(Re s, Re u)}
inline double feature_tail_bound(const KernelSpec& k, cplx s, cplx u, std::size_t N,
                                 const ZetaOptions& zo = {}) {
  const double x = 2.0 * std::min(s.real(), u.real());
  const auto a = kernel_coefficients(k, N);
  double total = 0.0;
  switch (k.kind()) {
    case KernelKind::SzegoDirichlet: total = std::pow(zeta(x, zo), k.power()); break;
    case KernelKind::KappaMu: {
      const double z = zeta(x, zo);
      total = z + 1.0 / z;
      break;
    }
    case KernelKind::DiagonalDirichlet:
      if (k.tail() == TailModel::Finite && N >= k.coeffs().size()) return 0.0;
      total = detail::diagonal_total(k, x, zo);
      break;
    default: throw InputError(k.name() + " has no feature representation");
  }
  return std::max(0.0, total - detail::diagonal_partial(a, x)) + 4.0 * zo.target_abs_err;
}

}  // namespace pickzeta
