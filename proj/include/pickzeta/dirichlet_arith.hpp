#pragma once

// Riemann zeta on Re(s) > 1, arithmetic functions, Dirichlet convolution and
// sums over smooth numbers.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pickzeta/errors.hpp"

namespace pickzeta {

using cplx = std::complex<double>;

/// Complex coordinate s = sigma + it constrained to the open half-plane
/// Re(s) > floor.
class HalfPlanePoint {
 public:
  HalfPlanePoint(cplx value, double floor) : value_(value), floor_(floor) {
    if (!(value.real() > floor)) {
      std::ostringstream os;
      os << "point " << value.real() << (value.imag() < 0 ? "" : "+")
         << value.imag() << "i is not in the half-plane Re(s) > " << floor;
      throw DomainError(os.str());
    }
  }

  cplx value() const { return value_; }
  double floor() const { return floor_; }
  double sigma() const { return value_.real(); }
  double t() const { return value_.imag(); }

  friend bool operator==(const HalfPlanePoint&, const HalfPlanePoint&) = default;

 private:
  cplx value_;
  double floor_;
};

// ---------------------------------------------------------------------------
// Primes and arithmetic functions

/// All primes <= limit, by the sieve of Eratosthenes.
class PrimeTable {
 public:
  explicit PrimeTable(std::int64_t limit = 10'000'000) : limit_(limit) {
    if (limit < 2) {
      limit_ = std::max<std::int64_t>(limit, 0);
      return;
    }
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (std::int64_t p = 2; p <= limit; ++p) {
      if (composite[static_cast<std::size_t>(p)]) continue;
      primes_.push_back(p);
      for (std::int64_t q = p * p; q <= limit; q += p)
        composite[static_cast<std::size_t>(q)] = true;
    }
  }

  std::int64_t limit() const { return limit_; }
  const std::vector<std::int64_t>& primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }

  /// p_n, 1-based: nth(1) == 2.
  std::int64_t nth(std::size_t n) const {
    if (n == 0 || n > primes_.size())
      throw OverflowError("prime index " + std::to_string(n) +
                          " beyond table of " + std::to_string(primes_.size()) +
                          " primes");
    return primes_[n - 1];
  }

  /// Largest n for which trial division by the table factors n completely.
  std::int64_t factorization_limit() const {
    if (limit_ > 3'037'000'499) return std::numeric_limits<std::int64_t>::max();
    return limit_ * limit_;
  }

 private:
  std::int64_t limit_;
  std::vector<std::int64_t> primes_;
};

/// Moebius function by trial division against the table.
inline int mobius(std::int64_t n, const PrimeTable& table) {
  if (n < 1) throw DomainError("mobius: n must be >= 1");
  if (n > table.factorization_limit())
    throw OverflowError("mobius: n = " + std::to_string(n) +
                        " exceeds factorization limit " +
                        std::to_string(table.factorization_limit()));
  int sign = 1;
  for (std::int64_t p : table.primes()) {
    if (p * p > n) break;
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

/// mu(1..N) by a linear sieve; element 0 is unused and set to 0.
inline std::vector<int> mobius_sequence(std::size_t N) {
  std::vector<int> mu(N + 1, 0);
  if (N == 0) return mu;
  mu[1] = 1;
  std::vector<std::size_t> primes;
  std::vector<bool> composite(N + 1, false);
  for (std::size_t i = 2; i <= N; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (std::size_t p : primes) {
      if (i * p > N) break;
      composite[i * p] = true;
      if (i % p == 0) {
        mu[i * p] = 0;
        break;
      }
      mu[i * p] = -mu[i];
    }
  }
  return mu;
}

// ---------------------------------------------------------------------------
// Coefficient sequences of truncated Dirichlet series

/// (a_1, ..., a_N) of sum a_n n^{-s}. Index 1 is the n = 1 term.
template <class T = cplx>
class CoefficientSeries {
 public:
  CoefficientSeries() = default;
  CoefficientSeries(std::vector<T> coeffs, std::string label = {})
      : coeffs_(std::move(coeffs)), label_(std::move(label)) {}

  static CoefficientSeries ones(std::size_t N, std::string label = "one") {
    return CoefficientSeries(std::vector<T>(N, T(1)), std::move(label));
  }
  static CoefficientSeries unit(std::size_t N, std::string label = "e") {
    std::vector<T> c(N, T(0));
    if (N > 0) c[0] = T(1);
    return CoefficientSeries(std::move(c), std::move(label));
  }

  std::size_t truncation() const { return coeffs_.size(); }
  const std::string& label() const { return label_; }
  const std::vector<T>& coeffs() const { return coeffs_; }

  /// a_n for 1 <= n <= N.
  const T& operator[](std::size_t n) const { return coeffs_[n - 1]; }
  T& operator[](std::size_t n) { return coeffs_[n - 1]; }

  /// sum_{n<=N} a_n n^{-s}
  cplx evaluate(cplx s) const {
    cplx acc{0.0, 0.0};
    for (std::size_t n = 1; n <= coeffs_.size(); ++n) {
      const auto& c = coeffs_[n - 1];
      if (c == T(0)) continue;
      acc += cplx(c) * std::exp(-s * std::log(static_cast<double>(n)));
    }
    return acc;
  }

  template <class U>
  CoefficientSeries<U> cast() const {
    std::vector<U> out(coeffs_.begin(), coeffs_.end());
    return CoefficientSeries<U>(std::move(out), label_);
  }

  friend bool operator==(const CoefficientSeries&, const CoefficientSeries&) = default;

 private:
  std::vector<T> coeffs_;
  std::string label_;
};

/// c_n = sum_{d | n} a_d b_{n/d}, n <= N.
template <class T>
CoefficientSeries<T> dirichlet_convolve(const CoefficientSeries<T>& a,
                                        const CoefficientSeries<T>& b) {
  if (a.truncation() != b.truncation())
    throw InputError("dirichlet_convolve: truncations differ (" +
                     std::to_string(a.truncation()) + " vs " +
                     std::to_string(b.truncation()) + ")");
  const std::size_t N = a.truncation();
  std::vector<T> c(N, T(0));
  for (std::size_t d = 1; d <= N; ++d) {
    const T ad = a[d];
    if (ad == T(0)) continue;
    for (std::size_t k = 1; d * k <= N; ++k) c[d * k - 1] += ad * b[k];
  }
  std::string label = a.label().empty() || b.label().empty()
                          ? std::string{}
                          : a.label() + "*" + b.label();
  return CoefficientSeries<T>(std::move(c), std::move(label));
}

/// Moebius coefficients (mu(1), ..., mu(N)).
inline CoefficientSeries<std::int64_t> mobius_coeffs(std::size_t N) {
  auto mu = mobius_sequence(N);
  return CoefficientSeries<std::int64_t>(
      std::vector<std::int64_t>(mu.begin() + 1, mu.end()), "mu");
}

/// d_m(n): Dirichlet coefficients of zeta^m, the m-fold convolution of ones.
inline CoefficientSeries<std::int64_t> zeta_power_coeffs(int m, std::size_t N) {
  if (m < 1) throw DomainError("zeta_power_coeffs: m must be >= 1");
  if (N < 1) throw DomainError("zeta_power_coeffs: N must be >= 1");
  auto one = CoefficientSeries<std::int64_t>::ones(N);
  auto acc = one;
  for (int k = 1; k < m; ++k) acc = dirichlet_convolve(acc, one);
  return CoefficientSeries<std::int64_t>(acc.coeffs(), "zeta^" + std::to_string(m));
}

// ---------------------------------------------------------------------------
// Zeta

struct ZetaOptions {
  double target_abs_err = 1e-12;
  /// Evaluation requires Re(s) > 1 + guard.
  double guard = 1e-6;
  /// Largest admissible Euler-Maclaurin cutoff.
  std::int64_t max_terms = 10'000'000;
};

namespace detail {

// B_2, B_4, ..., B_14
inline constexpr std::array<double, 7> kBernoulliEven = {
    1.0 / 6.0,       -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0,      -691.0 / 2730.0, 7.0 / 6.0};

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Bound on the Euler-Maclaurin remainder after the B_12 correction, at
// cutoff M: |s + 13| / (sigma + 13) times the first omitted (B_14) term.
inline double em_remainder_bound(cplx s, double M) {
  constexpr int kOmitted = 7;  // B_14
  double rising = 1.0;         // |s (s+1) ... (s + 2k - 2)|
  for (int j = 0; j <= 2 * kOmitted - 2; ++j) rising *= std::abs(s + double(j));
  const double term = std::abs(kBernoulliEven[kOmitted - 1]) /
                      factorial(2 * kOmitted) * rising *
                      std::pow(M, -s.real() - 2 * kOmitted + 1);
  return std::abs(s + double(2 * kOmitted - 1)) / (s.real() + 2 * kOmitted - 1) * term;
}

}  // namespace detail

/// zeta(s) on Re(s) > 1 + guard by Euler-Maclaurin summation with Bernoulli
/// corrections through B_12 and an adaptive cutoff.
inline cplx zeta(cplx s, const ZetaOptions& opt = {}) {
  if (!(s.real() > 1.0 + opt.guard)) {
    std::ostringstream os;
    os << "zeta: Re(s) = " << s.real() << " is not > 1 + " << opt.guard;
    throw DomainError(os.str());
  }
  if (!(opt.target_abs_err > 0.0))
    throw DomainError("zeta: target_abs_err must be positive");

  // Smallest cutoff (doubling, then bisection) meeting the error target.
  std::int64_t hi = 2;
  while (detail::em_remainder_bound(s, double(hi)) > opt.target_abs_err) {
    if (hi >= opt.max_terms) {
      std::ostringstream os;
      os << "zeta: cannot reach |err| <= " << opt.target_abs_err
         << " within " << opt.max_terms << " terms at s = " << s;
      throw AccuracyError(os.str());
    }
    hi = std::min(hi * 2, opt.max_terms);
  }
  std::int64_t lo = std::max<std::int64_t>(1, hi / 2);
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (detail::em_remainder_bound(s, double(mid)) > opt.target_abs_err)
      lo = mid;
    else
      hi = mid;
  }
  const std::int64_t M = std::max<std::int64_t>(hi, 2);

  cplx sum{0.0, 0.0};
  for (std::int64_t n = M - 1; n >= 1; --n)
    sum += std::exp(-s * std::log(static_cast<double>(n)));

  const double logM = std::log(static_cast<double>(M));
  const cplx Ms = std::exp(-s * logM);  // M^{-s}
  sum += Ms * double(M) / (s - 1.0);
  sum += 0.5 * Ms;

  // sum_k B_2k/(2k)! s(s+1)...(s+2k-2) M^{-s-2k+1}
  cplx rising = s;
  cplx power = Ms / double(M);
  for (int k = 1; k <= 6; ++k) {
    sum += detail::kBernoulliEven[k - 1] / detail::factorial(2 * k) * rising * power;
    rising *= (s + double(2 * k - 1)) * (s + double(2 * k));
    power /= double(M) * double(M);
  }
  if (s.imag() == 0.0) sum.imag(0.0);
  return sum;
}

inline double zeta(double s, const ZetaOptions& opt = {}) {
  return zeta(cplx(s, 0.0), opt).real();
}

/// 1/zeta(s), as the reciprocal of zeta evaluated tightly enough that the
/// reciprocal meets target_abs_err (|zeta(s)| >= zeta(2 sigma)/zeta(sigma)).
inline cplx zeta_reciprocal(cplx s, const ZetaOptions& opt = {}) {
  if (!(s.real() > 1.0 + opt.guard)) {
    std::ostringstream os;
    os << "zeta_reciprocal: Re(s) = " << s.real() << " is not > 1 + " << opt.guard;
    throw DomainError(os.str());
  }
  ZetaOptions coarse = opt;
  coarse.target_abs_err = 1e-6;
  const double sigma = s.real();
  const double lower = (zeta(2.0 * sigma, coarse) - 1e-6) / (zeta(sigma, coarse) + 1e-6);
  ZetaOptions tight = opt;
  tight.target_abs_err = opt.target_abs_err * std::min(1.0, lower * lower) * 0.5;
  return 1.0 / zeta(s, tight);
}

// ---------------------------------------------------------------------------
// Smooth numbers and Euler products

/// prod_{i<=n} (1 - p_i^{-sigma})^{-1}
inline double euler_product(std::size_t n, double sigma, const PrimeTable& table) {
  double prod = 1.0;
  for (std::size_t i = 1; i <= n; ++i)
    prod /= 1.0 - std::pow(double(table.nth(i)), -sigma);
  return prod;
}

/// sum of j^{-sigma} over p_n-smooth j <= N (j = 1 included).
inline double smooth_partial_sum(std::size_t n, double sigma, std::int64_t N,
                                 const PrimeTable& table) {
  if (n < 1) throw DomainError("smooth_partial_sum: n must be >= 1");
  if (!(sigma > 0.0)) throw DomainError("smooth_partial_sum: sigma must be > 0");
  if (N < 1) return 0.0;
  std::vector<std::int64_t> ps(n);
  for (std::size_t i = 0; i < n; ++i) ps[i] = table.nth(i + 1);

  // Collect the smooth numbers, then sum from smallest term up.
  std::vector<std::int64_t> smooth{1};
  for (std::int64_t p : ps) {
    const std::size_t existing = smooth.size();
    for (std::size_t i = 0; i < existing; ++i) {
      std::int64_t v = smooth[i];
      while (v <= N / p) {
        v *= p;
        smooth.push_back(v);
      }
    }
  }
  std::sort(smooth.begin(), smooth.end(), std::greater<>());
  double sum = 0.0;
  for (std::int64_t j : smooth) sum += std::pow(double(j), -sigma);
  return sum;
}

}  // namespace pickzeta
