#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace pickzeta {

/// Short scientific rendering for error messages, e.g. 7.2e-06.
inline std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point or argument lies outside the domain of the operation
/// (e.g. Re(s) <= 1 + guard for zeta, a node outside the half-plane).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input: mismatched sizes, duplicate nodes,
/// unknown kernel names, schema violations.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A requested accuracy cannot be met within the configured budget.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// Integer argument beyond the configured factorization limit.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition on the mathematical data does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A certificate that the operation relies on failed (non-PSD Gram where
/// PSD is required, Neumann bound >= 1, contraction violated, ...).
class CertificateError : public Error {
 public:
  using Error::Error;
};

}  // namespace pickzeta
