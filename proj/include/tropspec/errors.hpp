#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropspec {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (shape, domain, range).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A combinatorial object (compound, permanent) would exceed its size limit.
class SizeCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (matrix or polynomial files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical method failed to reach its tolerance.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, std::vector<std::complex<double>> best_iterate,
               double residual)
      : Error(what), best_iterate_(std::move(best_iterate)), residual_(residual) {}
  explicit NumericError(const std::string& what) : Error(what) {}

  const std::vector<std::complex<double>>& best_iterate() const { return best_iterate_; }
  double residual() const { return residual_; }

 private:
  std::vector<std::complex<double>> best_iterate_;
  double residual_ = 0.0;
};

}  // namespace tropspec
