#pragma once

// Desk-scale complex eigenvalues through the characteristic polynomial.
//
// Coefficients come from the Faddeev-LeVerrier recursion and roots from the
// Aberth-Ehrlich iteration, both carried out in 160-digit arithmetic and
// rounded to double at the end.

#include <cstdint>
#include <span>
#include <vector>

#include "tropspec/matrix.hpp"

namespace tropspec {

inline constexpr std::size_t kMaxDenseEigSize = 30;

/// Coefficients of det(xI - A), index 0 first (monic: entry n is 1). The
/// coefficient of x^{n-k} is (-1)^k tr^k A. Coefficients below 1e-100 of
/// their natural scale (n max|a_ij|)^k are set to exactly zero.
std::vector<Complex> char_poly(const ComplexMatrix& a);

struct RootOptions {
  int max_iterations = 2000;
  int restarts = 4;
  std::uint64_t seed = 0x5eed;
};

struct PolynomialRoots {
  /// Sorted by nonincreasing modulus; ties by increasing argument.
  std::vector<Complex> roots;
  /// max_i |p(z_i)| / sum_k |a_k||z_i|^k over the returned (double) roots.
  double residual = 0.0;
};

/// All roots of sum_k coeffs[k] z^k. Exact zero low-order coefficients give
/// exact zero roots. Throws NumericError (with the best iterate) when the
/// iteration does not converge or the residual exceeds 1e-10.
PolynomialRoots poly_roots(std::span<const Complex> coeffs, const RootOptions& options = {});

struct EigenSpectrum {
  /// Eigenvalues, nonincreasing modulus, ties by increasing argument.
  std::vector<Complex> lambdas;
  /// log|lambda_1 ... lambda_k| for k = 0..n (-inf once a zero eigenvalue enters).
  std::vector<double> log_prefix;
  /// |sum lambda - tr A| relative to sum |lambda|.
  double trace_residual = 0.0;
  /// |prod lambda - det A| relative to max(|det A|, |prod lambda|, 1e-30 * Hadamard bound).
  double det_residual = 0.0;

  /// |lambda_1 ... lambda_k|.
  double prefix(int k) const;
};

/// Eigenvalues of A (n <= 30). Throws NumericError when the trace or
/// determinant identity fails at 1e-8.
EigenSpectrum eigenvalues(const ComplexMatrix& a);

/// Sort by nonincreasing modulus; moduli within a relative 1e-12 are ordered
/// by increasing principal argument.
void sort_by_modulus(std::vector<Complex>& z);

/// Determinant by LU with partial pivoting (double precision).
Complex determinant(const ComplexMatrix& a);

}  // namespace tropspec
