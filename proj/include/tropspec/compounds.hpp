#pragma once

// Classical and permanental compound matrices, permanents, pattern matrices,
// entrywise operations and spectral radii.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tropspec/matrix.hpp"

namespace tropspec {

inline constexpr int kMaxPermanentSize = 20;

/// pat A: 1 where a_ij != 0 (exact test), else 0.
NonnegMatrix pattern(const ComplexMatrix& a);
NonnegMatrix pattern(const NonnegMatrix& m);

/// Ryser's formula with Gray-code updates; n <= 20.
Complex permanent(const ComplexMatrix& a);
double permanent(const NonnegMatrix& m);
/// Exact integer permanent; throws InvalidInput if an intermediate would overflow.
std::int64_t permanent(const SquareMatrix<std::int64_t>& m);

/// (wedge^k A)_{I,J} = det A[I,J], k-subsets in lexicographic order.
/// Throws SizeCapExceeded when C(n,k) > size_cap (0 = default_size_cap()).
ComplexMatrix compound(const ComplexMatrix& a, int k, std::size_t size_cap = 0);

/// (wedge^k_per A)_{I,J} = per A[I,J]. For a matrix of small nonnegative
/// integers (patterns in particular) the entries are computed exactly.
ComplexMatrix permanental_compound(const ComplexMatrix& a, int k, std::size_t size_cap = 0);
NonnegMatrix permanental_compound(const NonnegMatrix& m, int k, std::size_t size_cap = 0);

/// Perron root of a nonnegative matrix, computed per strongly connected
/// component by shifted power iteration with Collatz-Wielandt brackets
/// (relative width 1e-13). Components that do not settle fall back to a
/// dense eigensolver.
double spectral_radius(const NonnegMatrix& m);

/// max |lambda| over the eigenvalues of A.
double spectral_radius(const ComplexMatrix& a);

/// Entrywise product; throws InvalidInput on a size mismatch.
NonnegMatrix hadamard(const NonnegMatrix& a, const NonnegMatrix& b);
ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b);

/// A^[r] with r > 0 (zero entries stay zero).
NonnegMatrix entrywise_power(const NonnegMatrix& m, double r);

struct CurvePoint {
  double r;
  double value;  // rho(M^[r])^{1/r}
};

/// Samples r -> rho(M^[r])^{1/r}, which decreases to rho_max(M) as r grows.
/// Entries are rescaled by max m_ij before the power to avoid overflow.
std::vector<CurvePoint> limit_eigenvalue_curve(const NonnegMatrix& m, std::span<const double> rs);

}  // namespace tropspec
