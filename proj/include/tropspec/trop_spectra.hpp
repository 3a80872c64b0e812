#pragma once

// Tropical characteristic polynomial, tropical eigenvalues, traces and
// exterior powers of a max-times matrix.
//
// For M in T^{n x n}: q_M(X) = per_T(M + X I) = X^n + c_{n-1} X^{n-1} + ... + c_0
// with c_{n-k} = tr^k_T M, the maximal tropical permanent of a k x k principal
// submatrix. The tropical eigenvalues are the tropical roots of q_M.

#include <cstddef>
#include <optional>
#include <vector>

#include "tropspec/matrix.hpp"
#include "tropspec/trop_poly.hpp"

namespace tropspec {

/// per_T M = max_sigma prod_i m(i, sigma(i)).
double tropical_permanent(const NonnegMatrix& m);

/// tr^k_T M for 0 <= k <= n (tr^0_T = 1). One assignment per k-subset.
double tropical_trace(const NonnegMatrix& m, int k);

/// log tr^k_T M for k = 0..n.
std::vector<double> log_tropical_traces(const NonnegMatrix& m);

/// q_M in the max-plus domain: coefficient of X^j is log tr^{n-j}_T M.
TropicalPolynomial tropical_char_poly(const NonnegMatrix& m);

enum class EigenRoute {
  /// Coefficients by subset enumeration, then the Newton polygon.
  Coefficients,
  /// Breakpoints of t -> log per_T(M + e^t I), one n x n assignment per probe.
  Evaluation,
};

struct TropicalSpectrum {
  /// gamma_1 >= ... >= gamma_n (max-plus values; exp gives the max-times ones).
  RootMultiset gammas;
  /// Concavified q_M (log domain): determines the polynomial function.
  TropicalPolynomial charpoly{std::vector<double>{0.0}};
  /// Exponents j of X^j where the raw coefficient of q_M is on the Newton
  /// polygon. Exponent n - k corresponds to the trace index k. Only the
  /// coefficient route knows the raw coefficients.
  std::optional<std::vector<int>> saturated;

  std::size_t size() const { return static_cast<std::size_t>(gammas.total_multiplicity()); }
  /// gamma_1 .. gamma_n as max-times values.
  std::vector<double> values() const { return gammas.max_times_values(); }
  /// log(gamma_1 ... gamma_k) for k = 0..n.
  std::vector<double> log_prefix() const { return gammas.log_prefix_sums(); }
  /// Whether exponent n - k of q_M is saturated (requires the coefficient route).
  bool trace_index_saturated(int k) const;
};

TropicalSpectrum tropical_eigenvalues(const NonnegMatrix& m, EigenRoute route = EigenRoute::Coefficients,
                                      double tol = kDefaultSaturationTol);

/// Tropical eigenvalues of a complex matrix: those of |A|.
TropicalSpectrum tropical_eigenvalues(const ComplexMatrix& a, EigenRoute route = EigenRoute::Coefficients,
                                      double tol = kDefaultSaturationTol);

/// (wedge^k_T M)_{I,J} = per_T M[I,J], k-subsets in lexicographic order.
/// Emits a warning (not an error) when C(n,k) exceeds `size_cap`.
NonnegMatrix tropical_exterior_power(const NonnegMatrix& m, int k, std::size_t size_cap = 0);

/// rho_T(M) = largest tropical eigenvalue = maximal cycle mean.
double tropical_spectral_radius(const NonnegMatrix& m);

/// log hat-tr^k_T M for k = 0..n: the log-concavified traces (concave in k).
std::vector<double> log_concavified_traces(const NonnegMatrix& m, double tol = kDefaultSaturationTol);

}  // namespace tropspec
