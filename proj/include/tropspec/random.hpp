#pragma once

// Seeded generators for the randomized verification suites.

#include <cstdint>
#include <random>
#include <vector>

#include "tropspec/matrix.hpp"

namespace tropspec {

using Rng = std::mt19937_64;

/// Modulus log-uniform in [10^lo, 10^hi].
double log_uniform(Rng& rng, double log10_lo, double log10_hi);
/// Uniform on the unit circle.
Complex random_phase(Rng& rng);
int uniform_int(Rng& rng, int lo, int hi);

/// Each entry nonzero with probability `density`; nonzero moduli log-uniform
/// in [10^lo, 10^hi] with uniform phases.
ComplexMatrix random_complex_matrix(Rng& rng, int n, double density, double log10_lo = -4, double log10_hi = 4);
NonnegMatrix random_nonneg_matrix(Rng& rng, int n, double density, double log10_lo = -2, double log10_hi = 2);

/// D P with D diagonal (moduli log-uniform, random phases) and P a random permutation.
ComplexMatrix random_monomial_matrix(Rng& rng, int n, double log10_lo = -2, double log10_hi = 2);

/// All entries of modulus 1 with uniform phases.
ComplexMatrix random_unit_phase_matrix(Rng& rng, int n);

/// Coefficients index 0 first, nonzero leading coefficient. When `sparse`, each
/// lower coefficient vanishes with probability 0.4.
std::vector<Complex> random_polynomial(Rng& rng, int degree, bool sparse, double log10_lo = -3, double log10_hi = 3);

/// Sum of random elementary cycles, every row sum at most `max_weight`.
SquareMatrix<std::int64_t> random_circulation(Rng& rng, int n, int max_weight);

/// Diagonal moduli separated by random factors in [10^sep_lo, 10^sep_hi],
/// random phases, off-diagonal entries of relative size `eps`.
ComplexMatrix random_diagonally_dominant(Rng& rng, int n, double sep_lo, double sep_hi, double eps);

}  // namespace tropspec
