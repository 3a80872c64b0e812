#include "tropspec/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace tropspec {

double log_uniform(Rng& rng, double log10_lo, double log10_hi) {
  return std::pow(10.0, std::uniform_real_distribution<double>(log10_lo, log10_hi)(rng));
}

Complex random_phase(Rng& rng) {
  return std::polar(1.0, std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng));
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

ComplexMatrix random_complex_matrix(Rng& rng, int n, double density, double log10_lo, double log10_hi) {
  ComplexMatrix a(n);
  std::bernoulli_distribution keep(density);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (keep(rng)) a(i, j) = log_uniform(rng, log10_lo, log10_hi) * random_phase(rng);
  return a;
}

NonnegMatrix random_nonneg_matrix(Rng& rng, int n, double density, double log10_lo, double log10_hi) {
  NonnegMatrix m(n);
  std::bernoulli_distribution keep(density);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (keep(rng)) m.set(i, j, log_uniform(rng, log10_lo, log10_hi));
  return m;
}

ComplexMatrix random_monomial_matrix(Rng& rng, int n, double log10_lo, double log10_hi) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i) a(i, perm[i]) = log_uniform(rng, log10_lo, log10_hi) * random_phase(rng);
  return a;
}

ComplexMatrix random_unit_phase_matrix(Rng& rng, int n) {
  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = random_phase(rng);
  return a;
}

std::vector<Complex> random_polynomial(Rng& rng, int degree, bool sparse, double log10_lo, double log10_hi) {
  std::vector<Complex> c(degree + 1);
  std::bernoulli_distribution zero(0.4);
  for (int k = 0; k <= degree; ++k) {
    if (sparse && k < degree && zero(rng)) continue;
    c[k] = log_uniform(rng, log10_lo, log10_hi) * random_phase(rng);
  }
  return c;
}

SquareMatrix<std::int64_t> random_circulation(Rng& rng, int n, int max_weight) {
  SquareMatrix<std::int64_t> b(n);
  std::vector<std::int64_t> load(n, 0);
  const int target = uniform_int(rng, 0, max_weight);
  std::vector<int> verts(n);
  std::iota(verts.begin(), verts.end(), 0);
  for (int attempt = 0; attempt < 4 * n * std::max(target, 1); ++attempt) {
    std::shuffle(verts.begin(), verts.end(), rng);
    const int len = uniform_int(rng, 1, n);
    bool fits = true;
    for (int i = 0; i < len; ++i) fits = fits && load[verts[i]] < target;
    if (!fits) continue;
    for (int i = 0; i < len; ++i) {
      ++b(verts[i], verts[(i + 1) % len]);
      ++load[verts[i]];
    }
  }
  return b;
}

ComplexMatrix random_diagonally_dominant(Rng& rng, int n, double sep_lo, double sep_hi, double eps) {
  std::vector<double> d(n);
  d[0] = log_uniform(rng, -1, 1);
  for (int i = 1; i < n; ++i) d[i] = d[i - 1] / log_uniform(rng, sep_lo, sep_hi);
  std::shuffle(d.begin(), d.end(), rng);
  const double small = *std::min_element(d.begin(), d.end());
  ComplexMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a(i, j) = (i == j ? d[i] : eps * small * std::uniform_real_distribution<double>(0.0, 1.0)(rng)) *
                random_phase(rng);
  return a;
}

}  // namespace tropspec
