#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tropspec/assignment.hpp"
#include "tropspec/combinatorics.hpp"
#include "tropspec/trop_spectra.hpp"

using namespace tropspec;

namespace {

NonnegMatrix random_matrix(std::mt19937_64& rng, int n, double density, double log_lo = -3, double log_hi = 3) {
  std::uniform_real_distribution<double> mag(log_lo, log_hi);
  std::bernoulli_distribution present(density);
  NonnegMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (present(rng)) m.set(i, j, std::exp(mag(rng)));
  return m;
}

int warnings = 0;
void count_warning(const char*) { ++warnings; }

}  // namespace

TEST_CASE("2x2 traces and characteristic polynomial") {
  const double a = 2, b = 3, c = 5, d = 1;
  const NonnegMatrix m{{a, b}, {c, d}};
  CHECK(tropical_trace(m, 0) == 1.0);
  CHECK(tropical_trace(m, 1) == doctest::Approx(std::max(a, d)));
  CHECK(tropical_trace(m, 2) == doctest::Approx(std::max(a * d, b * c)));
  const TropicalPolynomial q = tropical_char_poly(m);
  CHECK(q.coeff(2) == 0.0);
  CHECK(q.coeff(1) == doctest::Approx(std::log(std::max(a, d))));
  CHECK(q.coeff(0) == doctest::Approx(std::log(std::max(a * d, b * c))));
  CHECK_THROWS_AS(tropical_trace(m, 3), InvalidInput);
  CHECK_THROWS_AS(tropical_trace(m, -1), InvalidInput);
}

TEST_CASE("identity traces are 1") {
  const NonnegMatrix id = NonnegMatrix::identity(4);
  for (int k = 0; k <= 4; ++k) CHECK(tropical_trace(id, k) == doctest::Approx(1.0));
}

TEST_CASE("zero matrix has characteristic polynomial X^n") {
  const NonnegMatrix z(3);
  const TropicalPolynomial q = tropical_char_poly(z);
  CHECK(q.coeffs() == std::vector<double>{kNegInf, kNegInf, kNegInf, 0.0});
  for (EigenRoute route : {EigenRoute::Coefficients, EigenRoute::Evaluation}) {
    const TropicalSpectrum s = tropical_eigenvalues(z, route);
    CHECK(s.values() == std::vector<double>{0, 0, 0});
  }
}

TEST_CASE("companion matrix traces are the coefficient moduli") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> val(-4.0, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 6;
    std::vector<Complex> p(n + 1);
    for (Complex& z : p) z = Complex(val(rng), val(rng));
    p[n] = 1.0;
    const NonnegMatrix m = abs(companion(p));
    for (int k = 1; k <= n; ++k) CHECK(tropical_trace(m, k) == doctest::Approx(std::abs(p[n - k])).epsilon(1e-12));

    const RootMultiset expected = tropical_roots(max_times_relative(p));
    const TropicalSpectrum s = tropical_eigenvalues(m);
    REQUIRE(s.gammas.entries().size() == expected.entries().size());
    for (std::size_t i = 0; i < expected.entries().size(); ++i) {
      CHECK(s.gammas.entries()[i].multiplicity == expected.entries()[i].multiplicity);
      CHECK(oracle::close(s.gammas.entries()[i].value, expected.entries()[i].value, 1e-12));
    }
  }
}

TEST_CASE("all-ones matrix has all tropical eigenvalues 1") {
  for (int n = 1; n <= 6; ++n) {
    const TropicalSpectrum s = tropical_eigenvalues(NonnegMatrix::ones(n));
    CHECK(s.gammas.entries() == std::vector<TropicalRoot>{{0.0, n}});
    CHECK(tropical_spectral_radius(NonnegMatrix::ones(n)) == doctest::Approx(1.0));
  }
}

TEST_CASE("monomial matrices have equal tropical eigenvalues") {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> mag(-2.0, 2.0);
  for (int n = 2; n <= 6; ++n) {
    std::vector<int> cycle(n);
    std::iota(cycle.begin(), cycle.end(), 0);
    std::shuffle(cycle.begin(), cycle.end(), rng);
    NonnegMatrix m(n);
    double log_product = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = std::exp(mag(rng));
      log_product += std::log(d);
      m.set(cycle[i], cycle[(i + 1) % n], d);
    }
    for (EigenRoute route : {EigenRoute::Coefficients, EigenRoute::Evaluation}) {
      const auto e = tropical_eigenvalues(m, route).gammas.entries();
      REQUIRE(e.size() == 1);
      CHECK(e[0].multiplicity == n);
      CHECK(e[0].value == doctest::Approx(log_product / n).epsilon(1e-12));
    }
  }
}

TEST_CASE("characteristic polynomial matches subset enumeration") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 6;
    const NonnegMatrix m = random_matrix(rng, n, 0.3 + 0.1 * (trial % 8));
    const std::vector<double> expected = oracle::log_tropical_traces(m);
    const std::vector<double> got = log_tropical_traces(m);
    const TropicalPolynomial q = tropical_char_poly(m);
    for (int k = 0; k <= n; ++k) {
      CHECK(oracle::close(got[k], expected[k], 1e-12));
      CHECK(oracle::close(q.coeff(n - k), expected[k], 1e-12));
    }
  }
}

TEST_CASE("coefficient and evaluation routes agree") {
  std::mt19937_64 rng(34);
  const double lo = std::log(1e-6), hi = std::log(1e6);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 7;
    const NonnegMatrix m = random_matrix(rng, n, 0.25 + 0.25 * (trial % 4), lo, hi);
    const auto a = tropical_eigenvalues(m, EigenRoute::Coefficients).gammas.entries();
    const auto b = tropical_eigenvalues(m, EigenRoute::Evaluation).gammas.entries();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].multiplicity == b[i].multiplicity);
      CHECK(oracle::close(a[i].value, b[i].value, 1e-9));
    }
  }
}

TEST_CASE("largest tropical eigenvalue is the maximal cycle mean") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 7;
    const NonnegMatrix m = random_matrix(rng, n, 0.2 + 0.1 * (trial % 9));
    const TropicalSpectrum s = tropical_eigenvalues(m);
    const double rho = tropical_spectral_radius(m);
    CHECK(oracle::close(rho, s.values().front(), 1e-9));
    CHECK(oracle::close(rho, max_cycle_mean(m), 1e-12));
  }
}

TEST_CASE("exterior power radius is bounded by the eigenvalue prefix") {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + trial % 6;
    const NonnegMatrix m = random_matrix(rng, n, 0.2 + 0.2 * (trial % 5));
    const std::vector<double> prefix = tropical_eigenvalues(m).log_prefix();
    const std::vector<double> hat = log_concavified_traces(m);
    for (int k = 1; k <= n; ++k) {
      const double rho = tropical_spectral_radius(tropical_exterior_power(m, k));
      if (rho == 0.0) continue;
      CHECK(std::log(rho) <= prefix[k] + 1e-9);
      CHECK(std::log(rho) <= hat[k] + 1e-9);
      CHECK(oracle::close(hat[k], prefix[k], 1e-9));
    }
  }
}

TEST_CASE("saturated trace indices are those attaining the eigenvalue prefix") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + trial % 7;
    const NonnegMatrix m = random_matrix(rng, n, 0.3 + 0.1 * (trial % 7));
    const TropicalSpectrum s = tropical_eigenvalues(m);
    const std::vector<double> traces = oracle::log_tropical_traces(m);
    const std::vector<double> prefix = s.log_prefix();
    for (int k = 0; k <= n; ++k) {
      const bool attains = traces[k] != kNegInf && std::abs(traces[k] - prefix[k]) <= 1e-9;
      CHECK(s.trace_index_saturated(k) == attains);
    }
  }
}

TEST_CASE("evaluation route does not report saturation") {
  const TropicalSpectrum s = tropical_eigenvalues(NonnegMatrix::ones(3), EigenRoute::Evaluation);
  CHECK_FALSE(s.saturated.has_value());
  CHECK_THROWS(s.trace_index_saturated(1));
}

TEST_CASE("tropical exterior power examples") {
  const NonnegMatrix m{{1, 2, 0}, {8, 1, 3}, {0.5, 0, 4}};
  const NonnegMatrix first = tropical_exterior_power(m, 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(first(i, j) == doctest::Approx(m(i, j)).epsilon(1e-14));
  const NonnegMatrix top = tropical_exterior_power(m, 3);
  REQUIRE(top.size() == 1);
  CHECK(top(0, 0) == doctest::Approx(tropical_permanent(m)));
  CHECK(tropical_permanent(m) == doctest::Approx(std::exp(oracle::max_assignment(oracle::logs(m)))));
  CHECK(tropical_exterior_power(NonnegMatrix::ones(3), 2) == NonnegMatrix::ones(3));
  CHECK_THROWS_AS(tropical_exterior_power(m, 0), InvalidInput);
  CHECK_THROWS_AS(tropical_exterior_power(m, 4), InvalidInput);
}

TEST_CASE("exterior power entries are tropical permanents of submatrices") {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    const NonnegMatrix m = random_matrix(rng, n, 0.6);
    for (int k = 1; k <= n; ++k) {
      const NonnegMatrix e = tropical_exterior_power(m, k);
      const auto subsets = k_subsets(n, k);
      for (std::size_t r = 0; r < subsets.size(); ++r)
        for (std::size_t c = 0; c < subsets.size(); ++c) {
          const double expected = oracle::max_assignment(oracle::logs(m.submatrix(subsets[r], subsets[c])));
          CHECK(oracle::close(e(r, c) > 0 ? std::log(e(r, c)) : kNegInf, expected, 1e-12));
        }
    }
  }
}

TEST_CASE("oversized exterior powers warn without failing") {
  warnings = 0;
  const WarningSink previous = set_warning_sink(count_warning);
  const NonnegMatrix e = tropical_exterior_power(NonnegMatrix::ones(4), 2, 5);
  set_warning_sink(previous);
  CHECK(e.size() == 6);
  CHECK(warnings == 1);
}

TEST_CASE("complex matrices use their moduli") {
  const ComplexMatrix a{{Complex(0, 2), -3.0}, {Complex(3, 4), 1.0}};
  const TropicalSpectrum s = tropical_eigenvalues(a);
  const TropicalSpectrum t = tropical_eigenvalues(abs(a));
  CHECK(s.gammas == t.gammas);
}
