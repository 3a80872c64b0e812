#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tropspec/bounds.hpp"
#include "tropspec/combinatorics.hpp"
#include "tropspec/compounds.hpp"
#include "tropspec/dense_eig.hpp"
#include "tropspec/io.hpp"
#include "tropspec/random.hpp"
#include "tropspec/trop_spectra.hpp"

using namespace tropspec;

namespace {

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// L_k straight from the theorem statements, by enumerating every (I, sigma).
std::optional<double> brute_lower_constant(const ComplexMatrix& a, int k) {
  const int n = static_cast<int>(a.size());
  const auto w = oracle::logs(abs(a));
  const std::vector<double> traces = oracle::log_tropical_traces(abs(a));
  std::vector<double> coeffs(n + 1);
  for (int j = 0; j <= n; ++j) coeffs[j] = traces[n - j];
  double prefix = 0.0;
  int taken = 0;
  for (const auto& [value, mult] : oracle::tropical_roots(coeffs))
    for (int m = 0; m < mult && taken < k; ++m, ++taken) prefix += value;
  const double best = traces[k];
  if (best == kNegInf || std::abs(best - prefix) > 1e-9) return std::nullopt;

  std::vector<double> subset_best;
  std::vector<std::vector<int>> subsets;
  std::vector<double> all_perms;
  oracle::for_each_subset(n, k, [&](const std::vector<int>& s) {
    double b = kNegInf;
    oracle::for_each_permutation(k, [&](const std::vector<int>& p) {
      double v = 0.0;
      for (int i = 0; i < k; ++i) v += w[s[i]][s[p[i]]];
      b = std::max(b, v);
      all_perms.push_back(v);
    });
    subset_best.push_back(b);
    subsets.push_back(s);
  });
  const double c = static_cast<double>(binomial(n, k)), kf = factorial(k);
  std::optional<double> result;

  const auto top = std::max_element(subset_best.begin(), subset_best.end()) - subset_best.begin();
  double second = kNegInf;
  for (std::size_t i = 0; i < subset_best.size(); ++i)
    if (static_cast<long>(i) != top) second = std::max(second, subset_best[i]);
  if (second < best - 1e-9) {
    const double det = std::abs(oracle::determinant(a.submatrix(subsets[top], subsets[top])));
    const double ratio = det / std::exp(best);
    const double delta = std::exp(second - best);
    if (det > 0 && (c == 1 || delta < ratio / ((c - 1) * kf))) result = (ratio - delta * (c - 1) * kf) / c;
  }

  std::sort(all_perms.begin(), all_perms.end(), std::greater<>());
  const double runner_up = all_perms.size() > 1 ? all_perms[1] : kNegInf;
  if (runner_up < best - 1e-9) {
    const double eta = std::exp(runner_up - best);
    if (eta < 1.0 / (c * kf - 1)) {
      const double l = (1 - eta * (c * kf - 1)) / c;
      if (!result || l > *result) result = l;
    }
  }
  return result;
}

}  // namespace

TEST_CASE("upper constant examples") {
  const ComplexMatrix mono{{0, 2, 0}, {0, 0, Complex(0, -3)}, {0.5, 0, 0}};
  for (int k = 1; k <= 3; ++k) CHECK(upper_constant(mono, k) == doctest::Approx(1.0).epsilon(1e-12));
  ComplexMatrix full(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) full(i, j) = Complex(1 + i, j - 2.5);
  for (int k = 1; k <= 4; ++k)
    CHECK(upper_constant(full, k) == doctest::Approx(binomial(4, k) * factorial(k)).epsilon(1e-12));
  for (int n = 2; n <= 7; ++n) {
    std::vector<Complex> p(n + 1, 1.0);
    const ComplexMatrix c = companion(p);
    for (int k = 1; k <= n; ++k) CHECK(upper_constant(c, k) <= std::min(k + 1, n - k + 1) * (1 + 1e-12));
  }
}

TEST_CASE("upper bound report examples") {
  const BoundReport id = upper_bound_report(ComplexMatrix::identity(4));
  REQUIRE(id.rows.size() == 4);
  for (const BoundRow& r : id.rows) {
    CHECK(r.eig_prefix == doctest::Approx(1.0));
    CHECK(r.trop_prefix == doctest::Approx(1.0));
    CHECK(r.upper_constant == doctest::Approx(1.0));
    CHECK(r.upper_holds);
  }

  Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const BoundReport rep = upper_bound_report(random_monomial_matrix(rng, 2 + trial % 6));
    for (const BoundRow& r : rep.rows) CHECK(std::abs(r.ratio - 1.0) <= 1e-9);
  }

  const BoundReport ones = upper_bound_report(to_complex(NonnegMatrix::ones(4)));
  CHECK(ones.rows.back().eig_prefix == 0.0);
  CHECK(ones.rows.back().upper_constant == doctest::Approx(24.0));
  CHECK(ones.rows.back().upper_holds);
  CHECK(ones.upper_all_hold());
  CHECK(!ones.notes.empty());
  CHECK(ones.provenance.input_hash == input_hash(to_complex(NonnegMatrix::ones(4))));
}

TEST_CASE("report options") {
  const ComplexMatrix a{{1, 2, 3}, {0, 4, 5}, {6, 0, 7}};
  ReportOptions opt;
  opt.k_min = 2;
  opt.k_max = 3;
  const BoundReport rep = upper_bound_report(a, opt);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].k == 2);
  opt.k_max = 4;
  CHECK_THROWS_AS(upper_bound_report(a, opt), InvalidInput);
  CHECK_THROWS_AS(upper_bound_report(ComplexMatrix::identity(13)), SizeCapExceeded);
}

TEST_CASE("upper bound holds on random matrices") {
  Rng rng(62);
  for (int trial = 0; trial < 150; ++trial) {
    const double densities[] = {0.3, 0.7, 1.0};
    const ComplexMatrix a = random_complex_matrix(rng, 2 + trial % 6, densities[trial % 3]);
    const BoundReport rep = upper_bound_report(a);
    for (const BoundRow& r : rep.rows) {
      CHECK(r.upper_holds);
      CHECK(r.ratio <= 1 + 1e-9);
      if (r.eig_prefix > 0)
        CHECK(r.ratio == doctest::Approx(r.eig_prefix / (r.upper_constant * r.trop_prefix)).epsilon(1e-9));
    }
  }
}

TEST_CASE("friedland check examples") {
  const FriedlandCheck ones = friedland_check(NonnegMatrix::ones(3));
  CHECK(ones.rho_max == doctest::Approx(1));
  CHECK(ones.rho == doctest::Approx(3));
  CHECK(ones.rho_pattern == doctest::Approx(3));
  CHECK(ones.holds());
  const FriedlandCheck diag = friedland_check(NonnegMatrix{{2, 0, 0}, {0, 5, 0}, {0, 0, 1}});
  CHECK(diag.rho_max == doctest::Approx(5));
  CHECK(diag.rho == doctest::Approx(5));
  CHECK(diag.rho_pattern == doctest::Approx(1));
  Rng rng(63);
  for (int trial = 0; trial < 20; ++trial) CHECK(friedland_check(random_nonneg_matrix(rng, 6, 1.0)).holds());
}

TEST_CASE("lower bound for diag(8,2,1)") {
  const ComplexMatrix a{{8, 0, 0}, {0, 2, 0}, {0, 0, 1}};
  const LowerBoundResult r = lower_bound(a, 1);
  REQUIRE(r.bound.has_value());
  CHECK(r.bound->constant == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(r.bound->c_k == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.bound->gap == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.bound->subset == std::vector<int>{0});
  CHECK(r.bound->constant * 8 <= 8);
  CHECK(r.diagnostics.empty());
}

TEST_CASE("lower bound inapplicability") {
  const LowerBoundResult tie = lower_bound(ComplexMatrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 1}}, 1);
  CHECK_FALSE(tie.bound.has_value());
  CHECK(has(tie.diagnostics, "I_k not unique"));

  // q = X^2 + 1 X + 4 has one double root, so k = 1 is not saturated.
  const LowerBoundResult unsat = lower_bound(ComplexMatrix{{1, 4}, {1, 0}}, 1);
  CHECK_FALSE(unsat.bound.has_value());
  CHECK(has(unsat.diagnostics, "index not saturated"));

  CHECK_THROWS_AS(lower_bound(ComplexMatrix::identity(3), 4), InvalidInput);
}

TEST_CASE("lower bound matches the theorem formulas") {
  Rng rng(64);
  int applicable = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 4;
    const ComplexMatrix a = trial % 2 ? random_diagonally_dominant(rng, n, 0.3, 3.5, 1e-3)
                                      : random_complex_matrix(rng, n, 0.7);
    const EigenSpectrum eig = eigenvalues(a);
    const std::vector<double> trop = tropical_eigenvalues(a).log_prefix();
    for (int k = 1; k <= n; ++k) {
      const LowerBoundResult got = lower_bound(a, k);
      const std::optional<double> expected = brute_lower_constant(a, k);
      REQUIRE(got.bound.has_value() == expected.has_value());
      if (!expected) {
        CHECK_FALSE(got.diagnostics.empty());
        continue;
      }
      ++applicable;
      CHECK(got.bound->constant == doctest::Approx(*expected).epsilon(1e-9));
      CHECK(got.bound->c_k == doctest::Approx(*expected * binomial(n, k)).epsilon(1e-9));
      CHECK(got.bound->constant * std::exp(trop[k]) <= eig.prefix(k) * (1 + 1e-9));
    }
  }
  CHECK(applicable > 100);
}

TEST_CASE("lower bound via a supplied C_k") {
  const ComplexMatrix a{{8, 0, 0}, {0, 2, 0}, {0, 0, 1}};
  const CkBound b = lower_bound_via_Ck(a, 1, 11.0 / 8.0);
  CHECK(b.bound == doctest::Approx(11.0 / 3.0));
  CHECK(b.eig_prefix == doctest::Approx(8.0));
  CHECK(b.holds);
  CHECK_THROWS_AS(lower_bound_via_Ck(a, 1, 0.0), InvalidInput);
  CHECK_THROWS_AS(lower_bound_via_Ck(a, 1, 2.0), InvalidInput);
  CHECK_THROWS_AS(lower_bound_via_Ck(ComplexMatrix{{1, 4}, {1, 0}}, 1, 0.1), InvalidInput);

  Rng rng(65);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 5;
    ComplexMatrix d(n);
    for (int i = 0; i < n; ++i) d(i, i) = log_uniform(rng, -3, 3) * random_phase(rng);
    for (int k = 1; k <= n; ++k) {
      Complex tr = 0.0;
      const ComplexMatrix comp = compound(d, k);
      for (std::size_t i = 0; i < comp.size(); ++i) tr += comp(i, i);
      if (std::abs(tr) == 0.0) continue;
      const double c_k = std::abs(tr) / tropical_trace(abs(d), k);
      CHECK(lower_bound_via_Ck(d, k, c_k).holds);
    }
  }
}

TEST_CASE("polya constants") {
  CHECK(polya_constant(0) == 1.0);
  CHECK(polya_constant(1) == doctest::Approx(2.0));
  CHECK(polya_constant(2) == doctest::Approx(std::sqrt(27.0 / 4.0)));
}

TEST_CASE("hop check of z^2 - 3z + 2") {
  const std::vector<Complex> p{2.0, -3.0, 1.0};
  const HopReport r = hop_check(p);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].root_prefix == doctest::Approx(2.0));
  CHECK(r.rows[0].trop_prefix == doctest::Approx(3.0));
  CHECK(r.rows[0].lower_constant * r.rows[0].trop_prefix == doctest::Approx(1.5));
  CHECK(r.rows[0].upper_constant * r.rows[0].trop_prefix == doctest::Approx(6.0));
  CHECK(r.rows[1].root_prefix == doctest::Approx(2.0));
  CHECK(r.rows[1].trop_prefix == doctest::Approx(2.0));
  CHECK(r.rows[1].ratio == doctest::Approx(1.0));
  CHECK(r.all_hold());
  CHECK_THROWS_AS(hop_check(std::vector<Complex>{1.0}), InvalidInput);
}

TEST_CASE("hop check of z^n - c") {
  for (int n = 1; n <= 10; ++n) {
    std::vector<Complex> p(n + 1, 0.0);
    p[0] = -7.0;
    p[n] = 1.0;
    const HopReport r = hop_check(p);
    CHECK(r.all_hold());
    for (const HopRow& row : r.rows) CHECK(row.ratio == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("hop check on random polynomials") {
  Rng rng(66);
  for (int trial = 0; trial < 200; ++trial) {
    const HopReport r = hop_check(random_polynomial(rng, 2 + trial % 14, trial % 2 == 1));
    CHECK(r.all_hold());
    for (const HopRow& row : r.rows) {
      CHECK(row.upper_constant <= row.weak_constant * (1 + 1e-12));
      CHECK(row.upper_constant <= row.hadamard_constant * (1 + 1e-12));
    }
  }
}

TEST_CASE("companion comparison") {
  const std::vector<Complex> p4{1.0, -2.0, 3.0, 0.5, 1.0};
  const auto rows = companion_comparison(p4);
  REQUIRE(rows.size() == 4);
  for (const CompanionRow& r : rows) {
    CHECK(r.exact_constant <= r.explicit_constant * (1 + 1e-12));
    CHECK(r.ratio <= r.exact_constant * (1 + 1e-9));
    CHECK(r.holds);
  }
  const std::vector<Complex> p2{2.0, -3.0, 1.0};
  const auto two = companion_comparison(p2);
  CHECK(two[0].explicit_constant == 2.0);
  CHECK(two[0].polya_constant == doctest::Approx(2.0));
  CHECK(two[0].ratio <= 2.0);

  const std::vector<Complex> mono{0.0, 0.0, 0.0, 1.0};
  for (const CompanionRow& r : companion_comparison(mono)) {
    CHECK(r.ratio == doctest::Approx(1.0));
    CHECK(r.holds);
  }
}

TEST_CASE("bound reports round-trip through JSON and CSV") {
  Rng rng(67);
  const ComplexMatrix a = random_diagonally_dominant(rng, 4, 0.3, 2.0, 1e-3);
  ReportOptions opt;
  opt.lower = true;
  const BoundReport rep = upper_bound_report(a, opt);
  const io::json j = io::to_json(rep);
  CHECK(io::bound_report_from_json(io::json::parse(j.dump())) == rep);

  const std::string csv = io::to_csv(rep);
  CHECK(csv.rfind("k,eig_prefix,trop_prefix,upper_constant,ratio,upper_holds,lower_constant,lower_holds,diagnostics\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
}
