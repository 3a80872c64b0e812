#include "tropspec/trop_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tropspec/assignment.hpp"
#include "tropspec/combinatorics.hpp"

namespace tropspec {

namespace {

double to_max_times(double log_value) { return log_value == kNegInf ? 0.0 : std::exp(log_value); }

double log_trace(const WeightMatrix& w, int k) {
  if (k == 0) return 0.0;
  double best = kNegInf;
  for (const auto& s : k_subsets(static_cast<int>(w.size()), k))
    best = std::max(best, assignment_value(w.submatrix(s, s)));
  return best;
}

// Supporting line t -> intercept + slope * t of f(t) = log per_T(M + e^t I).
struct Line {
  int slope;
  double intercept;
  double at(double t) const { return intercept + slope * t; }
};

struct Probe {
  double value;
  Line line;
};

Probe probe(const WeightMatrix& w, double t) {
  const std::size_t n = w.size();
  WeightMatrix wt = w;
  for (std::size_t i = 0; i < n; ++i) wt.set(i, i, std::max(w(i, i), t));
  const AssignmentWithPerm sol = assignment_solve(wt);
  // M + e^t I always admits the identity, so the problem is feasible.
  int slope = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (sol.perm[i] == static_cast<int>(i) && t >= w(i, i)) ++slope;
  return {sol.value, {slope, sol.value - slope * t}};
}

void collect_breakpoints(const WeightMatrix& w, const Line& left, const Line& right, double tol,
                         std::vector<TropicalRoot>& out) {
  if (right.slope <= left.slope) return;
  const double t = (left.intercept - right.intercept) / (right.slope - left.slope);
  const Probe p = probe(w, t);
  const double lower = std::max(left.at(t), right.at(t));
  if (p.value <= lower + tol || p.line.slope <= left.slope || p.line.slope >= right.slope) {
    out.push_back({t, right.slope - left.slope});
    return;
  }
  collect_breakpoints(w, left, p.line, tol, out);
  collect_breakpoints(w, p.line, right, tol, out);
}

TropicalSpectrum spectrum_by_evaluation(const NonnegMatrix& m, double tol) {
  const WeightMatrix w = WeightMatrix::log_of(m);
  const int n = static_cast<int>(m.size());
  double lmax = 0.0;
  for (double x : w.dense().data())
    if (x != kNegInf) lmax = std::max(lmax, std::abs(x));
  // Every finite breakpoint is a difference quotient of sums of <= n logs.
  const double bound = 2.0 * n * (lmax + 1.0) + 1.0;
  const Probe lo = probe(w, -bound);
  const Probe hi = probe(w, bound);

  std::vector<TropicalRoot> roots;
  collect_breakpoints(w, lo.line, hi.line, tol, roots);
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) { return a.value > b.value; });
  if (lo.line.slope > 0) roots.push_back({kNegInf, lo.line.slope});

  TropicalSpectrum spec;
  spec.gammas = RootMultiset(std::move(roots));
  // Vieta: the concavified coefficient of X^{n-k} is gamma_1 + ... + gamma_k.
  const std::vector<double> prefix = spec.gammas.log_prefix_sums();
  std::vector<double> coeffs(n + 1);
  for (int k = 0; k <= n; ++k) coeffs[n - k] = prefix[k];
  spec.charpoly = TropicalPolynomial(std::move(coeffs));
  return spec;
}

TropicalSpectrum spectrum_by_coefficients(const NonnegMatrix& m, double tol) {
  const TropicalPolynomial q = tropical_char_poly(m);
  const NewtonPolygon poly = newton_polygon(q, tol);
  TropicalSpectrum spec;
  spec.gammas = tropical_roots(q, tol);
  spec.charpoly = TropicalPolynomial(poly.concavified);
  spec.saturated = poly.saturated;
  return spec;
}

}  // namespace

double tropical_permanent(const NonnegMatrix& m) { return to_max_times(assignment_value(WeightMatrix::log_of(m))); }

double tropical_trace(const NonnegMatrix& m, int k) {
  if (k < 0 || k > static_cast<int>(m.size())) throw InvalidInput("tropical trace index must lie in [0, n]");
  return to_max_times(log_trace(WeightMatrix::log_of(m), k));
}

std::vector<double> log_tropical_traces(const NonnegMatrix& m) {
  const WeightMatrix w = WeightMatrix::log_of(m);
  const int n = static_cast<int>(m.size());
  std::vector<double> out(n + 1);
  for (int k = 0; k <= n; ++k) out[k] = log_trace(w, k);
  return out;
}

TropicalPolynomial tropical_char_poly(const NonnegMatrix& m) {
  const std::vector<double> traces = log_tropical_traces(m);
  const int n = static_cast<int>(m.size());
  std::vector<double> coeffs(n + 1);
  for (int k = 0; k <= n; ++k) coeffs[n - k] = traces[k];
  return TropicalPolynomial(std::move(coeffs));
}

bool TropicalSpectrum::trace_index_saturated(int k) const {
  if (!saturated) throw InvalidInput("saturated indices are only known from the coefficient route");
  const int n = static_cast<int>(size());
  return std::binary_search(saturated->begin(), saturated->end(), n - k);
}

TropicalSpectrum tropical_eigenvalues(const NonnegMatrix& m, EigenRoute route, double tol) {
  if (m.size() == 0) throw InvalidInput("tropical eigenvalues need n >= 1");
  return route == EigenRoute::Coefficients ? spectrum_by_coefficients(m, tol) : spectrum_by_evaluation(m, tol);
}

TropicalSpectrum tropical_eigenvalues(const ComplexMatrix& a, EigenRoute route, double tol) {
  return tropical_eigenvalues(abs(a), route, tol);
}

NonnegMatrix tropical_exterior_power(const NonnegMatrix& m, int k, std::size_t size_cap) {
  const int n = static_cast<int>(m.size());
  if (k < 1 || k > n) throw InvalidInput("exterior power order must lie in [1, n]");
  const std::size_t rows = binomial(n, k);
  if (size_cap == 0) size_cap = default_size_cap();
  if (rows > size_cap) {
    const std::string msg = "tropical exterior power has " + std::to_string(rows) + " rows (cap " +
                            std::to_string(size_cap) + ")";
    warn(msg.c_str());
  }
  const WeightMatrix w = WeightMatrix::log_of(m);
  const auto subsets = k_subsets(n, k);
  NonnegMatrix out(rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < rows; ++c)
      out.set(r, c, to_max_times(assignment_value(w.submatrix(subsets[r], subsets[c]))));
  return out;
}

double tropical_spectral_radius(const NonnegMatrix& m) { return max_cycle_mean(m); }

std::vector<double> log_concavified_traces(const NonnegMatrix& m, double tol) {
  const NewtonPolygon poly = newton_polygon(tropical_char_poly(m), tol);
  const int n = static_cast<int>(m.size());
  std::vector<double> out(n + 1);
  for (int k = 0; k <= n; ++k) out[k] = poly.concavified[n - k];
  return out;
}

}  // namespace tropspec
