#include "tropspec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "tropspec/assignment.hpp"
#include "tropspec/combinatorics.hpp"
#include "tropspec/compounds.hpp"
#include "tropspec/dense_eig.hpp"
#include "tropspec/trop_poly.hpp"
#include "tropspec/trop_spectra.hpp"

namespace tropspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format(const char* fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return buf;
}

// lhs <= rhs * (1 + tol), both given as logs (-inf allowed).
bool log_leq(double lhs, double rhs, double tol) {
  if (lhs == kNegInf) return true;
  if (rhs == kNegInf) return false;
  return lhs <= rhs + std::log1p(tol);
}

double log_safe(double x) { return x > 0.0 ? std::log(x) : kNegInf; }

std::vector<double> log_root_prefix(const std::vector<Complex>& z) {
  std::vector<double> out(z.size() + 1, 0.0);
  for (std::size_t i = 0; i < z.size(); ++i) out[i + 1] = out[i] + log_safe(std::abs(z[i]));
  return out;
}

double log_polya(int k) {
  if (k == 0) return 0.0;
  return 0.5 * ((k + 1) * std::log(static_cast<double>(k + 1)) - k * std::log(static_cast<double>(k)));
}

void check_k(int n, int k) {
  if (k < 1 || k > n) throw InvalidInput("k must lie in [1, n]");
}

struct Enumeration {
  std::vector<std::vector<int>> subsets;
  std::vector<double> subset_best;  // log max weight per subset
  double best = kNegInf;            // log tr^k_T |A|
  double second_perm = kNegInf;     // second largest permutation weight overall
};

Enumeration enumerate(const WeightMatrix& w, int k) {
  Enumeration e;
  e.subsets = k_subsets(static_cast<int>(w.size()), k);
  std::vector<int> p(k);
  for (const auto& s : e.subsets) {
    std::iota(p.begin(), p.end(), 0);
    double sbest = kNegInf;
    do {
      double v = 0.0;
      for (int i = 0; i < k && v != kNegInf; ++i) v += w(s[i], s[p[i]]);
      sbest = std::max(sbest, v);
      if (v > e.best) {
        e.second_perm = e.best;
        e.best = v;
      } else if (v > e.second_perm) {
        e.second_perm = v;
      }
    } while (std::next_permutation(p.begin(), p.end()));
    e.subset_best.push_back(sbest);
  }
  return e;
}

}  // namespace

double upper_constant(const ComplexMatrix& a, int k, std::size_t size_cap) {
  check_k(static_cast<int>(a.size()), k);
  return spectral_radius(permanental_compound(pattern(a), k, size_cap));
}

LowerBoundResult lower_bound(const ComplexMatrix& a, int k) {
  const int n = static_cast<int>(a.size());
  check_k(n, k);
  if (n > kMaxLowerBoundSize)
    throw SizeCapExceeded("lower bound hypotheses are checked by enumeration for n <= " +
                          std::to_string(kMaxLowerBoundSize));
  LowerBoundResult res;
  const NonnegMatrix m = abs(a);
  if (!tropical_eigenvalues(m).trace_index_saturated(k)) {
    res.diagnostics.push_back("index not saturated");
    return res;
  }
  const Enumeration e = enumerate(WeightMatrix::log_of(m), k);
  if (e.best == kNegInf) {
    res.diagnostics.push_back("tr^k_T |A| = 0");
    return res;
  }
  const double count = static_cast<double>(binomial(n, k));
  const double kfact = factorial(k);

  // Subset variant.
  std::size_t arg = 0;
  while (e.subset_best[arg] != e.best) ++arg;
  double other = kNegInf;
  for (std::size_t i = 0; i < e.subsets.size(); ++i)
    if (i != arg) other = std::max(other, e.subset_best[i]);
  std::optional<LowerBound> subset_bound;
  if (other != kNegInf && other >= e.best - kBoundTol) {
    res.diagnostics.push_back("I_k not unique");
  } else {
    const std::vector<int>& ibar = e.subsets[arg];
    const double det = std::abs(determinant(a.submatrix(ibar, ibar)));
    if (det == 0.0) {
      res.diagnostics.push_back("det A[I_k, I_k] = 0");
    } else {
      const double det_ratio = std::exp(std::log(det) - e.best);
      const double delta = other == kNegInf ? 0.0 : std::exp(other - e.best);
      const double slack = det_ratio - delta * (count - 1.0) * kfact;
      if (slack > 0.0) {
        subset_bound = LowerBound{"subset", slack / count, slack, delta, ibar};
      } else {
        res.diagnostics.push_back(format("delta_k hypothesis fails (delta_k = %.6g, needs < %.6g)", delta,
                                         det_ratio / ((count - 1.0) * kfact)));
      }
    }
  }

  // Unique-permutation variant.
  std::optional<LowerBound> perm_bound;
  if (e.second_perm != kNegInf && e.second_perm >= e.best - kBoundTol) {
    res.diagnostics.push_back("maximizing permutation not unique");
  } else {
    const double eta = e.second_perm == kNegInf ? 0.0 : std::exp(e.second_perm - e.best);
    const double terms = count * kfact - 1.0;
    const double slack = 1.0 - eta * terms;
    if (slack > 0.0) {
      perm_bound = LowerBound{"permutation", slack / count, slack, eta, e.subsets[arg]};
    } else {
      res.diagnostics.push_back(format("eta_k hypothesis fails (eta_k = %.6g, needs < %.6g)", eta, 1.0 / terms));
    }
  }

  if (subset_bound && (!perm_bound || subset_bound->constant >= perm_bound->constant))
    res.bound = subset_bound;
  else if (perm_bound)
    res.bound = perm_bound;
  if (res.bound) res.diagnostics.clear();
  return res;
}

CkBound lower_bound_via_Ck(const ComplexMatrix& a, int k, double c_k) {
  const int n = static_cast<int>(a.size());
  check_k(n, k);
  if (!(c_k > 0.0) || !std::isfinite(c_k)) throw InvalidInput("C_k must be a positive finite constant");
  const NonnegMatrix m = abs(a);
  const TropicalSpectrum ts = tropical_eigenvalues(m);
  if (!ts.trace_index_saturated(k)) throw InvalidInput("k is not a saturated index of q_|A|");
  const std::vector<Complex> p = char_poly(a);
  const double trace_k = std::abs(p[n - k]);
  if (trace_k == 0.0) throw InvalidInput("tr^k A = 0");
  const double trop_trace = log_tropical_traces(m)[k];
  if (!log_leq(std::log(c_k) + trop_trace, std::log(trace_k), kBoundTol))
    throw InvalidInput(format("C_k = %.6g violates C_k tr^k_T|A| <= |tr^k A| (largest admissible %.6g)", c_k,
                              std::exp(std::log(trace_k) - trop_trace)));
  const double log_bound = std::log(c_k / static_cast<double>(binomial(n, k))) + ts.log_prefix()[k];
  const double log_eig = eigenvalues(a).log_prefix[k];
  return {std::exp(log_bound), std::exp(log_eig), log_leq(log_bound, log_eig, kBoundTol)};
}

bool BoundReport::upper_all_hold() const {
  return std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.upper_holds; });
}

bool BoundReport::lower_violated() const {
  return std::any_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.lower_holds == false; });
}

BoundReport upper_bound_report(const ComplexMatrix& a, const ReportOptions& options) {
  const int n = static_cast<int>(a.size());
  if (n < 1 || n > kMaxReportSize)
    throw SizeCapExceeded("bound reports support 1 <= n <= " + std::to_string(kMaxReportSize));
  const int k_max = options.k_max == 0 ? n : options.k_max;
  if (options.k_min < 1 || k_max > n || options.k_min > k_max) throw InvalidInput("k range must lie in [1, n]");

  BoundReport rep;
  rep.n = n;
  rep.provenance = {input_hash(a), options.tol, kDefaultSaturationTol, options.seed};
  const EigenSpectrum eig = eigenvalues(a);
  const TropicalSpectrum trop = tropical_eigenvalues(abs(a));
  const std::vector<double> trop_prefix = trop.log_prefix();
  const NonnegMatrix pat = pattern(a);

  for (int k = options.k_min; k <= k_max; ++k) {
    BoundRow row;
    row.k = k;
    const double le = eig.log_prefix[k];
    const double lt = trop_prefix[k];
    row.eig_prefix = std::exp(le);
    row.trop_prefix = std::exp(lt);
    row.upper_constant = spectral_radius(permanental_compound(pat, k));
    const double lu = log_safe(row.upper_constant);
    if (le == kNegInf)
      row.ratio = 0.0;
    else if (lt == kNegInf || lu == kNegInf)
      row.ratio = kInf;
    else
      row.ratio = std::exp(le - lu - lt);
    row.upper_holds = log_leq(le, lu + lt, options.tol);
    if (options.lower) {
      if (n > kMaxLowerBoundSize) {
        row.diagnostics.push_back("lower bound enumeration limited to n <= " + std::to_string(kMaxLowerBoundSize));
      } else {
        LowerBoundResult lb = lower_bound(a, k);
        if (lb.bound) {
          row.lower_constant = lb.bound->constant;
          row.lower_holds = log_leq(std::log(lb.bound->constant) + lt, le, options.tol);
          row.diagnostics.push_back(lb.bound->variant + " variant");
        }
        for (auto& d : lb.diagnostics) row.diagnostics.push_back(std::move(d));
      }
    }
    rep.rows.push_back(std::move(row));
  }

  const bool full = std::all_of(pat.dense().data().begin(), pat.dense().data().end(), [](double v) { return v != 0.0; });
  if (full && n >= 3) {
    double log_hadamard = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += std::norm(a(i, j));
      log_hadamard += 0.5 * std::log(s);
    }
    const double log_upper = std::log(factorial(n)) + trop_prefix[n];
    rep.notes.push_back(format("full pattern: |det A| = %.6g <= Hadamard bound %.6g < U_n gamma_1...gamma_n = %.6g",
                               std::exp(eig.log_prefix[n]), std::exp(log_hadamard), std::exp(log_upper)));
    if (log_hadamard >= log_upper)
      rep.notes.push_back("full pattern: Hadamard bound does not improve on U_n gamma_1...gamma_n here");
  }
  return rep;
}

FriedlandCheck friedland_check(const NonnegMatrix& m, double tol) {
  FriedlandCheck c;
  c.rho_max = max_cycle_mean(m);
  c.rho = spectral_radius(m);
  c.rho_pattern = spectral_radius(pattern(m));
  c.lower_holds = c.rho_max <= c.rho * (1.0 + tol);
  c.upper_holds = c.rho <= c.rho_pattern * c.rho_max * (1.0 + tol);
  return c;
}

double polya_constant(int k) {
  if (k < 0) throw InvalidInput("Polya constant needs k >= 0");
  return std::exp(log_polya(k));
}

bool HopReport::all_hold() const {
  return std::all_of(rows.begin(), rows.end(), [](const HopRow& r) { return r.lower_holds && r.upper_holds; });
}

HopReport hop_check(std::span<const Complex> coeffs, double tol) {
  if (coeffs.size() < 2) throw InvalidInput("degree >= 1 required");
  if (coeffs.back() == Complex(0.0)) throw InvalidInput("leading coefficient must be nonzero");
  const int n = static_cast<int>(coeffs.size()) - 1;
  HopReport rep;
  rep.n = n;
  rep.roots = poly_roots(coeffs).roots;
  const RootMultiset alpha = tropical_roots(max_times_relative(coeffs));
  rep.trop_roots = alpha.max_times_values();
  const std::vector<double> lz = log_root_prefix(rep.roots);
  const std::vector<double> la = alpha.log_prefix_sums();
  for (int k = 1; k <= n; ++k) {
    HopRow row;
    row.k = k;
    row.root_prefix = std::exp(lz[k]);
    row.trop_prefix = std::exp(la[k]);
    row.ratio = lz[k] == kNegInf && la[k] == kNegInf ? 1.0 : std::exp(lz[k] - la[k]);
    const double log_count = std::log(static_cast<double>(binomial(n, k)));
    const double log_upper = std::min(log_polya(k), log_polya(n - k));
    row.lower_constant = std::exp(-log_count);
    row.upper_constant = std::exp(log_upper);
    row.weak_constant = std::sqrt(std::exp(1.0) * (k + 1));
    row.hadamard_constant = k + 1;
    row.lower_holds = log_leq(la[k] - log_count, lz[k], tol);
    row.upper_holds = log_leq(lz[k], la[k] + log_upper, tol);
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<CompanionRow> companion_comparison(std::span<const Complex> coeffs, double tol) {
  const HopReport hop = hop_check(coeffs, tol);
  const int n = hop.n;
  const NonnegMatrix pat = pattern(companion(coeffs));
  std::vector<CompanionRow> out;
  for (const HopRow& h : hop.rows) {
    const int k = h.k;
    CompanionRow row;
    row.k = k;
    row.ratio = h.ratio;
    row.exact_constant = spectral_radius(permanental_compound(pat, k));
    row.explicit_constant = std::min(k + 1, n - k + 1);
    row.polya_constant = h.upper_constant;
    const double lz = log_safe(h.root_prefix);
    const double la = log_safe(h.trop_prefix);
    row.holds = log_leq(lz, log_safe(row.exact_constant) + la, tol) &&
                log_leq(lz, std::log(row.explicit_constant) + la, tol) &&
                log_leq(lz, std::log(row.polya_constant) + la, tol) &&
                row.exact_constant <= row.explicit_constant * (1.0 + tol);
    out.push_back(row);
  }
  return out;
}

std::string input_hash(const ComplexMatrix& a) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* p, std::size_t len) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  const std::uint64_t n = a.size();
  mix(&n, sizeof n);
  for (const Complex& z : a.data()) {
    const double re = z.real() + 0.0, im = z.imag() + 0.0;  // folds -0.0 into 0.0
    mix(&re, sizeof re);
    mix(&im, sizeof im);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace tropspec
