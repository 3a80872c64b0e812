#include "tropspec/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>

#include "tropspec/assignment.hpp"
#include "tropspec/combinatorics.hpp"
#include "tropspec/compounds.hpp"
#include "tropspec/dense_eig.hpp"
#include "tropspec/random.hpp"
#include "tropspec/trop_spectra.hpp"

namespace tropspec {

namespace {

constexpr std::size_t kMaxFailures = 10;

// Collects inequality checks lhs <= rhs (1 + tol) for one instance.
class Checker {
 public:
  Checker(double tol, double& worst) : tol_(tol), worst_(worst) {}

  void leq(double lhs, double rhs, const std::string& what) {
    if (lhs <= 0.0) return;
    const double ratio = rhs > 0.0 ? lhs / rhs : std::numeric_limits<double>::infinity();
    worst_ = std::max(worst_, ratio);
    if (!(ratio <= 1.0 + tol_)) fail(what + ": " + fmt(lhs) + " > " + fmt(rhs));
  }
  void expect(bool cond, const std::string& what) {
    if (!cond) fail(what);
  }
  void fail(const std::string& what) {
    if (message_.empty()) message_ = what;
    ok_ = false;
  }
  bool ok() const { return ok_; }
  const std::string& message() const { return message_; }

  static std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
  }

 private:
  double tol_;
  double& worst_;
  bool ok_ = true;
  std::string message_;
};

Rng instance_rng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

using InstanceFn = std::function<void(Rng&, int index, int nmax, Checker&, long& extra)>;

void upper_instance(Rng& rng, int, int nmax, Checker& c, long&) {
  static constexpr std::array<double, 3> densities{0.3, 0.7, 1.0};
  const int n = uniform_int(rng, 2, nmax);
  const double density = densities[uniform_int(rng, 0, 2)];
  const ComplexMatrix a = random_complex_matrix(rng, n, density);
  const BoundReport rep = upper_bound_report(a);
  for (const BoundRow& row : rep.rows)
    c.leq(row.ratio, 1.0, "n=" + std::to_string(n) + " k=" + std::to_string(row.k) + " ratio");
}

void lower_instance(Rng& rng, int index, int nmax, Checker& c, long& applicable) {
  const int n = uniform_int(rng, 2, std::min(nmax, kMaxLowerBoundSize));
  ComplexMatrix a;
  int tie_k = 0;
  if (index == 0) {
    a = ComplexMatrix{{8, 0, 0}, {0, 2, 0}, {0, 0, 1}};
  } else {
    a = random_diagonally_dominant(rng, n, 0.3, 3.5, 1e-3);
    if (index % 4 == 3) {
      // Give the t-th and (t+1)-th largest diagonal entries the same modulus.
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](int x, int y) { return std::abs(a(x, x)) > std::abs(a(y, y)); });
      tie_k = uniform_int(rng, 1, n - 1);
      const int p = order[tie_k - 1], q = order[tie_k];
      a(q, q) = std::abs(a(p, p)) * random_phase(rng);
    }
  }
  const int dim = static_cast<int>(a.size());
  const std::vector<double> eig = eigenvalues(a).log_prefix;
  const std::vector<double> trop = tropical_eigenvalues(abs(a)).log_prefix();
  for (int k = 1; k <= dim; ++k) {
    const LowerBoundResult res = lower_bound(a, k);
    const std::string where = "n=" + std::to_string(dim) + " k=" + std::to_string(k);
    if (k == tie_k) {
      c.expect(!res.bound && std::find(res.diagnostics.begin(), res.diagnostics.end(), "I_k not unique") !=
                                 res.diagnostics.end(),
               where + ": tie not reported as inapplicable");
      continue;
    }
    if (!res.bound) continue;
    ++applicable;
    c.leq(res.bound->constant * std::exp(trop[k]), std::exp(eig[k]), where + " L_k gamma-prefix vs eigen prefix");
    if (index == 0 && k == 1)
      c.expect(std::abs(res.bound->constant - 1.0 / 6.0) <= 1e-12, "diag(8,2,1) k=1: L_1 != 1/6");
  }
}

void hop_instance(Rng& rng, int, int nmax, Checker& c, long&) {
  const int degree = uniform_int(rng, 2, nmax);
  const bool sparse = uniform_int(rng, 0, 1) == 1;
  const std::vector<Complex> p = random_polynomial(rng, degree, sparse);
  const HopReport rep = hop_check(p);
  for (const HopRow& row : rep.rows) {
    const std::string where = "degree=" + std::to_string(degree) + " k=" + std::to_string(row.k);
    c.leq(row.lower_constant * row.trop_prefix, row.root_prefix, where + " lower");
    c.leq(row.root_prefix, row.upper_constant * row.trop_prefix, where + " upper");
    c.expect(row.lower_holds && row.upper_holds, where + " verdict");
  }
}

void proof_chain_instance(Rng& rng, int, int nmax, Checker& c, long&) {
  static constexpr std::array<double, 3> densities{0.3, 0.7, 1.0};
  const int n = uniform_int(rng, 2, nmax);
  const ComplexMatrix a = random_complex_matrix(rng, n, densities[uniform_int(rng, 0, 2)]);
  const NonnegMatrix m = abs(a);
  const std::vector<double> eig = eigenvalues(a).log_prefix;
  const std::vector<double> trop = tropical_eigenvalues(m).log_prefix();
  const NonnegMatrix pat = pattern(a);
  for (int k = 1; k <= n; ++k) {
    const std::string where = "n=" + std::to_string(n) + " k=" + std::to_string(k);
    const NonnegMatrix per = permanental_compound(pat, k);
    const NonnegMatrix ext = tropical_exterior_power(m, k);
    const double rho_product = spectral_radius(hadamard(per, ext));
    const double u = spectral_radius(per);
    const double rho_t = tropical_spectral_radius(ext);
    c.leq(std::exp(eig[k]), rho_product, where + " link 1");
    c.leq(rho_product, u * rho_t, where + " link 2");
    c.leq(u * rho_t, u * std::exp(trop[k]), where + " link 3");
  }
}

void friedland_instance(Rng& rng, int, int nmax, Checker& c, long&) {
  static constexpr std::array<double, 7> rs{1, 2, 4, 8, 16, 32, 64};
  const int n = uniform_int(rng, 2, nmax);
  const NonnegMatrix m = random_nonneg_matrix(rng, n, 1.0);
  const FriedlandCheck f = friedland_check(m);
  c.expect(f.holds(), "n=" + std::to_string(n) + " friedland_check verdict");
  for (const CurvePoint& p : limit_eigenvalue_curve(m, rs)) {
    const std::string where = "n=" + std::to_string(n) + " r=" + Checker::fmt(p.r);
    c.leq(f.rho_max, p.value, where + " lower");
    c.leq(p.value, std::pow(f.rho_pattern, 1.0 / p.r) * f.rho_max, where + " upper");
  }
}

void circulation_instance(Rng& rng, int, int nmax, Checker& c, long& parts_total) {
  const int n = uniform_int(rng, 1, nmax);
  const CirculationMatrix b(random_circulation(rng, n, 10));
  const auto parts = decompose_circulation(b);
  parts_total += static_cast<long>(parts.size());
  SquareMatrix<std::int64_t> sum(n);
  for (const PartialPermutation& p : parts) {
    c.expect(p.is_valid(n) && p.is_cycle_structured() && !p.support.empty(), "invalid part");
    const auto pm = p.to_matrix(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sum(i, j) += pm(i, j);
  }
  c.expect(sum == b.matrix(), "n=" + std::to_string(n) + " reconstruction differs");
  c.expect(static_cast<std::int64_t>(parts.size()) <= b.weight(), "more parts than the weight");
}

struct SuiteDef {
  const char* name;
  int default_nmax;
  const char* extra_label;
  void (*fn)(Rng&, int, int, Checker&, long&);
};

constexpr std::array<SuiteDef, 6> kSuites{{
    {"upper", 7, "", upper_instance},
    {"lower", 5, "applicable lower bounds", lower_instance},
    {"hop", 15, "", hop_instance},
    {"proof-chain", 5, "", proof_chain_instance},
    {"friedland", 6, "", friedland_instance},
    {"circulation", 8, "parts", circulation_instance},
}};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const SuiteDef& s : kSuites) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  const auto it = std::find_if(kSuites.begin(), kSuites.end(), [&](const SuiteDef& s) { return name == s.name; });
  if (it == kSuites.end()) throw InvalidInput("unknown suite '" + name + "'");
  if (options.instances < 0) throw InvalidInput("instance count must be >= 0");
  const int nmax = options.nmax > 0 ? options.nmax : it->default_nmax;
  if (nmax < 2 && name != "circulation") throw InvalidInput("--nmax must be >= 2");

  SuiteResult res;
  res.suite = name;
  res.instances = options.instances;
  res.extra_label = it->extra_label;
  for (int i = 0; i < options.instances; ++i) {
    Rng rng = instance_rng(options.seed, i);
    Checker check(options.tol, res.worst_ratio);
    try {
      it->fn(rng, i, nmax, check, res.extra);
    } catch (const Error& e) {
      check.fail(std::string("error: ") + e.what());
    }
    if (check.ok())
      ++res.passed;
    else if (res.failures.size() < kMaxFailures)
      res.failures.push_back("instance " + std::to_string(i) + ": " + check.message());
  }
  return res;
}

}  // namespace tropspec
