#pragma once

// Log-majorization bounds between eigenvalues and tropical eigenvalues, and
// the Hadamard-Ostrowski-Polya bounds for polynomial roots.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tropspec/matrix.hpp"

namespace tropspec {

inline constexpr double kBoundTol = 1e-9;
inline constexpr int kMaxReportSize = 12;
inline constexpr int kMaxLowerBoundSize = 8;

/// U_k = rho(wedge^k_per(pat A)).
double upper_constant(const ComplexMatrix& a, int k, std::size_t size_cap = 0);

/// Outcome of the hypothesis checks for the conditional lower bounds.
struct LowerBound {
  /// "subset" (unique maximizing subset) or "permutation" (unique maximizing permutation).
  std::string variant;
  double constant = 0.0;  // L_k
  double c_k = 0.0;       // C_k = L_k * C(n,k)
  /// delta_k for the subset variant, eta_k for the permutation variant.
  double gap = 0.0;
  std::vector<int> subset;  // I_k, 0-based
};

struct LowerBoundResult {
  std::optional<LowerBound> bound;
  std::vector<std::string> diagnostics;
};

/// Checks, in order: k saturated in q_|A|; a unique k-subset attains the
/// maximal permutation weight; det A[I,I] != 0; the strict bound on delta_k.
/// The unique-permutation variant is tried as well and the larger L_k wins.
/// Exhaustive enumeration, n <= 8.
LowerBoundResult lower_bound(const ComplexMatrix& a, int k);

struct CkBound {
  double bound = 0.0;       // C_k / C(n,k) * gamma_1 ... gamma_k
  double eig_prefix = 0.0;  // |lambda_1 ... lambda_k|
  bool holds = false;
};

/// Lower bound from a caller-supplied C_k > 0 with C_k tr^k_T |A| <= |tr^k A|.
/// Throws InvalidInput when k is not saturated, tr^k A = 0 or C_k is inadmissible.
CkBound lower_bound_via_Ck(const ComplexMatrix& a, int k, double c_k);

struct BoundRow {
  int k = 0;
  double eig_prefix = 0.0;   // |lambda_1 ... lambda_k|
  double trop_prefix = 0.0;  // gamma_1 ... gamma_k
  double upper_constant = 0.0;
  double ratio = 0.0;  // eig_prefix / (U_k trop_prefix), computed from logs
  bool upper_holds = false;
  std::optional<double> lower_constant;
  std::optional<bool> lower_holds;
  std::vector<std::string> diagnostics;
  friend bool operator==(const BoundRow&, const BoundRow&) = default;
};

struct Provenance {
  std::string input_hash;  // FNV-1a of the matrix entries
  double tolerance = kBoundTol;
  double saturation_tolerance = 0.0;
  std::uint64_t seed = 0;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct BoundReport {
  int n = 0;
  std::vector<BoundRow> rows;
  std::vector<std::string> notes;
  Provenance provenance;

  bool upper_all_hold() const;
  /// Some lower bound was computed and then failed: a bug sentinel.
  bool lower_violated() const;
  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

struct ReportOptions {
  int k_min = 1;
  int k_max = 0;  // 0 means n
  bool lower = false;
  double tol = kBoundTol;
  std::uint64_t seed = 0;
};

/// Per-k comparison of |lambda_1 ... lambda_k| with U_k gamma_1 ... gamma_k (n <= 12).
BoundReport upper_bound_report(const ComplexMatrix& a, const ReportOptions& options = {});

struct FriedlandCheck {
  double rho_max = 0.0;
  double rho = 0.0;
  double rho_pattern = 0.0;
  bool lower_holds = false;  // rho_max <= rho
  bool upper_holds = false;  // rho <= rho(pat M) rho_max
  bool holds() const { return lower_holds && upper_holds; }
};

FriedlandCheck friedland_check(const NonnegMatrix& m, double tol = kBoundTol);

/// f(k) = sqrt((k+1)^{k+1} / k^k), f(0) = 1.
double polya_constant(int k);

struct HopRow {
  int k = 0;
  double root_prefix = 0.0;   // |zeta_1 ... zeta_k|
  double trop_prefix = 0.0;   // alpha_1 ... alpha_k
  double ratio = 0.0;         // root_prefix / trop_prefix
  double lower_constant = 0.0;  // 1 / C(n,k)
  double upper_constant = 0.0;  // min(f(k), f(n-k))
  double weak_constant = 0.0;   // sqrt(e (k+1))
  double hadamard_constant = 0.0;  // k+1
  bool lower_holds = false;
  bool upper_holds = false;
};

struct HopReport {
  int n = 0;
  std::vector<Complex> roots;
  std::vector<double> trop_roots;  // max-times, repeated by multiplicity
  std::vector<HopRow> rows;
  bool all_hold() const;
};

/// Checks (1/C(n,k)) alpha_1..alpha_k <= |zeta_1..zeta_k| <= min(f(k), f(n-k)) alpha_1..alpha_k.
HopReport hop_check(std::span<const Complex> coeffs, double tol = kBoundTol);

struct CompanionRow {
  int k = 0;
  double ratio = 0.0;          // |zeta_1..zeta_k| / alpha_1..alpha_k
  double exact_constant = 0.0;  // rho(wedge^k_per(pat C)) for the companion matrix C
  double explicit_constant = 0.0;  // min(k+1, n-k+1)
  double polya_constant = 0.0;     // min(f(k), f(n-k))
  bool holds = false;              // ratio below all three, exact below explicit
};

std::vector<CompanionRow> companion_comparison(std::span<const Complex> coeffs, double tol = kBoundTol);

/// FNV-1a hash of the entries, as 16 hex digits.
std::string input_hash(const ComplexMatrix& a);

}  // namespace tropspec
