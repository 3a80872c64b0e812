#pragma once

// Tropical (max-plus) polynomials, Newton polygons and tropical roots.
//
// The canonical domain is max-plus: a coefficient is log|a_k| and -inf is the
// tropical zero. Max-times values are obtained through exp at the boundary.

#include <span>
#include <vector>

#include "tropspec/matrix.hpp"

namespace tropspec {

/// Absolute tolerance on log values used to decide whether a coefficient lies
/// on the Newton polygon.
inline constexpr double kDefaultSaturationTol = 1e-9;

class TropicalPolynomial {
 public:
  /// Log-domain coefficients, index 0 first. Trailing -inf entries are dropped;
  /// at least one coefficient must be finite.
  explicit TropicalPolynomial(std::vector<double> log_coeffs);

  /// From max-times coefficients (>= 0): a_k -> log a_k.
  static TropicalPolynomial from_max_times(std::span<const double> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int k) const { return k >= 0 && k <= degree() ? coeffs_[k] : kNegInf; }
  double leading() const { return coeffs_.back(); }
  /// Smallest index with a finite coefficient.
  int lowest_finite_index() const;

  /// max_k (a_k + k x), for x in R or -inf.
  double evaluate(double x) const;

  friend bool operator==(const TropicalPolynomial&, const TropicalPolynomial&) = default;

 private:
  std::vector<double> coeffs_;
};

struct HullVertex {
  int index;
  double value;
  friend bool operator==(const HullVertex&, const HullVertex&) = default;
};

struct NewtonPolygon {
  /// Upper-hull corners, increasing index, strictly decreasing slopes.
  std::vector<HullVertex> vertices;
  /// Hull values at 0..n; -inf below the lowest finite index.
  std::vector<double> concavified;
  /// Indices k with a_k == concavified[k] (within tolerance), increasing.
  std::vector<int> saturated;

  bool is_saturated(int k) const;
};

/// Upper concave hull of {(k, a_k) : a_k > -inf} by monotone chain. Points
/// within `tol` of a hull edge are not vertices but are reported saturated.
NewtonPolygon newton_polygon(const TropicalPolynomial& p, double tol = kDefaultSaturationTol);

/// The concavified polynomial (same polynomial function, concave coefficients).
TropicalPolynomial concavify(const TropicalPolynomial& p, double tol = kDefaultSaturationTol);

struct TropicalRoot {
  double value;  // max-plus; -inf is the root "0" of the max-times view
  int multiplicity;
  friend bool operator==(const TropicalRoot&, const TropicalRoot&) = default;
};

/// Tropical roots sorted by strictly decreasing value; total multiplicity = degree.
class RootMultiset {
 public:
  RootMultiset() = default;
  explicit RootMultiset(std::vector<TropicalRoot> entries);

  const std::vector<TropicalRoot>& entries() const { return entries_; }
  int total_multiplicity() const;

  /// Roots repeated by multiplicity, nonincreasing, max-plus values.
  std::vector<double> log_values() const;
  /// Same, mapped through exp (the max-times roots; -inf -> 0).
  std::vector<double> max_times_values() const;
  /// log(alpha_1 * ... * alpha_k) for k = 0..n (entry 0 is 0).
  std::vector<double> log_prefix_sums() const;

  friend bool operator==(const RootMultiset&, const RootMultiset&) = default;

 private:
  std::vector<TropicalRoot> entries_;
};

/// One root per hull segment (value = -slope, multiplicity = segment width),
/// plus a root at -inf of multiplicity lowest_finite_index() when it is > 0.
RootMultiset tropical_roots(const TropicalPolynomial& p, double tol = kDefaultSaturationTol);

/// Max-plus relative of a complex polynomial: coefficients log|a_k|.
/// Trailing zero coefficients are dropped; the zero polynomial is rejected.
TropicalPolynomial max_times_relative(std::span<const Complex> coeffs);

}  // namespace tropspec
