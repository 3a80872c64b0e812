#include "tropspec/trop_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tropspec {

TropicalPolynomial::TropicalPolynomial(std::vector<double> log_coeffs) : coeffs_(std::move(log_coeffs)) {
  for (double c : coeffs_)
    if (std::isnan(c) || c == -kNegInf) throw InvalidInput("tropical coefficients must be finite or -inf");
  while (!coeffs_.empty() && coeffs_.back() == kNegInf) coeffs_.pop_back();
  if (coeffs_.empty()) throw InvalidInput("tropical polynomial needs at least one finite coefficient");
}

TropicalPolynomial TropicalPolynomial::from_max_times(std::span<const double> coeffs) {
  std::vector<double> logs;
  logs.reserve(coeffs.size());
  for (double c : coeffs) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw InvalidInput("max-times coefficients must be finite and >= 0");
    logs.push_back(c > 0 ? std::log(c) : kNegInf);
  }
  return TropicalPolynomial(std::move(logs));
}

int TropicalPolynomial::lowest_finite_index() const {
  for (int k = 0; k <= degree(); ++k)
    if (coeffs_[k] != kNegInf) return k;
  return degree();  // unreachable: the leading coefficient is finite
}

double TropicalPolynomial::evaluate(double x) const {
  if (x == kNegInf) return coeffs_.front();
  double best = kNegInf;
  for (int k = 0; k <= degree(); ++k)
    if (coeffs_[k] != kNegInf) best = std::max(best, coeffs_[k] + k * x);
  return best;
}

bool NewtonPolygon::is_saturated(int k) const {
  return std::binary_search(saturated.begin(), saturated.end(), k);
}

NewtonPolygon newton_polygon(const TropicalPolynomial& p, double tol) {
  const int n = p.degree();
  NewtonPolygon poly;
  auto& hull = poly.vertices;
  for (int k = 0; k <= n; ++k) {
    const double v = p.coeff(k);
    if (v == kNegInf) continue;
    // Drop the last corner while it lies on or under the chord to (k, v).
    while (hull.size() >= 2) {
      const HullVertex& a = hull[hull.size() - 2];
      const HullVertex& b = hull.back();
      const double chord = a.value + (b.index - a.index) * (v - a.value) / (k - a.index);
      if (b.value - chord > tol) break;
      hull.pop_back();
    }
    hull.push_back({k, v});
  }

  poly.concavified.assign(n + 1, kNegInf);
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const HullVertex& a = hull[s];
    const HullVertex& b = hull[s + 1];
    const double slope = (b.value - a.value) / (b.index - a.index);
    for (int k = a.index; k < b.index; ++k) poly.concavified[k] = a.value + (k - a.index) * slope;
  }
  poly.concavified[hull.back().index] = hull.back().value;

  for (int k = 0; k <= n; ++k) {
    const double v = p.coeff(k);
    if (v != kNegInf && v >= poly.concavified[k] - tol) poly.saturated.push_back(k);
  }
  return poly;
}

TropicalPolynomial concavify(const TropicalPolynomial& p, double tol) {
  return TropicalPolynomial(newton_polygon(p, tol).concavified);
}

RootMultiset::RootMultiset(std::vector<TropicalRoot> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].multiplicity <= 0) throw InvalidInput("root multiplicities must be positive");
    if (i > 0 && !(entries_[i].value < entries_[i - 1].value))
      throw InvalidInput("root values must be strictly decreasing");
  }
}

int RootMultiset::total_multiplicity() const {
  int total = 0;
  for (const auto& r : entries_) total += r.multiplicity;
  return total;
}

std::vector<double> RootMultiset::log_values() const {
  std::vector<double> out;
  for (const auto& r : entries_) out.insert(out.end(), r.multiplicity, r.value);
  return out;
}

std::vector<double> RootMultiset::max_times_values() const {
  std::vector<double> out = log_values();
  for (double& v : out) v = std::exp(v);
  return out;
}

std::vector<double> RootMultiset::log_prefix_sums() const {
  const std::vector<double> v = log_values();
  std::vector<double> out(v.size() + 1, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) out[i + 1] = out[i] + v[i];
  return out;
}

RootMultiset tropical_roots(const TropicalPolynomial& p, double tol) {
  const NewtonPolygon poly = newton_polygon(p, tol);
  const auto& h = poly.vertices;
  std::vector<TropicalRoot> roots;
  // Slopes decrease left to right, so roots (= -slope) increase; walk backwards.
  for (std::size_t s = h.size(); s-- > 1;) {
    const int width = h[s].index - h[s - 1].index;
    roots.push_back({-(h[s].value - h[s - 1].value) / width, width});
  }
  if (const int k0 = p.lowest_finite_index(); k0 > 0) roots.push_back({kNegInf, k0});
  return RootMultiset(std::move(roots));
}

TropicalPolynomial max_times_relative(std::span<const Complex> coeffs) {
  std::vector<double> logs;
  logs.reserve(coeffs.size());
  for (const Complex& c : coeffs) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InvalidInput("coefficients must be finite");
    const double m = std::abs(c);
    logs.push_back(m > 0 ? std::log(m) : kNegInf);
  }
  if (std::all_of(logs.begin(), logs.end(), [](double v) { return v == kNegInf; }))
    throw InvalidInput("zero polynomial has no tropical roots");
  return TropicalPolynomial(std::move(logs));
}

}  // namespace tropspec
