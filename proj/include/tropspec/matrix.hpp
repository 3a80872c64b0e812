#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tropspec/errors.hpp"

namespace tropspec {

using Complex = std::complex<double>;

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Dense square matrix, row-major.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), a_(n * n, fill) {}
  SquareMatrix(std::size_t n, std::vector<T> row_major) : n_(n), a_(std::move(row_major)) {
    if (a_.size() != n * n) throw InvalidInput("matrix storage size does not match n*n");
  }
  SquareMatrix(std::initializer_list<std::initializer_list<T>> rows) : n_(rows.size()) {
    a_.reserve(n_ * n_);
    for (const auto& r : rows) {
      if (r.size() != n_) throw InvalidInput("matrix rows must all have length n");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  std::size_t size() const { return n_; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  std::span<const T> data() const { return a_; }
  std::span<const T> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  /// Submatrix A[rows, cols]; both index lists must have the same length.
  SquareMatrix submatrix(std::span<const int> rows, std::span<const int> cols) const {
    if (rows.size() != cols.size()) throw InvalidInput("submatrix needs |I| = |J|");
    SquareMatrix s(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> a_;
};

using ComplexMatrix = SquareMatrix<Complex>;

/// Square matrix with finite entries >= 0 (max-times domain).
class NonnegMatrix {
 public:
  NonnegMatrix() = default;
  explicit NonnegMatrix(std::size_t n) : m_(n, 0.0) {}
  explicit NonnegMatrix(SquareMatrix<double> m) : m_(std::move(m)) { validate(); }
  NonnegMatrix(std::initializer_list<std::initializer_list<double>> rows) : m_(rows) {
    validate();
  }

  static NonnegMatrix identity(std::size_t n) { return NonnegMatrix(SquareMatrix<double>::identity(n)); }
  static NonnegMatrix ones(std::size_t n) { return NonnegMatrix(SquareMatrix<double>(n, 1.0)); }

  std::size_t size() const { return m_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  void set(std::size_t i, std::size_t j, double v) {
    check_entry(v);
    m_(i, j) = v;
  }
  const SquareMatrix<double>& dense() const { return m_; }

  NonnegMatrix submatrix(std::span<const int> rows, std::span<const int> cols) const {
    return NonnegMatrix(m_.submatrix(rows, cols));
  }

  friend bool operator==(const NonnegMatrix&, const NonnegMatrix&) = default;

 private:
  static void check_entry(double v) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw InvalidInput("nonnegative matrix entries must be finite and >= 0");
  }
  void validate() const {
    for (double v : m_.data()) check_entry(v);
  }

  SquareMatrix<double> m_;
};

/// Square matrix of log-domain weights; -inf marks a forbidden edge.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(std::size_t n) : m_(n, kNegInf) {}
  explicit WeightMatrix(SquareMatrix<double> m) : m_(std::move(m)) {
    for (double v : m_.data())
      if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
        throw InvalidInput("weights must be finite or -inf");
  }
  WeightMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : WeightMatrix(SquareMatrix<double>(rows)) {}

  /// Entrywise natural log of a max-times matrix (log 0 = -inf).
  static WeightMatrix log_of(const NonnegMatrix& m) {
    WeightMatrix w(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) w.m_(i, j) = m(i, j) > 0 ? std::log(m(i, j)) : kNegInf;
    return w;
  }

  std::size_t size() const { return m_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  void set(std::size_t i, std::size_t j, double v) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
      throw InvalidInput("weights must be finite or -inf");
    m_(i, j) = v;
  }
  const SquareMatrix<double>& dense() const { return m_; }

  WeightMatrix submatrix(std::span<const int> rows, std::span<const int> cols) const {
    return WeightMatrix(m_.submatrix(rows, cols));
  }

 private:
  SquareMatrix<double> m_;
};

/// |A| entrywise.
inline NonnegMatrix abs(const ComplexMatrix& a) {
  NonnegMatrix m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m.set(i, j, std::abs(a(i, j)));
  return m;
}

inline ComplexMatrix to_complex(const NonnegMatrix& m) {
  ComplexMatrix a(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) a(i, j) = m(i, j);
  return a;
}

/// Companion matrix of the monic polynomial x^n + c[n-1] x^{n-1} + ... + c[0]
/// built from arbitrary coefficients c[0..n] (normalized by c[n]):
/// ones on the superdiagonal, last row -c[0..n-1]/c[n].
inline ComplexMatrix companion(std::span<const Complex> coeffs) {
  if (coeffs.size() < 2) throw InvalidInput("companion matrix needs degree >= 1");
  const std::size_t n = coeffs.size() - 1;
  const Complex lead = coeffs[n];
  if (lead == Complex(0.0)) throw InvalidInput("companion matrix needs a nonzero leading coefficient");
  ComplexMatrix a(n);
  for (std::size_t i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
  for (std::size_t j = 0; j < n; ++j) a(n - 1, j) = -coeffs[j] / lead;
  return a;
}

}  // namespace tropspec
