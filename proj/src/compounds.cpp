#include "tropspec/compounds.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <optional>
#include <cmath>
#include <string>

#include "tropspec/assignment.hpp"
#include "tropspec/combinatorics.hpp"
#include "tropspec/dense_eig.hpp"

namespace tropspec {

namespace {

template <class T, class Acc>
Acc ryser(const SquareMatrix<T>& a) {
  const std::size_t n = a.size();
  if (n == 0) return Acc(1);
  if (n > static_cast<std::size_t>(kMaxPermanentSize))
    throw SizeCapExceeded("permanent is limited to n <= " + std::to_string(kMaxPermanentSize));
  std::vector<Acc> rs(n, Acc(0));
  Acc total(0);
  std::uint64_t gray = 0;
  int members = 0;
  for (std::uint64_t g = 1; g < (std::uint64_t{1} << n); ++g) {
    const int j = std::countr_zero(g);
    gray ^= std::uint64_t{1} << j;
    const bool added = (gray >> j) & 1U;
    members += added ? 1 : -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (added)
        rs[i] += Acc(a(i, j));
      else
        rs[i] -= Acc(a(i, j));
    }
    Acc prod(1);
    for (std::size_t i = 0; i < n && prod != Acc(0); ++i) prod *= rs[i];
    if ((static_cast<int>(n) - members) % 2 == 0)
      total += prod;
    else
      total -= prod;
  }
  return total;
}

void check_order(int n, int k) {
  if (k < 1 || k > n) throw InvalidInput("compound order k must lie in [1, n]");
}

std::size_t checked_rows(int n, int k, std::size_t size_cap) {
  check_order(n, k);
  const std::size_t rows = binomial(n, k);
  if (size_cap == 0) size_cap = default_size_cap();
  if (rows > size_cap)
    throw SizeCapExceeded("compound of order " + std::to_string(k) + " has " + std::to_string(rows) +
                          " rows, above the cap " + std::to_string(size_cap));
  return rows;
}

// Integer copy of the matrix when every entry is a small nonnegative integer
// and every k x k permanent fits comfortably in int64.
std::optional<SquareMatrix<std::int64_t>> as_small_integers(const SquareMatrix<double>& m, int k) {
  const std::size_t n = m.size();
  SquareMatrix<std::int64_t> out(n);
  double max_row = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m(i, j);
      if (v != std::floor(v) || v > 1e6) return std::nullopt;
      out(i, j) = static_cast<std::int64_t>(v);
      row += v;
    }
    max_row = std::max(max_row, row);
  }
  if (k * std::log2(std::max(max_row, 1.0)) > 60.0) return std::nullopt;
  return out;
}

template <class Out, class Entry>
Out build_compound(std::size_t rows, int n, int k, Entry entry) {
  const auto subsets = k_subsets(n, k);
  Out out(rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < rows; ++c) entry(out, r, c, subsets[r], subsets[c]);
  return out;
}

double dense_spectral_radius(const SquareMatrix<double>& m) {
  const std::size_t n = m.size();
  if (n <= kMaxDenseEigSize) {
    const EigenSpectrum s = eigenvalues(to_complex(NonnegMatrix(m)));
    return std::abs(s.lambdas.front());
  }
  Eigen::MatrixXd e(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e(i, j) = m(i, j);
  return Eigen::EigenSolver<Eigen::MatrixXd>(e, false).eigenvalues().cwiseAbs().maxCoeff();
}

// Perron root of an irreducible nonnegative matrix (n >= 2).
double irreducible_radius(const SquareMatrix<double>& m) {
  const std::size_t n = m.size();
  std::size_t nnz = 0;
  for (double v : m.data()) nnz += v != 0.0;
  const auto max_iter = static_cast<long>(std::clamp(2e9 / static_cast<double>(nnz), 1000.0, 1e5));

  std::vector<double> x(n, 1.0), y(n);
  for (long it = 0; it < max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m(i, j) * x[j];
      y[i] = s;
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double q = y[i] / x[i];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    if (hi - lo <= 1e-13 * hi) return 0.5 * (lo + hi);
    // The shift damps the peripheral eigenvalues of periodic matrices.
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = y[i] + lo * x[i];
      top = std::max(top, x[i]);
    }
    bool positive = true;
    for (double& v : x) {
      v /= top;
      positive = positive && v > 0.0;
    }
    if (!positive) break;
  }
  return dense_spectral_radius(m);
}

}  // namespace

NonnegMatrix pattern(const ComplexMatrix& a) {
  NonnegMatrix p(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) p.set(i, j, a(i, j) != Complex(0.0) ? 1.0 : 0.0);
  return p;
}

NonnegMatrix pattern(const NonnegMatrix& m) { return pattern(to_complex(m)); }

Complex permanent(const ComplexMatrix& a) { return ryser<Complex, Complex>(a); }

double permanent(const NonnegMatrix& m) {
  if (auto ints = as_small_integers(m.dense(), static_cast<int>(m.size())))
    return static_cast<double>(permanent(*ints));
  return std::max(0.0, ryser<double, double>(m.dense()));
}

std::int64_t permanent(const SquareMatrix<std::int64_t>& m) {
  double bound = 1.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) row += std::abs(static_cast<double>(m(i, j)));
    bound *= std::max(row, 1.0);
  }
  if (bound >= 0x1p62) throw InvalidInput("integer permanent may overflow int64");
  return static_cast<std::int64_t>(ryser<std::int64_t, __int128>(m));
}

ComplexMatrix compound(const ComplexMatrix& a, int k, std::size_t size_cap) {
  const int n = static_cast<int>(a.size());
  const std::size_t rows = checked_rows(n, k, size_cap);
  return build_compound<ComplexMatrix>(rows, n, k, [&](ComplexMatrix& out, std::size_t r, std::size_t c,
                                                         const std::vector<int>& rs, const std::vector<int>& cs) {
    out(r, c) = determinant(a.submatrix(rs, cs));
  });
}

ComplexMatrix permanental_compound(const ComplexMatrix& a, int k, std::size_t size_cap) {
  bool real_nonneg = true;
  for (const Complex& z : a.data()) real_nonneg = real_nonneg && z.imag() == 0.0 && z.real() >= 0.0;
  if (real_nonneg) return to_complex(permanental_compound(abs(a), k, size_cap));
  const int n = static_cast<int>(a.size());
  const std::size_t rows = checked_rows(n, k, size_cap);
  return build_compound<ComplexMatrix>(rows, n, k, [&](ComplexMatrix& out, std::size_t r, std::size_t c,
                                                         const std::vector<int>& rs, const std::vector<int>& cs) {
    out(r, c) = permanent(a.submatrix(rs, cs));
  });
}

NonnegMatrix permanental_compound(const NonnegMatrix& m, int k, std::size_t size_cap) {
  const int n = static_cast<int>(m.size());
  const std::size_t rows = checked_rows(n, k, size_cap);
  if (auto ints = as_small_integers(m.dense(), k)) {
    return build_compound<NonnegMatrix>(rows, n, k, [&](NonnegMatrix& out, std::size_t r, std::size_t c,
                                                        const std::vector<int>& rs, const std::vector<int>& cs) {
      out.set(r, c, static_cast<double>(permanent(ints->submatrix(rs, cs))));
    });
  }
  return build_compound<NonnegMatrix>(rows, n, k, [&](NonnegMatrix& out, std::size_t r, std::size_t c,
                                                      const std::vector<int>& rs, const std::vector<int>& cs) {
    out.set(r, c, std::max(0.0, ryser<double, double>(m.dense().submatrix(rs, cs))));
  });
}

double spectral_radius(const NonnegMatrix& m) {
  const SquareMatrix<double>& d = m.dense();
  double rho = 0.0;
  for (const auto& comp : strongly_connected_components(d, 0.0)) {
    if (comp.size() == 1) {
      rho = std::max(rho, d(comp[0], comp[0]));
      continue;
    }
    rho = std::max(rho, irreducible_radius(d.submatrix(comp, comp)));
  }
  return rho;
}

double spectral_radius(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  if (n <= kMaxDenseEigSize) return std::abs(eigenvalues(a).lambdas.front());
  Eigen::MatrixXcd e(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e(i, j) = a(i, j);
  return Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(e, false).eigenvalues().cwiseAbs().maxCoeff();
}

NonnegMatrix hadamard(const NonnegMatrix& a, const NonnegMatrix& b) {
  if (a.size() != b.size()) throw InvalidInput("Hadamard product needs matrices of equal size");
  NonnegMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out.set(i, j, a(i, j) * b(i, j));
  return out;
}

ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() != b.size()) throw InvalidInput("Hadamard product needs matrices of equal size");
  ComplexMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out(i, j) = a(i, j) * b(i, j);
  return out;
}

NonnegMatrix entrywise_power(const NonnegMatrix& m, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidInput("entrywise power needs a finite r > 0");
  NonnegMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out.set(i, j, std::pow(m(i, j), r));
  return out;
}

std::vector<CurvePoint> limit_eigenvalue_curve(const NonnegMatrix& m, std::span<const double> rs) {
  double top = 0.0;
  for (double v : m.dense().data()) top = std::max(top, v);
  NonnegMatrix scaled(m.size());
  if (top > 0.0)
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) scaled.set(i, j, m(i, j) / top);
  std::vector<CurvePoint> out;
  for (double r : rs) {
    const double rho = top > 0.0 ? spectral_radius(entrywise_power(scaled, r)) : 0.0;
    out.push_back({r, top * std::pow(rho, 1.0 / r)});
  }
  return out;
}

}  // namespace tropspec
