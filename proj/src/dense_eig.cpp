#include "tropspec/dense_eig.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "hp.hpp"
#include "tropspec/trop_poly.hpp"

namespace tropspec {

namespace {

using hp::Cplx;
using hp::Real;
using HMatrix = std::vector<Cplx>;  // row-major n x n

void check_size(const ComplexMatrix& a) {
  if (a.size() == 0) throw InvalidInput("matrix must have n >= 1");
  if (a.size() > kMaxDenseEigSize)
    throw SizeCapExceeded("dense eigenvalue routines accept n <= " + std::to_string(kMaxDenseEigSize) + ", got " +
                          std::to_string(a.size()));
}

HMatrix to_hp(const ComplexMatrix& a) {
  HMatrix m;
  m.reserve(a.size() * a.size());
  for (const Complex& z : a.data()) m.emplace_back(z);
  return m;
}

std::vector<Cplx> hp_char_poly(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  const HMatrix ah = to_hp(a);
  std::vector<Cplx> c(n + 1);
  c[n] = Cplx(Real(1));
  HMatrix m(n * n);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = Cplx(Real(1));
  HMatrix am(n * n);
  // Faddeev-LeVerrier: M_1 = I, c_{n-k} = -tr(A M_k) / k, M_{k+1} = A M_k + c_{n-k} I.
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Cplx s;
        for (std::size_t l = 0; l < n; ++l) {
          const Cplx& x = ah[i * n + l];
          if (x.is_zero()) continue;
          s += x * m[l * n + j];
        }
        am[i * n + j] = s;
      }
    Cplx tr;
    for (std::size_t i = 0; i < n; ++i) tr += am[i * n + i];
    c[n - k] = -tr / Real(static_cast<double>(k));
    m = am;
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] += c[n - k];
  }

  Real amax = 0;
  for (const Cplx& x : ah) amax = std::max(amax, hp::abs(x));
  const Real base = amax * Real(static_cast<double>(n));
  const Real cutoff("1e-100");
  Real scale = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    scale *= base;
    if (hp::abs(c[n - k]) <= cutoff * scale) c[n - k] = Cplx();
  }
  return c;
}

struct HornerResult {
  Cplx p, dp;
  Real bound;  // sum |a_k| |z|^k
};

HornerResult horner(const std::vector<Cplx>& a, const Cplx& z) {
  const std::size_t deg = a.size() - 1;
  HornerResult h{a[deg], Cplx(), hp::abs(a[deg])};
  const Real az = hp::abs(z);
  for (std::size_t k = deg; k-- > 0;) {
    h.dp = h.dp * z + h.p;
    h.p = h.p * z + a[k];
    h.bound = h.bound * az + hp::abs(a[k]);
  }
  return h;
}

Real relative_residual(const std::vector<Cplx>& a, const Cplx& z) {
  const HornerResult h = horner(a, z);
  return h.bound == 0 ? Real(0) : hp::abs(h.p) / h.bound;
}

// Starting points on circles whose radii are the tropical roots of |a|.
std::vector<Cplx> initial_guesses(const std::vector<Cplx>& a, std::mt19937_64* rng) {
  std::vector<double> logs(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Real m = hp::abs(a[k]);
    logs[k] = m == 0 ? kNegInf : log(m).convert_to<double>();
  }
  const RootMultiset troots = tropical_roots(TropicalPolynomial(logs));
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  std::vector<Cplx> z;
  const double two_pi = 2.0 * std::numbers::pi;
  const auto degree = static_cast<double>(a.size() - 1);
  int group = 0;
  for (const TropicalRoot& r : troots.entries()) {
    const Real radius = exp(Real(r.value)) * Real(rng ? 0.9 + 0.2 * jitter(*rng) : 1.0);
    const double offset = 0.4 + two_pi * group / degree + (rng ? two_pi * jitter(*rng) : 0.0);
    for (int j = 0; j < r.multiplicity; ++j) {
      const double theta = two_pi * j / r.multiplicity + offset;
      z.emplace_back(radius * Real(std::cos(theta)), radius * Real(std::sin(theta)));
    }
    ++group;
  }
  return z;
}

struct AberthOutcome {
  std::vector<Cplx> roots;
  bool converged = false;
};

AberthOutcome aberth(const std::vector<Cplx>& a, std::vector<Cplx> z, int max_iterations) {
  const std::size_t deg = a.size() - 1;
  const Real tol = Real(8.0 * static_cast<double>(deg)) * hp::epsilon();
  std::vector<char> done(deg, 0);
  std::size_t remaining = deg;
  for (int it = 0; it < max_iterations && remaining > 0; ++it) {
    for (std::size_t i = 0; i < deg; ++i) {
      if (done[i]) continue;
      const HornerResult h = horner(a, z[i]);
      if (hp::abs(h.p) <= tol * h.bound) {
        done[i] = 1;
        --remaining;
        continue;
      }
      if (h.dp.is_zero()) {
        z[i] = z[i] * Real(1.0 + 1e-3) + Cplx(Real(0), Real(1e-30));
        continue;
      }
      const Cplx newton = h.p / h.dp;
      Cplx repulsion;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) repulsion += Cplx(Real(1)) / (z[i] - z[j]);
      const Cplx step = newton / (Cplx(Real(1)) - newton * repulsion);
      z[i] -= step;
    }
  }
  return {std::move(z), remaining == 0};
}

// Replace single-linkage clusters (relative distance <= 1e-10) by their centroid.
void merge_clusters(std::vector<Cplx>& z) {
  const std::size_t m = z.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const Real tau("1e-10");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (hp::abs(z[i] - z[j]) <= tau * std::max(hp::abs(z[i]), hp::abs(z[j]))) parent[find(i)] = find(j);
  std::vector<Cplx> sum(m);
  std::vector<int> count(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    sum[find(i)] += z[i];
    ++count[find(i)];
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = find(i);
    if (count[r] > 1) z[i] = sum[r] / Real(count[r]);
  }
}

struct HpRoots {
  std::vector<Cplx> roots;  // includes the exact zeros
  std::vector<Cplx> reduced;  // polynomial without its zero roots
};

HpRoots hp_roots(const std::vector<Cplx>& coeffs, const RootOptions& opt) {
  std::size_t k0 = 0;
  while (k0 + 1 < coeffs.size() && coeffs[k0].is_zero()) ++k0;
  HpRoots out;
  out.reduced.assign(coeffs.begin() + static_cast<std::ptrdiff_t>(k0), coeffs.end());
  out.roots.assign(k0, Cplx());
  if (out.reduced.size() <= 1) return out;

  std::mt19937_64 rng(opt.seed);
  AberthOutcome best;
  Real best_residual = -1;
  for (int attempt = 0; attempt <= opt.restarts; ++attempt) {
    AberthOutcome run = aberth(out.reduced, initial_guesses(out.reduced, attempt == 0 ? nullptr : &rng),
                               opt.max_iterations);
    if (run.converged) {
      best = std::move(run);
      break;
    }
    Real worst = 0;
    for (const Cplx& z : run.roots) worst = std::max(worst, relative_residual(out.reduced, z));
    if (best_residual < 0 || worst < best_residual) {
      best_residual = worst;
      best = std::move(run);
    }
  }
  if (!best.converged) {
    std::vector<Complex> iterate;
    for (const Cplx& z : best.roots) iterate.push_back(z.to_double());
    throw NumericError("Aberth iteration did not converge", std::move(iterate), best_residual.convert_to<double>());
  }
  merge_clusters(best.roots);
  out.roots.insert(out.roots.end(), best.roots.begin(), best.roots.end());
  return out;
}

std::vector<Cplx> to_hp(std::span<const Complex> v) {
  std::vector<Cplx> out;
  out.reserve(v.size());
  for (const Complex& z : v) out.emplace_back(z);
  return out;
}

PolynomialRoots finish_roots(const HpRoots& r) {
  PolynomialRoots out;
  Real worst = 0;
  for (const Cplx& z : r.roots) {
    Complex zd = z.to_double();
    // Components far below the working precision of the modulus are noise.
    const double m = std::abs(zd);
    if (std::abs(zd.real()) <= 1e-140 * m) zd.real(0.0);
    if (std::abs(zd.imag()) <= 1e-140 * m) zd.imag(0.0);
    out.roots.push_back(zd);
    if (zd != Complex(0.0)) worst = std::max(worst, relative_residual(r.reduced, Cplx(zd)));
  }
  out.residual = worst.convert_to<double>();
  sort_by_modulus(out.roots);
  if (out.residual > 1e-10)
    throw NumericError("polynomial roots residual " + std::to_string(out.residual) + " exceeds 1e-10", out.roots,
                       out.residual);
  return out;
}

Cplx hp_determinant(HMatrix m, std::size_t n) {
  Cplx det(Real(1));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    Real best = hp::abs(m[col * n + col]);
    for (std::size_t r = col + 1; r < n; ++r)
      if (const Real v = hp::abs(m[r * n + col]); v > best) {
        best = v;
        piv = r;
      }
    if (best == 0) return Cplx();
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[col * n + j]);
      det = -det;
    }
    const Cplx d = m[col * n + col];
    det = det * d;
    for (std::size_t r = col + 1; r < n; ++r) {
      const Cplx f = m[r * n + col] / d;
      if (f.is_zero()) continue;
      for (std::size_t j = col; j < n; ++j) m[r * n + j] -= f * m[col * n + j];
    }
  }
  return det;
}

}  // namespace

void sort_by_modulus(std::vector<Complex>& z) {
  std::sort(z.begin(), z.end(), [](const Complex& a, const Complex& b) { return std::abs(a) > std::abs(b); });
  std::size_t start = 0;
  while (start < z.size()) {
    std::size_t end = start + 1;
    while (end < z.size() && std::abs(z[end - 1]) - std::abs(z[end]) <= 1e-12 * std::abs(z[start])) ++end;
    std::sort(z.begin() + static_cast<std::ptrdiff_t>(start), z.begin() + static_cast<std::ptrdiff_t>(end),
              [](const Complex& a, const Complex& b) { return std::arg(a) < std::arg(b); });
    start = end;
  }
}

std::vector<Complex> char_poly(const ComplexMatrix& a) {
  check_size(a);
  std::vector<Complex> out;
  for (const Cplx& c : hp_char_poly(a)) out.push_back(c.to_double());
  return out;
}

PolynomialRoots poly_roots(std::span<const Complex> coeffs, const RootOptions& options) {
  if (coeffs.empty()) throw InvalidInput("polynomial has no coefficients");
  for (const Complex& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InvalidInput("coefficients must be finite");
  if (coeffs.back() == Complex(0.0)) throw InvalidInput("leading coefficient must be nonzero");
  return finish_roots(hp_roots(to_hp(coeffs), options));
}

double EigenSpectrum::prefix(int k) const { return std::exp(log_prefix.at(static_cast<std::size_t>(k))); }

EigenSpectrum eigenvalues(const ComplexMatrix& a) {
  check_size(a);
  const std::size_t n = a.size();
  const HpRoots roots = hp_roots(hp_char_poly(a), RootOptions{});
  const PolynomialRoots rounded = finish_roots(roots);

  EigenSpectrum spec;
  spec.lambdas = rounded.roots;
  spec.log_prefix.assign(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::abs(spec.lambdas[i]);
    spec.log_prefix[i + 1] = m > 0 ? spec.log_prefix[i] + std::log(m) : kNegInf;
  }

  const HMatrix ah = to_hp(a);
  Cplx trace, sum, prod(Real(1));
  Real sum_abs = 0;
  for (std::size_t i = 0; i < n; ++i) trace += ah[i * n + i];
  for (const Complex& z : spec.lambdas) {
    const Cplx zh(z);
    sum += zh;
    sum_abs += hp::abs(zh);
    prod = prod * zh;
  }
  const Real tscale = std::max(sum_abs, hp::abs(trace));
  spec.trace_residual = tscale == 0 ? 0.0 : (hp::abs(sum - trace) / tscale).convert_to<double>();

  const Cplx det = hp_determinant(ah, n);
  Real hadamard = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Real row = 0;
    for (std::size_t j = 0; j < n; ++j) row += ah[i * n + j].re * ah[i * n + j].re + ah[i * n + j].im * ah[i * n + j].im;
    hadamard *= sqrt(row);
  }
  const Real dscale = std::max({hp::abs(det), hp::abs(prod), Real("1e-30") * hadamard});
  spec.det_residual = dscale == 0 ? 0.0 : (hp::abs(prod - det) / dscale).convert_to<double>();

  if (spec.trace_residual > 1e-8 || spec.det_residual > 1e-8)
    throw NumericError("eigenvalue consistency check failed (trace residual " + std::to_string(spec.trace_residual) +
                           ", determinant residual " + std::to_string(spec.det_residual) + ")",
                       spec.lambdas, std::max(spec.trace_residual, spec.det_residual));
  return spec;
}

Complex determinant(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  std::vector<Complex> m(a.data().begin(), a.data().end());
  Complex det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r * n + col]) > std::abs(m[piv * n + col])) piv = r;
    if (m[piv * n + col] == Complex(0.0)) return 0.0;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[piv * n + j], m[col * n + j]);
      det = -det;
    }
    const Complex d = m[col * n + col];
    det *= d;
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = m[r * n + col] / d;
      if (f == Complex(0.0)) continue;
      for (std::size_t j = col; j < n; ++j) m[r * n + j] -= f * m[col * n + j];
    }
  }
  return det;
}

}  // namespace tropspec
