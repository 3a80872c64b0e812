#pragma once

// Extended-precision scalars used internally by dense_eig. Characteristic
// polynomial coefficients of graded matrices suffer heavy cancellation in
// double precision; 160 decimal digits absorb it at desk scale.

#include <boost/multiprecision/mpfr.hpp>
#include <complex>

namespace tropspec::hp {

inline constexpr unsigned kDigits = 160;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<kDigits>,
                                           boost::multiprecision::et_off>;

struct Cplx {
  Real re = 0;
  Real im = 0;

  Cplx() = default;
  Cplx(Real r, Real i = 0) : re(std::move(r)), im(std::move(i)) {}
  explicit Cplx(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_double() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
  bool is_zero() const { return re == 0 && im == 0; }

  Cplx& operator+=(const Cplx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cplx& operator-=(const Cplx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend Cplx operator+(Cplx a, const Cplx& b) { return a += b; }
  friend Cplx operator-(Cplx a, const Cplx& b) { return a -= b; }
  friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
  friend Cplx operator*(const Cplx& a, const Cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cplx operator*(const Cplx& a, const Real& s) { return {a.re * s, a.im * s}; }
  friend Cplx operator/(const Cplx& a, const Real& s) { return {a.re / s, a.im / s}; }
  friend Cplx operator/(const Cplx& a, const Cplx& b) {
    // Smith's algorithm keeps the intermediate magnitudes bounded.
    if (abs(b.re) >= abs(b.im)) {
      const Real r = b.im / b.re;
      const Real d = b.re + b.im * r;
      return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
    }
    const Real r = b.re / b.im;
    const Real d = b.re * r + b.im;
    return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
  }
};

inline Real abs(const Cplx& z) { return hypot(z.re, z.im); }

inline Real epsilon() { return std::numeric_limits<Real>::epsilon(); }

}  // namespace tropspec::hp
