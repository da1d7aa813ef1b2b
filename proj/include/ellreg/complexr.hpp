#pragma once

// Minimal complex arithmetic over Real. Enough for theta/Weierstrass series
// and the Bloch-Wigner dilogarithm; not a general complex library.

#include "ellreg/real.hpp"

namespace ellreg {

struct ComplexR {
  Real re, im;

  ComplexR() = default;
  ComplexR(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit ComplexR(const Real& r) : re(r), im(Real(0L, r.prec())) {}
  ComplexR(long r, mpfr_prec_t prec) : re(r, prec), im(0L, prec) {}

  static ComplexR unit_phase(const Real& angle) {  // e^{i*angle}
    return {cos(angle), sin(angle)};
  }

  friend ComplexR operator+(const ComplexR& a, const ComplexR& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexR operator-(const ComplexR& a, const ComplexR& b) {
    return {a.re - b.re, a.im - b.im};
  }
  ComplexR operator-() const { return {-re, -im}; }
  friend ComplexR operator*(const ComplexR& a, const ComplexR& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexR operator*(const Real& s, const ComplexR& a) {
    return {s * a.re, s * a.im};
  }
  friend ComplexR operator/(const ComplexR& a, const ComplexR& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend ComplexR operator+(const ComplexR& a, long b) { return {a.re + b, a.im}; }
  friend ComplexR operator-(long a, const ComplexR& b) { return {a - b.re, -b.im}; }

  ComplexR& operator+=(const ComplexR& o) { re += o.re; im += o.im; return *this; }
  ComplexR& operator-=(const ComplexR& o) { re -= o.re; im -= o.im; return *this; }

  friend ComplexR conj(const ComplexR& a) { return {a.re, -a.im}; }
  friend Real norm2(const ComplexR& a) { return a.re * a.re + a.im * a.im; }
  friend Real abs(const ComplexR& a) { return hypot(a.re, a.im); }
  friend Real arg(const ComplexR& a) { return atan2(a.im, a.re); }
  friend ComplexR inv(const ComplexR& a) {
    Real d = norm2(a);
    return {a.re / d, -a.im / d};
  }
  friend ComplexR sqrt(const ComplexR& a) {
    // principal branch
    Real r = abs(a);
    Real u = sqrt((r + a.re) / 2L);
    Real v = sqrt((r - a.re) / 2L);
    if (a.im.sign() < 0) v = -v;
    return {u, v};
  }
  friend ComplexR log(const ComplexR& a) { return {log(abs(a)), arg(a)}; }
  friend ComplexR exp(const ComplexR& a) {
    Real m = exp(a.re);
    return {m * cos(a.im), m * sin(a.im)};
  }
};

}  // namespace ellreg
