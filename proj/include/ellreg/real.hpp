#pragma once

// Thin RAII wrapper over mpfr_t with per-value precision.
// Rule: a binary operation's result carries max(prec(lhs), prec(rhs));
// precision therefore enters a computation only at its leaves.

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace ellreg {

class Real {
 public:
  // bits needed for `digits` decimal digits, plus guard room
  static mpfr_prec_t bits(int digits) {
    return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 64;
  }

  Real() { mpfr_init2(x_, 64); mpfr_set_nan(x_); }
  explicit Real(mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_nan(x_); }
  Real(long v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_si(x_, v, MPFR_RNDN); }
  Real(int v, mpfr_prec_t prec) : Real(static_cast<long>(v), prec) {}
  Real(double v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_d(x_, v, MPFR_RNDN); }
  Real(const mpz_class& v, mpfr_prec_t prec) {
    mpfr_init2(x_, prec);
    mpfr_set_z(x_, v.get_mpz_t(), MPFR_RNDN);
  }
  Real(const mpq_class& v, mpfr_prec_t prec) {
    mpfr_init2(x_, prec);
    mpfr_set_q(x_, v.get_mpq_t(), MPFR_RNDN);
  }
  Real(const std::string& s, mpfr_prec_t prec) {
    mpfr_init2(x_, prec);
    if (mpfr_set_str(x_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("Real: bad decimal literal: " + s);
  }

  Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(x_, 64); mpfr_swap(x_, o.x_); }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(x_, mpfr_get_prec(o.x_));
      mpfr_set(x_, o.x_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(x_, o.x_);
    return *this;
  }
  ~Real() { mpfr_clear(x_); }

  mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
  mpfr_ptr raw() { return x_; }
  mpfr_srcptr raw() const { return x_; }

  // exact when raising precision
  void promote(mpfr_prec_t prec) {
    if (prec > mpfr_get_prec(x_)) mpfr_prec_round(x_, prec, MPFR_RNDN);
  }

  static Real pi(mpfr_prec_t prec) {
    Real r(prec); mpfr_const_pi(r.x_, MPFR_RNDN); return r;
  }
  static Real euler_gamma(mpfr_prec_t prec) {
    Real r(prec); mpfr_const_euler(r.x_, MPFR_RNDN); return r;
  }
  static Real catalan(mpfr_prec_t prec) {
    Real r(prec); mpfr_const_catalan(r.x_, MPFR_RNDN); return r;
  }

  bool is_nan() const { return mpfr_nan_p(x_) != 0; }
  bool is_zero() const { return mpfr_zero_p(x_) != 0; }
  int sign() const { return mpfr_nan_p(x_) ? 0 : mpfr_sgn(x_); }
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(x_, MPFR_RNDN); }

  // nearest integer
  mpz_class to_mpz() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x_, MPFR_RNDN);
    return z;
  }
  mpz_class floor_mpz() const {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x_, MPFR_RNDD);
    return z;
  }

  // `digits` significant digits, scientific
  std::string str(int digits = 20) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", digits - 1, x_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }
  // fixed-point with `digits` fractional digits
  std::string str_fixed(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rf", digits, x_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(pmax(a, b)); mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN); return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(pmax(a, b)); mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN); return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(pmax(a, b)); mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN); return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(pmax(a, b)); mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN); return r;
  }
  Real operator-() const {
    Real r(prec()); mpfr_neg(r.x_, x_, MPFR_RNDN); return r;
  }

  friend Real operator+(const Real& a, long b) {
    Real r(a.prec()); mpfr_add_si(r.x_, a.x_, b, MPFR_RNDN); return r;
  }
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator-(const Real& a, long b) {
    Real r(a.prec()); mpfr_sub_si(r.x_, a.x_, b, MPFR_RNDN); return r;
  }
  friend Real operator-(long a, const Real& b) {
    Real r(b.prec()); mpfr_si_sub(r.x_, a, b.x_, MPFR_RNDN); return r;
  }
  friend Real operator*(const Real& a, long b) {
    Real r(a.prec()); mpfr_mul_si(r.x_, a.x_, b, MPFR_RNDN); return r;
  }
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(const Real& a, long b) {
    Real r(a.prec()); mpfr_div_si(r.x_, a.x_, b, MPFR_RNDN); return r;
  }
  friend Real operator/(long a, const Real& b) {
    Real r(b.prec()); mpfr_si_div(r.x_, a, b.x_, MPFR_RNDN); return r;
  }

  Real& operator+=(const Real& o) {
    promote(o.prec());
    mpfr_add(x_, x_, o.x_, MPFR_RNDN);
    return *this;
  }
  Real& operator-=(const Real& o) {
    promote(o.prec());
    mpfr_sub(x_, x_, o.x_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(const Real& o) {
    promote(o.prec());
    mpfr_mul(x_, x_, o.x_, MPFR_RNDN);
    return *this;
  }
  Real& operator/=(const Real& o) {
    promote(o.prec());
    mpfr_div(x_, x_, o.x_, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(long v) { mpfr_mul_si(x_, x_, v, MPFR_RNDN); return *this; }
  Real& operator/=(long v) { mpfr_div_si(x_, x_, v, MPFR_RNDN); return *this; }

  friend bool operator<(const Real& a, const Real& b)  { return mpfr_cmp(a.x_, b.x_) < 0; }
  friend bool operator>(const Real& a, const Real& b)  { return mpfr_cmp(a.x_, b.x_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.x_, b.x_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
  friend bool operator<(const Real& a, long b)  { return mpfr_cmp_si(a.x_, b) < 0; }
  friend bool operator>(const Real& a, long b)  { return mpfr_cmp_si(a.x_, b) > 0; }
  friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.x_, b) <= 0; }
  friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.x_, b) >= 0; }

#define ELLREG_UNARY(name, mpfr_fn)                         \
  friend Real name(const Real& a) {                         \
    Real r(a.prec());                                       \
    mpfr_fn(r.x_, a.x_, MPFR_RNDN);                         \
    return r;                                               \
  }
  ELLREG_UNARY(sqrt, mpfr_sqrt)
  ELLREG_UNARY(log, mpfr_log)
  ELLREG_UNARY(exp, mpfr_exp)
  ELLREG_UNARY(sin, mpfr_sin)
  ELLREG_UNARY(cos, mpfr_cos)
  ELLREG_UNARY(tan, mpfr_tan)
  ELLREG_UNARY(sinh, mpfr_sinh)
  ELLREG_UNARY(cosh, mpfr_cosh)
  ELLREG_UNARY(tanh, mpfr_tanh)
  ELLREG_UNARY(atan, mpfr_atan)
  ELLREG_UNARY(abs, mpfr_abs)
  ELLREG_UNARY(eint, mpfr_eint)  // Ei(x) for x > 0, -E1(-x) for x < 0
#undef ELLREG_UNARY

  friend Real floor(const Real& a) {
    Real r(a.prec()); mpfr_floor(r.x_, a.x_); return r;
  }

  friend Real atan2(const Real& y, const Real& x) {
    Real r(pmax(y, x)); mpfr_atan2(r.x_, y.x_, x.x_, MPFR_RNDN); return r;
  }
  friend Real pow(const Real& a, long e) {
    Real r(a.prec()); mpfr_pow_si(r.x_, a.x_, e, MPFR_RNDN); return r;
  }
  friend Real pow(const Real& a, const Real& b) {
    Real r(pmax(a, b)); mpfr_pow(r.x_, a.x_, b.x_, MPFR_RNDN); return r;
  }
  friend Real hypot(const Real& a, const Real& b) {
    Real r(pmax(a, b)); mpfr_hypot(r.x_, a.x_, b.x_, MPFR_RNDN); return r;
  }
  friend Real ldexp2(const Real& a, long e) {  // a * 2^e
    Real r(a.prec()); mpfr_mul_2si(r.x_, a.x_, e, MPFR_RNDN); return r;
  }
  friend Real max(const Real& a, const Real& b) { return a < b ? b : a; }
  friend Real min(const Real& a, const Real& b) { return a < b ? a : b; }

 private:
  static mpfr_prec_t pmax(const Real& a, const Real& b) {
    mpfr_prec_t pa = mpfr_get_prec(a.x_), pb = mpfr_get_prec(b.x_);
    return pa > pb ? pa : pb;
  }
  mpfr_t x_;
};

}  // namespace ellreg
