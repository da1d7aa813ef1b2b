#pragma once

// Modified Bessel functions K0, K1 and the tail integral of K0(t)/t, the
// three weights the L-value sum needs. Two regimes per function: the
// divergent asymptotic expansion truncated at its smallest term once x is
// large enough to reach the target, and otherwise the ascending series with
// enough guard digits to survive its exp(2x) cancellation. Double
// exponential quadrature of the cosh integral representations provides an
// independent midrange oracle for the tests.

#include <array>
#include <cmath>
#include <stdexcept>

#include "ellreg/quadrature.hpp"
#include "ellreg/real.hpp"

namespace ellreg {

namespace detail {

// E1(x) = int_x^inf exp(-t)/t dt for x > 0
inline Real expint_e1(const Real& x) { return -eint(-x); }

// guard digits for the ascending series: terms peak near exp(x) while the
// result sits near exp(-x)
inline int series_guard(double xd) { return (int)std::ceil(0.8686 * xd) + 10; }

// K0 and K1 together from the ascending series; valid for any x > 0
inline std::array<Real, 2> k01_series(const Real& x, int digits) {
  double xd = x.to_double();
  int d = digits + series_guard(xd);
  mpfr_prec_t p = Real::bits(d + 10);
  Real xx(x);
  xx.promote(p);
  Real q = xx * xx / Real(4L, p);
  Real alpha = log(xx / Real(2L, p)) + Real::euler_gamma(p);
  Real eps = exp(-xx) * pow(Real(10L, p), -(long)(digits + 8));

  Real t(1L, p), u(1L, p), h(0L, p);            // t_k = q^k/k!^2, u_k = q^k/(k!(k+1)!), h = H_k
  Real s0 = -alpha;                             // K0 = sum t_k (H_k - alpha)
  Real s1 = Real(2L, p) * alpha - Real(1L, p);  // K1 sum: u_k (2 alpha - H_k - H_{k+1})
  for (long k = 1; k < 100000; ++k) {
    t = t * q / Real(k * k, p);
    u = u * q / Real(k * (k + 1), p);
    h += Real(1L, p) / Real(k, p);
    Real h1 = h + Real(1L, p) / Real(k + 1, p);
    s0 += t * (h - alpha);
    s1 += u * (Real(2L, p) * alpha - h - h1);
    if (t * (h + abs(alpha) + Real(2L, p)) < eps) break;
  }
  return {s0, Real(1L, p) / xx + xx / Real(4L, p) * s1};
}

// tail integral int_x^inf K0(t)/t dt from the same series; the pi^2/24
// constant is pinned by the quadrature cross-checks
inline Real g0_series(const Real& x, int digits) {
  double xd = x.to_double();
  int d = digits + series_guard(xd);
  mpfr_prec_t p = Real::bits(d + 10);
  Real xx(x);
  xx.promote(p);
  Real q = xx * xx / Real(4L, p);
  Real alpha = log(xx / Real(2L, p)) + Real::euler_gamma(p);
  Real eps = exp(-xx) * pow(Real(10L, p), -(long)(digits + 8));

  Real pi = Real::pi(p);
  Real acc = alpha * alpha / Real(2L, p) + pi * pi / Real(24L, p);
  Real t(1L, p), h(0L, p);
  for (long k = 1; k < 100000; ++k) {
    t = t * q / Real(k * k, p);
    h += Real(1L, p) / Real(k, p);
    acc += t * ((alpha - h) / Real(2 * k, p) - Real(1L, p) / Real(4 * k * k, p));
    if (t * (h + abs(alpha) + Real(2L, p)) < eps) break;
  }
  return acc;
}

// truncation point for the cosh-integral representations
inline double quad_cut(double xd, int digits) {
  double y = 2.302585092994046 * (digits + 12) / xd;
  return std::acosh(y < 2.0 ? 2.0 : y);
}

inline Real k0_quad(const Real& x, int digits) {
  mpfr_prec_t p = Real::bits(digits + 15);
  Real xx(x);
  xx.promote(p);
  Real T(quad_cut(x.to_double(), digits), p);
  return tanh_sinh([&](const Real& u) { return exp(-xx * cosh(u)); }, Real(0L, p), T, digits);
}

inline Real k1_quad(const Real& x, int digits) {
  mpfr_prec_t p = Real::bits(digits + 15);
  Real xx(x);
  xx.promote(p);
  Real T(quad_cut(x.to_double(), digits), p);
  return tanh_sinh([&](const Real& u) { return exp(-xx * cosh(u)) * cosh(u); }, Real(0L, p), T,
                   digits);
}

// int_x^inf K0(t)/t dt = int_0^inf E1(x cosh u) du
inline Real g0_quad(const Real& x, int digits) {
  mpfr_prec_t p = Real::bits(digits + 15);
  Real xx(x);
  xx.promote(p);
  Real T(quad_cut(x.to_double(), digits) + 0.5, p);
  return tanh_sinh([&](const Real& u) { return expint_e1(xx * cosh(u)); }, Real(0L, p), T,
                   digits);
}

// asymptotic sums, truncated at the smallest term; mu = 4 nu^2
inline Real k_asym(const Real& x, int digits, long mu) {
  mpfr_prec_t p = Real::bits(digits + 10);
  Real xx(x);
  xx.promote(p);
  Real eps = pow(Real(10L, p), -(long)(digits + 6));
  Real acc(1L, p), term(1L, p);
  for (long k = 1; k < 10000; ++k) {
    Real next = term * Real(mu - (2 * k - 1) * (2 * k - 1), p) / (Real(8L * k, p) * xx);
    if (!(abs(next) < abs(term))) {
      if (!(abs(term) < eps)) throw std::runtime_error("k_asym: series floor above target");
      break;
    }
    term = next;
    acc += term;
    if (abs(term) < eps) break;
  }
  Real pi = Real::pi(p);
  return sqrt(pi / (Real(2L, p) * xx)) * exp(-xx) * acc;
}

// unlike the K expansions (floor ~exp(-2x)), the g_n recurrence has a
// homogeneous part growing like Gamma(n + 3/2), which caps the attainable
// relative accuracy at ~exp(-x); the dispatch gate below accounts for that
inline Real g0_asym(const Real& x, int digits) {
  mpfr_prec_t p = Real::bits(digits + 10);
  Real xx(x);
  xx.promote(p);
  Real eps = pow(Real(10L, p), -(long)(digits + 6));
  // g_n = a_n - (n + 1/2) g_{n-1} with a_n the K0 coefficients
  Real a(1L, p), g(1L, p), xs(1L, p), acc(1L, p), prev_mag;
  bool have_prev = false;
  for (long n = 1; n < 10000; ++n) {
    a = a * Real(-(2 * n - 1) * (2 * n - 1), p) / Real(8L * n, p);
    g = a - (Real(n, p) + Real(mpq_class(1, 2), p)) * g;
    xs = xs / xx;
    Real term = g * xs;
    if (have_prev && !(abs(term) < prev_mag)) {
      if (!(prev_mag < eps)) throw std::runtime_error("g0_asym: series floor above target");
      break;
    }
    prev_mag = abs(term);
    have_prev = true;
    acc += term;
    if (abs(term) < eps) break;
  }
  Real pi = Real::pi(p);
  return sqrt(pi / Real(2L, p)) * exp(-xx) / (xx * sqrt(xx)) * acc;
}

inline bool asym_reaches(double xd, int digits) {
  return 2.0 * xd >= 2.302585092994046 * (digits + 15);
}

inline bool g0_asym_reaches(double xd, int digits) {
  return xd >= 2.302585092994046 * (digits + 15);
}

}  // namespace detail

inline Real bessel_k0(const Real& x, int digits) {
  if (detail::asym_reaches(x.to_double(), digits)) return detail::k_asym(x, digits, 0);
  return detail::k01_series(x, digits)[0];
}

inline Real bessel_k1(const Real& x, int digits) {
  if (detail::asym_reaches(x.to_double(), digits)) return detail::k_asym(x, digits, 4);
  return detail::k01_series(x, digits)[1];
}

// int_x^inf K0(t)/t dt; the companion t-weighted tail is x K1(x) exactly
inline Real k0_tail_over_t(const Real& x, int digits) {
  if (detail::g0_asym_reaches(x.to_double(), digits)) return detail::g0_asym(x, digits);
  return detail::g0_series(x, digits);
}

}  // namespace ellreg
