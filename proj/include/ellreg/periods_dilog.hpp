#pragma once

// Period lattices at the two real embeddings, elliptic logarithms of curve
// points, the Bloch-Wigner dilogarithm, its q-symmetrization, and the
// regulator vectors attached to integer divisors.
//
// Both embedded curves have negative discriminant (one real root e1), so the
// lattice is rhombic: tau = -1/2 + i*t and q = exp(2 pi i tau) is real and
// negative. The CM structure pins tau exactly: one embedding satisfies
// 35 tau^2 + 35 tau + 9 = 0, the other 7 tau^2 + 7 tau + 3 = 0, which the
// period code verifies after the fact rather than assuming.

#include <array>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "ellreg/complexr.hpp"
#include "ellreg/curve_group.hpp"
#include "ellreg/linalg_exact.hpp"
#include "ellreg/quadrature.hpp"

namespace ellreg {

namespace detail {

// exact Bernoulli numbers, B_1 = -1/2, grown on demand
inline mpq_class bernoulli(size_t k) {
  static std::vector<mpq_class> tab{mpq_class(1), mpq_class(-1, 2)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (tab.size() <= k) {
    size_t m = tab.size();
    mpq_class s = 0;
    mpz_class c = 1;  // C(m+1, j), updated incrementally
    for (size_t j = 0; j < m; ++j) {
      s += c * tab[j];
      c = c * (long)(m + 1 - j) / (long)(j + 1);
    }
    s /= -(long)(m + 1);
    tab.push_back(s);
  }
  return tab[k];
}

// Li_2 by the Bernoulli series in L = -log(1-z); needs |L| well below 2 pi,
// which the bloch_wigner region reduction guarantees
inline ComplexR li2_series(const ComplexR& z, int digits, mpfr_prec_t p) {
  ComplexR one(1L, p);
  ComplexR L = -log(one - z);
  Real eps = pow(Real(10L, p), -(long)(digits + 10));
  if (!(abs(L) < Real(4L, p))) throw std::runtime_error("li2_series: argument not reduced");
  ComplexR acc = L - Real(mpq_class(1, 4), p) * (L * L);  // k = 0 and k = 1 terms
  ComplexR L2 = L * L;
  ComplexR pw = L2 * L;    // L^(k+1) at k = 2
  mpz_class fact = 6;      // (k+1)! at k = 2
  for (size_t k = 2; k < 3000; k += 2) {
    ComplexR term = (Real(bernoulli(k), p) / Real(fact, p)) * pw;
    acc += term;
    if (abs(term) < eps) return acc;
    pw = pw * L2;
    fact *= (long)((k + 2) * (k + 3));
  }
  throw std::runtime_error("li2_series: no convergence");
}

}  // namespace detail

// single-valued dilogarithm D(z) = Im Li_2(z) + log|z| arg(1-z); vanishes on
// the real axis, odd under conjugation and inversion
inline Real bloch_wigner(ComplexR z, int digits) {
  mpfr_prec_t p = std::max(z.re.prec(), Real::bits(digits + 12));
  z.re.promote(p);
  z.im.promote(p);
  if (z.im == Real(0L, p)) return Real(0L, p);
  Real one(1L, p), half(mpq_class(1, 2), p);
  bool neg = false;
  for (int i = 0; i < 4; ++i) {
    if (norm2(z) > one) {
      z = inv(z);
      neg = !neg;
    } else if (z.re > half) {
      z = ComplexR(one - z.re, -z.im);
      neg = !neg;
    } else {
      break;
    }
  }
  ComplexR l2 = detail::li2_series(z, digits, p);
  Real d = l2.im + log(abs(z)) * arg(ComplexR(one, Real(0L, p)) - z);
  return neg ? -d : d;
}

// q-symmetrized (elliptic) dilogarithm sum over n in Z of D(u q^n), for real
// q with |q| < 1; the n < 0 half is folded via D(1/w) = -D(w)
inline Real elliptic_dilog(const ComplexR& u, const Real& q, int digits) {
  mpfr_prec_t p = std::max(u.re.prec(), Real::bits(digits + 12));
  Real aq = abs(q);
  if (!(aq < Real(1L, p))) throw std::runtime_error("elliptic_dilog: |q| >= 1");
  Real eps = pow(Real(10L, p), -(long)(digits + 8));
  Real pi = Real::pi(p);
  Real au = abs(u), lq = -log(aq);
  Real cu = max(au, Real(1L, p) / au);
  Real c1 = Real(2L, p) * (Real(2L, p) + pi * abs(log(au))) * cu;
  Real c2 = Real(2L, p) * pi * lq * cu;
  ComplexR ui = inv(u);
  Real acc = bloch_wigner(u, digits);
  Real qm = q;
  for (long m = 1; m < 200000; ++m) {
    acc += bloch_wigner(qm * u, digits) - bloch_wigner(qm * ui, digits);
    // tail bound from |D(w)| <= (2 + pi |log|w||) |w|, summed over both halves
    Real r = aq * abs(qm);
    Real omr = Real(1L, p) - aq;
    Real tail = r * ((c1 + c2 * Real(m + 1, p)) / omr + c2 * aq / (omr * omr));
    if (tail < eps) return acc;
    qm = qm * q;
  }
  throw std::runtime_error("elliptic_dilog: no convergence");
}

struct TorusData {
  int emb = 0;           // real-embedding index (0 sends w to the golden ratio)
  bool primed = false;   // true when tau satisfies 7 tau^2 + 7 tau + 3 = 0
  Real g2, g3;           // short-form coefficients c4/12, c6/216 at this embedding
  Real e1;               // the single real root of 4 x^3 - g2 x - g3
  Real omega1;           // real period
  ComplexR tau;          // period ratio, Im > 0 (here Re = -1/2 exactly)
  Real q;                // exp(2 pi i tau), real and negative
};

// periods by complex AGM, tau by the companion integral over (-inf, e1];
// the CM quadratic satisfied by tau identifies the primed embedding
inline TorusData periods(const CurveEF& E, int emb, int digits) {
  mpfr_prec_t p = Real::bits(digits + 25);
  TorusData td;
  td.emb = emb;
  td.g2 = embed(E.c4, emb, p) / Real(12L, p);
  td.g3 = embed(E.c6, emb, p) / Real(216L, p);
  auto f = [&](const Real& x) { return (Real(4L, p) * x * x - td.g2) * x - td.g3; };

  Real lo(-1L, p), hi(1L, p);
  while (!(f(lo) < Real(0L, p))) lo = lo * Real(2L, p);
  while (!(f(hi) > Real(0L, p))) hi = hi * Real(2L, p);
  for (int i = 0; i < 80; ++i) {
    Real mid = (lo + hi) / Real(2L, p);
    (f(mid) < Real(0L, p) ? lo : hi) = mid;
  }
  Real e1 = (lo + hi) / Real(2L, p);
  for (int i = 0; i < 60; ++i) {
    Real step = f(e1) / (Real(12L, p) * e1 * e1 - td.g2);
    e1 -= step;
    if (abs(step) < abs(e1) * ldexp2(Real(1L, p), -(long)p + 8)) break;
  }
  td.e1 = e1;

  // e2, e3 = -e1/2 +- i beta; omega1 = pi / AGM(Re sqrt(e1-e2), |sqrt(e1-e2)|)
  Real beta = sqrt(Real(3L, p) * e1 * e1 - td.g2) / Real(2L, p);
  ComplexR root = sqrt(ComplexR(Real(3L, p) * e1 / Real(2L, p), -beta));
  Real a = root.re, b = abs(root);
  for (int i = 0; i < 200 && !(abs(a - b) < abs(a) * ldexp2(Real(1L, p), -(long)p + 10)); ++i) {
    Real a2 = (a + b) / Real(2L, p);
    b = sqrt(a * b);
    a = a2;
  }
  td.omega1 = Real::pi(p) / a;

  // J = integral over (-inf, e1] of dx / sqrt(-f); x = e1 - s^2 turns the
  // integrand into 2 / sqrt(f'(e1) - 12 e1 s^2 + 4 s^4), smooth and O(s^-2)
  Real fp1 = Real(12L, p) * e1 * e1 - td.g2;
  auto jf = [&](const Real& s) {
    Real s2 = s * s;
    return Real(2L, p) / sqrt(fp1 - Real(12L, p) * e1 * s2 + Real(4L, p) * s2 * s2);
  };
  Real J = exp_sinh_0inf(jf, digits + 10);
  Real imtau = J / td.omega1;
  td.tau = ComplexR(Real(mpq_class(-1, 2), p), imtau);
  td.q = -exp(-Real(2L, p) * Real::pi(p) * imtau);

  auto quad_res = [&](long c2, long c1, long c0) {
    ComplexR r = Real(c2, p) * (td.tau * td.tau) + Real(c1, p) * td.tau + ComplexR(Real(c0, p));
    return abs(r);
  };
  Real tol = pow(Real(10L, p), -(long)(digits / 2));
  if (quad_res(35, 35, 9) < tol)
    td.primed = false;
  else if (quad_res(7, 7, 3) < tol)
    td.primed = true;
  else
    throw std::runtime_error("periods: tau matches neither CM quadratic");
  return td;
}

// Weierstrass p-function on the lattice [1, tau] at real argument s, via the
// u-q series; real q makes every bracket real
inline Real wp_frame(const Real& s, const Real& q, int digits) {
  mpfr_prec_t p = std::max(s.prec(), Real::bits(digits + 12));
  Real eps = pow(Real(10L, p), -(long)(digits + 8));
  Real aq = abs(q);
  ComplexR u = ComplexR::unit_phase(Real(2L, p) * Real::pi(p) * s);
  ComplexR ui = inv(u);
  ComplexR one(1L, p);
  ComplexR omu = one - u;
  ComplexR core = ComplexR(Real(mpq_class(1, 12), p)) + u / (omu * omu);
  Real qn = q;
  while (true) {
    ComplexR d1 = one - qn * u;
    ComplexR d2 = one - qn * ui;
    Real dq = Real(1L, p) - qn;
    core += qn * (u / (d1 * d1) + ui / (d2 * d2) - ComplexR(Real(2L, p) / (dq * dq)));
    Real omr = Real(1L, p) - aq;
    if (abs(qn) * aq * Real(4L, p) / (omr * omr * omr) < eps) break;
    qn = qn * q;
  }
  Real pi = Real::pi(p);
  return -Real(4L, p) * pi * pi * core.re;
}

// derivative of wp_frame; (2 pi i)^3 times a series in h(v) = v(1+v)/(1-v)^3,
// folded with h(1/v) = -h(v)
inline Real wp_frame_prime(const Real& s, const Real& q, int digits) {
  mpfr_prec_t p = std::max(s.prec(), Real::bits(digits + 12));
  Real eps = pow(Real(10L, p), -(long)(digits + 8));
  Real aq = abs(q);
  ComplexR u = ComplexR::unit_phase(Real(2L, p) * Real::pi(p) * s);
  ComplexR ui = inv(u);
  ComplexR one(1L, p);
  auto h = [&](const ComplexR& v) {
    ComplexR omv = one - v;
    return v * (one + v) / (omv * omv * omv);
  };
  ComplexR S = h(u);
  Real qn = q;
  while (true) {
    S += h(qn * u) - h(qn * ui);
    Real omr = Real(1L, p) - aq;
    if (abs(qn) * aq * Real(4L, p) / (omr * omr * omr) < eps) break;
    qn = qn * q;
  }
  Real pi = Real::pi(p);
  return Real(8L, p) * pi * pi * pi * S.im;
}

// solve wp_frame(s) = X for s in (0, 1/2]; wp is monotone decreasing there,
// so a bracketed Newton (bisection whenever the step leaves the bracket)
// cannot go wrong
inline Real wp_inverse(const Real& X, const Real& q, int digits) {
  mpfr_prec_t p = std::max(X.prec(), Real::bits(digits + 12));
  Real half(mpq_class(1, 2), p);
  Real wmin = wp_frame(half, q, digits);
  if (X < wmin) {
    if (wmin - X < pow(Real(10L, p), -(long)(digits / 2))) return half;
    throw std::runtime_error("wp_inverse: x below the real root");
  }
  Real lo = ldexp2(Real(1L, p), -8), hi = half;
  for (int i = 0; i < 80 && !(wp_frame(lo, q, digits) > X); ++i) lo = lo / Real(4L, p);
  Real tol = pow(Real(10L, p), -(long)(digits + 6));
  Real s = (lo + hi) / Real(2L, p);
  for (int i = 0; i < 400 && !(hi - lo < tol); ++i) {
    Real fs = wp_frame(s, q, digits) - X;
    (fs > Real(0L, p) ? lo : hi) = s;  // decreasing: wp(s) > X means s is left of the root
    Real ns = s - fs / wp_frame_prime(s, q, digits);
    if (!(ns > lo) || !(ns < hi)) ns = (lo + hi) / Real(2L, p);
    if (abs(ns - s) < tol) return ns;
    s = ns;
  }
  return s;
}

struct TorusPoint {
  Real z;      // elliptic log in the [1, tau] frame, real for real-locus points
  ComplexR u;  // exp(2 pi i z)
};

// elliptic log of a curve point: invert wp on the frame x-coordinate
// omega1^2 (x + b2/12), then pick z = s or 1 - s so that wp' matches
// 2y + a1 x + a3 in sign
inline TorusPoint elliptic_log(const CurveEF& E, const PointF& T, const TorusData& td,
                               int digits) {
  mpfr_prec_t p = Real::bits(digits + 25);
  if (T.inf) return {Real(0L, p), ComplexR(1L, p)};
  Real x = embed(T.x, td.emb, p);
  Real X = td.omega1 * td.omega1 * (x + embed(E.b2, td.emb, p) / Real(12L, p));
  Real s = wp_inverse(X, td.q, digits);
  Real eta = embed(E.psi2(T), td.emb, p);
  Real z = (eta > Real(0L, p)) ? Real(1L, p) - s : s;
  return {z, ComplexR::unit_phase(Real(2L, p) * Real::pi(p) * z)};
}

// rows (one per divisor) of regulator vectors, column 0 at the unprimed
// embedding (35 tau^2 + 35 tau + 9 = 0) and column 1 at the primed one
inline std::vector<std::array<Real, 2>> regulator_vectors(const CurveEF& E,
                                                          const std::vector<PointF>& pts,
                                                          const ZMat& divisors,
                                                          int digits) {
  TorusData t0 = periods(E, 0, digits);
  TorusData t1 = periods(E, 1, digits);
  if (t0.primed == t1.primed)
    throw std::runtime_error("regulator_vectors: embeddings do not split into primed/unprimed");
  std::array<const TorusData*, 2> tori = {t0.primed ? &t1 : &t0, t0.primed ? &t0 : &t1};

  mpfr_prec_t p = Real::bits(digits + 25);
  std::array<std::vector<Real>, 2> dq;
  for (int c = 0; c < 2; ++c)
    for (auto& T : pts) {
      TorusPoint tp = elliptic_log(E, T, *tori[c], digits);
      dq[c].push_back(elliptic_dilog(tp.u, tori[c]->q, digits));
    }

  Real pi = Real::pi(p);
  std::vector<std::array<Real, 2>> rows;
  for (auto& d : divisors) {
    std::array<Real, 2> r = {Real(0L, p), Real(0L, p)};
    for (int c = 0; c < 2; ++c) {
      for (size_t j = 0; j < pts.size(); ++j)
        if (d[j] != 0) r[c] += Real(d[j], p) * dq[c][j];
      r[c] = r[c] / pi;
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace ellreg
