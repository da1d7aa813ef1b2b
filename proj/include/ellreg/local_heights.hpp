#pragma once

// Local Neron heights of points on the curve, split into an exact rational
// finite part and a floating archimedean part.
//
// Finite places use the denominator-free normalization ("N1"): for a point T
// with valuations taken at the place,
//     m(T) = max(0, -v(x)) / 2                 if v(x) < 0 or T reduces to a
//                                              nonsingular point
//     m(T) = ( m(2T) - v(psi2(T)) ) / 4        if T reduces to a singular point
// which obeys the clean identities
//     m(2T)   = 4 m(T) + v(psi2(T))
//     m(T+S) + m(T-S) = 2 m(T) + 2 m(S) + v(x_T - x_S).
// The archimedean partner is lambda(x) = sum_k 4^{-k-1} log|psi2(x_k)| on the
// x-duplication orbit; summing m(T) log q_v over finite places plus lambda at
// both real embeddings gives the canonical height (the usual 1/12 log|disc|
// offsets cancel globally by the product formula).

#include <climits>
#include <stdexcept>
#include <vector>

#include "ellreg/curve_group.hpp"
#include "ellreg/linalg_exact.hpp"
#include "ellreg/quad_fields.hpp"
#include "ellreg/real.hpp"

namespace ellreg {

// exact finite local height multiple: lambda_v = m * log q_v
inline mpq_class local_height_fin(const CurveEF& E, const PointF& T, const PlaceF& v,
                                  int depth = 0) {
  if (T.inf) throw std::domain_error("local_height_fin: point at infinity");
  if (depth > 8) throw std::runtime_error("local_height_fin: singular recursion ran away");

  long vx = T.x.is_zero() ? LONG_MAX / 4 : valuation(T.x, v);
  if (vx < 0) {
    mpq_class m(-vx, 2);
    m.canonicalize();
    return m;
  }

  Fel A = E.tangent_a(T), B = E.psi2(T);
  bool a_sing = A.is_zero() || valuation(A, v) >= 1;
  bool b_sing = B.is_zero() || valuation(B, v) >= 1;
  if (!a_sing || !b_sing) return 0;  // nonsingular reduction, integral x

  if (B.is_zero()) throw std::domain_error("local_height_fin: two-torsion point");
  mpq_class inner = local_height_fin(E, E.mul(2, T), v, depth + 1);
  return (inner - valuation(B, v)) / 4;
}

// curve coefficients pushed through one real embedding
struct EmbeddedCurve {
  Real b2, b4, b6, b8;
  mpfr_prec_t prec;

  EmbeddedCurve(const CurveEF& E, int emb, mpfr_prec_t p)
      : b2(embed(E.b2, emb, p)), b4(embed(E.b4, emb, p)), b6(embed(E.b6, emb, p)),
        b8(embed(E.b8, emb, p)), prec(p) {}

  Real psi2_sq(const Real& x) const {
    return ((4L * x + b2) * x + 2L * b4) * x + b6;
  }
  Real phi4(const Real& x) const {
    Real x2 = x * x;
    return x2 * x2 - b4 * x2 - 2L * (b6 * x) - b8;
  }
};

// archimedean local height (same normalization as the finite part):
// lambda(T) = sum_{k>=0} 4^{-k-1} log|psi2(x_k)|, x_{k+1} = phi(x_k)/psi2^2(x_k)
inline Real local_height_arch(const EmbeddedCurve& ec, const Real& x0, int digits) {
  mpfr_prec_t p = ec.prec;
  long K = static_cast<long>(1.6610 * (digits + 20)) + 30;
  Real x = x0, acc(0L, p), pow4(mpq_class(1, 4), p);
  Real last_term(0L, p);
  for (long k = 0; k <= K; ++k) {
    Real p2 = ec.psi2_sq(x);
    last_term = pow4 * log(abs(p2)) / 2L;
    acc += last_term;
    pow4 /= 4L;
    if (k < K) x = ec.phi4(x) / p2;
  }
  Real eps(1L, p);
  eps = eps * pow(Real(10L, p), -(digits + 6L));
  if (!(abs(last_term) < eps))
    throw std::runtime_error("local_height_arch: series did not converge");
  return acc;
}

// norm of the denominator ideal of x, computed without factoring: with
// x = z/m, z integral, the ideal (z, m) has index det(HNF) in Z[w]
inline mpz_class den_ideal_norm(const Fel& x) {
  mpz_class m = lcm(x.a.get_den(), x.b.get_den());
  if (m == 1) return 1;
  mpq_class za = x.a * m, zb = x.b * m;
  za.canonicalize();
  zb.canonicalize();
  ZMat gens = {{za.get_num(), zb.get_num()},
               {zb.get_num(), za.get_num() + zb.get_num()},  // w * z
               {m, 0},
               {0, m}};
  ZMat H = hnf_canonical(gens);
  if (H.size() != 2) throw std::logic_error("den_ideal_norm: ideal not full rank");
  return (m * m) / (H[0][0] * H[1][1]);
}

// unnormalized naive height of x in F: sum of log^+ at both real embeddings
// plus the log-norm of the denominator ideal
inline Real naive_height(const Fel& x, mpfr_prec_t p) {
  Real h = log(Real(den_ideal_norm(x), p));
  for (int e = 0; e < 2; ++e) {
    Real ax = abs(embed(x, e, p));
    if (ax > 1L) h += log(ax);
  }
  return h;
}

// finite places that can carry height for this point set: everything above a
// denominator prime plus the additive places above 5 and 7
inline std::vector<PlaceF> support_places(const std::vector<PointF>& pts) {
  std::vector<PlaceF> out = places_above(5);
  for (auto& v : places_above(7)) out.push_back(v);
  for (auto& T : pts) {
    mpz_class den = lcm(T.x.a.get_den(), T.x.b.get_den());
    for (auto& pz : trial_factor_primes(den)) {
      for (auto& v : places_above(pz.get_si())) {
        bool seen = false;
        for (auto& u : out)
          if (u.name == v.name) seen = true;
        if (!seen) out.push_back(v);
      }
    }
  }
  return out;
}

// canonical height of T as the sum of all local contributions
inline Real canonical_height(const CurveEF& E, const PointF& T, int digits) {
  mpfr_prec_t p = Real::bits(digits + 40);
  Real h(0L, p);
  for (auto& v : support_places({T})) {
    mpq_class m = local_height_fin(E, T, v);
    if (m != 0) h += Real(m, p) * log(Real(v.q, p));
  }
  for (int e = 0; e < 2; ++e) {
    EmbeddedCurve ec(E, e, p);
    h += local_height_arch(ec, embed(T.x, e, p), digits);
  }
  return h;
}

// slow reference: hhat = lim 4^{-n} naive_height(x(2^n T)) / 2
inline Real doubling_height_estimate(const CurveEF& E, const PointF& T, int n,
                                     mpfr_prec_t p) {
  PointF S = T;
  for (int i = 0; i < n; ++i) S = E.add(S, S);
  Real h = naive_height(S.x, p) / 2L;
  for (int i = 0; i < n; ++i) h /= 4L;
  return h;
}

}  // namespace ellreg
