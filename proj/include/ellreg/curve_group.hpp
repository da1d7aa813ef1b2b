#pragma once

// The CM curve y^2 + y = x^3 + w x^2 - (93+163w) x + (669+1076w) over
// F = Q(sqrt5), its invariants, and exact group law arithmetic.

#include <stdexcept>
#include <vector>

#include "ellreg/quad_fields.hpp"

namespace ellreg {

struct PointF {
  bool inf = true;
  Fel x, y;

  PointF() = default;
  PointF(Fel px, Fel py) : inf(false), x(std::move(px)), y(std::move(py)) {}
  bool operator==(const PointF& o) const {
    if (inf || o.inf) return inf == o.inf;
    return x == o.x && y == o.y;
  }
};

struct CurveEF {
  Fel a1, a2, a3, a4, a6;
  Fel b2, b4, b6, b8, c4, c6, disc, j;

  CurveEF(Fel A1, Fel A2, Fel A3, Fel A4, Fel A6)
      : a1(std::move(A1)), a2(std::move(A2)), a3(std::move(A3)),
        a4(std::move(A4)), a6(std::move(A6)) {
    b2 = a1 * a1 + mpq_class(4) * a2;
    b4 = mpq_class(2) * a4 + a1 * a3;
    b6 = a3 * a3 + mpq_class(4) * a6;
    b8 = a1 * a1 * a6 + mpq_class(4) * (a2 * a6) - a1 * a3 * a4 + a2 * (a3 * a3) - a4 * a4;
    c4 = b2 * b2 - mpq_class(24) * b4;
    c6 = -(b2 * b2 * b2) + mpq_class(36) * (b2 * b4) - mpq_class(216) * b6;
    disc = -(b2 * b2) * b8 - mpq_class(8) * (b4 * b4 * b4) - mpq_class(27) * (b6 * b6) +
           mpq_class(9) * (b2 * b4 * b6);
    j = (c4 * c4 * c4) / disc;
  }

  bool on_curve(const PointF& P) const {
    if (P.inf) return true;
    Fel lhs = P.y * P.y + a1 * P.x * P.y + a3 * P.y;
    Fel rhs = P.x * P.x * P.x + a2 * P.x * P.x + a4 * P.x + a6;
    return lhs == rhs;
  }

  PointF neg(const PointF& P) const {
    if (P.inf) return P;
    return {P.x, -P.y - a1 * P.x - a3};
  }

  PointF add(const PointF& P, const PointF& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    Fel lam;
    if (P.x == Q.x) {
      if (Q.y == -P.y - a1 * P.x - a3) return {};  // P + (-P)
      Fel num = mpq_class(3) * (P.x * P.x) + mpq_class(2) * (a2 * P.x) + a4 - a1 * P.y;
      Fel den = mpq_class(2) * P.y + a1 * P.x + a3;
      lam = num / den;
    } else {
      lam = (Q.y - P.y) / (Q.x - P.x);
    }
    Fel x3 = lam * lam + a1 * lam - a2 - P.x - Q.x;
    Fel y3 = lam * (P.x - x3) - P.y - a1 * x3 - a3;
    return {x3, y3};
  }

  PointF mul(long n, PointF P) const {
    if (n == 0) return {};
    if (n < 0) { P = neg(P); n = -n; }
    PointF R;
    while (n > 0) {
      if (n & 1) R = add(R, P);
      P = add(P, P);
      n >>= 1;
    }
    return R;
  }

  // division polynomial psi_2 and numerator of the x-duplication map:
  // x(2P) = phi(x) / psi2(x)^2 with the classical quartic phi
  Fel psi2(const PointF& P) const { return mpq_class(2) * P.y + a1 * P.x + a3; }
  Fel psi2_sq(const Fel& x) const {
    return mpq_class(4) * (x * x * x) + b2 * (x * x) + mpq_class(2) * (b4 * x) + b6;
  }
  Fel phi4(const Fel& x) const {
    Fel x2 = x * x;
    return x2 * x2 - b4 * x2 - mpq_class(2) * (b6 * x) - b8;
  }

  // partial derivative 3x^2 + 2 a2 x + a4 - a1 y; a point is singular on the
  // reduction mod pi iff both this and psi2 have positive valuation
  Fel tangent_a(const PointF& P) const {
    return mpq_class(3) * (P.x * P.x) + mpq_class(2) * (a2 * P.x) + a4 - a1 * P.y;
  }
};

// the curve under study together with its two Mordell-Weil generators
struct CurveData {
  CurveEF E;
  PointF P, Q;
};

inline CurveData cm35_curve() {
  CurveEF E(Fel(0), Fel(0, 1), Fel(1), Fel(-93, -163), Fel(669, 1076));
  PointF P(Fel(7, 9), Fel(17, 35));
  PointF Q(Fel(12, -1), Fel(32, -20));
  return {E, P, Q};
}

}  // namespace ellreg
