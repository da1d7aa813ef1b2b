#include <catch2/catch_amalgamated.hpp>

#include "ellreg/curve_group.hpp"
#include "ellreg/golden.hpp"

using namespace ellreg;

TEST_CASE("curve invariants") {
  auto [E, P, Q] = cm35_curve();
  REQUIRE(E.b2 == Fel(0, 4));
  REQUIRE(E.b4 == Fel(-186, -326));
  REQUIRE(E.b6 == Fel(2677, 4304));
  REQUIRE(E.b8 == Fel(-30914, -49906));
  REQUIRE(E.c4 == Fel(4480, 7840));             // 1120 (4 + 7w)
  REQUIRE(E.disc == Fel(-42875));               // -5^3 7^3
  REQUIRE(E.j == Fel(-32604160, -52756480));    // (-128 - 224w)^3
  REQUIRE(Fel(4) * E.b8 == E.b2 * E.b6 - E.b4 * E.b4);

  // potential bad reduction only at sqrt5 and 7
  REQUIRE(valuation(E.disc, places_above(5)[0]) == 6);
  REQUIRE(valuation(E.disc, places_above(7)[0]) == 3);
  REQUIRE(valuation(E.disc, places_above(2)[0]) == 0);
}

TEST_CASE("generators lie on the curve") {
  auto [E, P, Q] = cm35_curve();
  REQUIRE(E.on_curve(P));
  REQUIRE(E.on_curve(Q));
  REQUIRE_FALSE(E.on_curve(PointF(Fel(1), Fel(1))));
}

TEST_CASE("group law sanity") {
  auto [E, P, Q] = cm35_curve();
  PointF O;
  REQUIRE(E.add(P, O) == P);
  REQUIRE(E.add(P, E.neg(P)) == O);
  REQUIRE(E.add(E.add(P, Q), E.neg(Q)) == P);

  // associativity on a few samples
  PointF R = E.mul(2, Q);
  REQUIRE(E.add(E.add(P, Q), R) == E.add(P, E.add(Q, R)));
  REQUIRE(E.add(E.add(R, P), Q) == E.add(R, E.add(P, Q)));

  // mul consistency
  REQUIRE(E.mul(5, P) == E.add(P, E.mul(4, P)));
  REQUIRE(E.mul(-3, P) == E.neg(E.mul(3, P)));

  // generators are non-torsion as far as we care to look
  for (long n = 1; n <= 12; ++n) {
    REQUIRE_FALSE(E.mul(n, P).inf);
    REQUIRE_FALSE(E.mul(n, Q).inf);
  }
}

TEST_CASE("x-duplication quartic matches the group law") {
  auto [E, P, Q] = cm35_curve();
  for (const PointF& T : {P, Q, E.add(P, Q), E.mul(3, P)}) {
    PointF D = E.mul(2, T);
    REQUIRE(D.x == E.phi4(T.x) / E.psi2_sq(T.x));
    REQUIRE(E.psi2(T) * E.psi2(T) == E.psi2_sq(T.x));
  }
}

TEST_CASE("all 22 published support points are reproduced by the group law") {
  auto [E, P, Q] = cm35_curve();
  for (const auto& c : golden::combos()) {
    PointF T = E.add(E.mul(c.k, P), E.mul(c.l, Q));
    REQUIRE_FALSE(T.inf);
    REQUIRE(E.on_curve(T));
    REQUIRE(T.x == golden::combo_x(c));
    if (c.has_y) REQUIRE(T.y == Fel(c.ya, c.yb));
  }
}
