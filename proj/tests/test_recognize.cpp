#include <catch2/catch_amalgamated.hpp>

#include "ellreg/real.hpp"
#include "ellreg/recognize.hpp"

using namespace ellreg;

TEST_CASE("continued-fraction recognition of small rationals") {
  mpfr_prec_t p = Real::bits(60);
  Real tol = pow(Real(10L, p), -20L);

  auto r = recognize_rational(Real(mpq_class(-1, 16), p), 64, tol);
  REQUIRE(r);
  REQUIRE(*r == mpq_class(-1, 16));

  r = recognize_rational(Real(mpq_class(-55, 8), p), 64, tol);
  REQUIRE(r);
  REQUIRE(*r == mpq_class(-55, 8));

  REQUIRE(recognize_rational(Real(7L, p), 64, tol).value() == 7);
  REQUIRE(recognize_rational(Real(0L, p), 64, tol).value() == 0);
}

TEST_CASE("recognition absorbs noise below the tolerance") {
  mpfr_prec_t p = Real::bits(60);
  Real tol = pow(Real(10L, p), -20L);
  Real x = Real(mpq_class(3, 16), p) + pow(Real(10L, p), -25L);
  auto r = recognize_rational(x, 64, tol);
  REQUIRE(r);
  REQUIRE(*r == mpq_class(3, 16));
}

TEST_CASE("irrationals and capped denominators are rejected") {
  mpfr_prec_t p = Real::bits(60);
  Real tol = pow(Real(10L, p), -20L);
  REQUIRE(!recognize_rational(Real::pi(p), 64, tol));
  // 1/97 needs a denominator past the cap
  REQUIRE(!recognize_rational(Real(mpq_class(1, 97), p), 64, tol));
}

TEST_CASE("a tolerance looser than the Farey gap is refused") {
  mpfr_prec_t p = Real::bits(60);
  // denominators up to 64 separate rationals by 1/64^2; 1/8000 is too wide
  Real loose(mpq_class(1, 8000), p);
  REQUIRE_THROWS_AS(recognize_rational(Real(0L, p), 64, loose), std::invalid_argument);
}
