#include <catch2/catch_amalgamated.hpp>

#include "ellreg/complexr.hpp"
#include "ellreg/real.hpp"

using namespace ellreg;

TEST_CASE("precision enters at leaves and propagates as max") {
  Real a(1L, Real::bits(100));
  Real b(3L, Real::bits(20));
  Real c = a / b;
  REQUIRE(c.prec() == Real::bits(100));
  // 1/3 at 100 digits really has ~100 correct digits
  Real three = c * 3L - 1L;
  REQUIRE(abs(three) < Real("1e-95", Real::bits(100)));
}

TEST_CASE("string round trip") {
  Real x("2.5", 128);
  REQUIRE(x.to_double() == 2.5);
  REQUIRE(x.str_fixed(2) == "2.50");
  REQUIRE_THROWS(Real("zzz", 64));
}

TEST_CASE("rational and integer constructors are exact") {
  mpq_class q(14, 5);
  Real x(q, Real::bits(50));
  Real y = x * 5L - 14L;
  REQUIRE(y.is_zero());
  mpz_class big("123456789012345678901234567890");
  Real z(big, 256);
  REQUIRE(z.to_mpz() == big);
}

TEST_CASE("constants") {
  mpfr_prec_t p = Real::bits(30);
  Real pi = Real::pi(p);
  REQUIRE(abs(sin(pi)) < Real("1e-28", p));
  Real cat = Real::catalan(p);
  REQUIRE(abs(cat - Real("0.91596559417721901505", p)) < Real("1e-19", p));
}

TEST_CASE("in place ops promote precision") {
  Real small(1L, 64);
  Real fine = Real(1L, Real::bits(80)) / Real(7L, Real::bits(80));
  small += fine;
  REQUIRE(small.prec() >= Real::bits(80));
}

TEST_CASE("complex basics") {
  mpfr_prec_t p = Real::bits(40);
  ComplexR i(Real(0L, p), Real(1L, p));
  ComplexR m = i * i;
  REQUIRE(abs(m.re + 1L) < Real("1e-38", p));
  REQUIRE(abs(m.im) < Real("1e-38", p));

  // e^{i pi} = -1
  ComplexR e = ComplexR::unit_phase(Real::pi(p));
  REQUIRE(abs(e.re + 1L) < Real("1e-38", p));

  ComplexR z(Real(3L, p), Real(4L, p));
  REQUIRE(abs(abs(z) - 5L) < Real("1e-38", p));
  ComplexR w = z / z;
  REQUIRE(abs(w.re - 1L) < Real("1e-38", p));

  ComplexR s = sqrt(ComplexR(Real(-1L, p), Real(0L, p)));
  REQUIRE(abs(s.im - 1L) < Real("1e-38", p));
}

TEST_CASE("floor and nearest integer") {
  Real x("2.7", 64);
  REQUIRE(x.floor_mpz() == 2);
  REQUIRE(x.to_mpz() == 3);
  Real y("-2.7", 64);
  REQUIRE(y.floor_mpz() == -3);
  REQUIRE(y.to_mpz() == -3);
}
