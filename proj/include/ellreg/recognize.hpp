#pragma once

// Recognition of high-precision reals as small rationals, by continued
// fractions with a denominator cap and an approximation tolerance.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>

#include "ellreg/real.hpp"

namespace ellreg {

// best rational p/q with q <= max_den approximating x to within tol;
// nullopt when no convergent gets that close. Distinct rationals with
// denominator <= max_den differ by at least 1/max_den^2, so requiring
// 2 tol < 1/max_den^2 makes the answer unique; a looser tolerance is
// a configuration error, not a recognition failure.
inline std::optional<mpq_class> recognize_rational(const Real& x, long max_den,
                                                   const Real& tol) {
  mpfr_prec_t p = x.prec();
  if (!(Real(2L, p) * tol * Real(max_den, p) * Real(max_den, p) < Real(1L, p)))
    throw std::invalid_argument(
        "recognize_rational: tolerance too loose for the denominator cap");
  // convergents p_k/q_k of the continued fraction of x
  mpz_class pk1 = 1, pk = x.floor_mpz();
  mpz_class qk1 = 0, qk = 1;
  Real frac = x - Real(pk, p);
  for (int i = 0; i < 64; ++i) {
    mpq_class cand(pk, qk);
    cand.canonicalize();
    if (abs(x - Real(cand, p)) < tol) return cand;
    if (frac.is_zero()) break;
    Real inv = Real(1L, p) / frac;
    mpz_class a = inv.floor_mpz();
    frac = inv - Real(a, p);
    mpz_class pn = a * pk + pk1, qn = a * qk + qk1;
    if (qn > max_den) break;
    pk1 = pk;
    pk = pn;
    qk1 = qk;
    qk = qn;
  }
  mpq_class cand(pk, qk);
  cand.canonicalize();
  if (abs(x - Real(cand, p)) < tol) return cand;
  return std::nullopt;
}

}  // namespace ellreg
