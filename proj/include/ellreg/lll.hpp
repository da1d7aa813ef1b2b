#pragma once

// Textbook LLL reduction over exact rationals. Dimensions here are tiny
// (a dozen rows), so Gram-Schmidt data is simply recomputed after each swap
// rather than updated incrementally.

#include <gmpxx.h>

#include <vector>

#include "ellreg/linalg_exact.hpp"

namespace ellreg {

namespace detail {

struct GsData {
  std::vector<std::vector<mpq_class>> mu;  // mu[i][j], j < i
  std::vector<mpq_class> bstar2;           // |b*_i|^2
};

inline GsData gram_schmidt(const ZMat& B) {
  size_t n = B.size();
  GsData g;
  g.mu.assign(n, std::vector<mpq_class>(n, 0));
  g.bstar2.assign(n, 0);
  // b*_i = b_i - sum_{j<i} mu_ij b*_j ; track b* as exact rational vectors
  std::vector<std::vector<mpq_class>> bs(n, std::vector<mpq_class>(B[0].size()));
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < B[i].size(); ++k) bs[i][k] = B[i][k];
    for (size_t j = 0; j < i; ++j) {
      mpq_class num = 0;
      for (size_t k = 0; k < B[i].size(); ++k) num += mpq_class(B[i][k]) * bs[j][k];
      g.mu[i][j] = (g.bstar2[j] == 0) ? mpq_class(0) : mpq_class(num / g.bstar2[j]);
      for (size_t k = 0; k < B[i].size(); ++k) bs[i][k] -= g.mu[i][j] * bs[j][k];
    }
    mpq_class n2 = 0;
    for (auto& c : bs[i]) n2 += c * c;
    g.bstar2[i] = n2;
  }
  return g;
}

inline mpz_class round_q(const mpq_class& q) {
  // nearest integer, halves toward +inf
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), mpz_class(2 * num + den).get_mpz_t(),
             mpz_class(2 * den).get_mpz_t());
  return r;
}

}  // namespace detail

// LLL-reduce the rows of B in place; delta = dnum/dden, e.g. 99/100
inline void lll_reduce(ZMat& B, long dnum = 99, long dden = 100) {
  using namespace detail;
  size_t n = B.size();
  if (n <= 1) return;
  mpq_class delta(dnum, dden);
  GsData g = gram_schmidt(B);
  size_t k = 1;
  while (k < n) {
    // size reduction of row k
    for (size_t j = k; j-- > 0;) {
      mpz_class r = round_q(g.mu[k][j]);
      if (r == 0) continue;
      for (size_t t = 0; t < B[k].size(); ++t) B[k][t] -= r * B[j][t];
      for (size_t t = 0; t < j; ++t) g.mu[k][t] -= mpq_class(r) * g.mu[j][t];
      g.mu[k][j] -= r;
    }
    // Lovasz condition
    mpq_class lhs = g.bstar2[k];
    mpq_class rhs = (delta - g.mu[k][k - 1] * g.mu[k][k - 1]) * g.bstar2[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      std::swap(B[k], B[k - 1]);
      g = gram_schmidt(B);
      k = (k > 1) ? k - 1 : 1;
    }
  }
}

}  // namespace ellreg
