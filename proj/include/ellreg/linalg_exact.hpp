#pragma once

// Exact integer linear algebra on small dense matrices: row-style Hermite
// normal form with unimodular transform, integer kernels, lattice membership,
// saturation, and fraction-free determinants. Everything works on row spans.

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <vector>

namespace ellreg {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;

inline ZMat transpose(const ZMat& A) {
  if (A.empty()) return {};
  ZMat T(A[0].size(), ZVec(A.size()));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
  return T;
}

inline ZMat identity_mat(size_t n) {
  ZMat I(n, ZVec(n, 0));
  for (size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

struct HnfResult {
  ZMat H;  // row HNF of A, zero rows at the bottom
  ZMat U;  // unimodular, U * A = H
  size_t rank = 0;
};

// row HNF by gcd row operations; pivots positive, entries above pivots reduced
inline HnfResult row_hnf(const ZMat& A) {
  size_t m = A.size(), n = m ? A[0].size() : 0;
  HnfResult r{A, identity_mat(m), 0};
  size_t row = 0;
  for (size_t col = 0; col < n && row < m; ++col) {
    // clear below (row) in this column with extended gcd combinations
    for (size_t i = row + 1; i < m; ++i) {
      if (r.H[i][col] == 0) continue;
      if (r.H[row][col] == 0) {
        std::swap(r.H[row], r.H[i]);
        std::swap(r.U[row], r.U[i]);
        continue;
      }
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                 r.H[row][col].get_mpz_t(), r.H[i][col].get_mpz_t());
      mpz_class p = r.H[row][col] / g, q = r.H[i][col] / g;
      for (size_t j = 0; j < n; ++j) {
        mpz_class h1 = s * r.H[row][j] + t * r.H[i][j];
        mpz_class h2 = -q * r.H[row][j] + p * r.H[i][j];
        r.H[row][j] = h1;
        r.H[i][j] = h2;
      }
      for (size_t j = 0; j < m; ++j) {
        mpz_class u1 = s * r.U[row][j] + t * r.U[i][j];
        mpz_class u2 = -q * r.U[row][j] + p * r.U[i][j];
        r.U[row][j] = u1;
        r.U[i][j] = u2;
      }
    }
    if (r.H[row][col] == 0) continue;
    if (r.H[row][col] < 0) {
      for (size_t j = 0; j < n; ++j) r.H[row][j] = -r.H[row][j];
      for (size_t j = 0; j < m; ++j) r.U[row][j] = -r.U[row][j];
    }
    // reduce entries above the pivot
    for (size_t i = 0; i < row; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), r.H[i][col].get_mpz_t(), r.H[row][col].get_mpz_t());
      if (q == 0) continue;
      for (size_t j = 0; j < n; ++j) r.H[i][j] -= q * r.H[row][j];
      for (size_t j = 0; j < m; ++j) r.U[i][j] -= q * r.U[row][j];
    }
    ++row;
  }
  r.rank = row;
  return r;
}

inline size_t rank_z(const ZMat& A) { return row_hnf(A).rank; }

// basis (as rows) of {x : A x = 0}, automatically saturated
inline ZMat right_kernel(const ZMat& A) {
  ZMat At = transpose(A);
  HnfResult h = row_hnf(At);
  ZMat K;
  for (size_t i = h.rank; i < h.U.size(); ++i) K.push_back(h.U[i]);
  return K;
}

// coordinates c with c * B = v, if v lies in the integer row span of B
inline std::optional<ZVec> solve_in_rowspan(const ZMat& B, const ZVec& v) {
  if (B.empty()) return std::nullopt;
  size_t m = B.size(), n = B[0].size();
  HnfResult h = row_hnf(B);
  ZVec rem = v, coordH(m, 0);
  // back-substitute against the HNF rows
  for (size_t i = 0; i < h.rank; ++i) {
    size_t piv = 0;
    while (piv < n && h.H[i][piv] == 0) ++piv;
    if (piv == n) break;
    if (rem[piv] % h.H[i][piv] != 0) return std::nullopt;
    mpz_class q = rem[piv] / h.H[i][piv];
    coordH[i] = q;
    for (size_t j = 0; j < n; ++j) rem[j] -= q * h.H[i][j];
  }
  for (auto& x : rem)
    if (x != 0) return std::nullopt;
  // v = coordH * H = (coordH * U) * B
  ZVec c(m, 0);
  for (size_t j = 0; j < m; ++j)
    for (size_t i = 0; i < m; ++i) c[j] += coordH[i] * h.U[i][j];
  return c;
}

inline bool in_rowspan(const ZMat& B, const ZVec& v) {
  return solve_in_rowspan(B, v).has_value();
}

// canonical HNF rows (zero rows dropped): equal lattices iff equal output
inline ZMat hnf_canonical(const ZMat& A) {
  HnfResult h = row_hnf(A);
  ZMat out(h.H.begin(), h.H.begin() + h.rank);
  return out;
}

inline bool same_lattice(const ZMat& A, const ZMat& B) {
  return hnf_canonical(A) == hnf_canonical(B);
}

// saturation of the row span inside Z^n: kernel of the kernel
inline ZMat saturate_rows(const ZMat& B) {
  ZMat K = right_kernel(B);
  if (K.empty()) {
    // full rank: saturation is all of Z^n intersected with the Q-span = Z^n
    return identity_mat(B[0].size());
  }
  return right_kernel(K);
}

// fraction-free (Bareiss) determinant
inline mpz_class det_z(ZMat A) {
  size_t n = A.size();
  if (n == 0) return 1;
  mpz_class denom = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (A[k][k] == 0) {
      size_t s = k + 1;
      while (s < n && A[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(A[k], A[s]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        A[i][j] = A[k][k] * A[i][j] - A[i][k] * A[k][j];
        if (k > 0) A[i][j] /= denom;
      }
    denom = A[k][k];
  }
  return sign * A[n - 1][n - 1];
}

// index of the row span of B inside its saturation (B must have full row rank)
inline mpz_class saturation_index(const ZMat& B) {
  ZMat S = saturate_rows(B);
  ZMat C;
  for (auto& b : B) {
    auto c = solve_in_rowspan(S, b);
    if (!c) throw std::logic_error("saturation_index: row not in saturation");
    C.push_back(*c);
  }
  // C is rank(B) x rows(S); for full-rank B these are square
  if (C.size() != S.size()) throw std::logic_error("saturation_index: rank defect");
  return abs(det_z(C));
}

}  // namespace ellreg
