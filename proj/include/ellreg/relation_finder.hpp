#pragma once

// Reconstruction of the divisor lattice. A divisor sum a_j (T_j) over the 22
// support points T_j = k_j P + l_j Q qualifies when
//   (a) the four cubic moments sum a k^3, k^2 l, k l^2, l^3 vanish, and
//   (b) at every place the height-weighted first moments sum a_j m_v(j) k_j
//       and sum a_j m_v(j) l_j vanish.
// The heights in (b) must be the model-independent ones: at a finite place
// m_v + v(Delta)/12, at a real embedding lambda - log|Delta|/12. With that
// shift the local terms still sum to the canonical height (product formula)
// and the published divisors satisfy every finite row exactly.
// The finite places give exact integer rows; their kernel is 10-dimensional.
// On that kernel the two real embeddings carry only two independent
// functionals (the k- and l-moments at one embedding; the other embedding is
// forced to the negative by the height pairing), which LLL drives to zero to
// cut the kernel down to the rank-8 divisor lattice.

#include <array>
#include <string>
#include <vector>

#include "ellreg/curve_group.hpp"
#include "ellreg/linalg_exact.hpp"
#include "ellreg/lll.hpp"
#include "ellreg/local_heights.hpp"

namespace ellreg {

struct SupportSet {
  std::vector<std::pair<int, int>> kl;
  std::vector<PointF> pts;
};

inline SupportSet support_points(const CurveData& cd,
                                 const std::vector<std::pair<int, int>>& kl) {
  SupportSet s;
  s.kl = kl;
  for (auto& [k, l] : kl) s.pts.push_back(cd.E.add(cd.E.mul(k, cd.P), cd.E.mul(l, cd.Q)));
  return s;
}

struct ConstraintSystem {
  std::vector<PlaceF> places;                    // places with a nonzero height row
  std::vector<std::vector<mpq_class>> heights;   // per place, m + v(Delta)/12 at each point
  ZMat rows;                                     // integer constraint matrix
  std::vector<std::string> row_names;
  size_t rank = 0;
};

namespace detail {

inline ZVec primitive_row(const std::vector<mpq_class>& row) {
  mpz_class l = 1;
  for (auto& q : row) l = lcm(l, q.get_den());
  ZVec out;
  mpz_class g = 0;
  for (auto& q : row) {
    mpq_class s = q * l;
    s.canonicalize();
    out.push_back(s.get_num());
    g = gcd(g, out.back());
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace detail

inline ConstraintSystem build_constraints(const CurveData& cd, const SupportSet& s) {
  ConstraintSystem c;
  size_t n = s.pts.size();

  auto cubic = [&](auto f, const char* name) {
    ZVec r(n);
    for (size_t j = 0; j < n; ++j) r[j] = f(s.kl[j].first, s.kl[j].second);
    c.rows.push_back(r);
    c.row_names.push_back(name);
  };
  cubic([](long k, long l) { return k * k * k; }, "k^3");
  cubic([](long k, long l) { return k * k * l; }, "k^2l");
  cubic([](long k, long l) { return k * l * l; }, "kl^2");
  cubic([](long k, long l) { return l * l * l; }, "l^3");

  for (auto& v : support_places(s.pts)) {
    mpq_class shift(valuation(cd.E.disc, v), 12);
    shift.canonicalize();
    std::vector<mpq_class> m(n);
    bool nonzero = false;
    for (size_t j = 0; j < n; ++j) {
      m[j] = local_height_fin(cd.E, s.pts[j], v) + shift;
      if (m[j] != 0) nonzero = true;
    }
    if (!nonzero) continue;
    c.places.push_back(v);
    c.heights.push_back(m);
    for (int comp = 0; comp < 2; ++comp) {
      std::vector<mpq_class> row(n);
      for (size_t j = 0; j < n; ++j)
        row[j] = m[j] * (comp == 0 ? s.kl[j].first : s.kl[j].second);
      c.rows.push_back(detail::primitive_row(row));
      c.row_names.push_back(v.name + (comp == 0 ? ":k" : ":l"));
    }
  }
  c.rank = rank_z(c.rows);
  return c;
}

// model-independent archimedean heights lambda - log|Delta|/12 of every
// support point at both embeddings
inline std::array<std::vector<Real>, 2> arch_height_table(const CurveData& cd,
                                                          const SupportSet& s,
                                                          int digits) {
  mpfr_prec_t p = Real::bits(digits + 40);
  std::array<std::vector<Real>, 2> t;
  for (int e = 0; e < 2; ++e) {
    EmbeddedCurve ec(cd.E, e, p);
    Real shift = log(abs(embed(cd.E.disc, e, p))) / Real(12L, p);
    for (auto& T : s.pts)
      t[e].push_back(local_height_arch(ec, embed(T.x, e, p), digits) - shift);
  }
  return t;
}

// k- and l-weighted archimedean moments of an integer divisor vector at both
// embeddings, ordered (emb0 k, emb0 l, emb1 k, emb1 l)
inline std::array<Real, 4> divisor_moments(const SupportSet& s,
                                           const std::array<std::vector<Real>, 2>& arch,
                                           const ZVec& a, mpfr_prec_t p) {
  std::array<Real, 4> out = {Real(0L, p), Real(0L, p), Real(0L, p), Real(0L, p)};
  for (int emb = 0; emb < 2; ++emb)
    for (int comp = 0; comp < 2; ++comp) {
      Real acc(0L, p);
      for (size_t j = 0; j < s.pts.size(); ++j) {
        long w = (comp == 0) ? s.kl[j].first : s.kl[j].second;
        if (a[j] == 0 || w == 0) continue;
        acc += Real(mpz_class(a[j] * w), p) * arch[emb][j];
      }
      out[2 * emb + comp] = acc;
    }
  return out;
}

struct RelationResult {
  ConstraintSystem constraints;
  ZMat kernel;    // basis of the exact kernel, one vector per row
  ZMat divisors;  // accepted divisors spanning the rank-8 lattice
  mpz_class saturation = 0;
  std::vector<std::array<Real, 4>> residuals;  // k/l moments at both embeddings
  ZMat extra;     // kernel directions the moment test rejected
  std::vector<std::array<Real, 4>> extra_residuals;
  std::array<std::vector<Real>, 2> arch;  // the lambda table used
};

inline RelationResult find_relations(const CurveData& cd, const SupportSet& s,
                                     int digits = 100, long scale = 60) {
  // the moment test accepts below 10^(scale - digits + 10); that threshold
  // has to sit well under the 10^scale image of a generic kernel vector
  if (scale + 20 > digits)
    throw std::invalid_argument("find_relations: lll scale must be at most digits - 20");
  RelationResult r;
  r.constraints = build_constraints(cd, s);
  r.kernel = right_kernel(r.constraints.rows);
  r.arch = arch_height_table(cd, s, digits);

  size_t n = s.pts.size(), kd = r.kernel.size();
  mpfr_prec_t p = Real::bits(digits + 40);

  // lattice rows [ I | 10^scale * (k-moment, l-moment) at embedding 0 ]
  Real scale_pow = pow(Real(10L, p), scale);
  ZMat B(kd, ZVec(kd + 2, 0));
  for (size_t i = 0; i < kd; ++i) {
    B[i][i] = 1;
    auto m = divisor_moments(s, r.arch, r.kernel[i], p);
    B[i][kd] = (scale_pow * m[0]).to_mpz();
    B[i][kd + 1] = (scale_pow * m[1]).to_mpz();
  }
  lll_reduce(B);

  Real thr = pow(Real(10L, p), scale - digits + 10);
  for (auto& row : B) {
    ZVec a(n, 0);
    for (size_t i = 0; i < kd; ++i)
      for (size_t j = 0; j < n; ++j) a[j] += row[i] * r.kernel[i][j];
    std::array<Real, 4> res = divisor_moments(s, r.arch, a, p);
    bool ok = true;
    for (auto& x : res)
      if (!(abs(x) < thr)) ok = false;
    if (ok) {
      r.divisors.push_back(a);
      r.residuals.push_back(res);
    } else {
      r.extra.push_back(a);
      r.extra_residuals.push_back(res);
    }
  }
  if (r.divisors.size() != 8)
    throw std::runtime_error("find_relations: expected an 8-dimensional divisor lattice, got " +
                             std::to_string(r.divisors.size()));
  r.saturation = saturation_index(r.divisors);
  return r;
}

}  // namespace ellreg
