// Acceptance run: one line per criterion, exit 0 only when every line says
// PASS. Criteria 1-7 reproduce the reference tables, the printed L-value,
// and the determinant ratio pattern; criterion 8 is a battery of internal
// identities that makes no reference to any stored expected output.

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "ellreg/curve_group.hpp"
#include "ellreg/golden.hpp"
#include "ellreg/l_series.hpp"
#include "ellreg/local_heights.hpp"
#include "ellreg/periods_dilog.hpp"
#include "ellreg/recognize.hpp"
#include "ellreg/relation_finder.hpp"

using namespace ellreg;

namespace {

std::vector<long> primes_below(long n) {
  std::vector<bool> comp(n, false);
  std::vector<long> ps;
  for (long i = 2; i < n; ++i) {
    if (comp[i]) continue;
    ps.push_back(i);
    for (long j = 2 * i; j < n; j += i) comp[j] = true;
  }
  return ps;
}

Real tol10(long k, mpfr_prec_t p) { return pow(Real(10L, p), -k); }

ZMat reference_divisors() {
  ZMat g(8, ZVec(22));
  auto& cols = golden::divisor_columns();
  for (size_t j = 0; j < 22; ++j)
    for (size_t i = 0; i < 8; ++i) g[i][j] = cols[j][i];
  return g;
}

struct Runner {
  bool all_ok = true;

  template <class F>
  void crit(int idx, const char* name, double budget_s, F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      note = e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && dt >= budget_s) {
      ok = false;
      note = "over the time budget";
    }
    std::printf("criterion %d (%s): %s (%.2fs)%s%s\n", idx, name, ok ? "PASS" : "FAIL", dt,
                note.empty() ? "" : " - ", note.c_str());
    std::fflush(stdout);
    all_ok = all_ok && ok;
  }
};

}  // namespace

int main() {
  Runner run;
  CurveData cd = cm35_curve();
  ZMat ref = reference_divisors();

  SupportSet s;
  std::optional<ConstraintSystem> cs;
  ZMat kernel;
  std::optional<RelationResult> rel;
  std::vector<std::array<Real, 2>> reg;
  std::optional<Real> lval;

  // 1. every listed combination reproduces the printed coordinates exactly
  run.crit(1, "point table", 1.0, [&] {
    s = support_points(cd, golden::kl_pairs());
    auto& combos = golden::combos();
    for (size_t i = 0; i < combos.size(); ++i) {
      const PointF& T = s.pts[i];
      if (T.inf || !cd.E.on_curve(T)) return false;
      if (!(T.x == golden::combo_x(combos[i]))) return false;
      if (combos[i].has_y && !(T.y == Fel(combos[i].ya, combos[i].yb))) return false;
    }
    return true;
  });

  // 2. the height support scan finds exactly the residue characteristics
  //    {2, 5, 7, 11, 59}
  run.crit(2, "height support", 10.0, [&] {
    std::vector<long> chars;
    for (auto& v : support_places(s.pts)) chars.push_back(v.p.get_si());
    std::sort(chars.begin(), chars.end());
    chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
    return chars == std::vector<long>({2, 5, 7, 11, 59});
  });

  // 3. the 14 exact rows have a rank-10 integer kernel and every reference
  //    divisor satisfies them with exact zeros
  run.crit(3, "exact kernel", 10.0, [&] {
    cs = build_constraints(cd, s);
    if (cs->rows.size() != 14) return false;
    kernel = right_kernel(cs->rows);
    if (kernel.size() != 10) return false;
    for (auto& d : ref)
      for (auto& row : cs->rows) {
        mpz_class dot = 0;
        for (size_t j = 0; j < d.size(); ++j) dot += row[j] * d[j];
        if (dot != 0) return false;
      }
    return true;
  });

  // 4. reduction cuts the kernel down to a rank-8 lattice that contains all
  //    reference divisors, with archimedean residuals below 1e-30
  run.crit(4, "lattice reduction", 60.0, [&] {
    rel = find_relations(cd, s, 100, 60);
    if (rel->divisors.size() != 8) return false;
    mpfr_prec_t p = Real::bits(140);
    for (auto& res : rel->residuals)
      for (auto& x : res)
        if (!(abs(x) < tol10(30, p))) return false;
    for (auto& d : ref)
      if (!in_rowspan(rel->divisors, d)) return false;
    return true;
  });

  // 5. regulator vectors of the reference divisors match the published pair
  //    table to 25 significant digits, with row 1 vanishing below 1e-80
  run.crit(5, "regulator vectors", 600.0, [&] {
    reg = regulator_vectors(cd.E, s.pts, ref, 100);
    mpfr_prec_t p = Real::bits(125);
    auto& rows = golden::regulator_rows();
    for (int c = 0; c < 2; ++c) {
      if (!(abs(reg[0][c]) < tol10(80, p))) return false;
      for (size_t i = 1; i < reg.size(); ++i) {
        Real want(rows[i][c], p);
        if (!(abs(reg[i][c] - want) < tol10(25, p) * abs(want))) return false;
      }
    }
    return true;
  });

  // 6. the L-series second derivative reproduces the reference digits
  run.crit(6, "l-value", 1800.0, [&] {
    auto a = hecke_coefficients(30000);
    Lvalue lv = lvalue_second(a, 100);
    if (lv.fe_sign != 1) return false;
    NormFit fit = reconcile_normalization(lv.raw, golden::lvalue_digits(), 100);
    mpfr_prec_t p = Real::bits(120);
    if (!(abs(fit.value - Real(golden::lvalue_digits(), p)) < tol10(20, p))) return false;
    lval = fit.value;
    return true;
  });

  // 7. of the 28 determinants, 13 vanish and the 15 ratios against the
  //    L-value recognize as -1/16 at pair (4,7), and +-1/4, +-3/16 elsewhere
  run.crit(7, "determinant ratios", 1e9, [&] {
    if (reg.empty() || !lval) return false;
    mpfr_prec_t p = Real::bits(125);
    int zeros = 0, nonzero = 0;
    long c16 = 0, c4 = 0, c316 = 0;
    bool pair47 = false;
    for (int m = 0; m < 8; ++m)
      for (int n = m + 1; n < 8; ++n) {
        Real det = reg[m][0] * reg[n][1] - reg[m][1] * reg[n][0];
        if (abs(det) < tol10(50, p)) {
          ++zeros;
          continue;
        }
        ++nonzero;
        auto q = recognize_rational(det / *lval, 64, tol10(20, p));
        if (!q) return false;
        mpq_class aq = abs(*q);
        if (aq == mpq_class(1, 16)) ++c16;
        else if (aq == mpq_class(1, 4)) ++c4;
        else if (aq == mpq_class(3, 16)) ++c316;
        else return false;
        if (m == 3 && n == 6) {
          if (!(*q == mpq_class(-1, 16))) return false;
          pair47 = true;
        }
      }
    return zeros == 13 && nonzero == 15 && c16 == 1 && c4 == 4 && c316 == 10 && pair47;
  });

  // 8. internal identities, none of which consult stored expected values
  run.crit(8, "property suites", 1e9, [&] {
    const int D = 60;
    mpfr_prec_t p = Real::bits(2 * D);
    bool ok = true;
    auto sub = [&](const char* name, bool r) {
      if (!r) std::printf("  suite failed: %s\n", name);
      ok = ok && r;
    };

    // product formula: at every prime, valuations against the norm; at
    // infinity, the two embeddings against the norm's absolute value
    sub("product formula", [&] {
      std::vector<Fel> xs = {Fel(2),       Fel(5),        Fel(7),
                             Fel(0, 1),    Fel(-4, 1),    Fel(7, 9),
                             Fel(12, -1),  cd.P.y,        cd.Q.y,
                             Fel(mpq_class(3, 14), mpq_class(5, 14)),
                             Fel(mpq_class(-2, 55), mpq_class(9, 55))};
      auto ps = primes_below(2500);
      for (auto& x : xs) {
        mpq_class n = x.norm();
        if (n == 0) return false;
        mpz_class rad = abs(n.get_num() * n.get_den());
        for (long q : ps) {
          if (rad % q != 0) continue;
          while (rad % q == 0) rad /= q;
          mpz_class t;
          long want = (long)mpz_remove(t.get_mpz_t(), mpz_class(abs(n.get_num())).get_mpz_t(),
                                       mpz_class(q).get_mpz_t()) -
                      (long)mpz_remove(t.get_mpz_t(), mpz_class(n.get_den()).get_mpz_t(),
                                       mpz_class(q).get_mpz_t());
          long got = 0;
          for (auto& v : places_above(q)) {
            mpz_class qq = v.q;
            long f = 0;
            while (qq % v.p == 0) {
              qq /= v.p;
              ++f;
            }
            got += valuation(x, v) * f;
          }
          if (got != want) return false;
        }
        if (rad != 1) return false;  // test element was not smooth enough
        Real lhs = log(abs(embed(x, 0, p))) + log(abs(embed(x, 1, p)));
        if (!(abs(lhs - log(abs(Real(n, p)))) < tol10(D - 10, p))) return false;
      }
      return true;
    }());

    // the sum of local heights is a quadratic form in (k, l)
    sub("local-global height decomposition", [&] {
      Real hP = canonical_height(cd.E, cd.P, D);
      Real hQ = canonical_height(cd.E, cd.Q, D);
      Real hB = canonical_height(cd.E, cd.E.add(cd.P, cd.Q), D) - hP - hQ;
      for (size_t j = 0; j < s.pts.size(); ++j) {
        long k = s.kl[j].first, l = s.kl[j].second;
        Real want = Real(k * k, p) * hP + Real(k * l, p) * hB + Real(l * l, p) * hQ;
        if (!(abs(canonical_height(cd.E, s.pts[j], D) - want) < tol10(D / 2, p)))
          return false;
      }
      return true;
    }());

    // dilogarithm symmetries, plain and q-symmetrized
    sub("dilogarithm symmetries", [&] {
      Real tol = tol10(D - 5, p);
      std::vector<ComplexR> zs = {{Real(0.7, p), Real(0.4, p)},
                                  {Real(-1.3, p), Real(2.2, p)},
                                  {Real(0.02, p), Real(-0.9, p)},
                                  {Real(3.5, p), Real(0.001, p)}};
      for (auto& z : zs) {
        Real d = bloch_wigner(z, D);
        if (!(abs(bloch_wigner(conj(z), D) + d) < tol)) return false;
        if (!(abs(bloch_wigner(inv(z), D) + d) < tol)) return false;
      }
      if (!(abs(bloch_wigner(ComplexR(Real(0.37, p)), D)) < tol)) return false;

      TorusData td = periods(cd.E, 0, D);
      Real two_pi = Real(2L, p) * Real::pi(p);
      std::vector<ComplexR> us = {ComplexR::unit_phase(two_pi * Real(0.23, p)),
                                  ComplexR::unit_phase(two_pi * Real(0.057, p)),
                                  {Real(0.4, p), Real(0.2, p)}};
      for (auto& u : us) {
        Real d = elliptic_dilog(u, td.q, D);
        if (!(abs(elliptic_dilog(td.q * u, td.q, D) - d) < tol)) return false;
        if (!(abs(elliptic_dilog(inv(u), td.q, D) + d) < tol)) return false;
      }
      return true;
    }());

    // elliptic logs add like the points do, on both tori
    sub("elliptic-log homomorphism", [&] {
      Real half(mpq_class(1, 2), p);
      for (int emb = 0; emb < 2; ++emb) {
        TorusData td = periods(cd.E, emb, D);
        Real zP = elliptic_log(cd.E, cd.P, td, D).z;
        Real zQ = elliptic_log(cd.E, cd.Q, td, D).z;
        for (size_t j = 0; j < s.pts.size(); ++j) {
          long k = s.kl[j].first, l = s.kl[j].second;
          Real r = elliptic_log(cd.E, s.pts[j], td, D).z - Real(k, p) * zP - Real(l, p) * zQ;
          Real frac = r - Real((r + half).floor_mpz(), p);
          if (!(abs(frac) < tol10(D / 2, p))) return false;
        }
      }
      return true;
    }());

    // Dirichlet coefficients against independent residue-field point counts
    sub("local factors vs point counts", [&] {
      long checked = 0;
      for (long q : primes_below(1000)) {
        if (q == 5 || q == 7) continue;
        EulerFactor f = euler_factor(q);
        long r5 = q % 5;
        if (r5 == 1 || r5 == 4) {
          auto pls = places_above(q);
          if (pls.size() != 2) return false;
          long long A = frobenius_trace(cd.E, pls[0]);
          long long B = frobenius_trace(cd.E, pls[1]);
          if (A * A > 4 * q || B * B > 4 * q) return false;
          std::array<long long, 5> want{1, -(A + B), A * B + 2 * q, -q * (A + B),
                                        (long long)q * q};
          if (f.c != want) return false;
          ++checked;
        } else if (q * q < 1000) {
          auto pls = places_above(q);
          if (pls.size() != 1) return false;
          long long A = frobenius_trace(cd.E, pls[0]);
          if (A * A > 4LL * q * q) return false;
          std::array<long long, 5> want{1, 0, -A, 0, (long long)q * q};
          if (f.c != want) return false;
          ++checked;
        }
      }
      return checked >= 80;
    }());

    // the cubic rows kill the global height: on every exact kernel vector
    // the two embeddings' archimedean moments cancel
    sub("kernel kills the global height", [&] {
      ConstraintSystem c = cs ? *cs : build_constraints(cd, s);
      ZMat ker = right_kernel(c.rows);
      auto arch = arch_height_table(cd, s, D);
      for (auto& a : ker) {
        auto m = divisor_moments(s, arch, a, p);
        if (!(abs(m[0] + m[2]) < tol10(D - 15, p))) return false;
        if (!(abs(m[1] + m[3]) < tol10(D - 15, p))) return false;
      }
      return true;
    }());

    // d/dx of the K0 tail integral is -K0(x)/x, by central differences
    sub("bessel tail derivative", [&] {
      int wd = 2 * D;
      mpfr_prec_t wp = Real::bits(wd + 20);
      Real h = tol10(D / 4 + 1, wp);
      std::vector<double> xs;
      for (int i = 0; i < 18; ++i) xs.push_back(0.3 + 2.1 * i);
      xs.push_back(175.0);
      xs.push_back(200.0);
      for (double xv : xs) {
        Real x(xv, wp);
        Real lhs = (k0_tail_over_t(x + h, wd) - k0_tail_over_t(x - h, wd)) / (Real(2L, wp) * h);
        Real rhs = -bessel_k0(x, wd) / x;
        if (!(abs(lhs - rhs) < tol10(D / 2, wp))) return false;
      }
      return true;
    }());

    return ok;
  });

  return run.all_ok ? 0 : 1;
}
