// The analytic side: period lattices at the two real embeddings (with their
// CM quadratics), elliptic logs of the generators, and the regulator vectors
// of the reference divisors against the published values.

#include <cstdio>

#include "ellreg/curve_group.hpp"
#include "ellreg/golden.hpp"
#include "ellreg/periods_dilog.hpp"
#include "ellreg/relation_finder.hpp"

using namespace ellreg;

int main() {
  CurveData cd = cm35_curve();
  const int digits = 60;
  mpfr_prec_t prec = Real::bits(digits + 25);

  for (int emb = 0; emb < 2; ++emb) {
    TorusData td = periods(cd.E, emb, digits);
    printf("embedding %d (%s):\n", emb, td.primed ? "primed" : "unprimed");
    printf("  omega1 = %s\n", td.omega1.str(30).c_str());
    printf("  tau    = -1/2 + %s i\n", td.tau.im.str(30).c_str());
    printf("  q      = %s\n", td.q.str(30).c_str());
    printf("  tau satisfies %s\n",
           td.primed ? "7 tau^2 + 7 tau + 3 = 0" : "35 tau^2 + 35 tau + 9 = 0");
    Real zp = elliptic_log(cd.E, cd.P, td, digits).z;
    Real zq = elliptic_log(cd.E, cd.Q, td, digits).z;
    printf("  z(P)   = %s\n", zp.str(30).c_str());
    printf("  z(Q)   = %s\n\n", zq.str(30).c_str());
  }

  printf("regulator vectors of the 8 reference divisors (both embeddings):\n");
  SupportSet s = support_points(cd, golden::kl_pairs());
  ZMat g(8, ZVec(22));
  auto& cols = golden::divisor_columns();
  for (size_t j = 0; j < 22; ++j)
    for (size_t i = 0; i < 8; ++i) g[i][j] = cols[j][i];

  auto rows = regulator_vectors(cd.E, s.pts, g, digits);
  auto& ref = golden::regulator_rows();
  bool ok = true;
  Real tol = pow(Real(10L, prec), -25L);
  for (size_t i = 0; i < rows.size(); ++i) {
    printf("  r%zu = (%s, %s)\n", i + 1, rows[i][0].str(28).c_str(),
           rows[i][1].str(28).c_str());
    if (i == 0) {
      ok = ok && abs(rows[0][0]) < pow(Real(10L, prec), -40L) &&
           abs(rows[0][1]) < pow(Real(10L, prec), -40L);
      continue;
    }
    for (int c = 0; c < 2; ++c)
      ok = ok && abs(rows[i][c] - Real(ref[i][c], prec)) < tol;
  }
  printf("matches the published table: %s\n", ok ? "yes" : "NO");
  return ok ? 0 : 1;
}
