// Walk through the height machinery on the rank-2 curve over Q(sqrt 5):
// local heights of the generators at every relevant place, canonical
// heights, a numerical check of the parallelogram law, and finally the
// divisor lattice cut out by the exact + archimedean moment constraints.

#include <cstdio>

#include "ellreg/curve_group.hpp"
#include "ellreg/golden.hpp"
#include "ellreg/local_heights.hpp"
#include "ellreg/relation_finder.hpp"

using namespace ellreg;

int main() {
  CurveData cd = cm35_curve();
  const int digits = 60;
  mpfr_prec_t prec = Real::bits(digits + 40);

  printf("curve: y^2 + y = x^3 + w x^2 - (93+163w) x + (669+1076w),  w^2 = w+1\n");
  printf("disc  = %s\n", cd.E.disc.str().c_str());
  printf("j     = %s\n\n", cd.E.j.str().c_str());

  PointF R = cd.E.add(cd.P, cd.Q);
  std::vector<std::pair<const char*, PointF>> pts = {
      {"P", cd.P}, {"Q", cd.Q}, {"P+Q", R}};

  auto places = support_places({cd.P, cd.Q, R});
  printf("finite local heights m_v (units of log q_v):\n");
  printf("%-8s", "place");
  for (auto& [nm, T] : pts) printf("  %8s", nm);
  printf("\n");
  for (auto& v : places) {
    printf("%-8s", v.name.c_str());
    for (auto& [nm, T] : pts) {
      mpq_class m = local_height_fin(cd.E, T, v);
      printf("  %8s", m.get_str().c_str());
    }
    printf("\n");
  }

  printf("\ncanonical heights:\n");
  Real hP = canonical_height(cd.E, cd.P, digits);
  Real hQ = canonical_height(cd.E, cd.Q, digits);
  Real hR = canonical_height(cd.E, R, digits);
  Real hD = canonical_height(cd.E, cd.E.add(cd.P, cd.E.neg(cd.Q)), digits);
  printf("  h(P)   = %s\n", hP.str(30).c_str());
  printf("  h(Q)   = %s\n", hQ.str(30).c_str());
  printf("  h(P+Q) = %s\n", hR.str(30).c_str());
  Real gap = hR + hD - Real(2L, prec) * (hP + hQ);
  printf("  parallelogram defect h(P+Q)+h(P-Q)-2h(P)-2h(Q) = %s\n\n",
         gap.str(3).c_str());

  printf("reconstructing the divisor lattice from the 22 support points...\n");
  SupportSet s = support_points(cd, golden::kl_pairs());
  RelationResult r = find_relations(cd, s, digits, 40);
  printf("constraint rows: %zu (rank %zu), exact kernel: %zu, divisors: %zu, "
         "saturation index: %s\n",
         r.constraints.rows.size(), r.constraints.rank, r.kernel.size(),
         r.divisors.size(), r.saturation.get_str().c_str());
  for (size_t i = 0; i < r.divisors.size(); ++i) {
    printf("  d%zu = [", i + 1);
    for (size_t j = 0; j < r.divisors[i].size(); ++j)
      printf("%s%s", j ? "," : "", r.divisors[i][j].get_str().c_str());
    printf("]\n");
  }

  ZMat g(8, ZVec(22));
  auto& cols = golden::divisor_columns();
  for (size_t j = 0; j < 22; ++j)
    for (size_t i = 0; i < 8; ++i) g[i][j] = cols[j][i];
  printf("matches the published lattice: %s\n",
         same_lattice(r.divisors, g) ? "yes" : "NO");
  return same_lattice(r.divisors, g) ? 0 : 1;
}
