#pragma once

// Frozen reference data for the golden verification mode: the 22 divisor
// support points as (k,l) combinations of the generators, their published
// x-coordinates (and y where available), the 8 reference divisors, the 8
// reference regulator vectors, and the reference L-value digits.

#include <array>
#include <string>
#include <vector>

#include "ellreg/quad_fields.hpp"

namespace ellreg::golden {

struct ComboXY {
  int k, l;
  // x = (xa + xb*w)/xden, y = (ya + yb*w) when known (has_y), integral x otherwise
  long xa, xb, xden;
  bool has_y;
  long ya, yb;
};

// support list: x-coordinates of kP + lQ; rows 15-22 publish x only
inline const std::array<ComboXY, 22>& combos() {
  static const std::array<ComboXY, 22> t = {{
      {0, 1, 12, -1, 1, true, 32, -20},
      {1, 0, 7, 9, 1, true, 17, 35},
      {0, 2, -4, -11, 1, true, 11, 8},
      {1, 1, 7, 2, 1, true, -11, 7},
      {2, 0, 3, 5, 1, true, 2, 1},
      {1, 2, 42, -26, 1, true, -333, 175},
      {2, 1, 2, 4, 1, true, 2, 5},
      {2, 2, 3, 4, 1, true, -4, -1},
      {3, -1, 1624, -957, 1, true, -75625, 46340},
      {3, 1, 0, -5, 1, true, 24, 28},
      {4, 1, 27, -26, 1, true, -223, 95},
      {4, 2, 46, -22, 1, true, 331, -205},
      {4, 3, 67, 99, 1, true, 957, 1525},
      {5, 4, 250362, -154726, 1, true, -147263008, 91013545},
      {1, -1, 14, 24, 5, false, 0, 0},
      {1, -2, 2527, 6584, 3481, false, 0, 0},
      {3, 0, 217, -31, 16, false, 0, 0},
      {3, 2, 392, 529, 121, false, 0, 0},
      {4, 4, 13627, 13872, 3481, false, 0, 0},
      {5, 2, 17367, 12464, 3481, false, 0, 0},
      {6, 0, 792753, 52969, 222784, false, 0, 0},
      {6, 4, 1700, 1357, 605, false, 0, 0},
  }};
  return t;
}

inline std::vector<std::pair<int, int>> kl_pairs() {
  std::vector<std::pair<int, int>> out;
  for (auto& c : combos()) out.emplace_back(c.k, c.l);
  return out;
}

inline Fel combo_x(const ComboXY& c) {
  mpq_class xa(c.xa, c.xden), xb(c.xb, c.xden);
  xa.canonicalize();
  xb.canonicalize();
  return {xa, xb};
}

// the 8 reference divisors, as coefficient vectors over the 22 support points
inline const std::array<std::array<long, 8>, 22>& divisor_columns() {
  static const std::array<std::array<long, 8>, 22> t = {{
      {3, 7, -8, -5, -10, -7, -8, 7},
      {2, -23, -11, -45, -48, 18, -181, -33},
      {1, -1, -9, -4, -8, 1, -33, 3},
      {6, -1, -11, 15, -30, 1, -10, 13},
      {3, 5, -12, -17, -13, -1, -45, -7},
      {-2, -1, 16, 3, -4, -3, 37, 0},
      {-2, -4, 0, 14, -14, 4, -14, 26},
      {-3, -1, 18, 1, 26, 7, 52, -22},
      {0, 0, 1, 0, -2, 0, -1, 1},
      {-2, 1, 0, 1, 0, -1, 1, 0},
      {0, 0, -1, -2, -1, 0, 5, -2},
      {0, -1, 1, 0, 0, -3, -2, -1},
      {1, 1, -1, 1, -1, -1, 1, -1},
      {0, 0, -1, 0, 1, 1, -3, 0},
      {0, -2, 0, 2, 0, 2, 2, 0},
      {0, 0, -2, -3, -5, -1, -8, 0},
      {0, 0, 0, -6, -9, 0, -9, -3},
      {0, 0, 0, 0, 0, 0, 0, -4},
      {0, 0, -2, -1, -2, -1, -5, 1},
      {0, 0, 2, -1, -1, 1, 2, -2},
      {0, 0, 0, 2, 3, 0, 3, 1},
      {0, 0, 0, 0, 0, 0, 0, 2},
  }};
  return t;
}

// reference regulator vectors (one per divisor, both real embeddings)
inline const std::array<std::array<std::string, 2>, 8>& regulator_rows() {
  static const std::array<std::array<std::string, 2>, 8> t = {{
      {"1.7e-100", "-2.9e-105"},
      {"3.657296793764310936796018961", "-4.861051673717091496858129462"},
      {"-3.657296793764310936796018961", "4.861051673717091496858129462"},
      {"25.64710971025614581418182019", "1.387883495576657586500860340"},
      {"3.657296793764310936796018961", "-4.861051673717091496858129462"},
      {"-3.657296793764310936796018961", "4.861051673717091496858129462"},
      {"35.41524521159629806450776657", "0.2301607695298462830484372999"},
      {"29.30440650402045675097783915", "-3.473168178140433910357269121"},
  }};
  return t;
}

inline const char* lvalue_digits() { return "691.9884130215329129184499757"; }

// determinant ratios det(i,j)/L for the nonzero cases, as published
inline const char* ratio_m1_16() { return "-0.06250000000000000000000000268"; }
inline const char* ratio_1_4() { return "0.2500000000000000000000000107"; }
inline const char* ratio_3_16() { return "0.1875000000000000000000000080"; }

}  // namespace ellreg::golden
