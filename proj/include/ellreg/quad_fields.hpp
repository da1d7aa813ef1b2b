#pragma once

// Exact arithmetic in F = Q(sqrt5) and K = Q(sqrt-35).
//
// F elements are a + b*w with w = (1+sqrt5)/2, w^2 = w + 1, a,b rational.
// K elements are c + d*th with th = (1+sqrt-35)/2, th^2 = th - 9, c,d integers.
// Valuations are computed by exact repeated division, never by embeddings.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellreg/real.hpp"

namespace ellreg {

// ---------------------------------------------------------------- F = Q(w)

struct Fel {
  mpq_class a, b;  // a + b*w

  Fel() : a(0), b(0) {}
  Fel(long x) : a(x), b(0) {}
  Fel(mpq_class x, mpq_class y) : a(std::move(x)), b(std::move(y)) {}
  Fel(long x, long y) : a(x), b(y) {}

  bool is_zero() const { return a == 0 && b == 0; }
  bool operator==(const Fel& o) const { return a == o.a && b == o.b; }

  friend Fel operator+(const Fel& u, const Fel& v) { return {u.a + v.a, u.b + v.b}; }
  friend Fel operator-(const Fel& u, const Fel& v) { return {u.a - v.a, u.b - v.b}; }
  Fel operator-() const { return {-a, -b}; }
  friend Fel operator*(const Fel& u, const Fel& v) {
    // (a+bw)(c+dw) = ac + bd + (ad + bc + bd) w
    mpq_class bd = u.b * v.b;
    return {u.a * v.a + bd, u.a * v.b + u.b * v.a + bd};
  }
  friend Fel operator*(const mpq_class& s, const Fel& v) { return {s * v.a, s * v.b}; }

  Fel conj() const { return {a + b, -b}; }          // w -> 1 - w
  mpq_class norm() const { return a * a + a * b - b * b; }
  mpq_class trace() const { return 2 * a + b; }

  Fel inv() const {
    mpq_class n = norm();
    if (n == 0) throw std::domain_error("Fel: division by zero");
    Fel c = conj();
    return {c.a / n, c.b / n};
  }
  friend Fel operator/(const Fel& u, const Fel& v) { return u * v.inv(); }

  bool is_integral() const {
    return a.get_den() == 1 && b.get_den() == 1;
  }

  std::string str() const {
    std::string s = a.get_str();
    if (b != 0) {
      s += (b > 0 ? "+" : "");
      s += b.get_str() + "*w";
    }
    return s;
  }
};

// real embeddings: index 0 maps w -> (1+sqrt5)/2, index 1 maps w -> (1-sqrt5)/2
inline Real embed(const Fel& z, int which, mpfr_prec_t prec) {
  Real s5 = sqrt(Real(5L, prec));
  Real w = (which == 0) ? (1L + s5) / 2L : (1L - s5) / 2L;
  return Real(z.a, prec) + Real(z.b, prec) * w;
}

// ------------------------------------------------------------ places of F

// A finite place, held as a generator pi of the prime ideal together with
// the residue field size q and ramification index e over its rational prime.
struct PlaceF {
  Fel pi;
  mpz_class p;       // rational prime below
  mpz_class q;       // residue field size |O/pi| = |N(pi)|
  int e = 1;         // ramification: v(p) = e
  std::string name;

  bool operator==(const PlaceF& o) const { return pi == o.pi && name == o.name; }
};

namespace detail {

// exact division of integral u by integral pi in Z[w]; nullopt if not divisible
inline std::optional<Fel> divide_exact(const Fel& u, const Fel& pi) {
  Fel t = u * pi.conj();
  mpq_class n(pi.norm());
  mpq_class qa = t.a / n, qb = t.b / n;
  qa.canonicalize();
  qb.canonicalize();
  if (qa.get_den() != 1 || qb.get_den() != 1) return std::nullopt;
  return Fel{qa, qb};
}

inline long valuation_integral(Fel u, const PlaceF& v) {
  if (u.is_zero()) throw std::domain_error("valuation of zero");
  long k = 0;
  for (;;) {
    auto q = divide_exact(u, v.pi);
    if (!q) return k;
    u = *q;
    ++k;
  }
}

}  // namespace detail

// v(z) for any nonzero z in F, by clearing denominators
inline long valuation(const Fel& z, const PlaceF& v) {
  if (z.is_zero()) throw std::domain_error("valuation of zero");
  mpz_class m = lcm(z.a.get_den(), z.b.get_den());
  Fel zi{mpq_class(z.a * m), mpq_class(z.b * m)};
  zi.a.canonicalize();
  zi.b.canonicalize();
  long vn = detail::valuation_integral(zi, v);
  long vd = (m == 1) ? 0 : detail::valuation_integral(Fel{mpq_class(m), mpq_class(0)}, v);
  return vn - vd;
}

// places of F above a rational prime p (p not too large; generator by search)
inline std::vector<PlaceF> places_above(long p) {
  static std::map<long, std::vector<PlaceF>> cache;
  auto hit = cache.find(p);
  if (hit != cache.end()) return hit->second;

  std::vector<PlaceF> out;
  if (p == 5) {
    out.push_back({Fel(-1, 2), 5, 5, 2, "sqrt5"});  // (2w-1)^2 = 5
  } else if (long r5 = p % 5; r5 != 1 && r5 != 4) {
    out.push_back({Fel(p, 0), p, mpz_class(p) * p, 1, "inert" + std::to_string(p)});
  } else {
    // split: find generators of both primes by searching |N(a+bw)| = p,
    // tagging each by the root of x^2 = x + 1 mod p it reduces w to
    std::vector<long> roots;
    for (long t = 0; t < p && roots.size() < 2; ++t)
      if ((t * t - t - 1) % p == 0) roots.push_back(t);
    for (long b = 1; b <= p && out.size() < 2; ++b)
      for (long a = -p; a <= p && out.size() < 2; ++a) {
        long long n = (long long)a * a + (long long)a * b - (long long)b * b;
        if (n != p && n != -p) continue;
        for (long t : roots) {
          if ((a + b * t) % p != 0) continue;
          std::string name = "p" + std::to_string(p) + "w" + std::to_string(t);
          bool fresh = true;
          for (auto& pl : out)
            if (pl.name == name) fresh = false;
          if (fresh) out.push_back({Fel(a, b), p, p, 1, name});
        }
      }
    if (out.size() != 2) throw std::runtime_error("places_above: generator search failed");
  }
  cache[p] = out;
  return out;
}

// distinct prime factors by trial division; n must fit the effort
inline std::vector<mpz_class> trial_factor_primes(mpz_class n) {
  std::vector<mpz_class> out;
  n = abs(n);
  for (mpz_class p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// the place above p with given residue of w (split p only)
inline PlaceF place_with_w_residue(long p, long wres) {
  for (auto& v : places_above(p)) {
    std::string want = "p" + std::to_string(p) + "w" + std::to_string(wres);
    if (v.name == want) return v;
  }
  throw std::runtime_error("no such place");
}

// --------------------------------------------------------- K = Q(sqrt-35)

struct Kel {
  mpz_class c, d;  // c + d*th, th^2 = th - 9

  Kel() : c(0), d(0) {}
  Kel(long x, long y) : c(x), d(y) {}
  Kel(mpz_class x, mpz_class y) : c(std::move(x)), d(std::move(y)) {}

  friend Kel operator*(const Kel& u, const Kel& v) {
    // (c+dt)(e+ft) = ce - 9df + (cf + de + df) t
    mpz_class df = u.d * v.d;
    return {u.c * v.c - 9 * df, u.c * v.d + u.d * v.c + df};
  }
  Kel conj() const { return {c + d, -d}; }  // th -> 1 - th
  mpz_class norm() const { return c * c + c * d + 9 * d * d; }
  mpz_class trace() const { return 2 * c + d; }
  bool operator==(const Kel& o) const { return c == o.c && d == o.d; }

  std::string str() const {
    std::string s = c.get_str();
    if (d != 0) {
      s += (d > 0 ? "+" : "");
      s += d.get_str() + "*th";
    }
    return s;
  }
};

// quadratic character mod sqrt(-35): th = (1+sqrt-35)/2 reduces to 2^{-1} = 18
// in O/(sqrt-35) = Z/35, and the character is the Jacobi symbol mod 35.
inline int eps_char(const Kel& z) {
  mpz_class r = (z.c + 18 * z.d) % 35;
  return static_cast<int>(mpz_jacobi(r.get_mpz_t(), mpz_class(35).get_mpz_t()));
}

// fixed sign rule for generators up to the unit group {1, -1}
inline Kel sign_normalized(const Kel& z) {
  if (z.d < 0 || (z.d == 0 && z.c < 0)) return {-z.c, -z.d};
  return z;
}

// one generator per principal ideal of norm n; conjugate ideals are distinct
inline std::vector<Kel> elements_of_norm(const mpz_class& n) {
  std::vector<Kel> out;
  if (n <= 0) return out;
  // c^2 + cd + 9d^2 = n  <=>  (2c+d)^2 + 35 d^2 = 4n
  mpz_class dmax = sqrt(4 * n / 35);
  for (mpz_class d = 0; d <= dmax; ++d) {
    mpz_class s2 = 4 * n - 35 * d * d;
    if (s2 < 0) break;
    mpz_class s = sqrt(s2);
    if (s * s != s2) continue;
    for (int sg = 0; sg < 2; ++sg) {
      mpz_class t = (sg == 0) ? s : -s;  // t = 2c + d
      if (sg == 1 && s == 0) continue;
      if ((t - d) % 2 != 0) continue;
      Kel z = sign_normalized(Kel{mpz_class((t - d) / 2), d});
      if (std::find(out.begin(), out.end(), z) == out.end()) out.push_back(z);
    }
  }
  return out;
}

// principal ideals of O_K with norm <= bound, unit ideal included
inline std::vector<std::pair<Kel, mpz_class>> k_principal_ideals(const mpz_class& bound) {
  std::vector<std::pair<Kel, mpz_class>> out;
  for (mpz_class n = 1; n <= bound; ++n)
    for (auto& z : elements_of_norm(n)) out.emplace_back(z, n);
  return out;
}

}  // namespace ellreg
