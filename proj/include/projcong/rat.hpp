#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace projcong {

// Exact rational scalar. mpq_class keeps values in lowest terms with a
// positive denominator, which is exactly the representation every exact
// predicate below relies on.
using Rat = mpq_class;
using Int = mpz_class;

inline int sign(const Rat& r) { return sgn(r); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// mpq_class(num, den) does not reduce; every dynamically built quotient must
// go through here (comparisons silently misbehave on non-canonical values).
inline Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

// Accepts "p", "-p" or "p/q" with arbitrary-precision parts.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
      throw std::invalid_argument("bad rational literal: " + s);
  }
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (sgn(Rat(r.get_den())) == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rat& r) {
  std::string s = r.get_num().get_str();
  if (r.get_den() != 1) s += "/" + r.get_den().get_str();
  return s;
}

// Best rational approximation with |x - p/q| <= tol, by walking the
// continued-fraction convergents of x.
inline Rat rat_from_double(double x, double tol) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite float input");
  if (tol <= 0) throw std::invalid_argument("float tolerance must be positive");
  bool neg = x < 0;
  double v = std::fabs(x);
  // convergents p/q of the continued fraction of v
  Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(frac);
    Int ai(a);
    Int p2 = ai * p1 + p0;
    Int q2 = ai * q1 + q0;
    Rat approx(p2, q2);
    approx.canonicalize();
    if (std::fabs(approx.get_d() - v) <= tol) {
      if (neg) approx = -approx;
      return approx;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - a;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
  }
  throw std::invalid_argument("cannot approximate float within tolerance");
}

}  // namespace projcong
