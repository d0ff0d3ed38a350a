#pragma once

#include <cfloat>
#include <cmath>
#include <optional>

#include "projcong/rat.hpp"

namespace projcong {

// Floating-point interval used as a filter in front of exact rational
// predicates: a double value together with a certified absolute error
// bound, |true - val| <= err. err = +inf marks a useless approximation and
// forces the caller onto the exact path.
//
// The bound constants are deliberately loose (a few ulp per operation);
// the filter only ever has to be sound, never tight.
struct Approx {
  double val = 0.0;
  double err = 0.0;

  static Approx of(const Rat& r) {
    double v = r.get_d();
    if (!std::isfinite(v)) return {v, HUGE_VAL};
    if (v == 0.0 && sgn(r) != 0) return {0.0, HUGE_VAL};
    return {v, std::fabs(v) * 2.3e-16};
  }
  static Approx exact(double v) { return {v, 0.0}; }
};

inline double approx_round_err(double v) { return std::fabs(v) * 1.2e-16 + 5e-308; }

inline Approx operator+(const Approx& a, const Approx& b) {
  double v = a.val + b.val;
  return {v, (a.err + b.err + approx_round_err(v)) * 1.0000001};
}

inline Approx operator-(const Approx& a, const Approx& b) {
  double v = a.val - b.val;
  return {v, (a.err + b.err + approx_round_err(v)) * 1.0000001};
}

inline Approx operator*(const Approx& a, const Approx& b) {
  double v = a.val * b.val;
  double e = std::fabs(a.val) * b.err + std::fabs(b.val) * a.err + a.err * b.err;
  return {v, (e + approx_round_err(v)) * 1.0000001};
}

inline Approx operator/(const Approx& a, const Approx& b) {
  if (!(std::fabs(b.val) > b.err) || !std::isfinite(b.err)) return {0.0, HUGE_VAL};
  double v = a.val / b.val;
  double lo = std::fabs(b.val) - b.err;
  double e = (a.err + std::fabs(v) * b.err) / lo;
  return {v, (e + approx_round_err(v)) * 1.0000001};
}

inline Approx operator-(const Approx& a) { return {-a.val, a.err}; }

// Sign of the true value if the interval pins it down.
inline std::optional<int> approx_sign(const Approx& a) {
  if (!std::isfinite(a.err)) return std::nullopt;
  if (a.val > a.err) return 1;
  if (a.val < -a.err) return -1;
  if (a.err == 0.0) return 0;
  return std::nullopt;
}

struct Approx3 {
  Approx x, y, z;
  static Approx3 of(const Rat& a, const Rat& b, const Rat& c) {
    return {Approx::of(a), Approx::of(b), Approx::of(c)};
  }
};

inline Approx adot(const Approx3& a, const Approx3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

}  // namespace projcong
