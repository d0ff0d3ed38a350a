#pragma once

#include <array>
#include <compare>
#include <vector>

#include "projcong/errors.hpp"
#include "projcong/rat.hpp"

namespace projcong {

struct Vec3 {
  Rat x, y, z;

  Vec3() : x(0), y(0), z(0) {}
  Vec3(Rat x, Rat y, Rat z) : x(std::move(x)), y(std::move(y)), z(std::move(z)) {}

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(const Rat& k) const { return {x * k, y * k, z * k}; }

  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
  bool operator!=(const Vec3& o) const { return !(*this == o); }

  bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0 && sgn(z) == 0; }
  const Rat& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Rat dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline Rat norm2(const Vec3& a) { return dot(a, a); }

// Strict lexicographic order, used everywhere a deterministic ordering of
// rational points is needed.
inline bool lex_less(const Vec3& a, const Vec3& b) {
  int c = cmp(a.x, b.x);
  if (c != 0) return c < 0;
  c = cmp(a.y, b.y);
  if (c != 0) return c < 0;
  return cmp(a.z, b.z) < 0;
}

struct Vec2 {
  Rat u, v;

  Vec2() : u(0), v(0) {}
  Vec2(Rat u, Rat v) : u(std::move(u)), v(std::move(v)) {}

  Vec2 operator+(const Vec2& o) const { return {u + o.u, v + o.v}; }
  Vec2 operator-(const Vec2& o) const { return {u - o.u, v - o.v}; }
  Vec2 operator-() const { return {-u, -v}; }
  Vec2 operator*(const Rat& k) const { return {u * k, v * k}; }
  bool operator==(const Vec2& o) const { return u == o.u && v == o.v; }
  bool operator!=(const Vec2& o) const { return !(*this == o); }
  bool is_zero() const { return sgn(u) == 0 && sgn(v) == 0; }
};

inline Rat dot2(const Vec2& a, const Vec2& b) { return a.u * b.u + a.v * b.v; }
inline Rat cross2(const Vec2& a, const Vec2& b) { return a.u * b.v - a.v * b.u; }

inline bool lex_less2(const Vec2& a, const Vec2& b) {
  int c = cmp(a.u, b.u);
  if (c != 0) return c < 0;
  return cmp(a.v, b.v) < 0;
}

// Scales a nonzero rational vector by a positive factor so that its entries
// become coprime integers. Orientation is preserved.
inline Vec3 primitive(const Vec3& a) {
  if (a.is_zero()) throw GeomError(Errc::ZeroDirection, "primitive of zero vector");
  Int l = lcm(lcm(a.x.get_den(), a.y.get_den()), a.z.get_den());
  Int nx = a.x.get_num() * (l / a.x.get_den());
  Int ny = a.y.get_num() * (l / a.y.get_den());
  Int nz = a.z.get_num() * (l / a.z.get_den());
  Int g = gcd(gcd(abs(nx), abs(ny)), abs(nz));
  return {Rat(nx / g), Rat(ny / g), Rat(nz / g)};
}

// Primitive representative with the first nonzero coordinate positive.
// Two rational vectors span the same line iff their canonical forms agree.
inline Vec3 canonical_direction(const Vec3& a) {
  Vec3 p = primitive(a);
  int s = sgn(p.x);
  if (s == 0) s = sgn(p.y);
  if (s == 0) s = sgn(p.z);
  return s < 0 ? -p : p;
}

inline Vec2 primitive2(const Vec2& a) {
  if (a.is_zero()) throw GeomError(Errc::ZeroDirection, "primitive of zero vector");
  Int l = lcm(a.u.get_den(), a.v.get_den());
  Int nu = a.u.get_num() * (l / a.u.get_den());
  Int nv = a.v.get_num() * (l / a.v.get_den());
  Int g = gcd(abs(nu), abs(nv));
  return {Rat(nu / g), Rat(nv / g)};
}

inline Vec2 canonical_direction2(const Vec2& a) {
  Vec2 p = primitive2(a);
  int s = sgn(p.u);
  if (s == 0) s = sgn(p.v);
  return s < 0 ? -p : p;
}

// Exact angular order of nonzero 2D vectors, counterclockwise starting at
// the positive u-axis. No normalization, no trigonometry.
inline bool angle_less(const Vec2& a, const Vec2& b) {
  auto half = [](const Vec2& w) {
    int sv = sgn(w.v);
    if (sv > 0) return 0;
    if (sv < 0) return 1;
    return sgn(w.u) > 0 ? 0 : 1;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return sgn(cross2(a, b)) > 0;
}

inline bool lex_less_vecvec(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (lex_less(a[i], b[i])) return true;
    if (lex_less(b[i], a[i])) return false;
  }
  return a.size() < b.size();
}

}  // namespace projcong
