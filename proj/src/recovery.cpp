#include "projcong/recovery.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "projcong/errors.hpp"
#include "projcong/hull2d.hpp"
#include "projcong/rng.hpp"

namespace projcong {

namespace {

// |w - (w.xi/|xi|^2) xi|^2, the squared length of the projection of w.
Rat projected_norm2(const Vec3& w, const Vec3& xi, const Rat& xi2) {
  Rat d = dot(w, xi);
  return norm2(w) - d * d / xi2;
}

// Deterministic fallback direction stream for locating a witness when the
// supplied directions happen to miss every discrepancy.
Vec3 probe_direction(SplitMix64& rng) {
  for (;;) {
    Vec3 d{Rat(rng.range(-997, 997)), Rat(rng.range(-997, 997)), Rat(rng.range(-997, 997))};
    if (!d.is_zero()) return d;
  }
}

}  // namespace

ParamLine ParamLine::through(const Vec3& p, const Vec3& dir) {
  if (dir.is_zero()) throw GeomError(Errc::ZeroDirection, "line direction is zero");
  ParamLine l;
  l.a = canonical_direction(dir);
  l.b = p - l.a * (dot(p, l.a) / norm2(l.a));
  if (l.b.is_zero()) throw GeomError(Errc::OriginLine, "line passes through the origin");
  return l;
}

ParamLine ParamLine::translated(const Vec3& t) const {
  return through(b + t, a);
}

Vec3 ParamLine::meet_perp(const Vec3& xi) const {
  Rat da = dot(xi, a);
  if (sgn(da) == 0)
    throw GeomError(Errc::DirectionOnLine, "direction orthogonal to the line");
  return b - a * (dot(xi, b) / da);
}

SegmentVerdict segment_pair_test(const Vec3& a, const Vec3& b, const Vec3& c,
                                 const Vec3& d, const std::vector<Vec3>& dirs) {
  Vec3 w1 = b - a, w2 = d - c;
  if (w1.is_zero() || w2.is_zero())
    throw GeomError(Errc::ZeroSegment, "segment endpoints coincide");
  if (dirs.empty()) throw GeomError(Errc::InputError, "segment_pair_test needs directions");

  for (const Vec3& xi : dirs) {
    if (xi.is_zero()) throw GeomError(Errc::ZeroDirection, "zero test direction");
    Rat xi2 = norm2(xi);
    if (projected_norm2(w1, xi, xi2) != projected_norm2(w2, xi, xi2)) {
      SegmentVerdict v;
      v.parallel_equal = false;
      v.witness = xi;
      return v;
    }
  }
  if (w1 == w2 || w1 == -w2) {
    SegmentVerdict v;
    v.parallel_equal = true;
    v.direction = canonical_direction(w1);
    v.length2 = norm2(w1);
    return v;
  }
  // The supplied directions all agreed but the segments differ; the
  // discrepancy set is dense and open, so a short deterministic search
  // finds a witness.
  SplitMix64 rng(0x5e60a7u);
  for (int t = 0; t < 100000; ++t) {
    Vec3 xi = probe_direction(rng);
    Rat xi2 = norm2(xi);
    if (projected_norm2(w1, xi, xi2) != projected_norm2(w2, xi, xi2)) {
      SegmentVerdict v;
      v.parallel_equal = false;
      v.witness = xi;
      return v;
    }
  }
  throw GeomError(Errc::Internal, "distinct segments with equal projections everywhere");
}

namespace {

Rat trace_dist2(const ParamLine& x, const ParamLine& y, const Vec3& xi) {
  Vec3 vx = x.meet_perp(xi);
  Vec3 vy = y.meet_perp(xi);
  return norm2(vx - vy);
}

bool identity_holds(const ParamLine& l1, const ParamLine& l2, const ParamLine& l3,
                    const ParamLine& l4, const Vec3& xi) {
  return trace_dist2(l1, l2, xi) == trace_dist2(l3, l4, xi);
}

// dim span(l1 union l2) as point sets = rank {a1, b1, a2, b2}.
int span_dim(const ParamLine& l1, const ParamLine& l2) {
  std::vector<Vec3> vs = {l1.a, l1.b, l2.a, l2.b};
  std::vector<Vec3> basis;
  for (const auto& v : vs) {
    Vec3 r = v;
    for (const auto& u : basis) r = r - u * (dot(r, u) / norm2(u));
    if (!r.is_zero()) basis.push_back(r);
  }
  return static_cast<int>(basis.size());
}

LinePairVerdict inconsistent_with_witness(const ParamLine& l1, const ParamLine& l2,
                                          const ParamLine& l3, const ParamLine& l4) {
  SplitMix64 rng(0x11ae5u);
  for (int t = 0; t < 100000; ++t) {
    Vec3 xi = probe_direction(rng);
    if (sgn(dot(xi, l1.a)) == 0 || sgn(dot(xi, l2.a)) == 0 ||
        sgn(dot(xi, l3.a)) == 0 || sgn(dot(xi, l4.a)) == 0)
      continue;
    if (!identity_holds(l1, l2, l3, l4, xi))
      return {LinePairVerdict::Case::Inconsistent, xi, 0, 0,
              LinePairVerdict::Pairing::P13_24};
  }
  throw GeomError(Errc::Internal, "no witness found for inconsistent line quadruple");
}

}  // namespace

LinePairVerdict line_pair_classify(const ParamLine& l1, const ParamLine& l2,
                                   const ParamLine& l3, const ParamLine& l4,
                                   const std::vector<Vec3>& dirs) {
  if (dirs.empty()) throw GeomError(Errc::InputError, "line_pair_classify needs directions");
  for (const Vec3& xi : dirs) {
    // meet_perp throws DirectionOnLine when xi is orthogonal to some line
    if (!identity_holds(l1, l2, l3, l4, xi))
      return {LinePairVerdict::Case::Inconsistent, xi, 0, 0,
              LinePairVerdict::Pairing::P13_24};
  }

  if (l1.a == l2.a) {  // canonical directions: parallel lines
    if (l3.a == l1.a && l4.a == l1.a) {
      Vec3 tb = l3.b - l1.b;
      if (l4.b - l2.b == tb)
        return {LinePairVerdict::Case::ParallelTranslate, tb, 0, 0,
                LinePairVerdict::Pairing::P13_24};
      Vec3 c = l3.b + l1.b;
      if (l4.b + l2.b == c)
        return {LinePairVerdict::Case::ParallelSwap, c, 0, 0,
                LinePairVerdict::Pairing::P13_24};
    }
    return inconsistent_with_witness(l1, l2, l3, l4);
  }

  // Non-parallel pair: exact sign matches. With a 3-dimensional span only
  // uniform signs can survive the distance identity; mixed exact matches
  // are reported through the identity failing at some direction.
  const bool span3 = span_dim(l1, l2) >= 3;
  struct Combo {
    int s1, s2;
    LinePairVerdict::Pairing pairing;
  };
  std::vector<Combo> combos = {
      {+1, +1, LinePairVerdict::Pairing::P13_24},
      {-1, -1, LinePairVerdict::Pairing::P13_24},
      {+1, +1, LinePairVerdict::Pairing::P14_23},
      {-1, -1, LinePairVerdict::Pairing::P14_23},
      {+1, -1, LinePairVerdict::Pairing::P13_24},
      {-1, +1, LinePairVerdict::Pairing::P13_24},
      {+1, -1, LinePairVerdict::Pairing::P14_23},
      {-1, +1, LinePairVerdict::Pairing::P14_23},
  };
  for (const Combo& c : combos) {
    if (span3 && c.s1 != c.s2) continue;
    const ParamLine& m1 = c.pairing == LinePairVerdict::Pairing::P13_24 ? l3 : l4;
    const ParamLine& m2 = c.pairing == LinePairVerdict::Pairing::P13_24 ? l4 : l3;
    ParamLine t1 = c.s1 > 0 ? m1 : m1.reflected();
    ParamLine t2 = c.s2 > 0 ? m2 : m2.reflected();
    if (l1 == t1 && l2 == t2)
      return {LinePairVerdict::Case::SignMatch, Vec3{}, c.s1, c.s2, c.pairing};
  }
  return inconsistent_with_witness(l1, l2, l3, l4);
}

bool right_angle_guard(const ParamLine& lp, const ParamLine& lq, const ParamLine& lr,
                       const Vec3& xi) {
  Vec3 vp = lp.meet_perp(xi);
  Vec3 vq = lq.meet_perp(xi);
  Vec3 vr = lr.meet_perp(xi);
  return sgn(dot(vq - vp, vr - vp)) == 0;
}

PlanarBody minkowski_2d(const std::vector<Vec2>& normals, const std::vector<Rat>& lengths) {
  const int n = static_cast<int>(normals.size());
  if (n < 3 || lengths.size() != normals.size())
    throw GeomError(Errc::InputError, "need >= 3 matched normals and lengths");
  for (const auto& len : lengths)
    if (sgn(len) <= 0) throw GeomError(Errc::InputError, "lengths must be positive");
  for (int i = 0; i < n; ++i) {
    if (normals[i].is_zero()) throw GeomError(Errc::ZeroDirection, "zero normal");
    for (int j = i + 1; j < n; ++j)
      if (sgn(cross2(normals[i], normals[j])) == 0 &&
          sgn(dot2(normals[i], normals[j])) > 0)
        throw GeomError(Errc::ParallelNormals, "two normals point the same way");
  }

  // edge vector for (n, len): rot90ccw(n) * len / |n|^2
  std::vector<Vec2> edge(n);
  for (int i = 0; i < n; ++i) {
    Rat k = lengths[i] / dot2(normals[i], normals[i]);
    edge[i] = Vec2{-normals[i].v, normals[i].u} * k;
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return angle_less(normals[i], normals[j]); });

  Vec2 sum;
  for (const auto& e : edge) sum = sum + e;
  if (!sum.is_zero())
    throw GeomError(Errc::NotClosed, "edge vectors do not sum to zero");

  std::vector<Vec2> verts(n);
  Vec2 cur;
  for (int i = 0; i < n; ++i) {
    verts[i] = cur;
    cur = cur + edge[order[i]];
  }
  int anchor = 0;
  for (int i = 1; i < n; ++i)
    if (lex_less2(verts[i], verts[anchor])) anchor = i;
  Vec2 shift = verts[anchor];
  std::rotate(verts.begin(), verts.begin() + anchor, verts.end());
  for (auto& v : verts) v = v - shift;

  PlanarBody body;
  body.frame = frame({Rat(0), Rat(0), Rat(1)});
  body.vertices2d = std::move(verts);
  body.preimage.assign(n, Preimage::synthetic());
  return body;
}

void polygon_normals_lengths(const PlanarBody& a, std::vector<Vec2>& normals,
                             std::vector<Rat>& lengths) {
  if (a.frame.s != 1 || a.frame.t != 1)
    throw GeomError(Errc::InputError, "normal extraction expects the standard frame");
  const int n = static_cast<int>(a.vertices2d.size());
  if (n < 3) throw GeomError(Errc::DegeneratePolygon, "need >= 3 vertices");
  normals.clear();
  lengths.clear();
  for (int i = 0; i < n; ++i) {
    Vec2 d = a.vertices2d[(i + 1) % n] - a.vertices2d[i];
    Vec2 nrm = primitive2(Vec2{d.v, -d.u});  // outward for a ccw polygon
    // d = lambda * rot90ccw(nrm); length value = lambda * |nrm|^2
    Rat lambda = sgn(nrm.v) != 0 ? Rat(d.u / -nrm.v) : Rat(d.v / nrm.u);
    normals.push_back(nrm);
    lengths.push_back(lambda * dot2(nrm, nrm));
  }
}

std::pair<int, Vec3> global_patch(const PatchInput& patch, const Polytope& p,
                                  const Polytope& q, Mode mode) {
  if (patch.records.empty())
    throw GeomError(Errc::InputError, "global_patch needs at least one cell record");
  {
    std::set<int> ids;
    for (const auto& r : patch.records)
      if (!ids.insert(r.cell_id).second)
        throw GeomError(Errc::InputError, "duplicate cell id in patch input");
  }
  if (mode == Mode::Sections)
    for (const auto& r : patch.records)
      if (r.offset && !r.offset->is_zero())
        throw GeomError(Errc::InputError, "sections patch must carry zero offsets");

  // Candidate global relations, deterministically ordered: + before -, then
  // lexicographically smaller translation. Collected as a set so the result
  // cannot depend on record order.
  struct Cand {
    int sign;
    Vec3 b;
    bool operator<(const Cand& o) const {
      if (sign != o.sign) return sign > o.sign;  // +1 first
      return lex_less(b, o.b);
    }
  };
  std::set<Cand> cands;
  for (const auto& r : patch.records)
    cands.insert({r.sign, r.offset ? *r.offset : Vec3{}});

  for (const auto& c : cands) {
    bool ok = c.sign > 0 ? q.same_vertices(p.translated(c.b))
                         : q.same_vertices(p.negated().translated(c.b));
    if (ok) return {c.sign, c.b};
  }

  // Diagnostics: the smallest pair of cells whose records disagree.
  int ca = patch.records.front().cell_id, cb = ca;
  for (size_t i = 0; i < patch.records.size() && ca == cb; ++i)
    for (size_t j = i + 1; j < patch.records.size(); ++j) {
      const auto& a = patch.records[i];
      const auto& b = patch.records[j];
      Vec3 oa = a.offset ? *a.offset : Vec3{};
      Vec3 ob = b.offset ? *b.offset : Vec3{};
      if (a.sign != b.sign || oa != ob) {
        ca = std::min(a.cell_id, b.cell_id);
        cb = std::max(a.cell_id, b.cell_id);
        break;
      }
    }
  throw NoConsistentPatchError(ca, cb, "no global (sign, translation) verifies");
}

}  // namespace projcong
