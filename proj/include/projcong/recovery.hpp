#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "projcong/direction_space.hpp"
#include "projcong/shadow.hpp"

namespace projcong {

// Line {b + t*a} not passing through the origin, in canonical form: a is the
// canonical direction of the line, b the foot of the perpendicular from the
// origin (a.b = 0, b != 0).
struct ParamLine {
  Vec3 a;
  Vec3 b;

  // Line through point p with the given direction. Throws OriginLine when
  // the line contains the origin.
  static ParamLine through(const Vec3& p, const Vec3& dir);

  bool operator==(const ParamLine& o) const { return a == o.a && b == o.b; }
  ParamLine reflected() const { return {a, -b}; }        // -l
  ParamLine translated(const Vec3& t) const;             // l + t
  // Intersection with xi-perp; throws DirectionOnLine when xi.a = 0.
  Vec3 meet_perp(const Vec3& xi) const;
};

// Outcome of comparing the projected lengths of two segments over a set of
// directions.
struct SegmentVerdict {
  bool parallel_equal = false;
  Vec3 direction;  // canonical common direction when parallel_equal
  Rat length2;     // common squared length
  Vec3 witness;    // a direction where the projected lengths differ
};

// Exact per-direction squared-length comparison plus the symbolic condition
// (the segment vectors must agree up to sign).
SegmentVerdict segment_pair_test(const Vec3& a, const Vec3& b, const Vec3& c,
                                 const Vec3& d, const std::vector<Vec3>& dirs);

struct LinePairVerdict {
  enum class Case { ParallelTranslate, ParallelSwap, SignMatch, Inconsistent };
  enum class Pairing { P13_24, P14_23 };
  Case kind;
  Vec3 data;  // translate b / swap c / inconsistency witness direction
  int s1 = 0, s2 = 0;
  Pairing pairing = Pairing::P13_24;
};

// Classifies how (l3, l4) relate to (l1, l2) given that the distance of the
// xi-perp traces agrees on the supplied directions.
LinePairVerdict line_pair_classify(const ParamLine& l1, const ParamLine& l2,
                                   const ParamLine& l3, const ParamLine& l4,
                                   const std::vector<Vec3>& dirs);

// True iff the traces of the three lines on xi-perp form a right angle at
// the first line's trace (exact).
bool right_angle_guard(const ParamLine& lp, const ParamLine& lq, const ParamLine& lr,
                       const Vec3& xi);

// Reconstructs the convex polygon with the given outer edge normals and
// normal-scaled edge lengths (length value = true length * |normal|, which
// keeps every quantity rational; for unit normals it is the plain length).
// Anchored with the lexicographically smallest vertex at the origin, edges
// sorted by normal angle. Lives in the standard plane frame.
PlanarBody minkowski_2d(const std::vector<Vec2>& normals, const std::vector<Rat>& lengths);

// The matching extraction: normals and normal-scaled lengths of a polygon in
// the standard frame. minkowski_2d over this data rebuilds the polygon up to
// translation.
void polygon_normals_lengths(const PlanarBody& a, std::vector<Vec2>& normals,
                             std::vector<Rat>& lengths);

// One record per direction cell: the sign of the per-cell relation and the
// translation it pins down (no translation in sections mode).
struct PatchRecord {
  int cell_id = -1;
  int8_t sign = +1;
  std::optional<Vec3> offset;  // nullopt = Zero
};

struct PatchInput {
  std::vector<PatchRecord> records;
};

// Glues the per-cell relations into one global (sign, translation) pair and
// verifies it exactly against the vertex multisets (+: Q = P + b,
// -: Q = -P + b). Prefers + when both verify. Throws NoConsistentPatch.
std::pair<int, Vec3> global_patch(const PatchInput& patch, const Polytope& p,
                                  const Polytope& q, Mode mode);

}  // namespace projcong
