#pragma once

#include <array>
#include <utility>
#include <vector>

#include "projcong/direction_space.hpp"
#include "projcong/shadow.hpp"

namespace projcong {

enum class Orientation { Direct, Reflected };

// Plane rigid motion, floating point, for reporting only. x' = M x + t in
// orthonormal plane coordinates.
struct Motion2D {
  double m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  double tx = 0, ty = 0;
};

// Congruence of two planar bodies realized as a vertex bijection. The
// vertex map preserves cyclic adjacency (reversing it when Reflected) and
// all pairwise squared distances exactly.
struct CongruenceWitness {
  Orientation orientation;
  std::vector<int> vertex_map;  // index i of A -> vertex_map[i] of B
  Motion2D motion;
};

// Cyclic congruence code of a convex polygon: one entry per edge holding
// (squared edge length, scalar product with the following edge), both as
// true plane quantities, so codes from different frames compare exactly.
using CodeEntry = std::array<Rat, 2>;
struct CanonicalCode {
  std::vector<CodeEntry> direct;     // lexicographically minimal rotation
  std::vector<CodeEntry> reflected;  // same for the reversed traversal
};

CanonicalCode canonical_code(const PlanarBody& a);

// Every congruence between two planar bodies, reflections included.
// Deterministic order: Direct witnesses first, by rotation offset, then
// Reflected ones. Empty list means not congruent.
//
// verify_distances re-checks each witness against all pairwise squared
// distances; code equality already implies this for strictly convex
// polygons, so hot callers may skip it.
std::vector<CongruenceWitness> congruence_witnesses(const PlanarBody& a,
                                                    const PlanarBody& b,
                                                    bool verify_distances = true);

// A feature bijection (3D vertex ids for projections, 3D edge ids for
// sections) witnessed by some congruence at every sampled direction of one
// cell.
struct StablePermutation {
  std::vector<std::pair<int, int>> sigma;  // sorted by source feature id
  Orientation orientation;
  int support_count = 0;

  bool operator==(const StablePermutation& o) const {
    return sigma == o.sigma && orientation == o.orientation;
  }
};

// Intersection over all samples of the witnessed feature bijections.
// Throws EmptyIntersection when nothing survives (non-congruent or
// undersampled).
std::vector<StablePermutation> stable_permutation(const Polytope& p, const Polytope& q,
                                                  const DirectionCell& cell, Mode mode,
                                                  const std::vector<Vec3>& samples);

}  // namespace projcong
