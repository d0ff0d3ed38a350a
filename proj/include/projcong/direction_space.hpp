#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "projcong/filtered.hpp"
#include "projcong/polytope.hpp"

namespace projcong {

enum class Mode { Projections, Sections };

struct Provenance {
  enum class Kind { FacetParallel, VertexPerp };
  Kind kind;
  int body;     // 0 for the first polytope, 1 for the second
  int feature;  // facet id (FacetParallel) or vertex id (VertexPerp)
};

// Great circle {xi : xi . normal = 0}. The normal is canonical: primitive
// integer entries, first nonzero coordinate positive.
struct GreatCircle {
  Vec3 normal;
  Provenance prov;
};

// Open 2-cell of the arrangement. Cells coincide with the realizable sign
// vectors: each cell is the trace on the sphere of an open convex cone, so
// it is connected and geodesically convex.
struct DirectionCell {
  int id = -1;
  Vec3 sample;                 // rational direction strictly inside
  std::vector<int> bounding;   // circle ids bounding the cell
  std::vector<int8_t> signs;   // +1/-1 per circle, in circle-list order
};

struct Arrangement {
  std::vector<GreatCircle> circles;
  long vertex_count = 0;
  long arc_count = 0;
  std::vector<DirectionCell> cells;
  long euler() const { return vertex_count - arc_count + static_cast<long>(cells.size()); }
};

// Directions parallel to a facet of either polytope: one circle per
// distinct facet-normal line, deduplicated.
std::vector<GreatCircle> exceptional_projection_set(const Polytope& p, const Polytope& q);

// Directions whose orthogonal plane passes through a vertex of either
// polytope. Requires the origin strictly inside both.
std::vector<GreatCircle> exceptional_section_set(const Polytope& p, const Polytope& q);

// Exact arrangement of the circles on the sphere. Circles must be canonical
// and pairwise distinct (as produced by the exceptional-set builders).
Arrangement build_arrangement(const std::vector<GreatCircle>& circles);

inline std::vector<DirectionCell> cells(const std::vector<GreatCircle>& circles) {
  return build_arrangement(circles).cells;
}

// n rational directions strictly inside the cell; deterministic for a fixed
// seed. An optional reject predicate (the pipeline's degeneracy tests) makes
// the rejection sampling dodge measure-zero bad sets. Throws
// SamplingExhausted after 10000*n rejections.
std::vector<Vec3> sample_cell(const DirectionCell& cell,
                              const std::vector<GreatCircle>& circles, int n,
                              uint64_t seed,
                              const std::function<bool(const Vec3&)>& reject = {});

// Cached evaluator: true iff two edge-direction lines of one body project
// to orthogonal lines in xi-perp, i.e. (a.b)|xi|^2 - (a.xi)(b.xi) vanishes
// for some same-body pair of edge directions.
class ProjectionDegeneracy {
 public:
  ProjectionDegeneracy(const Polytope& p, const Polytope& q);
  bool operator()(const Vec3& xi) const;

 private:
  struct Body {
    std::vector<Vec3> dirs;            // distinct canonical edge directions
    std::vector<Approx3> adirs;
    std::vector<std::pair<int, int>> pairs;
    std::vector<Rat> pair_dot;         // dirs[i] . dirs[j]
    std::vector<Approx> apair_dot;
  };
  Body bodies_[2];
};

// Cached evaluator: true iff some vertex triple (p; q, r) of a section of
// either body has (v_q - v_p) . (v_r - v_p) = 0, evaluated exactly.
class SectionDegeneracy {
 public:
  SectionDegeneracy(const Polytope& p, const Polytope& q);
  bool operator()(const Vec3& xi) const;

 private:
  struct Body {
    const Polytope* poly;
    std::vector<Approx3> averts;
  };
  bool body_degenerate(const Body& b, const Vec3& xi) const;
  Body bodies_[2];
};

// One-shot form of the two evaluators above.
bool is_degenerate_direction(const Vec3& xi, const Polytope& p, const Polytope& q,
                             Mode mode);

}  // namespace projcong
