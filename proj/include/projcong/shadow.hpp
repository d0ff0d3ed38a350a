#pragma once

#include <vector>

#include "projcong/polytope.hpp"

namespace projcong {

// Where a 2D polygon vertex comes from: the projection of a 3D vertex, a
// point on a 3D edge (sections), or nowhere (synthetic polygons such as
// Minkowski reconstructions).
struct Preimage {
  enum class Kind { VertexOf, OnEdge, Synthetic };
  Kind kind = Kind::Synthetic;
  int feature = -1;  // vertex id or edge id
  Rat t;             // OnEdge: parameter in (0,1) from the lower vertex id

  static Preimage vertex(int id) { return {Kind::VertexOf, id, Rat(0)}; }
  static Preimage on_edge(int id, Rat t) { return {Kind::OnEdge, id, std::move(t)}; }
  static Preimage synthetic() { return {}; }
};

// Convex polygon living in a coordinatized plane. Coordinates of a plane
// point x are (x.b1, x.b2); all metric quantities go through the frame so
// they are exact and comparable across different frames.
struct PlanarBody {
  Frame frame;
  std::vector<Vec2> vertices2d;    // strictly convex, counterclockwise
  std::vector<Preimage> preimage;  // parallel to vertices2d
};

// Orthogonal projection onto xi-perp. Rejects directions parallel to a
// facet (the vertex pre-image map would be ambiguous).
PlanarBody project(const Polytope& p, const Vec3& xi);

// Section by the plane xi-perp. Requires the origin strictly inside and
// xi.v != 0 for every vertex; every polygon vertex sits on a distinct edge.
PlanarBody section(const Polytope& p, const Vec3& xi);

// The cycle of 3D vertices (and the edges joining consecutive ones) whose
// projections trace the boundary of the projection polygon. Canonicalized
// to start at the smallest vertex id, orientation preserved.
struct ShadowBoundary {
  std::vector<int> vertex_cycle;
  std::vector<int> edge_cycle;  // edge_cycle[i] joins vertex_cycle[i] and [i+1]

  bool operator==(const ShadowBoundary& o) const {
    return vertex_cycle == o.vertex_cycle && edge_cycle == o.edge_cycle;
  }
};

ShadowBoundary shadow_boundary(const Polytope& p, const Vec3& xi);

}  // namespace projcong
