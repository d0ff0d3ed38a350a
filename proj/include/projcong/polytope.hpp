#pragma once

#include <optional>
#include <vector>

#include "projcong/vec.hpp"

namespace projcong {

// One facet of a 3-polytope. The normal is the primitive integer outer
// normal; every cycle vertex satisfies dot(normal, v) == offset and the
// cycle runs counterclockwise seen from outside.
struct Facet {
  Vec3 normal;
  Rat offset;
  std::vector<int> cycle;
};

struct Edge {
  std::array<int, 2> v;  // vertex ids, v[0] < v[1]
  std::array<int, 2> f;  // incident facet ids, f[0] < f[1]
};

// Vertex-presented convex 3-polytope with its face lattice. Immutable after
// construction; safe to share across threads.
class Polytope {
 public:
  // Exact convex hull with full face lattice. Vertices come out in
  // lexicographic order, facets sorted by (normal, offset).
  static Polytope hull(const std::vector<Vec3>& points);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int dimension() const { return 3; }

  // id of the edge joining two vertices, or -1.
  int edge_between(int a, int b) const;

  bool origin_interior() const;

  Polytope translated(const Vec3& t) const;
  Polytope negated() const;
  Polytope scaled(const Rat& k) const;  // k > 0

  // Exact equality as vertex sets (hull construction is canonical, so this
  // is plain list equality).
  bool same_vertices(const Polytope& other) const;

 private:
  Polytope() = default;
  std::vector<Vec3> vertices_;
  std::vector<Facet> facets_;
  std::vector<Edge> edges_;
};

// h_P(u) = max over vertices of v.u. Exact; throws ZeroDirection on u = 0.
Rat support(const Polytope& p, const Vec3& u);

// The lambda > 0 with lambda*u on the boundary, from the facet inequalities.
// Requires the origin strictly inside p.
Rat radial(const Polytope& p, const Vec3& u);

// Rational coordinatization of xi-perp. b1 and b2 are orthogonal to xi and
// to each other, and (b1, b2, xi) is positively oriented. 2D coordinates of
// a point x are (x.b1, x.b2); true squared lengths in the plane are
// u^2/s + v^2/t with s = |b1|^2, t = |b2|^2.
struct Frame {
  Vec3 xi, b1, b2;
  Rat s, t;

  Vec2 coords(const Vec3& x) const { return {dot(x, b1), dot(x, b2)}; }
  // Euclidean scalar product of plane vectors given in frame coordinates.
  Rat metric_dot(const Vec2& a, const Vec2& b) const {
    return a.u * b.u / s + a.v * b.v / t;
  }
  Rat metric_norm2(const Vec2& a) const { return metric_dot(a, a); }

  bool operator==(const Frame& o) const { return xi == o.xi && b1 == o.b1 && b2 == o.b2; }
};

Frame frame(const Vec3& xi);

}  // namespace projcong
