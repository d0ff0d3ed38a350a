#include "projcong/shadow.hpp"

#include <algorithm>
#include <map>

#include "projcong/errors.hpp"
#include "projcong/hull2d.hpp"

namespace projcong {

namespace {

void check_not_facet_parallel(const Polytope& p, const Vec3& xi) {
  for (const auto& f : p.facets())
    if (sgn(dot(f.normal, xi)) == 0)
      throw GeomError(Errc::ExceptionalDirection, "direction parallel to a facet");
}

struct Vec2Less {
  bool operator()(const Vec2& a, const Vec2& b) const { return lex_less2(a, b); }
};

}  // namespace

PlanarBody project(const Polytope& p, const Vec3& xi) {
  if (xi.is_zero()) throw GeomError(Errc::ZeroDirection, "projection direction is zero");
  check_not_facet_parallel(p, xi);

  Frame fr = frame(xi);
  const auto& verts = p.vertices();
  std::vector<Vec2> flat;
  flat.reserve(verts.size());
  for (const auto& v : verts) flat.push_back(fr.coords(v));

  std::vector<int> cyc = convex_hull_2d(flat);
  if (cyc.size() < 3) throw GeomError(Errc::Internal, "projection degenerated to a segment");

  // Off the exceptional set every polygon corner has exactly one vertex
  // pre-image; coinciding projections would mean xi is parallel to an edge
  // or a face diagonal, both facet-parallel directions.
  std::map<Vec2, int, Vec2Less> count;
  for (const auto& q : flat) count[q]++;
  PlanarBody body;
  body.frame = fr;
  for (int c : cyc) {
    if (count[flat[c]] != 1)
      throw GeomError(Errc::ExceptionalDirection, "two vertices project to one corner");
    body.vertices2d.push_back(flat[c]);
    body.preimage.push_back(Preimage::vertex(c));
  }
  return body;
}

PlanarBody section(const Polytope& p, const Vec3& xi) {
  if (xi.is_zero()) throw GeomError(Errc::ZeroDirection, "section direction is zero");
  if (!p.origin_interior())
    throw GeomError(Errc::OriginNotInterior, "section requires origin strictly inside");

  const auto& verts = p.vertices();
  std::vector<int> side(verts.size());
  for (size_t i = 0; i < verts.size(); ++i) {
    side[i] = sgn(dot(verts[i], xi));
    if (side[i] == 0)
      throw GeomError(Errc::ExceptionalDirection, "section plane passes through a vertex");
  }

  Frame fr = frame(xi);
  std::vector<Vec2> pts;
  std::vector<Preimage> tags;
  for (int ei = 0; ei < static_cast<int>(p.edges().size()); ++ei) {
    const Edge& e = p.edges()[ei];
    if (side[e.v[0]] * side[e.v[1]] >= 0) continue;
    const Vec3& a = verts[e.v[0]];
    const Vec3& b = verts[e.v[1]];
    Rat sa = dot(a, xi), sb = dot(b, xi);
    Rat t = sa / (sa - sb);  // in (0,1), measured from the lower vertex id
    Vec3 x = a + (b - a) * t;
    pts.push_back(fr.coords(x));
    tags.push_back(Preimage::on_edge(ei, t));
  }
  if (pts.size() < 3) throw GeomError(Errc::Internal, "section with fewer than 3 vertices");

  std::vector<int> cyc = convex_hull_2d(pts);
  if (cyc.size() != pts.size())
    throw GeomError(Errc::Internal, "section crossing points not in convex position");

  PlanarBody body;
  body.frame = fr;
  for (int c : cyc) {
    body.vertices2d.push_back(pts[c]);
    body.preimage.push_back(tags[c]);
  }
  return body;
}

ShadowBoundary shadow_boundary(const Polytope& p, const Vec3& xi) {
  PlanarBody pb = project(p, xi);
  const int m = static_cast<int>(pb.vertices2d.size());
  ShadowBoundary sb;
  sb.vertex_cycle.reserve(m);
  for (const auto& tag : pb.preimage) sb.vertex_cycle.push_back(tag.feature);

  // start the cycle at the smallest vertex id, orientation preserved
  auto mn = std::min_element(sb.vertex_cycle.begin(), sb.vertex_cycle.end());
  std::rotate(sb.vertex_cycle.begin(), mn, sb.vertex_cycle.end());

  for (int i = 0; i < m; ++i) {
    int a = sb.vertex_cycle[i];
    int b = sb.vertex_cycle[(i + 1) % m];
    int e = p.edge_between(a, b);
    if (e < 0)
      throw GeomError(Errc::ExceptionalDirection,
                      "consecutive silhouette corners not joined by an edge");
    sb.edge_cycle.push_back(e);
  }
  return sb;
}

}  // namespace projcong
