#include "projcong/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "projcong/errors.hpp"
#include "projcong/filtered.hpp"
#include "projcong/hull2d.hpp"

namespace projcong {

namespace {

struct PlaneKey {
  Vec3 n;
  Rat off;
  bool operator<(const PlaneKey& o) const {
    if (lex_less(n, o.n)) return true;
    if (lex_less(o.n, n)) return false;
    return off < o.off;
  }
};

// Joint primitive scaling of (normal, offset) by a positive rational, so
// each oriented supporting plane has one canonical representation.
PlaneKey canonical_plane(const Vec3& n, const Rat& off) {
  Int l = lcm(lcm(n.x.get_den(), n.y.get_den()), lcm(n.z.get_den(), off.get_den()));
  Int a = n.x.get_num() * (l / n.x.get_den());
  Int b = n.y.get_num() * (l / n.y.get_den());
  Int c = n.z.get_num() * (l / n.z.get_den());
  Int d = off.get_num() * (l / off.get_den());
  Int g = gcd(gcd(abs(a), abs(b)), gcd(abs(c), abs(d)));
  return {{Rat(a / g), Rat(b / g), Rat(c / g)}, Rat(d / g)};
}

// Orientation-free plane key: first nonzero of (nx, ny, nz, off) positive.
PlaneKey unoriented_plane(const PlaneKey& k) {
  int s = sgn(k.n.x);
  if (s == 0) s = sgn(k.n.y);
  if (s == 0) s = sgn(k.n.z);
  if (s == 0) s = sgn(k.off);
  if (s < 0) return {-k.n, -k.off};
  return k;
}

int side_of_plane(const Vec3& n, const Rat& off, const Vec3& p, const Approx3& an,
                  const Approx& aoff, const Approx3& ap) {
  if (auto s = approx_sign(adot(an, ap) - aoff)) return *s;
  return sgn(dot(n, p) - off);
}

}  // namespace

Polytope Polytope::hull(const std::vector<Vec3>& input) {
  std::vector<Vec3> pts = input;
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw GeomError(Errc::DegenerateInput, "need at least 4 distinct points");

  std::vector<Approx3> apts;
  apts.reserve(n);
  for (const auto& p : pts) apts.push_back(Approx3::of(p.x, p.y, p.z));

  // Full-dimensionality: some tetrahedron among the points.
  {
    bool full = false;
    for (int i = 1; i < n && !full; ++i)
      for (int j = i + 1; j < n && !full; ++j) {
        Vec3 c = cross(pts[i] - pts[0], pts[j] - pts[0]);
        if (c.is_zero()) continue;
        for (int k = j + 1; k < n; ++k)
          if (sgn(dot(c, pts[k] - pts[0])) != 0) {
            full = true;
            break;
          }
      }
    if (!full) throw GeomError(Errc::DegenerateInput, "affine hull has dimension < 3");
  }

  // Supporting planes by triple enumeration. Small inputs only; the filter
  // keeps the side scans in plain doubles almost everywhere.
  std::map<PlaneKey, std::vector<int>> planes;  // keyed by outward orientation
  std::set<PlaneKey> seen;                      // orientation-free
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec3 nrm = cross(pts[j] - pts[i], pts[k] - pts[i]);
        if (nrm.is_zero()) continue;
        PlaneKey key = canonical_plane(nrm, dot(nrm, pts[i]));
        if (!seen.insert(unoriented_plane(key)).second) continue;
        Approx3 an = Approx3::of(key.n.x, key.n.y, key.n.z);
        Approx aoff = Approx::of(key.off);
        int above = 0, below = 0;
        std::vector<int> on;
        for (int m = 0; m < n; ++m) {
          int s = side_of_plane(key.n, key.off, pts[m], an, aoff, apts[m]);
          if (s > 0) ++above;
          else if (s < 0) ++below;
          else on.push_back(m);
          if (above && below) break;
        }
        if (above && below) continue;
        if (above)  // flip to outward
          planes.emplace(PlaneKey{-key.n, -key.off}, std::move(on));
        else
          planes.emplace(key, std::move(on));
      }

  // For each supporting plane, the facet polygon is the 2D hull of the
  // incident points; its corners are vertices of the polytope.
  struct RawFacet {
    PlaneKey plane;
    std::vector<int> cycle;  // point indices, ccw from outside
  };
  std::vector<RawFacet> raw;
  std::vector<char> is_vertex(n, 0);
  for (auto& [key, on] : planes) {
    if (on.size() < 3) continue;  // edge- or vertex-only supporting plane
    Frame fr = frame(key.n);
    std::vector<Vec2> flat;
    flat.reserve(on.size());
    for (int m : on) flat.push_back(fr.coords(pts[m]));
    std::vector<int> cyc = convex_hull_2d(flat);
    if (cyc.size() < 3) continue;
    RawFacet rf;
    rf.plane = key;
    for (int c : cyc) {
      rf.cycle.push_back(on[c]);
      is_vertex[on[c]] = 1;
    }
    raw.push_back(std::move(rf));
  }

  // Reindex vertices: lexicographic order over the surviving points.
  std::vector<int> newid(n, -1);
  Polytope poly;
  for (int m = 0; m < n; ++m)
    if (is_vertex[m]) {
      newid[m] = static_cast<int>(poly.vertices_.size());
      poly.vertices_.push_back(pts[m]);
    }

  std::sort(raw.begin(), raw.end(),
            [](const RawFacet& a, const RawFacet& b) { return a.plane < b.plane; });
  for (auto& rf : raw) {
    Facet f;
    f.normal = rf.plane.n;
    f.offset = rf.plane.off;
    for (int m : rf.cycle) f.cycle.push_back(newid[m]);
    auto mn = std::min_element(f.cycle.begin(), f.cycle.end());
    std::rotate(f.cycle.begin(), mn, f.cycle.end());
    poly.facets_.push_back(std::move(f));
  }

  // Edge list from facet cycles; every edge must be shared by exactly two.
  std::map<std::array<int, 2>, std::vector<int>> edge_facets;
  for (int fi = 0; fi < static_cast<int>(poly.facets_.size()); ++fi) {
    const auto& cyc = poly.facets_[fi].cycle;
    for (size_t a = 0; a < cyc.size(); ++a) {
      int u = cyc[a], v = cyc[(a + 1) % cyc.size()];
      std::array<int, 2> e{std::min(u, v), std::max(u, v)};
      edge_facets[e].push_back(fi);
    }
  }
  for (auto& [e, fs] : edge_facets) {
    if (fs.size() != 2)
      throw GeomError(Errc::Internal, "hull: edge not shared by exactly two facets");
    std::sort(fs.begin(), fs.end());
    poly.edges_.push_back(Edge{e, {fs[0], fs[1]}});
  }

  const long V = static_cast<long>(poly.vertices_.size());
  const long E = static_cast<long>(poly.edges_.size());
  const long F = static_cast<long>(poly.facets_.size());
  if (V - E + F != 2) throw GeomError(Errc::Internal, "hull: Euler check failed");
  return poly;
}

int Polytope::edge_between(int a, int b) const {
  std::array<int, 2> key{std::min(a, b), std::max(a, b)};
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i)
    if (edges_[i].v == key) return i;
  return -1;
}

bool Polytope::origin_interior() const {
  for (const auto& f : facets_)
    if (sgn(f.offset) <= 0) return false;
  return true;
}

Polytope Polytope::translated(const Vec3& t) const {
  std::vector<Vec3> pts;
  pts.reserve(vertices_.size());
  for (const auto& v : vertices_) pts.push_back(v + t);
  return hull(pts);
}

Polytope Polytope::negated() const {
  std::vector<Vec3> pts;
  pts.reserve(vertices_.size());
  for (const auto& v : vertices_) pts.push_back(-v);
  return hull(pts);
}

Polytope Polytope::scaled(const Rat& k) const {
  if (sgn(k) <= 0) throw GeomError(Errc::InputError, "scale factor must be positive");
  std::vector<Vec3> pts;
  pts.reserve(vertices_.size());
  for (const auto& v : vertices_) pts.push_back(v * k);
  return hull(pts);
}

bool Polytope::same_vertices(const Polytope& other) const {
  return vertices_ == other.vertices_;
}

Rat support(const Polytope& p, const Vec3& u) {
  if (u.is_zero()) throw GeomError(Errc::ZeroDirection, "support direction is zero");
  Rat best = dot(p.vertices()[0], u);
  for (size_t i = 1; i < p.vertices().size(); ++i) {
    Rat v = dot(p.vertices()[i], u);
    if (v > best) best = v;
  }
  return best;
}

Rat radial(const Polytope& p, const Vec3& u) {
  if (u.is_zero()) throw GeomError(Errc::ZeroDirection, "radial direction is zero");
  if (!p.origin_interior())
    throw GeomError(Errc::OriginNotInterior, "radial requires origin strictly inside");
  bool have = false;
  Rat best;
  for (const auto& f : p.facets()) {
    Rat d = dot(f.normal, u);
    if (sgn(d) > 0) {
      Rat lam = f.offset / d;
      if (!have || lam < best) {
        best = lam;
        have = true;
      }
    }
  }
  if (!have) throw GeomError(Errc::Internal, "radial: direction escapes all facets");
  return best;
}

Frame frame(const Vec3& xi) {
  if (xi.is_zero()) throw GeomError(Errc::ZeroDirection, "frame of zero direction");
  Vec3 b1;
  if (sgn(xi.x) == 0 && sgn(xi.y) == 0)
    b1 = {Rat(1), Rat(0), Rat(0)};
  else
    b1 = {xi.y, -xi.x, Rat(0)};
  Vec3 b2 = cross(xi, b1);
  Frame fr;
  fr.xi = xi;
  fr.b1 = b1;
  fr.b2 = b2;
  fr.s = norm2(b1);
  fr.t = norm2(b2);
  return fr;
}

}  // namespace projcong
