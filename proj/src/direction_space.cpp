#include "projcong/direction_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "projcong/errors.hpp"
#include "projcong/rng.hpp"

namespace projcong {

namespace {

struct Vec3Less {
  bool operator()(const Vec3& a, const Vec3& b) const { return lex_less(a, b); }
};

std::vector<GreatCircle> dedup_circles(std::vector<GreatCircle> raw) {
  std::map<Vec3, Provenance, Vec3Less> seen;
  for (auto& c : raw) seen.emplace(c.normal, c.prov);
  std::vector<GreatCircle> out;
  out.reserve(seen.size());
  for (auto& [n, prov] : seen) out.push_back({n, prov});
  return out;
}

// Exact sign of dot(v, n) with a filter in front.
int dot_sign(const Vec3& v, const Approx3& av, const Vec3& n, const Approx3& an) {
  if (auto s = approx_sign(adot(av, an))) return *s;
  return sgn(dot(v, n));
}

// Snap an exact interior point to a nearby small integer direction with the
// same sign vector. Interior points built from arrangement vertices carry
// enormous numerators; a short direction keeps all downstream arithmetic
// cheap. Falls back to the exact point for sliver cells.
Vec3 snap_direction(const Vec3& exact, const std::vector<GreatCircle>& circles,
                    const std::vector<Approx3>& anorm, const std::vector<int8_t>& signs) {
  double x = rat_to_double(exact.x), y = rat_to_double(exact.y),
         z = rat_to_double(exact.z);
  double mx = std::max({std::fabs(x), std::fabs(y), std::fabs(z)});
  if (!(mx > 0) || !std::isfinite(mx)) return exact;
  x /= mx;
  y /= mx;
  z /= mx;
  for (int k : {10, 14, 18, 24, 32, 44, 60}) {
    double s = std::ldexp(1.0, k);
    Vec3 cand{Rat(static_cast<long>(std::llround(x * s))),
              Rat(static_cast<long>(std::llround(y * s))),
              Rat(static_cast<long>(std::llround(z * s)))};
    if (cand.is_zero()) continue;
    Approx3 ac = Approx3::of(cand.x, cand.y, cand.z);
    bool ok = true;
    for (size_t i = 0; i < circles.size() && ok; ++i) {
      int sg;
      if (auto fs = approx_sign(adot(ac, anorm[i])))
        sg = *fs;
      else
        sg = sgn(dot(cand, circles[i].normal));
      ok = sg == signs[i];
    }
    if (ok) return cand;
  }
  return exact;
}

// Largest power of two <= x, as an exact rational. x in (0, 1e300).
Rat pow2_below(double x) {
  int exp;
  std::frexp(x, &exp);  // x = m * 2^exp, m in [0.5, 1)
  int k = exp - 1;      // 2^k <= x
  Rat r;
  if (k >= 0) {
    mpz_ui_pow_ui(r.get_num_mpz_t(), 2, static_cast<unsigned long>(k));
  } else {
    r = 1;
    mpz_ui_pow_ui(r.get_den_mpz_t(), 2, static_cast<unsigned long>(-k));
  }
  r.canonicalize();
  return r;
}

}  // namespace

std::vector<GreatCircle> exceptional_projection_set(const Polytope& p, const Polytope& q) {
  std::vector<GreatCircle> raw;
  const Polytope* bodies[2] = {&p, &q};
  for (int b = 0; b < 2; ++b)
    for (int fi = 0; fi < static_cast<int>(bodies[b]->facets().size()); ++fi)
      raw.push_back({canonical_direction(bodies[b]->facets()[fi].normal),
                     {Provenance::Kind::FacetParallel, b, fi}});
  return dedup_circles(std::move(raw));
}

std::vector<GreatCircle> exceptional_section_set(const Polytope& p, const Polytope& q) {
  if (!p.origin_interior() || !q.origin_interior())
    throw GeomError(Errc::OriginNotInterior, "sections need the origin strictly inside");
  std::vector<GreatCircle> raw;
  const Polytope* bodies[2] = {&p, &q};
  for (int b = 0; b < 2; ++b)
    for (int vi = 0; vi < static_cast<int>(bodies[b]->vertices().size()); ++vi)
      raw.push_back({canonical_direction(bodies[b]->vertices()[vi]),
                     {Provenance::Kind::VertexPerp, b, vi}});
  return dedup_circles(std::move(raw));
}

Arrangement build_arrangement(const std::vector<GreatCircle>& circles) {
  const int n = static_cast<int>(circles.size());
  if (n == 0) throw GeomError(Errc::InputError, "arrangement needs at least one circle");
  for (int i = 0; i < n; ++i) {
    if (circles[i].normal != canonical_direction(circles[i].normal))
      throw GeomError(Errc::InputError, "circle normal not canonical");
    for (int j = i + 1; j < n; ++j)
      if (circles[i].normal == circles[j].normal)
        throw GeomError(Errc::InputError, "duplicate circle");
  }

  Arrangement arr;
  arr.circles = circles;

  if (n == 1) {
    const Vec3& nn = circles[0].normal;
    DirectionCell plus{0, nn, {0}, {+1}};
    DirectionCell minus{1, -nn, {0}, {-1}};
    arr.cells = {plus, minus};
    return arr;
  }

  std::vector<Approx3> anorm;
  anorm.reserve(n);
  for (const auto& c : circles) anorm.push_back(Approx3::of(c.normal.x, c.normal.y, c.normal.z));

  // Arrangement vertices: both intersection points of every circle pair.
  std::map<Vec3, int, Vec3Less> vid;
  std::vector<Vec3> verts;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec3 w = primitive(cross(circles[i].normal, circles[j].normal));
      for (const Vec3& cand : {w, Vec3(-w)}) {
        if (!vid.count(cand)) {
          vid.emplace(cand, static_cast<int>(verts.size()));
          verts.push_back(cand);
        }
      }
    }
  arr.vertex_count = static_cast<long>(verts.size());

  const int V = static_cast<int>(verts.size());
  std::vector<Approx3> averts;
  averts.reserve(V);
  for (const auto& v : verts) averts.push_back(Approx3::of(v.x, v.y, v.z));

  // Incidence: which circles pass through each vertex, plus the sign of
  // every vertex against every circle (reused by the sector samples).
  std::vector<std::vector<int>> on_circles(V);
  std::vector<std::vector<int8_t>> vsigns(V, std::vector<int8_t>(n, 0));
  for (int v = 0; v < V; ++v)
    for (int i = 0; i < n; ++i) {
      int s = dot_sign(verts[v], averts[v], circles[i].normal, anorm[i]);
      vsigns[v][i] = static_cast<int8_t>(s);
      if (s == 0) on_circles[v].push_back(i);
    }

  // Arc count: m vertices on a circle split it into m arcs.
  for (int i = 0; i < n; ++i) {
    long cnt = 0;
    for (int v = 0; v < V; ++v)
      if (vsigns[v][i] == 0) ++cnt;
    arr.arc_count += cnt;
  }

  // Cells by walking the sectors around every vertex. Each open sector at a
  // vertex lies in exactly one cell; every cell of an arrangement with >= 2
  // circles touches a vertex, so this enumeration is complete. Cells are
  // exactly the realizable sign vectors.
  std::map<std::vector<int8_t>, int> cell_ix;
  for (int v = 0; v < V; ++v) {
    const auto& through = on_circles[v];
    struct Ray {
      Vec3 dir;
      int circle;
    };
    std::vector<Ray> rays;
    for (int i : through) {
      Vec3 t = primitive(cross(circles[i].normal, verts[v]));
      rays.push_back({t, i});
      rays.push_back({-t, i});
    }
    Frame fr = frame(verts[v]);
    std::vector<Vec2> ray2;
    ray2.reserve(rays.size());
    for (const auto& r : rays) ray2.push_back(fr.coords(r.dir));
    std::vector<int> order(rays.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return angle_less(ray2[a], ray2[b]); });

    for (size_t s = 0; s < order.size(); ++s) {
      const Ray& ra = rays[order[s]];
      const Ray& rb = rays[order[(s + 1) % order.size()]];
      Vec3 m = ra.dir + rb.dir;

      // eps small enough that v + eps*m keeps the sign of v against every
      // circle not through v; certified double bounds, exact fallback.
      double bound = 0.25;
      bool need_exact = false;
      Approx3 am = Approx3::of(m.x, m.y, m.z);
      for (int j = 0; j < n; ++j) {
        if (vsigns[v][j] == 0) continue;
        Approx dv = adot(averts[v], anorm[j]);
        Approx dm = adot(am, anorm[j]);
        if (!std::isfinite(dv.err) || !std::isfinite(dm.err) ||
            std::fabs(dv.val) <= dv.err) {
          need_exact = true;
          break;
        }
        double lo = std::fabs(dv.val) - dv.err;
        double hi = std::fabs(dm.val) + dm.err;
        if (hi > 0) bound = std::min(bound, lo / (2 * hi));
      }
      Rat eps;
      if (!need_exact && bound > 1e-290) {
        eps = pow2_below(bound);
      } else {
        Rat b(1, 4);
        for (int j = 0; j < n; ++j) {
          if (vsigns[v][j] == 0) continue;
          Rat dv = rat_abs(dot(verts[v], circles[j].normal));
          Rat dm = rat_abs(dot(m, circles[j].normal));
          if (sgn(dm) > 0) {
            Rat cand = dv / (2 * dm);
            if (cand < b) b = cand;
          }
        }
        eps = pow2_below(std::max(1e-300, b.get_d() * 0.5));
        while (eps >= b) eps = eps * make_rat(1, 2);
      }

      Vec3 sample = verts[v] + m * eps;
      std::vector<int8_t> key(vsigns[v]);
      for (int i : through) {
        int sg = sgn(dot(m, circles[i].normal));
        if (sg == 0) throw GeomError(Errc::Internal, "sector direction on its own circle");
        key[i] = static_cast<int8_t>(sg);
      }

      auto it = cell_ix.find(key);
      if (it == cell_ix.end()) {
        DirectionCell c;
        c.sample = snap_direction(sample, circles, anorm, key);
        c.signs = key;
        c.bounding = {ra.circle, rb.circle};
        cell_ix.emplace(std::move(key), static_cast<int>(arr.cells.size()));
        arr.cells.push_back(std::move(c));
      } else {
        auto& b = arr.cells[it->second].bounding;
        b.push_back(ra.circle);
        b.push_back(rb.circle);
      }
    }
  }

  // Deterministic ids: sort by sign vector.
  std::sort(arr.cells.begin(), arr.cells.end(),
            [](const DirectionCell& a, const DirectionCell& b) { return a.signs < b.signs; });
  for (int i = 0; i < static_cast<int>(arr.cells.size()); ++i) {
    arr.cells[i].id = i;
    auto& b = arr.cells[i].bounding;
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  return arr;
}

std::vector<Vec3> sample_cell(const DirectionCell& cell,
                              const std::vector<GreatCircle>& circles, int n,
                              uint64_t seed,
                              const std::function<bool(const Vec3&)>& reject) {
  if (n < 1) throw GeomError(Errc::InputError, "sample_cell needs n >= 1");
  if (cell.signs.size() != circles.size())
    throw GeomError(Errc::InputError, "cell sign vector does not match circle list");

  // Scale the base point to magnitude ~1 so downstream dot products stay
  // small; a power of two keeps the representation compact.
  Vec3 base = cell.sample;
  double mx = std::max({std::fabs(rat_to_double(base.x)), std::fabs(rat_to_double(base.y)),
                        std::fabs(rat_to_double(base.z))});
  if (mx > 0 && std::isfinite(mx)) base = base * pow2_below(2.0 / mx);

  std::vector<Approx3> anorm;
  anorm.reserve(circles.size());
  for (const auto& c : circles)
    anorm.push_back(Approx3::of(c.normal.x, c.normal.y, c.normal.z));

  SplitMix64 rng(seed ^ (0xc2b2ae3d27d4eb4fULL * static_cast<uint64_t>(cell.id + 1)));
  std::vector<Vec3> out;
  out.reserve(n);
  long rejections = 0;
  const long budget = 10000L * n;
  Rat delta(1, 8);
  int consecutive = 0;
  while (static_cast<int>(out.size()) < n) {
    const long den = 1 << 20;
    Vec3 r{make_rat(rng.range(-den, den), den), make_rat(rng.range(-den, den), den),
           make_rat(rng.range(-den, den), den)};
    Vec3 cand = base + r * delta;
    bool ok = !cand.is_zero();
    if (ok) {
      Approx3 acand = Approx3::of(cand.x, cand.y, cand.z);
      for (size_t i = 0; i < circles.size() && ok; ++i) {
        int s;
        if (auto fs = approx_sign(adot(acand, anorm[i])))
          s = *fs;
        else
          s = sgn(dot(cand, circles[i].normal));
        ok = (s == cell.signs[i]);
      }
    }
    if (ok && reject && reject(cand)) ok = false;
    if (ok) {
      // integer directions keep every downstream gcd small
      out.push_back(primitive(cand));
      consecutive = 0;
    } else {
      if (++rejections > budget)
        throw SamplingExhaustedError(cell.id, "cell rejected 10000*n samples");
      if (++consecutive >= 64) {
        delta = delta * make_rat(1, 2);
        consecutive = 0;
      }
    }
  }
  return out;
}

ProjectionDegeneracy::ProjectionDegeneracy(const Polytope& p, const Polytope& q) {
  const Polytope* bodies[2] = {&p, &q};
  for (int b = 0; b < 2; ++b) {
    Body& body = bodies_[b];
    std::map<Vec3, int, Vec3Less> seen;
    for (const auto& e : bodies[b]->edges()) {
      Vec3 d = canonical_direction(bodies[b]->vertices()[e.v[1]] -
                                   bodies[b]->vertices()[e.v[0]]);
      if (!seen.count(d)) {
        seen.emplace(d, static_cast<int>(body.dirs.size()));
        body.dirs.push_back(d);
      }
    }
    const int m = static_cast<int>(body.dirs.size());
    for (const auto& d : body.dirs) body.adirs.push_back(Approx3::of(d.x, d.y, d.z));
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        body.pairs.emplace_back(i, j);
        Rat dd = dot(body.dirs[i], body.dirs[j]);
        body.apair_dot.push_back(Approx::of(dd));
        body.pair_dot.push_back(std::move(dd));
      }
  }
}

bool ProjectionDegeneracy::operator()(const Vec3& xi) const {
  Approx3 axi = Approx3::of(xi.x, xi.y, xi.z);
  Approx axi2 = adot(axi, axi);
  Rat xi2;
  bool have_xi2 = false;
  for (int b = 0; b < 2; ++b) {
    const Body& body = bodies_[b];
    std::vector<Approx> adx(body.dirs.size());
    for (size_t i = 0; i < body.dirs.size(); ++i) adx[i] = adot(body.adirs[i], axi);
    for (size_t k = 0; k < body.pairs.size(); ++k) {
      auto [i, j] = body.pairs[k];
      Approx expr = body.apair_dot[k] * axi2 - adx[i] * adx[j];
      auto s = approx_sign(expr);
      if (s && *s != 0) continue;
      if (!have_xi2) {
        xi2 = norm2(xi);
        have_xi2 = true;
      }
      Rat ex = body.pair_dot[k] * xi2 - dot(body.dirs[i], xi) * dot(body.dirs[j], xi);
      if (sgn(ex) == 0) return true;
    }
  }
  return false;
}

SectionDegeneracy::SectionDegeneracy(const Polytope& p, const Polytope& q) {
  if (!p.origin_interior() || !q.origin_interior())
    throw GeomError(Errc::OriginNotInterior, "sections need the origin strictly inside");
  bodies_[0].poly = &p;
  bodies_[1].poly = &q;
  for (auto& b : bodies_)
    for (const auto& v : b.poly->vertices()) b.averts.push_back(Approx3::of(v.x, v.y, v.z));
}

bool SectionDegeneracy::body_degenerate(const Body& b, const Vec3& xi) const {
  const Polytope& poly = *b.poly;
  Approx3 axi = Approx3::of(xi.x, xi.y, xi.z);

  const int nv = static_cast<int>(poly.vertices().size());
  std::vector<Approx> ad(nv);
  std::vector<int> sgns(nv);
  for (int i = 0; i < nv; ++i) {
    ad[i] = adot(b.averts[i], axi);
    if (auto s = approx_sign(ad[i]))
      sgns[i] = *s;
    else
      sgns[i] = sgn(dot(poly.vertices()[i], xi));
    if (sgns[i] == 0)
      throw GeomError(Errc::ExceptionalDirection, "direction hits a vertex");
  }

  // crossing points of the plane with the straddling edges
  struct Crossing {
    Approx3 pt;
    int va, vb;
    bool exact_done = false;
    Vec3 exact;
  };
  std::vector<Crossing> cr;
  for (const auto& e : poly.edges()) {
    if (sgns[e.v[0]] * sgns[e.v[1]] >= 0) continue;
    const Approx3& pa = b.averts[e.v[0]];
    const Approx3& pb = b.averts[e.v[1]];
    Approx t = ad[e.v[0]] / (ad[e.v[0]] - ad[e.v[1]]);
    Crossing c;
    c.pt = {pa.x + t * (pb.x - pa.x), pa.y + t * (pb.y - pa.y), pa.z + t * (pb.z - pa.z)};
    c.va = e.v[0];
    c.vb = e.v[1];
    cr.push_back(c);
  }

  auto exact_point = [&](Crossing& c) -> const Vec3& {
    if (!c.exact_done) {
      const Vec3& a = poly.vertices()[c.va];
      const Vec3& bb = poly.vertices()[c.vb];
      Rat sa = dot(a, xi), sb = dot(bb, xi);
      Rat t = sa / (sa - sb);
      c.exact = a + (bb - a) * t;
      c.exact_done = true;
    }
    return c.exact;
  };

  const int m = static_cast<int>(cr.size());
  for (int p0 = 0; p0 < m; ++p0)
    for (int q0 = 0; q0 < m; ++q0) {
      if (q0 == p0) continue;
      for (int r0 = q0 + 1; r0 < m; ++r0) {
        if (r0 == p0) continue;
        Approx3 dq{cr[q0].pt.x - cr[p0].pt.x, cr[q0].pt.y - cr[p0].pt.y,
                   cr[q0].pt.z - cr[p0].pt.z};
        Approx3 dr{cr[r0].pt.x - cr[p0].pt.x, cr[r0].pt.y - cr[p0].pt.y,
                   cr[r0].pt.z - cr[p0].pt.z};
        auto s = approx_sign(adot(dq, dr));
        if (s && *s != 0) continue;
        const Vec3& ep = exact_point(cr[p0]);
        const Vec3& eq = exact_point(cr[q0]);
        const Vec3& er = exact_point(cr[r0]);
        if (sgn(dot(eq - ep, er - ep)) == 0) return true;
      }
    }
  return false;
}

bool SectionDegeneracy::operator()(const Vec3& xi) const {
  return body_degenerate(bodies_[0], xi) || body_degenerate(bodies_[1], xi);
}

bool is_degenerate_direction(const Vec3& xi, const Polytope& p, const Polytope& q,
                             Mode mode) {
  if (xi.is_zero()) throw GeomError(Errc::ZeroDirection, "zero direction");
  if (mode == Mode::Projections) return ProjectionDegeneracy(p, q)(xi);
  return SectionDegeneracy(p, q)(xi);
}

}  // namespace projcong
