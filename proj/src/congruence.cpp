#include "projcong/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "projcong/errors.hpp"

namespace projcong {

namespace {

int cmp_entry(const CodeEntry& a, const CodeEntry& b) {
  int c = cmp(a[0], b[0]);
  if (c != 0) return c;
  return cmp(a[1], b[1]);
}

// Per-edge code entries of a polygon traversal: (|e_i|^2, e_i . e_{i+1}),
// metric-exact.
std::vector<CodeEntry> code_entries(const Frame& fr, const std::vector<Vec2>& w) {
  const int m = static_cast<int>(w.size());
  std::vector<Vec2> e(m);
  for (int i = 0; i < m; ++i) e[i] = w[(i + 1) % m] - w[i];
  std::vector<CodeEntry> out(m);
  for (int i = 0; i < m; ++i)
    out[i] = {fr.metric_norm2(e[i]), fr.metric_dot(e[i], e[(i + 1) % m])};
  return out;
}

std::vector<CodeEntry> min_rotation(std::vector<CodeEntry> v) {
  const int m = static_cast<int>(v.size());
  int best = 0;
  for (int k = 1; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      int c = cmp_entry(v[(k + i) % m], v[(best + i) % m]);
      if (c < 0) {
        best = k;
        break;
      }
      if (c > 0) break;
    }
  }
  std::rotate(v.begin(), v.begin() + best, v.end());
  return v;
}

std::vector<Vec2> reversed(const std::vector<Vec2>& w) {
  return std::vector<Vec2>(w.rbegin(), w.rend());
}

// Orthonormal plane coordinates (doubles) of the polygon vertices.
std::vector<std::pair<double, double>> real_coords(const PlanarBody& a) {
  double rs = std::sqrt(rat_to_double(a.frame.s));
  double rt = std::sqrt(rat_to_double(a.frame.t));
  std::vector<std::pair<double, double>> out;
  out.reserve(a.vertices2d.size());
  for (const auto& w : a.vertices2d)
    out.emplace_back(rat_to_double(w.u) / rs, rat_to_double(w.v) / rt);
  return out;
}

Motion2D fit_motion(const PlanarBody& a, const PlanarBody& b,
                    const std::vector<int>& vmap, Orientation orient) {
  auto pa = real_coords(a);
  auto pb = real_coords(b);
  const int m = static_cast<int>(pa.size());
  // align edge 0 -> its image; complex arithmetic by hand
  double ax = pa[1].first - pa[0].first, ay = pa[1].second - pa[0].second;
  double bx = pb[vmap[1]].first - pb[vmap[0]].first,
         by = pb[vmap[1]].second - pb[vmap[0]].second;
  if (orient == Orientation::Reflected) ay = -ay;
  double den = ax * ax + ay * ay;
  double rx = (bx * ax + by * ay) / den, ry = (by * ax - bx * ay) / den;
  double rn = std::sqrt(rx * rx + ry * ry);
  rx /= rn;
  ry /= rn;
  Motion2D mo;
  if (orient == Orientation::Direct) {
    mo.m00 = rx; mo.m01 = -ry; mo.m10 = ry; mo.m11 = rx;
  } else {
    // rotation composed with reflection across the u-axis
    mo.m00 = rx; mo.m01 = ry; mo.m10 = ry; mo.m11 = -rx;
  }
  mo.tx = pb[vmap[0]].first - (mo.m00 * pa[0].first + mo.m01 * pa[0].second);
  mo.ty = pb[vmap[0]].second - (mo.m10 * pa[0].first + mo.m11 * pa[0].second);
  // reproduce every vertex to reporting precision
  double scale = 1.0;
  for (const auto& [x, y] : pb) scale = std::max({scale, std::fabs(x), std::fabs(y)});
  for (int i = 0; i < m; ++i) {
    double x = mo.m00 * pa[i].first + mo.m01 * pa[i].second + mo.tx;
    double y = mo.m10 * pa[i].first + mo.m11 * pa[i].second + mo.ty;
    if (std::fabs(x - pb[vmap[i]].first) > 1e-9 * scale ||
        std::fabs(y - pb[vmap[i]].second) > 1e-9 * scale)
      throw GeomError(Errc::Internal, "witness motion does not reproduce the match");
  }
  return mo;
}

// Exact check that the bijection preserves all pairwise squared distances.
bool distances_preserved(const PlanarBody& a, const PlanarBody& b,
                         const std::vector<int>& vmap) {
  const int m = static_cast<int>(a.vertices2d.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Rat da = a.frame.metric_norm2(a.vertices2d[j] - a.vertices2d[i]);
      Rat db = b.frame.metric_norm2(b.vertices2d[vmap[j]] - b.vertices2d[vmap[i]]);
      if (da != db) return false;
    }
  return true;
}

}  // namespace

CanonicalCode canonical_code(const PlanarBody& a) {
  if (a.vertices2d.size() < 3)
    throw GeomError(Errc::DegeneratePolygon, "canonical code needs >= 3 vertices");
  CanonicalCode cc;
  cc.direct = min_rotation(code_entries(a.frame, a.vertices2d));
  cc.reflected = min_rotation(code_entries(a.frame, reversed(a.vertices2d)));
  return cc;
}

namespace {

// Division-free code entries: true values scaled by the frame factor s*t.
// Codes from different frames compare after cross-multiplication, so the
// matcher pre-scales each side by the other's factor once.
std::vector<CodeEntry> scaled_entries(const Frame& fr, const std::vector<Vec2>& w,
                                      const Rat& other_factor) {
  const int m = static_cast<int>(w.size());
  std::vector<Vec2> e(m);
  for (int i = 0; i < m; ++i) e[i] = w[(i + 1) % m] - w[i];
  auto scaled_dot = [&](const Vec2& x, const Vec2& y) -> Rat {
    // explicit Rat: a deduced gmpxx expression template would dangle
    return (x.u * y.u * fr.t + x.v * y.v * fr.s) * other_factor;
  };
  std::vector<CodeEntry> out(m);
  for (int i = 0; i < m; ++i)
    out[i] = {scaled_dot(e[i], e[i]), scaled_dot(e[i], e[(i + 1) % m])};
  return out;
}

}  // namespace

std::vector<CongruenceWitness> congruence_witnesses(const PlanarBody& a,
                                                    const PlanarBody& b,
                                                    bool verify_distances) {
  if (a.vertices2d.size() < 3 || b.vertices2d.size() < 3)
    throw GeomError(Errc::DegeneratePolygon, "witness search needs >= 3 vertices");
  std::vector<CongruenceWitness> out;
  const int m = static_cast<int>(a.vertices2d.size());
  if (static_cast<int>(b.vertices2d.size()) != m) return out;

  Rat fa = a.frame.s * a.frame.t;
  Rat fb = b.frame.s * b.frame.t;
  std::vector<CodeEntry> ca = scaled_entries(a.frame, a.vertices2d, fb);
  std::vector<CodeEntry> cb = scaled_entries(b.frame, b.vertices2d, fa);
  std::vector<CodeEntry> cbr = scaled_entries(b.frame, reversed(b.vertices2d), fa);

  auto try_offsets = [&](const std::vector<CodeEntry>& target, Orientation orient) {
    for (int k = 0; k < m; ++k) {
      bool match = true;
      for (int i = 0; i < m && match; ++i)
        match = cmp_entry(ca[i], target[(i + k) % m]) == 0;
      if (!match) continue;
      CongruenceWitness w;
      w.orientation = orient;
      w.vertex_map.resize(m);
      for (int i = 0; i < m; ++i) {
        int j = (i + k) % m;
        // reversed traversal index j corresponds to original index m-1-j
        w.vertex_map[i] = orient == Orientation::Direct ? j : (m - 1 - j);
      }
      if (verify_distances && !distances_preserved(a, b, w.vertex_map))
        throw GeomError(Errc::Internal, "code match without distance preservation");
      w.motion = fit_motion(a, b, w.vertex_map, orient);
      out.push_back(std::move(w));
    }
  };
  try_offsets(cb, Orientation::Direct);
  try_offsets(cbr, Orientation::Reflected);
  return out;
}

std::vector<StablePermutation> stable_permutation(const Polytope& p, const Polytope& q,
                                                  const DirectionCell& cell, Mode mode,
                                                  const std::vector<Vec3>& samples) {
  if (samples.size() < 2)
    throw GeomError(Errc::InputError, "stable_permutation needs >= 2 samples");

  using Sigma = std::pair<Orientation, std::vector<std::pair<int, int>>>;
  std::set<Sigma> surviving;
  bool first = true;
  std::vector<int> feature_domain;

  for (const Vec3& xi : samples) {
    PlanarBody a = mode == Mode::Projections ? project(p, xi) : section(p, xi);
    PlanarBody b = mode == Mode::Projections ? project(q, xi) : section(q, xi);

    std::vector<int> domain;
    for (const auto& tag : a.preimage) domain.push_back(tag.feature);
    std::sort(domain.begin(), domain.end());
    if (first)
      feature_domain = domain;
    else if (domain != feature_domain)
      throw GeomError(Errc::Internal,
                      "feature set varies inside one cell (should be constant)");

    std::set<Sigma> here;
    for (const auto& w : congruence_witnesses(a, b)) {
      std::vector<std::pair<int, int>> sig;
      sig.reserve(a.preimage.size());
      for (size_t i = 0; i < a.preimage.size(); ++i)
        sig.emplace_back(a.preimage[i].feature, b.preimage[w.vertex_map[i]].feature);
      std::sort(sig.begin(), sig.end());
      here.emplace(w.orientation, std::move(sig));
    }
    if (first) {
      surviving = std::move(here);
      first = false;
    } else {
      std::set<Sigma> keep;
      for (const auto& s : surviving)
        if (here.count(s)) keep.insert(s);
      surviving = std::move(keep);
    }
    if (surviving.empty())
      throw EmptyIntersectionError(cell.id,
                                   "no feature bijection survives every sample");
  }

  std::vector<StablePermutation> out;
  for (const auto& [orient, sig] : surviving)
    out.push_back({sig, orient, static_cast<int>(samples.size())});
  return out;
}

}  // namespace projcong
