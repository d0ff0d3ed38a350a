#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "projcong/direction_space.hpp"
#include "test_util.hpp"

using namespace projcong;
using namespace projcong::testutil;

namespace {

std::vector<GreatCircle> circles_from_normals(const std::vector<Vec3>& ns) {
  std::vector<GreatCircle> out;
  for (size_t i = 0; i < ns.size(); ++i)
    out.push_back({canonical_direction(ns[i]),
                   {Provenance::Kind::FacetParallel, 0, static_cast<int>(i)}});
  return out;
}

}  // namespace

TEST_CASE("exceptional projection set counts") {
  Polytope cube = cube01();
  CHECK(exceptional_projection_set(cube, cube).size() == 3);
  Polytope oct = octahedron();
  CHECK(exceptional_projection_set(cube, oct).size() == 7);
  Polytope tet = tetra0e();
  CHECK(exceptional_projection_set(tet, tet).size() == 4);
}

TEST_CASE("exceptional section set counts") {
  Polytope cube = cube11();
  CHECK(exceptional_section_set(cube, cube).size() == 4);
  Polytope oct = octahedron();
  CHECK(exceptional_section_set(oct, oct).size() == 3);
  Polytope tet = tetra0e();  // vertex at the origin
  CHECK_THROWS_AS(exceptional_section_set(tet, tet), GeomError);
}

TEST_CASE("cells: octants, hemispheres, tetrahedral arrangement") {
  auto axes = circles_from_normals({{Rat(1), Rat(0), Rat(0)},
                                    {Rat(0), Rat(1), Rat(0)},
                                    {Rat(0), Rat(0), Rat(1)}});
  Arrangement a = build_arrangement(axes);
  CHECK(a.cells.size() == 8);
  CHECK(a.vertex_count == 6);
  CHECK(a.arc_count == 12);
  CHECK(a.euler() == 2);
  for (const auto& c : a.cells) {
    // sample reproduces its own sign vector
    for (size_t i = 0; i < axes.size(); ++i)
      CHECK(sgn(dot(c.sample, axes[i].normal)) == c.signs[i]);
  }

  auto one = circles_from_normals({{Rat(0), Rat(0), Rat(1)}});
  Arrangement h = build_arrangement(one);
  CHECK(h.cells.size() == 2);
  CHECK(h.euler() == 2);

  Polytope tet = tetra0e();
  auto tc = exceptional_projection_set(tet, tet);
  Arrangement t = build_arrangement(tc);
  CHECK(t.euler() == 2);
  CHECK(t.cells.size() == 14);
}

TEST_CASE("cells: antipodal closure and disjoint sign vectors") {
  Rng rng(5);
  Polytope p = random_polytope(rng, 6, 10);
  Polytope q = random_polytope(rng, 6, 10);
  Arrangement a = build_arrangement(exceptional_projection_set(p, q));
  CHECK(a.euler() == 2);
  std::set<std::vector<int8_t>> sigs;
  for (const auto& c : a.cells) sigs.insert(c.signs);
  CHECK(sigs.size() == a.cells.size());
  for (const auto& c : a.cells) {
    std::vector<int8_t> neg(c.signs);
    for (auto& s : neg) s = -s;
    CHECK(sigs.count(neg) == 1);
  }
}

TEST_CASE("sample_cell: inside, deterministic, n>=1") {
  auto axes = circles_from_normals({{Rat(1), Rat(0), Rat(0)},
                                    {Rat(0), Rat(1), Rat(0)},
                                    {Rat(0), Rat(0), Rat(1)}});
  Arrangement a = build_arrangement(axes);
  const DirectionCell* octant = nullptr;
  for (const auto& c : a.cells)
    if (c.signs == std::vector<int8_t>{1, 1, 1}) octant = &c;
  REQUIRE(octant != nullptr);
  auto xs = sample_cell(*octant, axes, 3, 7);
  CHECK(xs.size() == 3);
  for (const auto& x : xs) {
    CHECK(sgn(x.x) > 0);
    CHECK(sgn(x.y) > 0);
    CHECK(sgn(x.z) > 0);
  }
  auto again = sample_cell(*octant, axes, 3, 7);
  CHECK(xs == again);
  auto other = sample_cell(*octant, axes, 3, 8);
  CHECK(xs != other);
  CHECK_THROWS_AS(sample_cell(*octant, axes, 0, 7), GeomError);
}

TEST_CASE("geodesic convexity of cells (sampled)") {
  Rng rng(17);
  Polytope p = random_polytope(rng, 6, 9);
  auto circ = exceptional_projection_set(p, p);
  Arrangement a = build_arrangement(circ);
  int tried = 0;
  for (const auto& c : a.cells) {
    if (tried >= 4) break;
    ++tried;
    auto xs = sample_cell(c, circ, 2, 99);
    // walk the chord between the two samples; every interior point must
    // stay strictly on the cell's side of every circle
    for (int k = 1; k < 100; ++k) {
      Vec3 m = xs[0] * make_rat(100 - k, 100) + xs[1] * make_rat(k, 100);
      for (size_t i = 0; i < circ.size(); ++i)
        CHECK(sgn(dot(m, circ[i].normal)) == c.signs[i]);
    }
  }
}

TEST_CASE("is_degenerate_direction: projections examples") {
  Polytope cube = cube01();
  CHECK_FALSE(is_degenerate_direction({Rat(1), Rat(1), Rat(1)}, cube, cube,
                                      Mode::Projections));
  CHECK(is_degenerate_direction({Rat(1), Rat(0), Rat(1)}, cube, cube,
                                Mode::Projections));
}

TEST_CASE("is_degenerate_direction: sections right-angle fixture") {
  // prism over the right triangle {(-1,-1),(2,-1),(-1,2)}; the z=0 section
  // is that triangle, with its right angle at (-1,-1)
  std::vector<Vec3> pts;
  for (int z = -1; z <= 1; z += 2) {
    pts.push_back({Rat(-1), Rat(-1), Rat(z)});
    pts.push_back({Rat(2), Rat(-1), Rat(z)});
    pts.push_back({Rat(-1), Rat(2), Rat(z)});
  }
  Polytope prism = Polytope::hull(pts);
  REQUIRE(prism.origin_interior());
  CHECK(is_degenerate_direction({Rat(0), Rat(0), Rat(1)}, prism, prism, Mode::Sections));
  // a generic nearby direction is clean
  CHECK_FALSE(is_degenerate_direction({Rat(1, 17), Rat(1, 23), Rat(1)}, prism, prism,
                                      Mode::Sections));
}

TEST_CASE("degeneracy is rare on random directions") {
  // generic scalene simplex with no orthogonal edge pairs
  std::vector<Vec3> pts = {{Rat(0), Rat(0), Rat(0)},
                           {Rat(7), Rat(1), Rat(2)},
                           {Rat(1), Rat(6), Rat(3)},
                           {Rat(2), Rat(1), Rat(5)}};
  Polytope p = Polytope::hull(pts);
  ProjectionDegeneracy deg(p, p);
  Rng rng(123);
  int hits = 0;
  for (int t = 0; t < 10000; ++t)
    if (deg(random_direction(rng))) ++hits;
  CHECK(hits == 0);
}
