#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "projcong/pipeline.hpp"
#include "test_util.hpp"

using namespace projcong;
using namespace projcong::testutil;

TEST_CASE("decide: reflected translate of a scalene simplex (projections)") {
  Polytope p = scalene_simplex().translated({Rat(-1, 4), Rat(-1, 4), Rat(-1, 4)});
  Vec3 b{Rat(1), Rat(2), Rat(3)};
  Polytope q = p.negated().translated(b);
  Config cfg;
  cfg.mode = Mode::Projections;
  cfg.seed = 42;
  Relation rel = decide(p, q, cfg);
  CHECK(rel.kind == Relation::Kind::ReflectTranslate);
  CHECK(rel.b == b);
  CHECK(verify(p, q, rel));
}

TEST_CASE("decide: plain translate (projections)") {
  Rng rng(201);
  Polytope p = random_polytope(rng, 6, 9);
  Vec3 b{rng.rat(-20, 20), rng.rat(-20, 20), rng.rat(-20, 20)};
  Polytope q = p.translated(b);
  Config cfg;
  cfg.mode = Mode::Projections;
  cfg.seed = 7;
  Relation rel = decide(p, q, cfg);
  CHECK(rel.kind == Relation::Kind::Translate);
  CHECK(rel.b == b);
}

TEST_CASE("decide: cube sections give Identity (tie-break +)") {
  Polytope cube = cube11();
  Config cfg;
  cfg.mode = Mode::Sections;
  cfg.seed = 5;
  Relation rel = decide(cube, cube, cfg);
  CHECK(rel.kind == Relation::Kind::Identity);
  CHECK(rel.b.is_zero());
  CHECK(verify(cube, cube, rel));
}

TEST_CASE("decide: reflection in sections mode") {
  Rng rng(203);
  Polytope p = random_polytope_origin(rng, 6, 9);
  Polytope q = p.negated();
  Config cfg;
  cfg.mode = Mode::Sections;
  cfg.seed = 11;
  Relation rel = decide(p, q, cfg);
  // a generic p is not centrally symmetric, so the answer is Reflection
  CHECK(rel.kind == Relation::Kind::Reflection);
  CHECK(verify(p, q, rel));
}

TEST_CASE("decide: rotated simplex is NotCongruent with a live witness") {
  Polytope p = scalene_simplex();
  std::vector<Vec3> rot;
  for (const auto& v : p.vertices())
    rot.push_back({Rat(3, 5) * v.x - Rat(4, 5) * v.y, Rat(4, 5) * v.x + Rat(3, 5) * v.y, v.z});
  Polytope q = Polytope::hull(rot);
  Config cfg;
  cfg.mode = Mode::Projections;
  cfg.seed = 3;
  Relation rel = decide(p, q, cfg);
  CHECK(rel.kind == Relation::Kind::NotCongruent);
  // re-check the witness from scratch
  PlanarBody a = project(p, rel.witness);
  PlanarBody b = project(q, rel.witness);
  CHECK(congruence_witnesses(a, b).empty());
  CHECK_THROWS_AS(verify(p, q, rel), GeomError);
}

TEST_CASE("verify: examples") {
  Rng rng(207);
  Polytope p = random_polytope(rng, 6, 9);
  Vec3 b{Rat(1), Rat(2), Rat(3)};
  Relation tr;
  tr.kind = Relation::Kind::Translate;
  tr.b = b;
  CHECK(verify(p, p.translated(b), tr));
  Relation id0;
  id0.kind = Relation::Kind::Translate;
  id0.b = Vec3{};
  CHECK_FALSE(verify(p, p.negated(), id0));
  Relation refl;
  refl.kind = Relation::Kind::Reflection;
  Polytope cube = cube11();
  CHECK(verify(cube, cube, refl));  // cube = -cube
}

TEST_CASE("decide: report is byte-identical across jobs 1 and 4") {
  Rng rng(209);
  Polytope p = random_polytope(rng, 6, 9);
  Polytope q = p.translated({Rat(3), Rat(-1), Rat(2)});
  Config cfg;
  cfg.mode = Mode::Projections;
  cfg.seed = 99;
  cfg.jobs = 1;
  Relation r1 = decide(p, q, cfg);
  std::string rep1 = relation_report(r1, cfg);
  cfg.jobs = 4;
  Relation r4 = decide(p, q, cfg);
  std::string rep4 = relation_report(r4, cfg);
  CHECK(rep1 == rep4);
  CHECK(rep1.find("\"kind\": \"translate\"") != std::string::npos);
}

TEST_CASE("decide: soundness fuzz at small scale") {
  Rng rng(211);
  for (int t = 0; t < 6; ++t) {
    Polytope p = random_polytope(rng, 6, 8);
    Vec3 b{rng.rat(-10, 10), rng.rat(-10, 10), rng.rat(-10, 10)};
    bool reflect = rng.range(0, 1) == 1;
    Polytope q = reflect ? p.negated().translated(b) : p.translated(b);
    Config cfg;
    cfg.mode = Mode::Projections;
    cfg.seed = rng.next();
    Relation rel = decide(p, q, cfg);
    CHECK(verify(p, q, rel));
    if (reflect)
      CHECK(rel.kind == Relation::Kind::ReflectTranslate);
    else
      CHECK(rel.kind == Relation::Kind::Translate);
    CHECK(rel.b == b);
  }
}
