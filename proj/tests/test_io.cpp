#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "projcong/json_io.hpp"
#include "test_util.hpp"

using namespace projcong;
using namespace projcong::testutil;
using nlohmann::json;

TEST_CASE("rational parsing and formatting") {
  CHECK(rat_from_string("3/6") == Rat(1, 2));
  CHECK(rat_from_string("-4/2") == Rat(-2));
  CHECK(rat_to_string(Rat(-7, 3)) == "-7/3");
  CHECK(rat_to_string(Rat(5)) == "5");
  CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("x"), std::invalid_argument);
  CHECK_THROWS_AS(rat_from_string("1.5"), std::invalid_argument);
}

TEST_CASE("float snapping") {
  CHECK(rat_from_double(0.5, 1e-9) == Rat(1, 2));
  CHECK(rat_from_double(1.0 / 3.0, 1e-9) == Rat(1, 3));
  CHECK(rat_from_double(-0.25, 1e-9) == Rat(-1, 4));
  Rat pi = rat_from_double(3.14159265358979, 1e-6);
  CHECK(std::fabs(rat_to_double(pi) - 3.14159265358979) <= 1e-6);
}

TEST_CASE("polytope json round trip and validation") {
  json j = {{"dim", 3},
            {"vertices",
             {{"0", "0", "0"}, {"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"},
              {1, 1, 1}}}};
  Polytope p = read_polytope_json(j);
  CHECK(p.vertices().size() == 5);
  json out = polytope_to_json(p);
  Polytope q = read_polytope_json(out);
  CHECK(p.same_vertices(q));

  json bad_dim = {{"dim", 4}, {"vertices", json::array()}};
  CHECK_THROWS_AS(read_polytope_json(bad_dim), GeomError);

  json with_float = {{"dim", 3},
                     {"vertices",
                      {{"0", "0", "0"}, {"1", "0", "0"}, {"0", "1", "0"},
                       {0.5, "0", "1"}}}};
  CHECK_THROWS_AS(read_polytope_json(with_float), GeomError);
  Polytope pf = read_polytope_json(with_float, 1e-9);
  CHECK(pf.vertices().size() == 4);
  Vec3 snapped{Rat(1, 2), Rat(0), Rat(1)};
  CHECK(std::find(pf.vertices().begin(), pf.vertices().end(), snapped) !=
        pf.vertices().end());
}

TEST_CASE("planar body json round trip") {
  Polytope cube = cube01();
  PlanarBody pb = project(cube, {Rat(1), Rat(1), Rat(1)});
  json j = planar_body_to_json(pb);
  PlanarBody back = read_planar_body_json(j);
  CHECK(back.frame == pb.frame);
  CHECK(back.vertices2d == pb.vertices2d);
  REQUIRE(back.preimage.size() == pb.preimage.size());
  for (size_t i = 0; i < pb.preimage.size(); ++i) {
    CHECK(back.preimage[i].kind == pb.preimage[i].kind);
    CHECK(back.preimage[i].feature == pb.preimage[i].feature);
  }

  // tampering with the basis is rejected
  json tampered = j;
  tampered["frame"]["basis"][0] = json::array({"0", "1", "0"});
  CHECK_THROWS_AS(read_planar_body_json(tampered), GeomError);

  // non-convex vertex lists are rejected
  json nonconvex = j;
  nonconvex["vertices"] = {{"0", "0"}, {"2", "0"}, {"1", "1"}, {"2", "2"}, {"0", "2"}};
  nonconvex["preimage"] = {nullptr, nullptr, nullptr, nullptr, nullptr};
  CHECK_THROWS_AS(read_planar_body_json(nonconvex), GeomError);
}

TEST_CASE("section planar body json keeps edge tags") {
  Polytope cube = cube11();
  PlanarBody pb = section(cube, {Rat(1), Rat(1), Rat(1)});
  json j = planar_body_to_json(pb);
  PlanarBody back = read_planar_body_json(j);
  for (size_t i = 0; i < pb.preimage.size(); ++i) {
    CHECK(back.preimage[i].kind == Preimage::Kind::OnEdge);
    CHECK(back.preimage[i].t == pb.preimage[i].t);
  }
}
