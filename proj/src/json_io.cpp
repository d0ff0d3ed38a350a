#include "projcong/json_io.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "projcong/errors.hpp"

namespace projcong {

using nlohmann::json;

Rat rat_from_json(const json& j, std::optional<double> float_tol) {
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<int64_t>()));
  if (j.is_number_float()) {
    if (!float_tol)
      throw GeomError(Errc::InputError,
                      "float coordinate without --float-tol: " + j.dump());
    return rat_from_double(j.get<double>(), *float_tol);
  }
  throw GeomError(Errc::InputError, "expected rational, got " + j.dump());
}

Vec3 vec3_from_json(const json& j, std::optional<double> float_tol) {
  if (!j.is_array() || j.size() != 3)
    throw GeomError(Errc::InputError, "expected 3-vector, got " + j.dump());
  return {rat_from_json(j[0], float_tol), rat_from_json(j[1], float_tol),
          rat_from_json(j[2], float_tol)};
}

Vec2 vec2_from_json(const json& j, std::optional<double> float_tol) {
  if (!j.is_array() || j.size() != 2)
    throw GeomError(Errc::InputError, "expected 2-vector, got " + j.dump());
  return {rat_from_json(j[0], float_tol), rat_from_json(j[1], float_tol)};
}

json vec3_to_json(const Vec3& v) {
  return json::array({rat_to_string(v.x), rat_to_string(v.y), rat_to_string(v.z)});
}

json vec2_to_json(const Vec2& v) {
  return json::array({rat_to_string(v.u), rat_to_string(v.v)});
}

Polytope read_polytope_json(const json& j, std::optional<double> float_tol) {
  if (!j.is_object()) throw GeomError(Errc::InputError, "polytope file must be an object");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<int>() != 3)
    throw GeomError(Errc::InputError, "polytope file must declare \"dim\": 3");
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw GeomError(Errc::InputError, "polytope file must list \"vertices\"");
  std::vector<Vec3> pts;
  for (const auto& row : j["vertices"]) pts.push_back(vec3_from_json(row, float_tol));
  return Polytope::hull(pts);
}

Polytope read_polytope_file(const std::string& path, std::optional<double> float_tol) {
  std::ifstream in(path);
  if (!in) throw GeomError(Errc::InputError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw GeomError(Errc::InputError, path + ": " + e.what());
  }
  return read_polytope_json(j, float_tol);
}

json polytope_to_json(const Polytope& p) {
  json j;
  j["dim"] = 3;
  json verts = json::array();
  for (const auto& v : p.vertices()) verts.push_back(vec3_to_json(v));
  j["vertices"] = verts;
  return j;
}

json planar_body_to_json(const PlanarBody& b) {
  json j;
  j["schema_version"] = 1;
  json fr;
  fr["xi"] = vec3_to_json(b.frame.xi);
  fr["basis"] = json::array({vec3_to_json(b.frame.b1), vec3_to_json(b.frame.b2)});
  j["frame"] = fr;
  json metric;
  metric["s"] = rat_to_string(b.frame.s);
  metric["t"] = rat_to_string(b.frame.t);
  j["metric"] = metric;
  json verts = json::array();
  for (const auto& w : b.vertices2d) verts.push_back(vec2_to_json(w));
  j["vertices"] = verts;
  json pre = json::array();
  for (const auto& tag : b.preimage) {
    switch (tag.kind) {
      case Preimage::Kind::VertexOf:
        pre.push_back(json{{"kind", "vertex"}, {"id", tag.feature}});
        break;
      case Preimage::Kind::OnEdge:
        pre.push_back(json{{"kind", "edge"}, {"id", tag.feature}, {"t", rat_to_string(tag.t)}});
        break;
      case Preimage::Kind::Synthetic:
        pre.push_back(nullptr);
        break;
    }
  }
  j["preimage"] = pre;
  return j;
}

PlanarBody read_planar_body_json(const json& j, std::optional<double> float_tol) {
  if (!j.is_object() || !j.contains("frame") || !j.contains("vertices"))
    throw GeomError(Errc::InputError, "planar body needs \"frame\" and \"vertices\"");
  Vec3 xi = vec3_from_json(j["frame"].at("xi"), float_tol);
  PlanarBody b;
  b.frame = frame(xi);
  if (j["frame"].contains("basis")) {
    Vec3 b1 = vec3_from_json(j["frame"]["basis"].at(0), float_tol);
    Vec3 b2 = vec3_from_json(j["frame"]["basis"].at(1), float_tol);
    if (b1 != b.frame.b1 || b2 != b.frame.b2)
      throw GeomError(Errc::InputError, "stored basis is not the canonical frame of xi");
  }
  for (const auto& row : j["vertices"])
    b.vertices2d.push_back(vec2_from_json(row, float_tol));
  const int m = static_cast<int>(b.vertices2d.size());
  if (m < 3) throw GeomError(Errc::DegeneratePolygon, "planar body needs >= 3 vertices");
  for (int i = 0; i < m; ++i) {
    Vec2 a = b.vertices2d[(i + 1) % m] - b.vertices2d[i];
    Vec2 c = b.vertices2d[(i + 2) % m] - b.vertices2d[(i + 1) % m];
    if (sgn(cross2(a, c)) <= 0)
      throw GeomError(Errc::InputError, "vertices must be strictly convex ccw");
  }
  if (j.contains("preimage")) {
    for (const auto& tag : j["preimage"]) {
      if (tag.is_null()) {
        b.preimage.push_back(Preimage::synthetic());
      } else if (tag.at("kind") == "vertex") {
        b.preimage.push_back(Preimage::vertex(tag.at("id").get<int>()));
      } else if (tag.at("kind") == "edge") {
        b.preimage.push_back(
            Preimage::on_edge(tag.at("id").get<int>(), rat_from_json(tag.at("t"))));
      } else {
        throw GeomError(Errc::InputError, "bad preimage tag");
      }
    }
    if (b.preimage.size() != b.vertices2d.size())
      throw GeomError(Errc::InputError, "preimage list must match vertices");
  } else {
    b.preimage.assign(b.vertices2d.size(), Preimage::synthetic());
  }
  return b;
}

PlanarBody read_planar_body_file(const std::string& path, std::optional<double> float_tol) {
  std::ifstream in(path);
  if (!in) throw GeomError(Errc::InputError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw GeomError(Errc::InputError, path + ": " + e.what());
  }
  return read_planar_body_json(j, float_tol);
}

json witnesses_to_json(const std::vector<CongruenceWitness>& ws) {
  json j;
  j["schema_version"] = 1;
  j["congruent"] = !ws.empty();
  json arr = json::array();
  for (const auto& w : ws) {
    json wj;
    wj["orientation"] = w.orientation == Orientation::Direct ? "direct" : "reflected";
    wj["vertex_map"] = w.vertex_map;
    wj["motion"] = json{{"matrix", {{w.motion.m00, w.motion.m01}, {w.motion.m10, w.motion.m11}}},
                        {"translation", {w.motion.tx, w.motion.ty}}};
    arr.push_back(wj);
  }
  j["witnesses"] = arr;
  return j;
}

json stratify_to_json(const Arrangement& arr, Mode mode) {
  json j;
  j["schema_version"] = 1;
  j["mode"] = mode == Mode::Projections ? "projections" : "sections";
  json circles = json::array();
  for (const auto& c : arr.circles) {
    json cj;
    cj["normal"] = vec3_to_json(c.normal);
    cj["provenance"] =
        json{{"kind", c.prov.kind == Provenance::Kind::FacetParallel ? "facet_parallel"
                                                                     : "vertex_perp"},
             {"body", c.prov.body},
             {"feature", c.prov.feature}};
    circles.push_back(cj);
  }
  j["circles"] = circles;
  json cells = json::array();
  for (const auto& c : arr.cells) {
    json cj;
    cj["id"] = c.id;
    cj["sample_point"] = vec3_to_json(c.sample);
    std::string sv;
    for (int8_t s : c.signs) sv += s > 0 ? '+' : '-';
    cj["sign_vector"] = sv;
    cj["bounding_circles"] = c.bounding;
    cells.push_back(cj);
  }
  j["cells"] = cells;
  j["euler"] = json{{"V", arr.vertex_count}, {"E", arr.arc_count},
                    {"F", static_cast<long>(arr.cells.size())}};
  return j;
}

}  // namespace projcong
