#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "projcong/congruence.hpp"
#include "projcong/direction_space.hpp"
#include "projcong/polytope.hpp"
#include "projcong/shadow.hpp"

namespace projcong {

// Polytope file format:
//   { "dim": 3, "vertices": [["p/q","p/q","p/q"], ...] }
// Coordinates are rational strings or JSON integers. Floating-point
// coordinates are rejected unless float_tol is given, in which case they
// are snapped to nearby rationals.
Polytope read_polytope_json(const nlohmann::json& j, std::optional<double> float_tol = {});
Polytope read_polytope_file(const std::string& path, std::optional<double> float_tol = {});
nlohmann::json polytope_to_json(const Polytope& p);

nlohmann::json vec3_to_json(const Vec3& v);
Vec3 vec3_from_json(const nlohmann::json& j, std::optional<double> float_tol = {});
nlohmann::json vec2_to_json(const Vec2& v);
Vec2 vec2_from_json(const nlohmann::json& j, std::optional<double> float_tol = {});
Rat rat_from_json(const nlohmann::json& j, std::optional<double> float_tol = {});

// PlanarBody round-trip. The reader rebuilds the frame from xi and checks
// the stored basis and the polygon invariants (>= 3 vertices, strictly
// convex, counterclockwise). Preimage entries may be null.
nlohmann::json planar_body_to_json(const PlanarBody& b);
PlanarBody read_planar_body_json(const nlohmann::json& j,
                                 std::optional<double> float_tol = {});
PlanarBody read_planar_body_file(const std::string& path,
                                 std::optional<double> float_tol = {});

nlohmann::json witnesses_to_json(const std::vector<CongruenceWitness>& ws);
nlohmann::json stratify_to_json(const Arrangement& arr, Mode mode);

}  // namespace projcong
