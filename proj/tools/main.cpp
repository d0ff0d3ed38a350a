// projcong: decides whether two convex 3-polytopes agree up to translation
// and point reflection from their 2D projection/section data, with exact
// certificates, plus the lower-level geometric subcommands.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "projcong/errors.hpp"
#include "projcong/json_io.hpp"
#include "projcong/pipeline.hpp"
#include "projcong/recovery.hpp"
#include "projcong/svg.hpp"

using namespace projcong;
using nlohmann::json;

namespace {

// exit codes: 0 positive verdict, 1 not congruent (incl. failed patching),
// 2 retryable sampling failure, 3 input error
constexpr int kExitPositive = 0;
constexpr int kExitNegative = 1;
constexpr int kExitRetry = 2;
constexpr int kExitInput = 3;

Vec3 parse_xi(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3)
    throw GeomError(Errc::InputError, "--xi wants three comma-separated rationals");
  return {rat_from_string(parts[0]), rat_from_string(parts[1]), rat_from_string(parts[2])};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw GeomError(Errc::InputError, "cannot write " + path);
  out << content;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeomError(Errc::InputError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw GeomError(Errc::InputError, path + ": " + e.what());
  }
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"congruence of convex 3-polytopes from projections and sections"};
  app.require_subcommand(1);

  std::string mode_str = "projections";
  std::string file_p, file_q, report_path, svg_path, xi_str;
  int samples = 8;
  std::string seed_str = "0";
  double float_tol = 0.0;
  int jobs = 0;

  auto add_float_tol = [&](CLI::App* cmd) {
    cmd->add_option("--float-tol", float_tol,
                    "accept float coordinates, snapped to rationals within this tolerance");
  };
  auto tol_opt = [&]() -> std::optional<double> {
    return float_tol > 0 ? std::optional<double>(float_tol) : std::nullopt;
  };
  auto parse_mode = [&]() {
    if (mode_str == "projections") return Mode::Projections;
    if (mode_str == "sections") return Mode::Sections;
    throw GeomError(Errc::InputError, "--mode must be projections or sections");
  };

  // decide
  auto* decide_cmd = app.add_subcommand("decide", "run the full decision pipeline");
  decide_cmd->add_option("--mode", mode_str, "projections|sections")->required();
  decide_cmd->add_option("P", file_p, "first polytope JSON")->required();
  decide_cmd->add_option("Q", file_q, "second polytope JSON")->required();
  decide_cmd->add_option("--samples", samples, "directions sampled per cell (>= 2)");
  decide_cmd->add_option("--seed", seed_str, "sampling seed");
  decide_cmd->add_option("--jobs", jobs, "worker threads (0 = auto)");
  decide_cmd->add_option("--report", report_path, "also write the JSON report here");
  add_float_tol(decide_cmd);

  // project / section
  auto* project_cmd = app.add_subcommand("project", "project a polytope onto xi-perp");
  project_cmd->add_option("P", file_p)->required();
  project_cmd->add_option("--xi", xi_str, "direction p,q,r (rationals)")->required();
  project_cmd->add_option("--svg", svg_path, "write an SVG plot");
  add_float_tol(project_cmd);

  auto* section_cmd = app.add_subcommand("section", "cut a polytope by xi-perp");
  section_cmd->add_option("P", file_p)->required();
  section_cmd->add_option("--xi", xi_str, "direction p,q,r (rationals)")->required();
  section_cmd->add_option("--svg", svg_path, "write an SVG plot");
  add_float_tol(section_cmd);

  // stratify
  auto* strat_cmd = app.add_subcommand("stratify", "exceptional circles and cells");
  strat_cmd->add_option("--mode", mode_str, "projections|sections")->required();
  strat_cmd->add_option("P", file_p)->required();
  strat_cmd->add_option("Q", file_q, "optional second polytope (defaults to P)");
  strat_cmd->add_option("--svg", svg_path, "write an SVG plot");
  add_float_tol(strat_cmd);

  // congruent
  auto* cong_cmd = app.add_subcommand("congruent", "planar congruence witnesses");
  cong_cmd->add_option("A", file_p, "first planar body JSON")->required();
  cong_cmd->add_option("B", file_q, "second planar body JSON")->required();
  add_float_tol(cong_cmd);

  // minkowski2d
  auto* mink_cmd = app.add_subcommand("minkowski2d",
                                      "rebuild a polygon from normals and lengths");
  mink_cmd->add_option("DATA", file_p, "JSON {normals, lengths}")->required();

  // classify-lines
  auto* lines_cmd = app.add_subcommand("classify-lines", "four-line classification");
  lines_cmd->add_option("DATA", file_p, "JSON {lines:[{point,dir} x4], dirs:[...]}")
      ->required();

  app.parse(argc, argv);

  if (*decide_cmd) {
    Config cfg;
    cfg.mode = parse_mode();
    cfg.samples_per_cell = samples;
    cfg.seed = std::stoull(seed_str);
    cfg.jobs = jobs;
    cfg.float_tol = tol_opt();
    Polytope p = read_polytope_file(file_p, cfg.float_tol);
    Polytope q = read_polytope_file(file_q, cfg.float_tol);
    Relation rel = decide(p, q, cfg);
    std::string report = relation_report(rel, cfg);
    std::cout << report;
    if (!report_path.empty()) write_file(report_path, report);
    return rel.kind == Relation::Kind::NotCongruent ? kExitNegative : kExitPositive;
  }

  if (*project_cmd || *section_cmd) {
    Polytope p = read_polytope_file(file_p, tol_opt());
    Vec3 xi = parse_xi(xi_str);
    PlanarBody body = *project_cmd ? project(p, xi) : section(p, xi);
    std::cout << planar_body_to_json(body).dump(2) << "\n";
    if (!svg_path.empty()) write_file(svg_path, planar_body_svg(body));
    return kExitPositive;
  }

  if (*strat_cmd) {
    Mode mode = parse_mode();
    Polytope p = read_polytope_file(file_p, tol_opt());
    Polytope q = file_q.empty() ? p : read_polytope_file(file_q, tol_opt());
    auto circles = mode == Mode::Projections ? exceptional_projection_set(p, q)
                                             : exceptional_section_set(p, q);
    Arrangement arr = build_arrangement(circles);
    std::cout << stratify_to_json(arr, mode).dump(2) << "\n";
    if (!svg_path.empty()) write_file(svg_path, arrangement_svg(arr));
    return kExitPositive;
  }

  if (*cong_cmd) {
    PlanarBody a = read_planar_body_file(file_p, tol_opt());
    PlanarBody b = read_planar_body_file(file_q, tol_opt());
    auto ws = congruence_witnesses(a, b);
    std::cout << witnesses_to_json(ws).dump(2) << "\n";
    return kExitPositive;
  }

  if (*mink_cmd) {
    json j = load_json(file_p);
    std::vector<Vec2> normals;
    std::vector<Rat> lengths;
    for (const auto& row : j.at("normals")) normals.push_back(vec2_from_json(row));
    for (const auto& v : j.at("lengths")) lengths.push_back(rat_from_json(v));
    PlanarBody body = minkowski_2d(normals, lengths);
    std::cout << planar_body_to_json(body).dump(2) << "\n";
    return kExitPositive;
  }

  if (*lines_cmd) {
    json j = load_json(file_p);
    std::vector<ParamLine> ls;
    for (const auto& row : j.at("lines"))
      ls.push_back(ParamLine::through(vec3_from_json(row.at("point")),
                                      vec3_from_json(row.at("dir"))));
    if (ls.size() != 4)
      throw GeomError(Errc::InputError, "classify-lines wants exactly four lines");
    std::vector<Vec3> dirs;
    for (const auto& row : j.at("dirs")) dirs.push_back(vec3_from_json(row));
    LinePairVerdict v = line_pair_classify(ls[0], ls[1], ls[2], ls[3], dirs);
    json out;
    out["schema_version"] = 1;
    switch (v.kind) {
      case LinePairVerdict::Case::ParallelTranslate:
        out["case"] = "parallel_translate";
        out["b"] = vec3_to_json(v.data);
        break;
      case LinePairVerdict::Case::ParallelSwap:
        out["case"] = "parallel_swap";
        out["c"] = vec3_to_json(v.data);
        break;
      case LinePairVerdict::Case::SignMatch:
        out["case"] = "sign_match";
        out["s1"] = v.s1;
        out["s2"] = v.s2;
        out["pairing"] = v.pairing == LinePairVerdict::Pairing::P13_24 ? "13-24" : "14-23";
        break;
      case LinePairVerdict::Case::Inconsistent:
        out["case"] = "inconsistent";
        out["witness"] = vec3_to_json(v.data);
        break;
    }
    std::cout << out.dump(2) << "\n";
    return kExitPositive;
  }

  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ParseError& e) {
    CLI::App dummy;
    int code = dummy.exit(e);
    return code == 0 ? 0 : kExitInput;
  } catch (const SamplingExhaustedError& e) {
    std::cerr << json{{"error", "sampling_exhausted"}, {"cell", e.cell_id},
                      {"message", e.what()}}
                     .dump(2)
              << "\n";
    return kExitRetry;
  } catch (const EmptyIntersectionError& e) {
    std::cerr << json{{"error", "empty_intersection"}, {"cell", e.cell_id},
                      {"message", e.what()}}
                     .dump(2)
              << "\n";
    return kExitRetry;
  } catch (const NoConsistentPatchError& e) {
    std::cerr << json{{"error", "no_consistent_patch"},
                      {"cells", {e.cell_a, e.cell_b}},
                      {"message", e.what()}}
                     .dump(2)
              << "\n";
    return kExitNegative;
  } catch (const GeomError& e) {
    std::cerr << json{{"error", errc_name(e.code())}, {"message", e.what()}}.dump(2)
              << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump(2) << "\n";
    return kExitInput;
  }
}
