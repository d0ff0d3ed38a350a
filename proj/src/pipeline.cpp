#include "projcong/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <set>
#include <thread>

#include <nlohmann/json.hpp>

#include "projcong/errors.hpp"
#include "projcong/json_io.hpp"

namespace projcong {

namespace {

struct Candidate {
  int sign;
  Vec3 b;
  bool operator<(const Candidate& o) const {
    if (sign != o.sign) return sign > o.sign;  // + first
    return lex_less(b, o.b);
  }
};

struct CellResult {
  CellEvidence evidence;
  std::optional<Vec3> witness_free_sample;  // a direction with no congruence
  bool has_record = false;
  PatchRecord record;
  bool no_candidate = false;
};

// Candidates from one surviving bijection, projections mode: a constant
// vertex difference pins Q = P + b, a constant vertex sum pins Q = -P + b.
// The 2D witness orientation decides neither (a point reflection of the
// plane is a rotation), so both tests run on every sigma.
void projection_candidates(const Polytope& p, const Polytope& q,
                           const StablePermutation& sp, std::set<Candidate>& out) {
  const auto& sig = sp.sigma;
  Vec3 diff = q.vertices()[sig[0].second] - p.vertices()[sig[0].first];
  bool diff_ok = true;
  Vec3 sum = q.vertices()[sig[0].second] + p.vertices()[sig[0].first];
  bool sum_ok = true;
  for (const auto& [from, to] : sig) {
    if (q.vertices()[to] - p.vertices()[from] != diff) diff_ok = false;
    if (q.vertices()[to] + p.vertices()[from] != sum) sum_ok = false;
    if (!diff_ok && !sum_ok) break;
  }
  if (diff_ok) out.insert({+1, diff});
  if (sum_ok) out.insert({-1, sum});
}

// Candidates from one surviving bijection, sections mode: the lines through
// the matched edges must coincide (sign +) or be reflections in the origin
// (sign -), uniformly. The first pair goes through the four-line classifier;
// the rest is exact propagation.
void section_candidates(const Polytope& p, const Polytope& q,
                        const StablePermutation& sp, const std::vector<Vec3>& samples,
                        std::set<Candidate>& out) {
  const auto& sig = sp.sigma;
  const int k = static_cast<int>(sig.size());
  std::vector<ParamLine> lp(k), lq(k);
  for (int i = 0; i < k; ++i) {
    const Edge& ep = p.edges()[sig[i].first];
    const Edge& eq = q.edges()[sig[i].second];
    lp[i] = ParamLine::through(p.vertices()[ep.v[0]],
                               p.vertices()[ep.v[1]] - p.vertices()[ep.v[0]]);
    lq[i] = ParamLine::through(q.vertices()[eq.v[0]],
                               q.vertices()[eq.v[1]] - q.vertices()[eq.v[0]]);
  }

  int pi = -1, pj = -1;
  for (int i = 0; i < k && pi < 0; ++i)
    for (int j = i + 1; j < k; ++j)
      if (lp[i].a != lp[j].a) {
        pi = i;
        pj = j;
        break;
      }

  bool allow_plus = false, allow_minus = false;
  if (pi >= 0) {
    LinePairVerdict v = line_pair_classify(lp[pi], lp[pj], lq[pi], lq[pj], samples);
    if (v.kind == LinePairVerdict::Case::SignMatch &&
        v.pairing == LinePairVerdict::Pairing::P13_24 && v.s1 == v.s2) {
      allow_plus = v.s1 > 0;
      allow_minus = v.s1 < 0;
    }
  } else {
    // all lines parallel; the per-pair relation must be a common translation
    // or a common reflection-translation, and only the zero shift survives
    LinePairVerdict v = line_pair_classify(lp[0], lp[1], lq[0], lq[1], samples);
    if (v.kind == LinePairVerdict::Case::ParallelTranslate && v.data.is_zero())
      allow_plus = true;
    if (v.kind == LinePairVerdict::Case::ParallelSwap && v.data.is_zero())
      allow_minus = true;
    // a cell of parallel crossed edges still has non-right section angles;
    // the sampler already excluded the bad set, assert on the first sample
    if (k >= 3 && !samples.empty() && right_angle_guard(lp[0], lp[1], lp[2], samples[0]))
      throw GeomError(Errc::Internal, "right-angle sample slipped through rejection");
  }

  if (allow_plus) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) ok = lq[i] == lp[i];
    if (ok) out.insert({+1, Vec3{}});
  }
  if (allow_minus) {
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) ok = lq[i] == lp[i].reflected();
    if (ok) out.insert({-1, Vec3{}});
  }
}

// Hot-path polygon codes, computed straight from the 3D feature data. Both
// bodies are evaluated at the same xi, so entries share the denominator
// |xi|^2 (projections) or 1 (sections) and compare directly. Projected edge
// lengths and scalar products come from the identity
//   (w - (w.xi/|xi|^2) xi) . (w' - ...) = (w.w' |xi|^2 - (w.xi)(w'.xi)) / |xi|^2
// on the small 3D vertex differences w.
using FastEntry = std::array<Rat, 2>;

std::vector<FastEntry> fast_code(const std::vector<Vec3>& pts, const Vec3& xi,
                                 const Rat& xi2, bool projected) {
  const int m = static_cast<int>(pts.size());
  std::vector<Vec3> e(m);
  for (int i = 0; i < m; ++i) e[i] = pts[(i + 1) % m] - pts[i];
  std::vector<FastEntry> out(m);
  if (projected) {
    std::vector<Rat> exi(m);
    for (int i = 0; i < m; ++i) exi[i] = dot(e[i], xi);
    for (int i = 0; i < m; ++i) {
      int j = (i + 1) % m;
      out[i] = {norm2(e[i]) * xi2 - exi[i] * exi[i],
                dot(e[i], e[j]) * xi2 - exi[i] * exi[j]};
    }
  } else {
    for (int i = 0; i < m; ++i)
      out[i] = {norm2(e[i]), dot(e[i], e[(i + 1) % m])};
  }
  return out;
}

// Code of the reversed traversal, by index bookkeeping: reversed edges are
// the negated originals in reverse order, and the scalar products are
// symmetric.
std::vector<FastEntry> reversed_code(const std::vector<FastEntry>& c) {
  const int m = static_cast<int>(c.size());
  std::vector<FastEntry> out(m);
  for (int j = 0; j < m; ++j)
    out[j] = {c[((m - 2 - j) % m + m) % m][0], c[((m - 3 - j) % m + m) % m][1]};
  return out;
}

struct Alignment {
  Orientation orient;
  int offset;
};

std::vector<Alignment> code_alignments(const std::vector<FastEntry>& ca,
                                       const std::vector<FastEntry>& cb,
                                       const std::vector<FastEntry>& cbrev) {
  const int m = static_cast<int>(ca.size());
  std::vector<Alignment> out;
  auto scan = [&](const std::vector<FastEntry>& target, Orientation orient) {
    for (int k = 0; k < m; ++k) {
      bool match = true;
      for (int i = 0; i < m && match; ++i) {
        const FastEntry& x = ca[i];
        const FastEntry& y = target[(i + k) % m];
        match = x[0] == y[0] && x[1] == y[1];
      }
      if (match) out.push_back({orient, k});
    }
  };
  scan(cb, Orientation::Direct);
  scan(cbrev, Orientation::Reflected);
  return out;
}

Relation decide_impl(const Polytope& p, const Polytope& q, const Config& cfg) {
  const bool proj = cfg.mode == Mode::Projections;
  if (!proj && (!p.origin_interior() || !q.origin_interior()))
    throw GeomError(Errc::OriginNotInterior, "sections need the origin strictly inside");

  std::vector<GreatCircle> circles =
      proj ? exceptional_projection_set(p, q) : exceptional_section_set(p, q);
  Arrangement arr = build_arrangement(circles);

  std::optional<ProjectionDegeneracy> pdeg;
  std::optional<SectionDegeneracy> sdeg;
  if (proj)
    pdeg.emplace(p, q);
  else
    sdeg.emplace(p, q);
  std::function<bool(const Vec3&)> reject = [&](const Vec3& xi) {
    return proj ? (*pdeg)(xi) : (*sdeg)(xi);
  };

  const int ncells = static_cast<int>(arr.cells.size());
  std::vector<CellResult> results(ncells);
  std::vector<std::exception_ptr> errors(ncells);

  auto run_cell = [&](int ci) {
    const DirectionCell& cell = arr.cells[ci];
    CellResult& res = results[ci];
    res.evidence.cell_id = cell.id;

    std::vector<Vec3> samples =
        sample_cell(cell, circles, cfg.samples_per_cell, cfg.seed, reject);

    // The combinatorial structure (silhouette corners / crossed edges, in
    // cyclic order) is constant inside one cell, so the full polygon
    // construction runs once; later samples only evaluate codes on the
    // cached feature cycle. Negative evidence is always re-derived through
    // the full path before it counts.
    std::vector<int> feat_p, feat_q;
    {
      PlanarBody a0 = proj ? project(p, samples[0]) : section(p, samples[0]);
      PlanarBody b0 = proj ? project(q, samples[0]) : section(q, samples[0]);
      for (const auto& tag : a0.preimage) feat_p.push_back(tag.feature);
      for (const auto& tag : b0.preimage) feat_q.push_back(tag.feature);
    }

    // plane points of the feature cycle at xi (3D vertices for projections,
    // exact edge crossings for sections); empty on structural surprise
    auto cycle_points = [&](const Polytope& body, const std::vector<int>& feats,
                            const Vec3& xi) {
      std::vector<Vec3> pts;
      pts.reserve(feats.size());
      if (proj) {
        for (int id : feats) pts.push_back(body.vertices()[id]);
      } else {
        for (int ei : feats) {
          const Edge& e = body.edges()[ei];
          const Vec3& a = body.vertices()[e.v[0]];
          const Vec3& b = body.vertices()[e.v[1]];
          Rat sa = dot(a, xi), sb = dot(b, xi);
          if (sgn(sa) * sgn(sb) >= 0) return std::vector<Vec3>{};
          pts.push_back(a + (b - a) * (sa / (sa - sb)));
        }
      }
      return pts;
    };

    using Sigma = std::pair<Orientation, std::vector<std::pair<int, int>>>;
    const int m = static_cast<int>(feat_p.size());

    auto lift = [&](Orientation orient, int offset) {
      std::vector<std::pair<int, int>> sig(m);
      for (int i = 0; i < m; ++i) {
        int j = (i + offset) % m;
        if (orient == Orientation::Reflected) j = m - 1 - j;
        sig[i] = {feat_p[i], feat_q[j]};
      }
      std::sort(sig.begin(), sig.end());
      return sig;
    };

    // slow-path sigma set, used for first/suspect samples
    auto full_sigmas = [&](const Vec3& xi, int* witness_count) -> std::set<Sigma> {
      PlanarBody a = proj ? project(p, xi) : section(p, xi);
      PlanarBody b = proj ? project(q, xi) : section(q, xi);
      auto wits = congruence_witnesses(a, b, /*verify_distances=*/false);
      if (witness_count) *witness_count = static_cast<int>(wits.size());
      std::set<Sigma> out;
      for (const auto& w : wits) {
        std::vector<std::pair<int, int>> sig;
        sig.reserve(a.preimage.size());
        for (size_t i = 0; i < a.preimage.size(); ++i)
          sig.emplace_back(a.preimage[i].feature, b.preimage[w.vertex_map[i]].feature);
        std::sort(sig.begin(), sig.end());
        out.emplace(w.orientation, std::move(sig));
      }
      return out;
    };

    std::set<Sigma> surviving;
    bool first = true;
    for (const Vec3& xi : samples) {
      std::set<Sigma> here;
      std::vector<Vec3> pa = cycle_points(p, feat_p, xi);
      std::vector<Vec3> pb = cycle_points(q, feat_q, xi);
      int wc = 0;
      if (static_cast<int>(pa.size()) == m && pa.size() == pb.size() && m >= 3) {
        Rat xi2 = norm2(xi);
        auto ca = fast_code(pa, xi, xi2, proj);
        auto cb = fast_code(pb, xi, xi2, proj);
        auto cbrev = reversed_code(cb);
        auto aligns = code_alignments(ca, cb, cbrev);
        wc = static_cast<int>(aligns.size());
        for (const auto& al : aligns) here.emplace(al.orient, lift(al.orient, al.offset));
      }
      if (here.empty()) here = full_sigmas(xi, &wc);
      if (first) res.evidence.witness_count = wc;
      if (here.empty()) {
        res.witness_free_sample = xi;
        return;
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
        throw EmptyIntersectionError(cell.id, "no bijection survives all samples");
    }
    res.evidence.surviving = static_cast<int>(surviving.size());

    std::set<Candidate> cands;
    for (const auto& [orient, sig] : surviving) {
      StablePermutation sp{sig, orient, static_cast<int>(samples.size())};
      if (proj)
        projection_candidates(p, q, sp, cands);
      else
        section_candidates(p, q, sp, samples, cands);
    }
    if (cands.empty()) {
      res.no_candidate = true;
      return;
    }
    const Candidate& best = *cands.begin();
    res.has_record = true;
    res.record.cell_id = cell.id;
    res.record.sign = static_cast<int8_t>(best.sign);
    if (proj)
      res.record.offset = best.b;
    else
      res.record.offset = std::nullopt;
    res.evidence.sign = static_cast<int8_t>(best.sign);
    res.evidence.offset = proj ? std::optional<Vec3>(best.b) : std::nullopt;
  };

  int jobs = cfg.jobs > 0 ? cfg.jobs
                          : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max(1, ncells));
  if (jobs <= 1) {
    for (int ci = 0; ci < ncells; ++ci) {
      try {
        run_cell(ci);
      } catch (...) {
        errors[ci] = std::current_exception();
      }
    }
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int w = 0; w < jobs; ++w)
      pool.emplace_back([&, w] {
        for (int ci = w; ci < ncells; ci += jobs) {
          try {
            run_cell(ci);
          } catch (...) {
            errors[ci] = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
  }

  Relation rel;
  rel.circle_count = static_cast<int>(circles.size());
  for (const auto& r : results) rel.evidence.push_back(r.evidence);

  // Reduction in cell-id order, independent of scheduling: a witness-free
  // direction is decisive; otherwise the first error wins; otherwise the
  // records go through the global patch.
  for (const auto& r : results)
    if (r.witness_free_sample) {
      rel.kind = Relation::Kind::NotCongruent;
      rel.witness = *r.witness_free_sample;
      return rel;
    }
  for (int ci = 0; ci < ncells; ++ci)
    if (errors[ci]) std::rethrow_exception(errors[ci]);
  for (const auto& r : results)
    if (r.no_candidate)
      throw NoConsistentPatchError(r.evidence.cell_id, r.evidence.cell_id,
                                   "cell admits no (sign, translation) relation");

  PatchInput patch;
  for (const auto& r : results) patch.records.push_back(r.record);
  auto [sign, b] = global_patch(patch, p, q, cfg.mode);

  if (proj) {
    rel.kind = sign > 0 ? Relation::Kind::Translate : Relation::Kind::ReflectTranslate;
    rel.b = b;
  } else {
    rel.kind = sign > 0 ? Relation::Kind::Identity : Relation::Kind::Reflection;
    rel.b = Vec3{};
  }
  if (!verify(p, q, rel))
    throw GeomError(Errc::Internal, "positive verdict failed exact verification");
  return rel;
}

}  // namespace

Relation decide(const Polytope& p, const Polytope& q, const Config& cfg) {
  if (cfg.samples_per_cell < 2)
    throw GeomError(Errc::InputError, "samples_per_cell must be >= 2");

  // Integer coordinates keep the per-sample arithmetic in single gcd-free
  // integer products. One common factor scales both bodies, so every
  // congruence relation carries over verbatim; translations scale back.
  Int lambda = 1;
  for (const Polytope* body : {&p, &q})
    for (const auto& v : body->vertices())
      lambda = lcm(lambda, lcm(lcm(v.x.get_den(), v.y.get_den()), v.z.get_den()));
  if (lambda == 1) return decide_impl(p, q, cfg);

  Rat k(lambda);
  Relation rel = decide_impl(p.scaled(k), q.scaled(k), cfg);
  Rat inv = 1 / k;
  rel.b = rel.b * inv;
  for (auto& e : rel.evidence)
    if (e.offset) e.offset = *e.offset * inv;
  return rel;
}

bool verify(const Polytope& p, const Polytope& q, const Relation& rel) {
  switch (rel.kind) {
    case Relation::Kind::Translate:
      return q.same_vertices(p.translated(rel.b));
    case Relation::Kind::ReflectTranslate:
      return q.same_vertices(p.negated().translated(rel.b));
    case Relation::Kind::Identity:
      return q.same_vertices(p);
    case Relation::Kind::Reflection:
      return q.same_vertices(p.negated());
    case Relation::Kind::NotCongruent:
      throw GeomError(Errc::InputError, "verify needs a positive verdict");
  }
  return false;
}

std::string relation_report(const Relation& rel, const Config& cfg) {
  using nlohmann::json;
  json j;
  j["schema_version"] = 1;
  json cfgj;
  cfgj["mode"] = cfg.mode == Mode::Projections ? "projections" : "sections";
  cfgj["samples_per_cell"] = cfg.samples_per_cell;
  cfgj["seed"] = std::to_string(cfg.seed);
  j["config"] = cfgj;
  j["circles"] = rel.circle_count;

  json verdict;
  switch (rel.kind) {
    case Relation::Kind::Translate:
      verdict["kind"] = "translate";
      verdict["b"] = vec3_to_json(rel.b);
      break;
    case Relation::Kind::ReflectTranslate:
      verdict["kind"] = "reflect_translate";
      verdict["b"] = vec3_to_json(rel.b);
      break;
    case Relation::Kind::Identity:
      verdict["kind"] = "identity";
      break;
    case Relation::Kind::Reflection:
      verdict["kind"] = "reflection";
      break;
    case Relation::Kind::NotCongruent:
      verdict["kind"] = "not_congruent";
      verdict["witness"] = vec3_to_json(rel.witness);
      break;
  }
  j["verdict"] = verdict;

  json cells = json::array();
  for (const auto& e : rel.evidence) {
    json c;
    c["id"] = e.cell_id;
    c["witnesses"] = e.witness_count;
    c["surviving"] = e.surviving;
    c["sign"] = e.sign ? json(*e.sign > 0 ? "+" : "-") : json(nullptr);
    c["offset"] = e.offset ? vec3_to_json(*e.offset) : json(nullptr);
    cells.push_back(c);
  }
  j["cells"] = cells;
  return j.dump(2) + "\n";
}

}  // namespace projcong
