#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "projcong/congruence.hpp"
#include "projcong/recovery.hpp"

namespace projcong {

struct Config {
  int samples_per_cell = 8;
  uint64_t seed = 0;
  std::optional<double> float_tol;  // input parsing only
  Mode mode = Mode::Projections;
  int jobs = 0;  // worker threads over cells; 0 = hardware concurrency
};

struct CellEvidence {
  int cell_id = -1;
  int witness_count = 0;          // congruences at the cell's first sample
  int surviving = 0;              // bijections alive after every sample
  std::optional<int8_t> sign;     // chosen per-cell relation, if any
  std::optional<Vec3> offset;
};

// The verdict plus the per-cell evidence it was glued from. Positive
// verdicts are certified exactly (vertex multisets); sampling can only
// cause retryable failures, never a wrong certificate.
struct Relation {
  enum class Kind { Translate, ReflectTranslate, Identity, Reflection, NotCongruent };
  Kind kind = Kind::NotCongruent;
  Vec3 b;        // Translate / ReflectTranslate
  Vec3 witness;  // NotCongruent: a non-exceptional direction with no congruence
  std::vector<CellEvidence> evidence;
  int circle_count = 0;
};

// Runs the full pipeline: stratification, per-cell sampling and congruence,
// stable bijections, per-cell relation, global patch, exact verification.
// Throws OriginNotInterior (sections), SamplingExhausted / EmptyIntersection
// (retryable) and NoConsistentPatch (hypothesis violation off-sample).
Relation decide(const Polytope& p, const Polytope& q, const Config& cfg);

// Exact certificate check by vertex multisets; no sampling. The relation
// must carry a positive verdict.
bool verify(const Polytope& p, const Polytope& q, const Relation& rel);

// Canonical JSON report (schema_version 1). Byte-identical for identical
// polytopes, mode, samples_per_cell and seed, independent of the job count.
std::string relation_report(const Relation& rel, const Config& cfg);

}  // namespace projcong
