#pragma once

#include <stdexcept>
#include <string>

namespace projcong {

enum class Errc {
  DegenerateInput,
  ZeroDirection,
  OriginNotInterior,
  ExceptionalDirection,
  SamplingExhausted,
  EmptyIntersection,
  DegeneratePolygon,
  ZeroSegment,
  OriginLine,
  DirectionOnLine,
  NotClosed,
  ParallelNormals,
  NoConsistentPatch,
  InputError,
  Internal,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::ZeroDirection: return "ZeroDirection";
    case Errc::OriginNotInterior: return "OriginNotInterior";
    case Errc::ExceptionalDirection: return "ExceptionalDirection";
    case Errc::SamplingExhausted: return "SamplingExhausted";
    case Errc::EmptyIntersection: return "EmptyIntersection";
    case Errc::DegeneratePolygon: return "DegeneratePolygon";
    case Errc::ZeroSegment: return "ZeroSegment";
    case Errc::OriginLine: return "OriginLine";
    case Errc::DirectionOnLine: return "DirectionOnLine";
    case Errc::NotClosed: return "NotClosed";
    case Errc::ParallelNormals: return "ParallelNormals";
    case Errc::NoConsistentPatch: return "NoConsistentPatch";
    case Errc::InputError: return "InputError";
    case Errc::Internal: return "Internal";
  }
  return "?";
}

class GeomError : public std::runtime_error {
 public:
  GeomError(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Raised when no single feature bijection survives every sampled direction
// of a cell. Retryable with a larger sample count.
class EmptyIntersectionError : public GeomError {
 public:
  EmptyIntersectionError(int cell_id, const std::string& msg)
      : GeomError(Errc::EmptyIntersection, msg), cell_id(cell_id) {}
  int cell_id;
};

class SamplingExhaustedError : public GeomError {
 public:
  SamplingExhaustedError(int cell_id, const std::string& msg)
      : GeomError(Errc::SamplingExhausted, msg), cell_id(cell_id) {}
  int cell_id;
};

// Raised when the per-cell relations cannot be glued into one global
// (sign, translation) pair that the bodies verify exactly.
class NoConsistentPatchError : public GeomError {
 public:
  NoConsistentPatchError(int cell_a, int cell_b, const std::string& msg)
      : GeomError(Errc::NoConsistentPatch, msg), cell_a(cell_a), cell_b(cell_b) {}
  int cell_a;
  int cell_b;
};

}  // namespace projcong
