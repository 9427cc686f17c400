#pragma once

#include <stdexcept>
#include <string>

namespace shadowlab {

/// Machine-readable failure kinds, shared across modules and mapped to CLI
/// exit codes by the front end.
enum class Errc {
  dimension_mismatch,
  singular,
  infeasible,
  unbounded_edge,
  limit_exceeded,
  degenerate,
  tie,
  step_cap_exceeded,
  not_regular,
  uncertifiable_comparison,
  not_interior,
  eps_too_large,
  ball_not_interior,
  delta_underflow,
  degenerate_path,
  k_search_exhausted,
  non_generic,
  degenerate_projection,
  duplicate_values,
  generation_failed,
  io_error,
  bad_input,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::singular: return "Singular";
    case Errc::infeasible: return "Infeasible";
    case Errc::unbounded_edge: return "UnboundedEdge";
    case Errc::limit_exceeded: return "LimitExceeded";
    case Errc::degenerate: return "Degenerate";
    case Errc::tie: return "Tie";
    case Errc::step_cap_exceeded: return "StepCapExceeded";
    case Errc::not_regular: return "NotRegular";
    case Errc::uncertifiable_comparison: return "UncertifiableComparison";
    case Errc::not_interior: return "NotInterior";
    case Errc::eps_too_large: return "EpsTooLarge";
    case Errc::ball_not_interior: return "BallNotInterior";
    case Errc::delta_underflow: return "DeltaUnderflow";
    case Errc::degenerate_path: return "DegeneratePath";
    case Errc::k_search_exhausted: return "KSearchExhausted";
    case Errc::non_generic: return "NonGeneric";
    case Errc::degenerate_projection: return "DegenerateProjection";
    case Errc::duplicate_values: return "DuplicateValues";
    case Errc::generation_failed: return "GenerationFailed";
    case Errc::io_error: return "IoError";
    case Errc::bad_input: return "BadInput";
  }
  return "UnknownError";
}

}  // namespace shadowlab
