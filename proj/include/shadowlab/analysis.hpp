#pragma once

#include <cstdint>

#include "shadowlab/constructions.hpp"

namespace shadowlab {

/// 2D projection of the polytope under x -> (w.x, c.x): all projected
/// vertices, plus the strictly convex hull (indices into `projected`, CCW).
struct ShadowPolygon {
  std::vector<std::pair<Rat, Rat>> projected;
  std::vector<int> hull;
  int hull_size = 0;
};

struct VerificationReport {
  long samples = 0;
  long min_length = -1;
  long max_length = -1;
  std::uint64_t seed = 0;
  std::vector<std::string> failures;
  bool certificate_ok = false;
  long resampled = 0;
  long target = 0;
};

/// Global shadow path by walking the w-c segment through the normal fan from
/// lambda = 1 (the w side) to lambda = 0 (the c side). At each vertex the
/// segment leaves through exactly one cone facet; two or more binding rows at
/// once, a flat row, or a degenerate interval raise NonGeneric.
struct ParametricResult {
  PathRecord record;
  std::vector<std::pair<Rat, Rat>> intervals;  // per path vertex, tiling [0,1]
};

ParametricResult parametric_path(const HPolytope& p, const ShadowSpec& spec,
                                 std::optional<VertexBasis> hint = std::nullopt,
                                 long step_cap = kDefaultStepCap);

/// True iff the local slope rule reproduces the parametric vertex sequence.
bool local_path_agreement(const HPolytope& p, const ShadowSpec& spec, const VertexBasis& start);

ShadowPolygon shadow_polygon(const HPolytope& p, const ShadowSpec& spec,
                             std::size_t cap = kDefaultVertexCap);

struct PathStats {
  BigInt count;
  long min_length = -1;
  long max_length = -1;
};

/// Exhaustive statistics over all c-monotone paths between two vertices,
/// computed by exact dynamic programming over the (acyclic) improving-edge
/// graph. Throws Degenerate when two vertices share a c-value.
PathStats brute_force_paths(const HPolytope& p, const RVec& c, const VertexBasis& from,
                            const VertexBasis& to, std::size_t vertex_cap = kDefaultVertexCap);

struct CertCheck {
  bool ok = true;
  std::vector<std::string> reasons;
};

/// Verifies the thin-cone certificate against Q: the distinguished vertices
/// resolve to the recorded cut facets, every ray of their cones scales into
/// the matching ball, each interior segment point lies strictly inside a
/// distinct surviving cone with inradius at least epsilon, and the recorded
/// epsilon and balls are mutually consistent. A `true` result realizes the
/// sufficient condition for "every shadow path from a to b has length >=
/// alpha".
CertCheck check_certificate(const HPolytope& q, const VertexBasis& a, const VertexBasis& b,
                            const Certificate& cert);

/// Seeded corroboration: draws `samples` interior points of the two endpoint
/// cones (or uses `fixed_c` for the target objective) and runs the parametric
/// path for each pair, recording the length range. NonGeneric draws are
/// resampled and counted.
VerificationReport sample_shadow_paths(const HPolytope& q, const VertexBasis& a,
                                       const VertexBasis& b, long target_alpha, long samples,
                                       std::uint64_t seed,
                                       std::optional<RVec> fixed_c = std::nullopt);

/// True iff sorting the vertices by c.x and by (projection-)w.x gives the
/// same order. Throws DuplicateValues when either objective ties.
bool check_ordering_coincide(const HPolytope& p, const ShadowSpec& spec,
                             std::size_t cap = kDefaultVertexCap);

/// Runs the steepest-edge rule for every norm; passes when every path has
/// the full length (vertex count - 1) and all vertex sequences coincide.
VerificationReport all_norms_battery(const HPolytope& p, const RVec& c, const VertexBasis& start,
                                     std::span<const NormSpec> norms,
                                     long step_cap = kDefaultStepCap);

}  // namespace shadowlab
