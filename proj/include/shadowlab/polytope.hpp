#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shadowlab/linalg.hpp"

namespace shadowlab {

inline constexpr std::size_t kDefaultVertexCap = std::size_t{1} << 20;

/// Inequality description A x <= b of a simple, bounded, full-dimensional
/// polytope. Rows of A are facet outer normals. Instances too large to
/// validate by enumeration must carry trusted_bounded = true in files.
struct HPolytope {
  RMat a;
  RVec b;
  std::vector<std::string> labels;
  bool trusted_bounded = false;

  int dim() const { return static_cast<int>(a.cols()); }
  int facet_count() const { return static_cast<int>(a.rows()); }
};

/// A vertex identified by its point together with the sorted set of the n
/// facet indices tight at it. Identity across constructions is keyed by the
/// tight set, never by coordinates.
struct VertexBasis {
  RVec point;
  std::vector<int> tight;  // sorted, 0-based row indices

  bool operator==(const VertexBasis& other) const { return tight == other.tight; }
  bool operator<(const VertexBasis& other) const { return tight < other.tight; }
};

/// Normal cone at a vertex of a simple polytope: n extreme-ray generators as
/// rows, in tight-set order.
struct SimplicialCone {
  RMat rays;
  std::optional<VertexBasis> origin_vertex;
};

enum class BasisOutcome { vertex, singular, infeasible, degenerate };

struct BasisSolve {
  BasisOutcome outcome;
  std::optional<VertexBasis> vertex;
};

/// Solves the n tight rows for a candidate vertex. `degenerate` means the
/// solved point satisfies some non-selected row with equality (the polytope
/// is not simple there, or the same vertex has another basis).
BasisSolve vertex_from_basis(const HPolytope& p, std::span<const int> tight);

struct Neighbor {
  int leaving;        // facet index dropped from the tight set
  VertexBasis vertex; // the neighbor across that edge
  RVec step;          // vertex.point - v.point
};

/// The n neighbors of v on a simple bounded polytope, ordered by leaving
/// facet index. Throws UnboundedEdge if a ratio test finds no blocking row
/// and Degenerate if two rows block simultaneously.
std::vector<Neighbor> neighbors(const HPolytope& p, const VertexBasis& v);

/// Breadth-first closure of `seed` under neighbors; returns the complete
/// vertex set sorted by tight set. Throws LimitExceeded past `cap`.
std::vector<VertexBasis> enumerate_vertices(const HPolytope& p, const VertexBasis& seed,
                                            std::size_t cap = kDefaultVertexCap);

/// All vertices found by trying every n-subset of rows; the independent
/// oracle for graph traversal. Throws LimitExceeded when C(m, n) > comb_cap.
std::vector<VertexBasis> exhaustive_vertex_enumeration(const HPolytope& p, std::size_t comb_cap);

/// True iff every vertex lies on exactly n facets. Uses exhaustive basis
/// enumeration when C(m, n) <= comb_cap, else graph traversal from `seed`.
bool is_simple(const HPolytope& p, std::size_t comb_cap = 1000000,
               const std::optional<VertexBasis>& seed = std::nullopt);

/// Rays are the facet normals tight at v, in tight-set order.
SimplicialCone normal_cone(const HPolytope& p, const VertexBasis& v);

/// Membership via the exact ray-coefficient solve rays^T mu = z.
bool cone_contains(const SimplicialCone& c, const RVec& z, bool strict);

/// The coefficient vector of z in the ray basis (mu with rays^T mu = z).
RVec cone_coefficients(const SimplicialCone& c, const RVec& z);

/// How the segment lambda*w + (1-lambda)*c meets the cone: the exact rational
/// lambda-interval (clipped to [0,1]) plus which ray coefficients vanish at
/// each end. `flat_row` flags a coefficient identically zero along the whole
/// segment (w and c both on one cone facet).
struct SegmentProfile {
  bool empty = true;
  Rat lo, hi;                  // meaningful only when !empty, before clipping empty check
  std::vector<int> binding_lo; // positions (into tight order) with mu == 0 at lo
  std::vector<int> binding_hi;
  bool flat_row = false;
};

SegmentProfile segment_cone_profile(const SimplicialCone& c, const RVec& w, const RVec& c_obj);

/// The spec-facing wrapper: the closed interval, or nullopt when empty.
std::optional<std::pair<Rat, Rat>> segment_cone_interval(const SimplicialCone& c, const RVec& w,
                                                         const RVec& c_obj);

/// Exact l-inf inradius of the cone at interior point z: the largest r such
/// that the l-inf ball of radius r around z stays inside. Equals
/// min over cone facet normals h (rows of invert(rays)) of (h.z)/||h||_1.
Rat cone_linf_inradius(const SimplicialCone& c, const RVec& z);

/// Structural validation used by the file loader: pairwise positive-multiple
/// row check; then, unless trusted_bounded, vertex enumeration under `cap`
/// confirming boundedness and simplicity. Throws on violation.
void validate_polytope(const HPolytope& p, std::size_t cap = kDefaultVertexCap);

/// Finds some vertex by scanning bases (first feasible wins). Used when no
/// start is supplied; desk-scale only.
std::optional<VertexBasis> find_any_vertex(const HPolytope& p, std::size_t comb_cap = 1000000);

/// Resolves a vertex from its coordinates by collecting the rows tight there.
VertexBasis vertex_from_point(const HPolytope& p, const RVec& point);

}  // namespace shadowlab
