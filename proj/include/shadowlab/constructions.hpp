#pragma once

#include <array>

#include "shadowlab/pivot.hpp"

namespace shadowlab {

/// Open l-inf ball. Membership |x_i - center_i| < radius is exact rational;
/// the two facts the constructions need from a ball (it fits inside an open
/// cone, and segments between epsilon-close endpoint pairs stay epsilon-close
/// pointwise) hold for any norm ball by convexity.
struct Ball {
  RVec center;
  Rat radius;
};

/// Strict membership in the open ball.
bool ball_contains(const Ball& d, const RVec& x);

/// The edge-compressing linear map family: A_k fixes w and shrinks the
/// orthogonal complement of w by 1/k. The projector form
/// A_k = (1/k) I + (1 - 1/k) w w^T / (w^T w) keeps everything rational.
struct CompressSpec {
  RVec w;
  Rat k;
};

RMat compress_map(const CompressSpec& spec);
RMat compress_map_inverse(const CompressSpec& spec);

/// Proof object for "every shadow path between the distinguished vertices is
/// long": sample points on the w-c segment, one strictly inside each
/// traversed cone, the common inradius bound epsilon, the two balls, and the
/// indices of the cut facets from each thin-cone phase (second set empty for
/// the fixed-objective variant).
struct Certificate {
  long alpha = 0;
  Rat epsilon;
  std::vector<RVec> segment_points;  // alpha+1 points; endpoints are w and c
  Ball d_w;
  Ball d_c;
  std::array<std::vector<int>, 2> cut_facets;
};

struct GoldfarbInstance {
  HPolytope polytope;
  ShadowSpec spec;       // parametric convention; start maximizes w
  VertexBasis start;
  Rat eps_param;         // accepted deformation parameter
};

inline constexpr int kGoldfarbDimensionCap = 14;

/// Deformed-product combinatorial n-cube (2n facets) with a (w, c) pair whose
/// parametric path from `start` visits all 2^n vertices. The generator tries
/// a small grid of rational deformation parameters and accepts the first
/// whose path passes the all-vertices oracle at the requested n and at all
/// smaller dimensions (oracle runs are skipped above n = 10, where the grid
/// value has already been validated at 10). Pass `preset` to pin the
/// parameter; generation fails if the oracle rejects it.
GoldfarbInstance goldfarb_cube(int n, std::optional<Rat> preset = std::nullopt);

/// Cuts off exactly the vertex v with the half-space w.x <= w.v - eps where w
/// is strictly interior to the normal cone at v. Defaults eps to half the
/// smallest neighbor gap min_u(w.v - w.u). The new facet row is w itself, so
/// the refined cones' generators are exact.
HPolytope vertex_cut(const HPolytope& p, const VertexBasis& v, const RVec& w,
                     std::optional<Rat> eps = std::nullopt);

/// Result of compressing one normal cone into a ball: n successive vertex
/// cuts whose normals w_1..w_n all lie in D; the new vertex is tight exactly
/// on the n cut facets.
struct ThinConeResult {
  HPolytope polytope;
  VertexBasis new_vertex;
  std::vector<int> cut_rows;  // indices of the n added facets, in cut order
};

ThinConeResult thin_cone(const HPolytope& p, const VertexBasis& v, const Ball& d);

struct ManyFromOneResult {
  HPolytope q;
  VertexBasis a;  // replaces the w-maximizer; cone rays inside D_w
  VertexBasis b;  // replaces the c-maximizer; cone rays inside D_c
  Certificate cert;
};

/// Thm-style composite: runs the parametric path of (w, c) on P, picks
/// interior sample points and the inradius bound epsilon, then thins both
/// endpoint cones. Any shadow path from a to b on the result has length at
/// least alpha.
ManyFromOneResult many_from_one(const HPolytope& p, const ShadowSpec& spec);

struct FixedCResult {
  HPolytope q;
  VertexBasis a;  // thinned start
  VertexBasis b;  // the untouched c-maximizer
  Certificate cert;  // cut_facets[1] empty
};

/// Fixed-objective sharpening: only the start cone is subdivided, adding n
/// facets instead of 2n.
FixedCResult fixed_c_variant(const HPolytope& p, const ShadowSpec& spec);

/// Applies A_k to the polytope in H-form (rows a -> a A_k^{-1}) and maps the
/// objective to c' = A_k^{-1} c, so that c'.(A_k u - A_k v) = c.(u - v)
/// exactly for all u, v.
std::pair<HPolytope, RVec> compress(const HPolytope& p, const RVec& c, const CompressSpec& spec);

/// Maps a vertex of P to the corresponding vertex of A_k(P) (same tight set).
VertexBasis compress_vertex(const CompressSpec& spec, const VertexBasis& v);

struct KSearchResult {
  Rat k;
  PathRecord record;
};

/// Doubles k = 2, 4, 8, ... until the steepest-edge path for `norm` on the
/// compressed instance walks through every vertex; probes that error out
/// (ties, uncertifiable comparisons) just advance the search.
KSearchResult find_k_for_norm(const HPolytope& p, const ShadowSpec& spec, const VertexBasis& start,
                              const NormSpec& norm, const Rat& k_cap = Rat(BigInt(1) << 64));

struct CanonicalizeResult {
  HPolytope polytope;
  ShadowSpec spec;  // auxiliary becomes exactly e_1
  RMat t;           // T w = e_1; T = inverse of the basis extension of w
  VertexBasis start;
};

/// Change of basis sending the auxiliary objective to e_1 while preserving
/// every slope, hence every shadow path. Points map by x -> T^{-T} x, rows by
/// a -> a T^T, objectives by y -> T y.
CanonicalizeResult canonicalize_w_to_e1(const HPolytope& p, const ShadowSpec& spec,
                                        const VertexBasis& start);

}  // namespace shadowlab
