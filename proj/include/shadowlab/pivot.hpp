#pragma once

#include <variant>

#include "shadowlab/norms.hpp"
#include "shadowlab/polytope.hpp"

namespace shadowlab {

enum class Convention { projection, parametric };

/// Objective pair for shadow paths. Projection convention: the start vertex
/// is the unique w-minimizer and each step maximizes the projected slope
/// (c.s)/(w.s). Parametric convention: the start is the unique w-maximizer
/// and the path sweeps lambda*w + (1-lambda)*c; the two views are related by
/// negating w.
struct ShadowSpec {
  RVec w;
  RVec c;
  Convention convention = Convention::parametric;

  ShadowSpec(RVec w_in, RVec c_in, Convention conv);

  /// w in projection convention (negated when stored parametric).
  RVec projection_w() const { return convention == Convention::projection ? w : RVec(-w); }
  RVec parametric_w() const { return convention == Convention::parametric ? w : RVec(-w); }
};

enum class TiePolicy { error, lowest_index };

struct ShadowRule {
  ShadowSpec spec;
};
struct SteepestEdgeRule {
  NormSpec norm;
};
struct DantzigRule {};
struct GreatestImprovementRule {};

struct PivotRuleSpec {
  std::variant<ShadowRule, SteepestEdgeRule, DantzigRule, GreatestImprovementRule> rule;
  TiePolicy tie_policy = TiePolicy::error;  // verification default

  std::string name() const;
};

struct Candidate {
  int leaving;         // tight facet dropped to reach this neighbor
  VertexBasis vertex;  // the neighbor u
  RVec step;           // u - v
};

/// Neighbors u of v with c.(u - v) > 0, ordered by leaving index; empty
/// exactly at the c-maximizer. Throws Degenerate when some edge has
/// c.(u - v) == 0 (c is not generic on this polytope).
std::vector<Candidate> improving_neighbors(const HPolytope& p, const RVec& c, const VertexBasis& v);

/// Shadow (slope) rule: argmax of (c.s)/(w.s) under the sign-aware order in
/// which any candidate with w.s > 0 beats every candidate with w.s <= 0;
/// positive-denominator slopes compare by exact cross-multiplication.
const Candidate& select_shadow(std::span<const Candidate> candidates, const ShadowSpec& spec,
                               TiePolicy tie_policy);

/// Generalized steepest edge: argmax of (c.s)/eta(s).
const Candidate& select_steepest(std::span<const Candidate> candidates, const RVec& c,
                                 const NormSpec& norm, TiePolicy tie_policy);

/// A monotone path with objective logs. c_values are strictly increasing;
/// for shadow rules w_values (projection convention) are strictly increasing
/// as well.
struct PathRecord {
  std::vector<VertexBasis> vertices;
  std::vector<Rat> c_values;
  std::optional<std::vector<Rat>> w_values;
  long length = 0;  // edge count
  std::string rule_name;
};

inline constexpr long kDefaultStepCap = 1 << 20;

/// Walks from `start` choosing edges by `rule` until the c-maximizer.
PathRecord run_simplex(const HPolytope& p, const RVec& c, const VertexBasis& start,
                       const PivotRuleSpec& rule, long step_cap = kDefaultStepCap);

/// Parses "dantzig" | "greatest" | "shadow[:<w1,...,wn>]" | "steepest:<norm>".
/// Shadow vectors given here are read in projection convention; when the
/// vector is omitted the caller must supply a bundle w.
struct ParsedRule {
  std::string kind;                 // "dantzig" | "greatest" | "shadow" | "steepest"
  std::optional<RVec> shadow_w;     // projection convention
  std::optional<NormSpec> norm;
};
ParsedRule parse_rule_spec(const std::string& text,
                           const std::function<RMat(const std::string&)>& poly_loader = {});

}  // namespace shadowlab
