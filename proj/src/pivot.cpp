#include "shadowlab/pivot.hpp"

#include <algorithm>

namespace shadowlab {

ShadowSpec::ShadowSpec(RVec w_in, RVec c_in, Convention conv)
    : w(std::move(w_in)), c(std::move(c_in)), convention(conv) {
  if (w.size() != c.size()) fail(Errc::dimension_mismatch, "ShadowSpec: w and c dimensions differ");
  if (w.isZero() || c.isZero()) fail(Errc::bad_input, "ShadowSpec: objectives must be nonzero");
  // Linear independence is required only where the segment geometry needs
  // it (the parametric walk); the local slope rule tolerates dependent
  // pairs, and ties surface through the tie policy.
}

std::string PivotRuleSpec::name() const {
  if (std::holds_alternative<DantzigRule>(rule)) return "dantzig";
  if (std::holds_alternative<GreatestImprovementRule>(rule)) return "greatest";
  if (std::holds_alternative<ShadowRule>(rule)) return "shadow";
  return "steepest:" + std::get<SteepestEdgeRule>(rule).norm.to_string();
}

std::vector<Candidate> improving_neighbors(const HPolytope& p, const RVec& c,
                                           const VertexBasis& v) {
  std::vector<Candidate> out;
  for (auto& nb : neighbors(p, v)) {
    const Rat gain = dot(c, nb.step);
    if (gain == 0) {
      fail(Errc::degenerate, "improving_neighbors: edge with zero objective change (c not generic)");
    }
    if (gain > 0) out.push_back(Candidate{nb.leaving, std::move(nb.vertex), std::move(nb.step)});
  }
  return out;
}

namespace {

// -1 / 0 / +1: is candidate x worse / tied / better than y under the
// sign-aware slope order? Numerators c.s are positive for both.
int shadow_order(const Rat& cs_x, const Rat& ws_x, const Rat& cs_y, const Rat& ws_y) {
  const int class_x = ws_x > 0 ? 2 : (ws_x == 0 ? 1 : 0);
  const int class_y = ws_y > 0 ? 2 : (ws_y == 0 ? 1 : 0);
  if (class_x != class_y) return class_x < class_y ? -1 : 1;
  if (class_x == 1) return 0;  // both vertical: equal slope ("infinite")
  // Within a sign class ws_x * ws_y > 0, so cross-multiplication preserves
  // the slope order in both the positive and the negative class.
  const Rat lhs = cs_x * ws_y;
  const Rat rhs = cs_y * ws_x;
  if (lhs == rhs) return 0;
  return lhs > rhs ? 1 : -1;
}

[[noreturn]] void report_tie(const char* rule, int a, int b) {
  fail(Errc::tie, std::string(rule) + ": tie between edges leaving facets " + std::to_string(a) +
                      " and " + std::to_string(b));
}

}  // namespace

const Candidate& select_shadow(std::span<const Candidate> candidates, const ShadowSpec& spec,
                               TiePolicy tie_policy) {
  if (candidates.empty()) fail(Errc::bad_input, "select_shadow: no candidates");
  const RVec w = spec.projection_w();
  const Candidate* best = &candidates[0];
  Rat best_cs = dot(spec.c, best->step);
  Rat best_ws = dot(w, best->step);
  const Candidate* tied_with = nullptr;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const Candidate& cand = candidates[i];
    const Rat cs = dot(spec.c, cand.step);
    const Rat ws = dot(w, cand.step);
    const int ord = shadow_order(cs, ws, best_cs, best_ws);
    if (ord > 0) {
      best = &cand;
      best_cs = cs;
      best_ws = ws;
      tied_with = nullptr;
    } else if (ord == 0) {
      tied_with = &cand;
    }
  }
  if (tied_with && tie_policy == TiePolicy::error) {
    report_tie("select_shadow", best->leaving, tied_with->leaving);
  }
  return *best;
}

const Candidate& select_steepest(std::span<const Candidate> candidates, const RVec& c,
                                 const NormSpec& norm, TiePolicy tie_policy) {
  if (candidates.empty()) fail(Errc::bad_input, "select_steepest: no candidates");
  const Candidate* best = &candidates[0];
  Rat best_cs = dot(c, best->step);
  const Candidate* tied_with = nullptr;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const Candidate& cand = candidates[i];
    const Rat cs = dot(c, cand.step);
    switch (compare_ratio(norm, cs, cand.step, best_cs, best->step)) {
      case RatioCmp::greater:
        best = &cand;
        best_cs = cs;
        tied_with = nullptr;
        break;
      case RatioCmp::equal:
        tied_with = &cand;
        break;
      case RatioCmp::less:
        break;
      case RatioCmp::uncertifiable:
        fail(Errc::uncertifiable_comparison,
             "select_steepest: interval refinement exhausted comparing edges leaving " +
                 std::to_string(cand.leaving) + " and " + std::to_string(best->leaving));
    }
  }
  if (tied_with && tie_policy == TiePolicy::error) {
    report_tie("select_steepest", best->leaving, tied_with->leaving);
  }
  return *best;
}

namespace {

// Dantzig and greatest-improvement share the exact positive-fraction argmax;
// values are val_num/val_den with val_den > 0.
struct Fraction {
  Rat num;
  Rat den;
};

const Candidate& select_by_fraction(std::span<const Candidate> candidates,
                                    const std::vector<Fraction>& values, TiePolicy tie_policy,
                                    const char* rule) {
  std::size_t best = 0;
  std::optional<std::size_t> tied_with;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const Rat lhs = values[i].num * values[best].den;
    const Rat rhs = values[best].num * values[i].den;
    if (lhs > rhs) {
      best = i;
      tied_with.reset();
    } else if (lhs == rhs) {
      tied_with = i;
    }
  }
  if (tied_with && tie_policy == TiePolicy::error) {
    report_tie(rule, candidates[best].leaving, candidates[*tied_with].leaving);
  }
  return candidates[best];
}

void verify_vertex(const HPolytope& p, const VertexBasis& v) {
  int tight_count = 0;
  for (int i = 0; i < p.facet_count(); ++i) {
    const Rat slack = p.b(i) - dot(RVec(p.a.row(i).transpose()), v.point);
    if (slack < 0) fail(Errc::infeasible, "run_simplex: start point violates row " + std::to_string(i));
    if (slack == 0) ++tight_count;
  }
  if (tight_count != p.dim() || static_cast<int>(v.tight.size()) != p.dim()) {
    fail(Errc::degenerate, "run_simplex: start is not a simple vertex");
  }
}

}  // namespace

PathRecord run_simplex(const HPolytope& p, const RVec& c, const VertexBasis& start,
                       const PivotRuleSpec& rule, long step_cap) {
  verify_vertex(p, start);
  if (const auto* shadow = std::get_if<ShadowRule>(&rule.rule)) {
    if (shadow->spec.c != c) {
      fail(Errc::bad_input, "run_simplex: shadow rule objective differs from run objective");
    }
  }

  PathRecord record;
  record.rule_name = rule.name();
  std::optional<RVec> w_proj;
  if (const auto* shadow = std::get_if<ShadowRule>(&rule.rule)) {
    w_proj = shadow->spec.projection_w();
    record.w_values.emplace();
  }

  VertexBasis current = start;
  record.vertices.push_back(current);
  record.c_values.push_back(dot(c, current.point));
  if (w_proj) record.w_values->push_back(dot(*w_proj, current.point));

  while (true) {
    auto candidates = improving_neighbors(p, c, current);
    if (candidates.empty()) break;
    if (record.length >= step_cap) {
      fail(Errc::step_cap_exceeded, "run_simplex: step cap " + std::to_string(step_cap) + " reached");
    }
    const Candidate* chosen = nullptr;
    if (const auto* shadow = std::get_if<ShadowRule>(&rule.rule)) {
      chosen = &select_shadow(candidates, shadow->spec, rule.tie_policy);
    } else if (const auto* steepest = std::get_if<SteepestEdgeRule>(&rule.rule)) {
      chosen = &select_steepest(candidates, c, steepest->norm, rule.tie_policy);
    } else if (std::holds_alternative<DantzigRule>(rule.rule)) {
      std::vector<Fraction> values;
      values.reserve(candidates.size());
      for (const auto& cand : candidates) {
        // Edge direction normalized so the leaving row has slope -1; the
        // denominator is the positive ratio-test step length.
        const Rat t = -dot(RVec(p.a.row(cand.leaving).transpose()), cand.step);
        values.push_back(Fraction{dot(c, cand.step), t});
      }
      chosen = &select_by_fraction(candidates, values, rule.tie_policy, "dantzig");
    } else {
      std::vector<Fraction> values;
      values.reserve(candidates.size());
      for (const auto& cand : candidates) values.push_back(Fraction{dot(c, cand.step), Rat(1)});
      chosen = &select_by_fraction(candidates, values, rule.tie_policy, "greatest_improvement");
    }

    current = chosen->vertex;
    record.vertices.push_back(current);
    record.c_values.push_back(dot(c, current.point));
    if (w_proj) record.w_values->push_back(dot(*w_proj, current.point));
    ++record.length;
  }

  for (std::size_t i = 1; i < record.c_values.size(); ++i) {
    if (!(record.c_values[i - 1] < record.c_values[i])) {
      fail(Errc::degenerate, "run_simplex: objective values not strictly increasing");
    }
  }
  if (record.w_values) {
    for (std::size_t i = 1; i < record.w_values->size(); ++i) {
      if (!((*record.w_values)[i - 1] < (*record.w_values)[i])) {
        fail(Errc::degenerate, "run_simplex: shadow path is not w-increasing");
      }
    }
  }
  return record;
}

ParsedRule parse_rule_spec(const std::string& text,
                           const std::function<RMat(const std::string&)>& poly_loader) {
  ParsedRule out;
  if (text == "dantzig" || text == "greatest") {
    out.kind = text;
    return out;
  }
  if (text == "shadow") {
    out.kind = "shadow";
    return out;
  }
  if (text.rfind("shadow:", 0) == 0) {
    out.kind = "shadow";
    const std::string rest = text.substr(7);
    std::vector<Rat> parts;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      parts.push_back(rat_from_string(
          rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    RVec w(static_cast<int>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) w(static_cast<int>(i)) = parts[i];
    out.shadow_w = std::move(w);
    return out;
  }
  if (text.rfind("steepest:", 0) == 0) {
    out.kind = "steepest";
    out.norm = parse_norm_spec(text.substr(9), poly_loader);
    return out;
  }
  fail(Errc::bad_input, "unknown pivot rule: '" + text + "'");
}

}  // namespace shadowlab
