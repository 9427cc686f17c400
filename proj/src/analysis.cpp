#include "shadowlab/analysis.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace shadowlab {

namespace {

VertexBasis climb_to_max(const HPolytope& p, const RVec& objective, VertexBasis v) {
  while (true) {
    bool moved = false;
    for (auto& nb : neighbors(p, v)) {
      if (dot(objective, nb.step) > 0) {
        v = std::move(nb.vertex);
        moved = true;
        break;
      }
    }
    if (!moved) return v;
  }
}

}  // namespace

ParametricResult parametric_path(const HPolytope& p, const ShadowSpec& spec,
                                 std::optional<VertexBasis> hint, long step_cap) {
  const RVec w = spec.parametric_w();
  const RVec& c = spec.c;
  {
    RMat pair(2, static_cast<int>(w.size()));
    pair.row(0) = w.transpose();
    pair.row(1) = c.transpose();
    if (rank(pair) != 2) {
      fail(Errc::non_generic, "parametric_path: w and c are linearly dependent");
    }
  }

  VertexBasis current;
  if (hint) {
    current = climb_to_max(p, w, *hint);
  } else {
    auto seed = find_any_vertex(p);
    if (!seed) fail(Errc::infeasible, "parametric_path: no vertex found");
    current = climb_to_max(p, w, *seed);
  }
  if (!cone_contains(normal_cone(p, current), w, /*strict=*/true)) {
    fail(Errc::non_generic, "parametric_path: w is not uniquely maximized (lies on a cone boundary)");
  }

  ParametricResult out;
  out.record.rule_name = "parametric";
  out.record.w_values.emplace();
  const RVec w_proj = -w;  // projection convention for the logs

  Rat lambda_cur = 1;
  while (true) {
    const SimplicialCone cone = normal_cone(p, current);
    const SegmentProfile profile = segment_cone_profile(cone, w, c);
    if (profile.empty) {
      fail(Errc::non_generic, "parametric_path: segment misses the current cone");
    }
    if (profile.flat_row) {
      fail(Errc::non_generic, "parametric_path: segment lies inside a cone facet");
    }
    if (profile.hi != lambda_cur) {
      fail(Errc::non_generic, "parametric_path: lambda intervals do not tile [0,1]");
    }
    if (profile.lo == profile.hi) {
      fail(Errc::non_generic, "parametric_path: interval degenerates to a point");
    }
    out.record.vertices.push_back(current);
    out.record.c_values.push_back(dot(c, current.point));
    out.record.w_values->push_back(dot(w_proj, current.point));
    out.intervals.emplace_back(profile.lo, profile.hi);

    if (profile.binding_lo.empty()) break;  // interval reaches past 0: c-maximizer
    if (profile.lo == 0) {
      fail(Errc::non_generic, "parametric_path: c lies on a cone boundary");
    }
    if (profile.binding_lo.size() > 1) {
      fail(Errc::non_generic, "parametric_path: three cones meet the segment at one lambda");
    }
    if (out.record.length >= step_cap) {
      fail(Errc::step_cap_exceeded, "parametric_path: step cap reached");
    }

    // The binding coefficient names the ray whose facet the segment exits
    // through; crossing it is exactly the edge dropping that tight row.
    const int leaving = current.tight[profile.binding_lo[0]];
    bool stepped = false;
    for (auto& nb : neighbors(p, current)) {
      if (nb.leaving == leaving) {
        current = std::move(nb.vertex);
        stepped = true;
        break;
      }
    }
    if (!stepped) fail(Errc::non_generic, "parametric_path: no edge across the exit facet");
    lambda_cur = profile.lo;
    ++out.record.length;
  }

  for (std::size_t i = 1; i < out.record.c_values.size(); ++i) {
    if (!(out.record.c_values[i - 1] < out.record.c_values[i])) {
      fail(Errc::non_generic, "parametric_path: c values not strictly increasing");
    }
  }
  return out;
}

bool local_path_agreement(const HPolytope& p, const ShadowSpec& spec, const VertexBasis& start) {
  const auto par = parametric_path(p, spec, start);
  if (!(par.record.vertices.front() == start)) {
    fail(Errc::bad_input, "local_path_agreement: start is not the parametric start vertex");
  }
  PivotRuleSpec rule{ShadowRule{ShadowSpec(spec.projection_w(), spec.c, Convention::projection)},
                     TiePolicy::error};
  const auto local = run_simplex(p, spec.c, start, rule);
  if (local.vertices.size() != par.record.vertices.size()) return false;
  for (std::size_t i = 0; i < local.vertices.size(); ++i) {
    if (!(local.vertices[i] == par.record.vertices[i])) return false;
  }
  return true;
}

namespace {

Rat cross(const std::pair<Rat, Rat>& o, const std::pair<Rat, Rat>& a,
          const std::pair<Rat, Rat>& b) {
  return (a.first - o.first) * (b.second - o.second) -
         (a.second - o.second) * (b.first - o.first);
}

}  // namespace

ShadowPolygon shadow_polygon(const HPolytope& p, const ShadowSpec& spec, std::size_t cap) {
  auto seed = find_any_vertex(p);
  if (!seed) fail(Errc::infeasible, "shadow_polygon: no vertex found");
  const auto verts = enumerate_vertices(p, *seed, cap);
  const RVec w = spec.projection_w();

  ShadowPolygon out;
  out.projected.reserve(verts.size());
  for (const auto& v : verts) {
    out.projected.emplace_back(dot(w, v.point), dot(spec.c, v.point));
  }

  // Distinct projected points, each with a representative vertex index.
  std::map<std::pair<Rat, Rat>, int> first_index;
  for (std::size_t i = 0; i < out.projected.size(); ++i) {
    first_index.try_emplace(out.projected[i], static_cast<int>(i));
  }
  std::vector<std::pair<Rat, Rat>> pts;
  std::vector<int> reps;
  for (const auto& [pt, idx] : first_index) {
    pts.push_back(pt);
    reps.push_back(idx);
  }

  // Monotone chain keeping only strict turns, so the hull carries no
  // collinear interior points.
  std::vector<int> order(static_cast<int>(pts.size()));
  std::iota(order.begin(), order.end(), 0);
  auto build_chain = [&](const std::vector<int>& seq) {
    std::vector<int> chain;
    for (int idx : seq) {
      while (chain.size() >= 2 &&
             cross(pts[chain[chain.size() - 2]], pts[chain.back()], pts[idx]) <= 0) {
        chain.pop_back();
      }
      chain.push_back(idx);
    }
    return chain;
  };
  const std::vector<int> lower = build_chain(order);
  const std::vector<int> upper_in(order.rbegin(), order.rend());
  const std::vector<int> upper = build_chain(upper_in);

  if (pts.size() < 3 || (lower.size() < 3 && upper.size() < 3)) {
    fail(Errc::degenerate_projection, "shadow_polygon: projected points are collinear");
  }
  std::vector<int> hull(lower.begin(), lower.end() - 1);
  hull.insert(hull.end(), upper.begin(), upper.end() - 1);
  out.hull.reserve(hull.size());
  for (int h : hull) out.hull.push_back(reps[h]);
  out.hull_size = static_cast<int>(out.hull.size());
  return out;
}

PathStats brute_force_paths(const HPolytope& p, const RVec& c, const VertexBasis& from,
                            const VertexBasis& to, std::size_t vertex_cap) {
  const auto verts = enumerate_vertices(p, from, vertex_cap);
  std::vector<std::size_t> order(verts.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Rat> value(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) value[i] = dot(c, verts[i].point);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return value[x] < value[y]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (value[order[i - 1]] == value[order[i]]) {
      fail(Errc::degenerate, "brute_force_paths: two vertices share a c-value");
    }
  }

  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < verts.size(); ++i) index.emplace(verts[i].tight, i);
  const auto it_from = index.find(from.tight);
  const auto it_to = index.find(to.tight);
  if (it_from == index.end() || it_to == index.end()) {
    fail(Errc::bad_input, "brute_force_paths: endpoint is not a vertex of P");
  }

  // Improving edges form a DAG ordered by c-value; exact DP over it carries
  // the same information as exhaustive path enumeration.
  std::vector<BigInt> count(verts.size(), BigInt(0));
  std::vector<long> min_len(verts.size(), -1);
  std::vector<long> max_len(verts.size(), -1);
  count[it_from->second] = 1;
  min_len[it_from->second] = 0;
  max_len[it_from->second] = 0;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t vi = order[oi];
    if (count[vi] == 0) continue;
    for (const auto& nb : neighbors(p, verts[vi])) {
      if (!(dot(c, nb.step) > 0)) continue;
      const std::size_t ui = index.at(nb.vertex.tight);
      count[ui] += count[vi];
      if (min_len[ui] < 0 || min_len[vi] + 1 < min_len[ui]) min_len[ui] = min_len[vi] + 1;
      if (max_len[vi] + 1 > max_len[ui]) max_len[ui] = max_len[vi] + 1;
    }
  }
  return PathStats{count[it_to->second], min_len[it_to->second], max_len[it_to->second]};
}

namespace {

// Does the open ray {t r : t > 0} meet the open box D? Exact interval
// intersection over the scaling factor t.
bool ray_meets_ball(const RVec& r, const Ball& d) {
  Rat lo = 0, hi = 0;
  bool hi_set = false;
  for (Eigen::Index j = 0; j < r.size(); ++j) {
    const Rat lo_j = d.center(j) - d.radius;
    const Rat hi_j = d.center(j) + d.radius;
    if (r(j) == 0) {
      if (!(lo_j < 0 && 0 < hi_j)) return false;
      continue;
    }
    Rat lo_t = lo_j / r(j);
    Rat hi_t = hi_j / r(j);
    if (r(j) < 0) std::swap(lo_t, hi_t);
    if (lo_t > lo) lo = lo_t;
    if (!hi_set || hi_t < hi) {
      hi = hi_t;
      hi_set = true;
    }
  }
  return !hi_set || lo < hi;
}

}  // namespace

CertCheck check_certificate(const HPolytope& q, const VertexBasis& a, const VertexBasis& b,
                            const Certificate& cert) {
  CertCheck out;
  auto flag = [&](const std::string& reason) {
    out.ok = false;
    out.reasons.push_back(reason);
  };

  const int n = q.dim();
  const bool two_sided = !cert.cut_facets[1].empty();

  if (cert.alpha < 1) flag("alpha must be at least 1");
  if (static_cast<long>(cert.segment_points.size()) != cert.alpha + 1) {
    flag("segment point count does not match alpha + 1");
  }
  if (!(cert.epsilon > 0)) flag("epsilon is not positive");
  if (cert.d_w.radius != cert.epsilon || cert.d_c.radius != cert.epsilon) {
    flag("ball radii differ from epsilon");
  }
  if (!out.ok) return out;

  const RVec& w = cert.segment_points.front();
  const RVec& c = cert.segment_points.back();
  if (cert.d_w.center != w) flag("D_w is not centered at the first segment point");
  if (cert.d_c.center != c) flag("D_c is not centered at the last segment point");

  // Sample points must sit on the segment in strictly decreasing lambda
  // order, from w (lambda = 1) down to c (lambda = 0).
  {
    const RVec dir = w - c;
    int pivot = -1;
    for (int j = 0; j < n; ++j) {
      if (dir(j) != 0) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0) {
      flag("segment endpoints coincide");
    } else {
      Rat prev_lambda = 2;
      for (std::size_t i = 0; i < cert.segment_points.size(); ++i) {
        const RVec& pt = cert.segment_points[i];
        const Rat lambda = (pt(pivot) - c(pivot)) / dir(pivot);
        if (RVec(lambda * w + (1 - lambda) * c) != pt) {
          flag("segment point " + std::to_string(i) + " is off the w-c segment");
          break;
        }
        if (i == 0 && lambda != 1) flag("first segment point is not w");
        if (i + 1 == cert.segment_points.size() && lambda != 0) flag("last segment point is not c");
        if (i > 0 && !(lambda < prev_lambda)) {
          flag("segment points out of order at index " + std::to_string(i));
          break;
        }
        prev_lambda = lambda;
      }
    }
  }
  if (!out.ok) return out;

  auto sorted_cuts = [&](int side) {
    std::vector<int> s = cert.cut_facets[side];
    std::sort(s.begin(), s.end());
    return s;
  };
  if (static_cast<int>(cert.cut_facets[0].size()) != n || sorted_cuts(0) != a.tight) {
    flag("vertex a is not tight exactly on the first cut set");
  }
  if (two_sided && (static_cast<int>(cert.cut_facets[1].size()) != n || sorted_cuts(1) != b.tight)) {
    flag("vertex b is not tight exactly on the second cut set");
  }
  for (const auto* v : {&a, &b}) {
    auto solved = vertex_from_basis(q, v->tight);
    if (solved.outcome != BasisOutcome::vertex || solved.vertex->point != v->point) {
      flag("a distinguished vertex does not resolve on Q");
    }
  }
  if (!out.ok) return out;

  // (i) Every extreme ray of the endpoint cones scales into its ball. The
  // construction stores cut normals as the exact chosen representatives, so
  // the honest scaling factor is 1; testing ray/ball intersection keeps the
  // check scale-correct under any positive rescaling.
  const SimplicialCone cone_a = normal_cone(q, a);
  for (int i = 0; i < n; ++i) {
    if (!ray_meets_ball(RVec(cone_a.rays.row(i).transpose()), cert.d_w)) {
      flag("ray " + std::to_string(a.tight[i]) + " of cone(a) escapes D_w");
    }
  }
  const SimplicialCone cone_b = normal_cone(q, b);
  if (two_sided) {
    for (int i = 0; i < n; ++i) {
      if (!ray_meets_ball(RVec(cone_b.rays.row(i).transpose()), cert.d_c)) {
        flag("ray " + std::to_string(b.tight[i]) + " of cone(b) escapes D_c");
      }
    }
  } else if (!cone_contains(cone_b, c, /*strict=*/true)) {
    flag("fixed objective is not strictly interior to cone(b)");
  }

  // (ii)/(iii) Interior sample points: each strictly inside a distinct
  // surviving cone, with the epsilon-ball fitting there. The endpoint cones
  // were subdivided away, so the inradius recomputation ranges over the
  // interior points.
  const auto verts = enumerate_vertices(q, a);
  std::vector<RMat> inverses;
  inverses.reserve(verts.size());
  for (const auto& v : verts) {
    auto inv = invert(normal_cone(q, v).rays);
    if (!inv) {
      flag("vertex cone with dependent rays on Q");
      return out;
    }
    inverses.push_back(std::move(*inv));
  }

  std::vector<std::vector<int>> hit_tights;
  for (long i = 1; i < cert.alpha; ++i) {
    const RVec& pt = cert.segment_points[static_cast<std::size_t>(i)];
    int found = -1;
    for (std::size_t vi = 0; vi < verts.size(); ++vi) {
      const RVec mu = inverses[vi].transpose() * pt;
      bool inside = true;
      for (int j = 0; j < n; ++j) {
        if (mu(j) <= 0) {
          inside = false;
          break;
        }
      }
      if (inside) {
        found = static_cast<int>(vi);
        break;  // cone interiors are pairwise disjoint
      }
    }
    if (found < 0) {
      flag("segment point " + std::to_string(i) + " is interior to no cone of Q");
      continue;
    }
    const auto& tight = verts[static_cast<std::size_t>(found)].tight;
    if (tight == a.tight || tight == b.tight) {
      flag("segment point " + std::to_string(i) + " landed in an endpoint cone");
    }
    if (std::find(hit_tights.begin(), hit_tights.end(), tight) != hit_tights.end()) {
      flag("segment point " + std::to_string(i) + " repeats a cone");
    }
    hit_tights.push_back(tight);
    const Rat inr = cone_linf_inradius(normal_cone(q, verts[static_cast<std::size_t>(found)]), pt);
    if (inr < cert.epsilon) {
      flag("epsilon exceeds the inradius at segment point " + std::to_string(i));
    }
  }
  return out;
}

VerificationReport sample_shadow_paths(const HPolytope& q, const VertexBasis& a,
                                       const VertexBasis& b, long target_alpha, long samples,
                                       std::uint64_t seed, std::optional<RVec> fixed_c) {
  VerificationReport report;
  report.samples = samples;
  report.seed = seed;
  report.target = target_alpha;

  const SimplicialCone cone_a = normal_cone(q, a);
  const SimplicialCone cone_b = normal_cone(q, b);
  const int n = q.dim();

  auto interior_point = [&](const SimplicialCone& cone, std::mt19937_64& rng) {
    RVec z = zero_vector(n);
    for (int i = 0; i < n; ++i) {
      z += random_positive_rational(rng, 1000, 1000) * RVec(cone.rays.row(i).transpose());
    }
    return z;
  };

  for (long i = 0; i < samples; ++i) {
    bool done = false;
    for (int attempt = 0; attempt < 16 && !done; ++attempt) {
      auto rng = make_rng(seed, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(attempt));
      try {
        const RVec w_a = interior_point(cone_a, rng);
        const RVec c_b = fixed_c ? *fixed_c : interior_point(cone_b, rng);
        const auto res = parametric_path(q, ShadowSpec(w_a, c_b, Convention::parametric), a);
        if (!(res.record.vertices.front() == a) || !(res.record.vertices.back() == b)) {
          report.failures.push_back("sample " + std::to_string(i) + ": path endpoints are not a,b");
          done = true;
          break;
        }
        const long len = res.record.length;
        if (report.min_length < 0 || len < report.min_length) report.min_length = len;
        if (len > report.max_length) report.max_length = len;
        if (len < target_alpha) {
          report.failures.push_back("sample " + std::to_string(i) + ": length " +
                                    std::to_string(len) + " < " + std::to_string(target_alpha));
        }
        done = true;
      } catch (const Error& e) {
        if (e.code() != Errc::non_generic) throw;
        ++report.resampled;
      }
    }
    if (!done) {
      report.failures.push_back("sample " + std::to_string(i) + ": persistently non-generic");
    }
  }
  return report;
}

bool check_ordering_coincide(const HPolytope& p, const ShadowSpec& spec, std::size_t cap) {
  auto seed = find_any_vertex(p);
  if (!seed) fail(Errc::infeasible, "check_ordering_coincide: no vertex found");
  const auto verts = enumerate_vertices(p, *seed, cap);
  const RVec w = spec.projection_w();

  auto order_by = [&](const RVec& objective) {
    std::vector<std::size_t> order(verts.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<Rat> value(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) value[i] = dot(objective, verts[i].point);
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return value[x] < value[y]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (value[order[i - 1]] == value[order[i]]) {
        fail(Errc::duplicate_values, "check_ordering_coincide: objective ties on two vertices");
      }
    }
    return order;
  };

  return order_by(spec.c) == order_by(w);
}

VerificationReport all_norms_battery(const HPolytope& p, const RVec& c, const VertexBasis& start,
                                     std::span<const NormSpec> norms, long step_cap) {
  VerificationReport report;
  report.samples = static_cast<long>(norms.size());
  const auto verts = enumerate_vertices(p, start);
  const long target = static_cast<long>(verts.size()) - 1;
  report.target = target;

  for (const auto& norm : norms) require_regular(norm, p.dim());

  std::optional<std::vector<std::vector<int>>> reference;
  for (const auto& norm : norms) {
    PathRecord rec;
    try {
      rec = run_simplex(p, c, start, PivotRuleSpec{SteepestEdgeRule{norm}, TiePolicy::error},
                        step_cap);
    } catch (const Error& e) {
      report.failures.push_back(norm.to_string() + ": " + std::string(errc_name(e.code())) + " (" +
                                e.what() + ")");
      continue;
    }
    if (rec.length != target) {
      report.failures.push_back(norm.to_string() + ": length " + std::to_string(rec.length) +
                                " != " + std::to_string(target));
      continue;
    }
    std::vector<std::vector<int>> seq;
    seq.reserve(rec.vertices.size());
    for (const auto& v : rec.vertices) seq.push_back(v.tight);
    if (!reference) {
      reference = std::move(seq);
    } else if (*reference != seq) {
      report.failures.push_back(norm.to_string() + ": vertex sequence deviates");
    }
    if (report.min_length < 0 || rec.length < report.min_length) report.min_length = rec.length;
    if (rec.length > report.max_length) report.max_length = rec.length;
  }
  return report;
}

}  // namespace shadowlab
