#include "shadowlab/constructions.hpp"

#include <algorithm>

#include "shadowlab/analysis.hpp"

namespace shadowlab {

bool ball_contains(const Ball& d, const RVec& x) {
  if (x.size() != d.center.size()) fail(Errc::dimension_mismatch, "ball_contains: dim mismatch");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Rat diff = x(i) - d.center(i);
    if (diff < 0) diff = -diff;
    if (!(diff < d.radius)) return false;
  }
  return true;
}

RMat compress_map(const CompressSpec& spec) {
  const int n = static_cast<int>(spec.w.size());
  const Rat ww = dot(spec.w, spec.w);
  if (spec.k <= 0) fail(Errc::bad_input, "compress: k must be positive");
  if (ww == 0) fail(Errc::bad_input, "compress: w must be nonzero");
  RMat m = identity(n) * (Rat(1) / spec.k);
  const Rat coeff = (1 - Rat(1) / spec.k) / ww;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) += coeff * spec.w(i) * spec.w(j);
  }
  return m;
}

RMat compress_map_inverse(const CompressSpec& spec) {
  return compress_map(CompressSpec{spec.w, Rat(1) / spec.k});
}

namespace {

struct KleeMintyFamily {
  HPolytope polytope;
  RVec w;
  RVec c;
  VertexBasis start;
};

// Deformed-product cube: 0 <= x_0 <= 1 and eps*x_{j-1} <= x_j <= 1 - eps*x_{j-1}.
// The threading objectives put weight (eps/2)^(n-j) on coordinate j-1, so the
// parametric sweep of the last coordinate recursively drags every lower level
// through both of its facets: the Gray-code walk over all 2^n vertices.
KleeMintyFamily build_deformed_cube(int n, const Rat& eps) {
  RMat a = RMat::Zero(2 * n, n);
  RVec b(2 * n);
  std::vector<std::string> labels(2 * n);
  for (int j = 0; j < n; ++j) {
    a(j, j) = -1;
    if (j > 0) a(j, j - 1) = eps;
    b(j) = 0;
    labels[j] = "lo" + std::to_string(j + 1);
    a(n + j, j) = 1;
    if (j > 0) a(n + j, j - 1) = eps;
    b(n + j) = 1;
    labels[n + j] = "hi" + std::to_string(j + 1);
  }
  KleeMintyFamily out;
  out.polytope = HPolytope{std::move(a), std::move(b), std::move(labels), false};
  out.w = RVec(n);
  out.c = RVec(n);
  const Rat half_eps = eps / 2;
  Rat gamma = 1;
  for (int j = n - 2; j >= 0; --j) {
    gamma *= half_eps;
    out.w(j) = gamma;
    out.c(j) = gamma;
  }
  out.w(n - 1) = -1;
  out.c(n - 1) = 1;
  std::vector<int> tight(n);
  for (int j = 0; j < n; ++j) tight[j] = j;
  out.start = VertexBasis{zero_vector(n), std::move(tight)};
  return out;
}

bool goldfarb_oracle_passes(const KleeMintyFamily& fam) {
  const int n = fam.polytope.dim();
  try {
    const ShadowSpec spec(fam.w, fam.c, Convention::parametric);
    const auto res = parametric_path(fam.polytope, spec, fam.start);
    if (!(res.record.vertices.front() == fam.start)) return false;
    const auto verts = enumerate_vertices(fam.polytope, fam.start);
    const auto expected = std::size_t{1} << n;
    return verts.size() == expected &&
           res.record.length == static_cast<long>(expected) - 1;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

GoldfarbInstance goldfarb_cube(int n, std::optional<Rat> preset) {
  if (n < 2 || n > kGoldfarbDimensionCap) {
    fail(Errc::generation_failed,
         "goldfarb_cube: n must be between 2 and " + std::to_string(kGoldfarbDimensionCap));
  }
  std::vector<Rat> grid;
  if (preset) {
    grid.push_back(*preset);
  } else {
    grid = {Rat(1, 4), Rat(1, 5), Rat(2, 7), Rat(3, 10), Rat(1, 3), Rat(2, 5), Rat(3, 8)};
  }
  const int oracle_cap = std::min(n, 10);
  for (const Rat& eps : grid) {
    if (!(eps > 0) || !(eps < Rat(1, 2))) continue;
    bool ok = true;
    for (int m = 2; m <= oracle_cap && ok; ++m) {
      ok = goldfarb_oracle_passes(build_deformed_cube(m, eps));
    }
    if (!ok) continue;
    auto fam = build_deformed_cube(n, eps);
    return GoldfarbInstance{std::move(fam.polytope),
                            ShadowSpec(std::move(fam.w), std::move(fam.c), Convention::parametric),
                            std::move(fam.start), eps};
  }
  fail(Errc::generation_failed, "goldfarb_cube: no grid parameter passed the all-vertices oracle");
}

HPolytope vertex_cut(const HPolytope& p, const VertexBasis& v, const RVec& w,
                     std::optional<Rat> eps) {
  if (!cone_contains(normal_cone(p, v), w, /*strict=*/true)) {
    fail(Errc::not_interior, "vertex_cut: w is not strictly interior to the normal cone at v");
  }
  const Rat wv = dot(w, v.point);
  std::optional<Rat> min_gap;
  for (const auto& nb : neighbors(p, v)) {
    const Rat gap = wv - dot(w, nb.vertex.point);
    if (!min_gap || gap < *min_gap) min_gap = gap;
  }
  // w strictly interior makes v the unique w-maximizer, so every gap is
  // positive.
  Rat cut_eps;
  if (eps) {
    if (!(*eps > 0) || !(*eps < *min_gap)) {
      fail(Errc::eps_too_large, "vertex_cut: eps must lie in (0, min neighbor gap)");
    }
    cut_eps = *eps;
  } else {
    cut_eps = *min_gap / 2;
  }

  const int m = p.facet_count();
  HPolytope out;
  out.a = RMat(m + 1, p.dim());
  out.a.topRows(m) = p.a;
  out.a.row(m) = w.transpose();
  out.b = RVec(m + 1);
  out.b.head(m) = p.b;
  out.b(m) = wv - cut_eps;
  out.labels = p.labels;
  out.labels.push_back("cut" + std::to_string(m + 1));
  out.trusted_bounded = p.trusted_bounded;
  return out;
}

ThinConeResult thin_cone(const HPolytope& p, const VertexBasis& v, const Ball& d) {
  const int n = p.dim();
  const SimplicialCone cone = normal_cone(p, v);
  if (!cone_contains(cone, d.center, /*strict=*/true)) {
    fail(Errc::ball_not_interior, "thin_cone: ball center is outside the open normal cone");
  }
  // Open ball inside the open cone: the corner minima of each cone-facet
  // functional over the box equal h.center - radius*||h||_1, so this exact
  // inradius test is the 2^n-corner check in closed form.
  if (cone_linf_inradius(cone, d.center) < d.radius) {
    fail(Errc::ball_not_interior, "thin_cone: ball of this radius does not fit inside the cone");
  }

  std::vector<RVec> cut_normals;
  cut_normals.push_back(d.center);  // w_1
  std::vector<int> cut_rows;
  HPolytope current = p;
  VertexBasis target = v;

  for (int k = 1; k <= n; ++k) {
    current = vertex_cut(current, target, cut_normals.back());
    cut_rows.push_back(current.facet_count() - 1);
    if (k == n) break;

    // Next target: the vertex tight on all cuts so far plus the uncut tail
    // of the original facets.
    std::vector<int> tight = cut_rows;
    tight.insert(tight.end(), v.tight.begin() + k, v.tight.end());
    std::sort(tight.begin(), tight.end());
    auto solved = vertex_from_basis(current, tight);
    if (solved.outcome != BasisOutcome::vertex) {
      fail(Errc::degenerate_path, "thin_cone: expected refinement vertex is missing");
    }
    target = std::move(*solved.vertex);

    // w_{k+1} = average of the cuts so far + delta * (sum of uncut rays),
    // with delta halved until the point falls back into the open ball.
    RVec avg = zero_vector(n);
    for (const auto& wi : cut_normals) avg += wi;
    avg /= Rat(k);
    RVec tail = zero_vector(n);
    for (int j = k; j < n; ++j) tail += RVec(p.a.row(v.tight[j]).transpose());
    Rat delta = d.radius / (1 + linf_norm(tail));
    RVec next;
    bool found = false;
    for (int iter = 0; iter < 200; ++iter) {
      next = avg + delta * tail;
      if (ball_contains(d, next)) {
        found = true;
        break;
      }
      delta /= 2;
    }
    if (!found) fail(Errc::delta_underflow, "thin_cone: delta halving exceeded 200 iterations");
    cut_normals.push_back(std::move(next));
  }

  std::vector<int> tight = cut_rows;
  std::sort(tight.begin(), tight.end());
  auto solved = vertex_from_basis(current, tight);
  if (solved.outcome != BasisOutcome::vertex) {
    fail(Errc::degenerate_path, "thin_cone: final thin vertex is missing");
  }
  return ThinConeResult{std::move(current), std::move(*solved.vertex), std::move(cut_rows)};
}

namespace {

struct SegmentData {
  long alpha = 0;
  std::vector<RVec> points;  // alpha+1, endpoints w and c
  Rat epsilon;
  VertexBasis u;  // w-maximizer on P
  VertexBasis v;  // c-maximizer on P
};

// Parametric path plus the certificate ingredients: interior sample points
// at the lambda-interval midpoints and the l-inf inradius bound. The
// endpoint samples are w and c themselves, so the epsilon-balls around them
// stay inside the endpoint cones and the thin-cone preconditions hold.
SegmentData segment_data(const HPolytope& p, const ShadowSpec& spec) {
  const RVec w = spec.parametric_w();
  const RVec& c = spec.c;
  ParametricResult par;
  try {
    par = parametric_path(p, spec);
  } catch (const Error& e) {
    if (e.code() == Errc::non_generic) {
      fail(Errc::degenerate_path, std::string("segment touches a cone boundary: ") + e.what());
    }
    throw;
  }
  SegmentData out;
  out.alpha = par.record.length;
  if (out.alpha < 1) fail(Errc::bad_input, "construction requires a path of length at least 1");
  out.u = par.record.vertices.front();
  out.v = par.record.vertices.back();

  out.points.push_back(w);
  for (long i = 1; i < out.alpha; ++i) {
    const auto& [lo, hi] = par.intervals[static_cast<std::size_t>(i)];
    const Rat mid = (lo + hi) / 2;
    out.points.push_back(RVec(mid * w + (1 - mid) * c));
  }
  out.points.push_back(c);

  std::optional<Rat> eps;
  for (long i = 0; i <= out.alpha; ++i) {
    const SimplicialCone cone = normal_cone(p, par.record.vertices[static_cast<std::size_t>(i)]);
    const Rat r = cone_linf_inradius(cone, out.points[static_cast<std::size_t>(i)]);
    if (!eps || r < *eps) eps = r;
  }
  out.epsilon = *eps;
  if (!(out.epsilon > 0)) fail(Errc::degenerate_path, "inradius bound is not positive");
  return out;
}

VertexBasis refind(const HPolytope& p, const std::vector<int>& tight, const char* what) {
  auto solved = vertex_from_basis(p, tight);
  if (solved.outcome != BasisOutcome::vertex) {
    fail(Errc::degenerate_path, std::string("construction lost a vertex: ") + what);
  }
  return std::move(*solved.vertex);
}

}  // namespace

ManyFromOneResult many_from_one(const HPolytope& p, const ShadowSpec& spec) {
  const SegmentData data = segment_data(p, spec);
  const RVec w = spec.parametric_w();
  const Ball d_w{w, data.epsilon};
  const Ball d_c{spec.c, data.epsilon};

  auto phase1 = thin_cone(p, data.u, d_w);
  const VertexBasis v_in_p1 = refind(phase1.polytope, data.v.tight, "c-maximizer after phase 1");
  auto phase2 = thin_cone(phase1.polytope, v_in_p1, d_c);

  ManyFromOneResult out;
  std::vector<int> a_tight = phase1.cut_rows;
  std::sort(a_tight.begin(), a_tight.end());
  out.a = refind(phase2.polytope, a_tight, "thin vertex a after phase 2");
  out.b = phase2.new_vertex;
  out.cert = Certificate{data.alpha, data.epsilon, data.points, d_w, d_c,
                         {phase1.cut_rows, phase2.cut_rows}};
  out.q = std::move(phase2.polytope);
  return out;
}

FixedCResult fixed_c_variant(const HPolytope& p, const ShadowSpec& spec) {
  const SegmentData data = segment_data(p, spec);
  const RVec w = spec.parametric_w();
  const Ball d_w{w, data.epsilon};
  const Ball d_c{spec.c, data.epsilon};

  auto phase1 = thin_cone(p, data.u, d_w);
  FixedCResult out;
  out.a = phase1.new_vertex;
  out.b = refind(phase1.polytope, data.v.tight, "c-maximizer after the cut");
  out.cert = Certificate{data.alpha, data.epsilon, data.points, d_w, d_c, {phase1.cut_rows, {}}};
  out.q = std::move(phase1.polytope);
  return out;
}

std::pair<HPolytope, RVec> compress(const HPolytope& p, const RVec& c, const CompressSpec& spec) {
  const RMat inv = compress_map_inverse(spec);
  HPolytope out;
  out.a = p.a * inv;
  out.b = p.b;
  out.labels = p.labels;
  out.trusted_bounded = p.trusted_bounded;
  // A_k is symmetric, so c' = A_k^{-1} c makes c'.(A_k u - A_k v) = c.(u-v).
  return {std::move(out), RVec(inv * c)};
}

VertexBasis compress_vertex(const CompressSpec& spec, const VertexBasis& v) {
  return VertexBasis{RVec(compress_map(spec) * v.point), v.tight};
}

KSearchResult find_k_for_norm(const HPolytope& p, const ShadowSpec& spec, const VertexBasis& start,
                              const NormSpec& norm, const Rat& k_cap) {
  const auto verts = enumerate_vertices(p, start);
  const long target = static_cast<long>(verts.size()) - 1;
  const auto par = parametric_path(p, spec, start);
  if (par.record.length != target || !(par.record.vertices.front() == start)) {
    fail(Errc::bad_input, "find_k_for_norm: the shadow path from start does not visit all vertices");
  }

  const RVec w = spec.parametric_w();
  for (Rat k = 2; k <= k_cap; k *= 2) {
    const CompressSpec cs{w, k};
    auto [pk, ck] = compress(p, spec.c, cs);
    const VertexBasis start_k = compress_vertex(cs, start);
    try {
      PathRecord rec = run_simplex(pk, ck, start_k,
                                   PivotRuleSpec{SteepestEdgeRule{norm}, TiePolicy::error},
                                   target + 1);
      if (rec.length == target) return KSearchResult{k, std::move(rec)};
    } catch (const Error& e) {
      switch (e.code()) {
        case Errc::tie:
        case Errc::uncertifiable_comparison:
        case Errc::step_cap_exceeded:
        case Errc::degenerate:
          break;  // this k is not large enough (or not certifiable); double it
        default:
          throw;
      }
    }
  }
  fail(Errc::k_search_exhausted,
       "find_k_for_norm: no k up to the cap reproduced the full path (non-conforming norm "
       "plugin or invalid input path)");
}

CanonicalizeResult canonicalize_w_to_e1(const HPolytope& p, const ShadowSpec& spec,
                                        const VertexBasis& start) {
  const RVec w = spec.parametric_w();
  const int n = static_cast<int>(w.size());
  int pivot = -1;
  for (int i = 0; i < n; ++i) {
    if (w(i) != 0) {
      pivot = i;
      break;
    }
  }
  if (pivot < 0) fail(Errc::bad_input, "canonicalize: w must be nonzero");

  // Extend w to a rational basis: M = [w | e_j (j != pivot)], T = M^{-1}.
  RMat m = RMat::Zero(n, n);
  m.col(0) = w;
  int col = 1;
  for (int j = 0; j < n; ++j) {
    if (j == pivot) continue;
    m(j, col) = 1;
    ++col;
  }
  const auto t = invert(m);
  if (!t) fail(Errc::singular, "canonicalize: basis extension is singular");

  // Points map by x -> M^T x, rows by a -> a T^T, objectives by y -> T y;
  // all slopes are preserved exactly and the auxiliary objective becomes e_1.
  HPolytope polytope;
  polytope.a = p.a * t->transpose();
  polytope.b = p.b;
  polytope.labels = p.labels;
  polytope.trusted_bounded = p.trusted_bounded;
  const RVec w_new = *t * w;
  if (w_new != unit_vector(n, 0)) fail(Errc::singular, "canonicalize: T w != e1");
  VertexBasis new_start{RVec(m.transpose() * start.point), start.tight};
  return CanonicalizeResult{std::move(polytope),
                            ShadowSpec(w_new, RVec(*t * spec.c), Convention::parametric), *t,
                            std::move(new_start)};
}

}  // namespace shadowlab
