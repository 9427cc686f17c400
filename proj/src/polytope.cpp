#include "shadowlab/polytope.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace shadowlab {

namespace {

RMat rows_for(const HPolytope& p, std::span<const int> idx) {
  RMat out(static_cast<int>(idx.size()), p.dim());
  for (std::size_t k = 0; k < idx.size(); ++k) out.row(static_cast<int>(k)) = p.a.row(idx[k]);
  return out;
}

bool sorted_unique(std::span<const int> idx, int m) {
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= m) return false;
    if (k > 0 && idx[k] <= idx[k - 1]) return false;
  }
  return true;
}

// C(m, n) with saturation at cap+1.
std::size_t binom_capped(int m, int n, std::size_t cap) {
  if (n < 0 || n > m) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= n; ++i) {
    r = r * static_cast<std::size_t>(m - n + i);
    r /= static_cast<std::size_t>(i);
    if (r > cap) return cap + 1;
  }
  return r;
}

}  // namespace

BasisSolve vertex_from_basis(const HPolytope& p, std::span<const int> tight) {
  const int n = p.dim();
  if (static_cast<int>(tight.size()) != n || !sorted_unique(tight, p.facet_count())) {
    fail(Errc::bad_input, "vertex_from_basis: tight set must be n sorted distinct row indices");
  }
  const RMat sub = rows_for(p, tight);
  RVec rhs(n);
  for (int k = 0; k < n; ++k) rhs(k) = p.b(tight[k]);
  auto x = solve_linear(sub, rhs);
  if (!x) return {BasisOutcome::singular, std::nullopt};
  bool degenerate = false;
  for (int i = 0; i < p.facet_count(); ++i) {
    if (std::binary_search(tight.begin(), tight.end(), i)) continue;
    const Rat slack = p.b(i) - dot(RVec(p.a.row(i).transpose()), *x);
    if (slack < 0) return {BasisOutcome::infeasible, std::nullopt};
    if (slack == 0) degenerate = true;
  }
  if (degenerate) return {BasisOutcome::degenerate, std::nullopt};
  VertexBasis v{*x, std::vector<int>(tight.begin(), tight.end())};
  return {BasisOutcome::vertex, std::move(v)};
}

std::vector<Neighbor> neighbors(const HPolytope& p, const VertexBasis& v) {
  const int n = p.dim();
  const RMat tight_rows = rows_for(p, v.tight);
  const auto inv = invert(tight_rows);
  if (!inv) fail(Errc::singular, "neighbors: tight rows are dependent");

  std::vector<Neighbor> out;
  out.reserve(n);
  for (int pos = 0; pos < n; ++pos) {
    // Direction leaving facet v.tight[pos]: a_i.d = 0 for the kept rows and
    // a_j.d = -1 for the dropped one, i.e. minus column `pos` of the inverse.
    const RVec d = -inv->col(pos);
    std::optional<Rat> best_t;
    int entering = -1;
    int tied_with = -1;  // a second row achieving the current minimum
    for (int i = 0; i < p.facet_count(); ++i) {
      if (std::binary_search(v.tight.begin(), v.tight.end(), i)) continue;
      const Rat advance = dot(RVec(p.a.row(i).transpose()), d);
      if (advance <= 0) continue;
      const Rat t = (p.b(i) - dot(RVec(p.a.row(i).transpose()), v.point)) / advance;
      if (!best_t || t < *best_t) {
        best_t = t;
        entering = i;
        tied_with = -1;
      } else if (t == *best_t) {
        tied_with = i;
      }
    }
    if (!best_t) fail(Errc::unbounded_edge, "neighbors: edge has no blocking row (unbounded input)");
    // A tie matters only at the final minimum: the arrival point would then
    // lie on more than n facets.
    if (tied_with >= 0) {
      fail(Errc::degenerate, "neighbors: rows " + std::to_string(entering) + " and " +
                                 std::to_string(tied_with) + " block the edge leaving facet " +
                                 std::to_string(v.tight[pos]) + " (polytope not simple)");
    }
    if (*best_t == 0) fail(Errc::degenerate, "neighbors: zero-length edge (polytope not simple)");

    VertexBasis u;
    u.point = v.point + *best_t * d;
    u.tight = v.tight;
    u.tight.erase(u.tight.begin() + pos);
    u.tight.insert(std::upper_bound(u.tight.begin(), u.tight.end(), entering), entering);
    out.push_back(Neighbor{v.tight[pos], std::move(u), RVec(*best_t * d)});
  }
  std::sort(out.begin(), out.end(),
            [](const Neighbor& x, const Neighbor& y) { return x.leaving < y.leaving; });
  return out;
}

std::vector<VertexBasis> enumerate_vertices(const HPolytope& p, const VertexBasis& seed,
                                            std::size_t cap) {
  std::map<std::vector<int>, VertexBasis> seen;
  std::deque<VertexBasis> frontier;
  seen.emplace(seed.tight, seed);
  frontier.push_back(seed);
  while (!frontier.empty()) {
    const VertexBasis v = frontier.front();
    frontier.pop_front();
    for (auto& nb : neighbors(p, v)) {
      if (seen.contains(nb.vertex.tight)) continue;
      if (seen.size() >= cap) fail(Errc::limit_exceeded, "enumerate_vertices: cap exceeded");
      frontier.push_back(nb.vertex);
      seen.emplace(nb.vertex.tight, std::move(nb.vertex));
    }
  }
  std::vector<VertexBasis> out;
  out.reserve(seen.size());
  for (auto& [key, v] : seen) out.push_back(std::move(v));
  return out;
}

std::vector<VertexBasis> exhaustive_vertex_enumeration(const HPolytope& p, std::size_t comb_cap) {
  const int m = p.facet_count();
  const int n = p.dim();
  if (binom_capped(m, n, comb_cap) > comb_cap) {
    fail(Errc::limit_exceeded, "exhaustive_vertex_enumeration: C(m,n) exceeds cap");
  }
  std::vector<VertexBasis> out;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    auto res = vertex_from_basis(p, idx);
    if (res.outcome == BasisOutcome::vertex) out.push_back(std::move(*res.vertex));
    // next combination
    int k = n - 1;
    while (k >= 0 && idx[k] == m - n + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_simple(const HPolytope& p, std::size_t comb_cap, const std::optional<VertexBasis>& seed) {
  const int m = p.facet_count();
  const int n = p.dim();
  if (binom_capped(m, n, comb_cap) <= comb_cap) {
    // Definition-faithful route: a degenerate basis solve is exactly a vertex
    // on more than n facets.
    bool found_vertex = false;
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    while (true) {
      auto res = vertex_from_basis(p, idx);
      if (res.outcome == BasisOutcome::degenerate) return false;
      if (res.outcome == BasisOutcome::vertex) found_vertex = true;
      int k = n - 1;
      while (k >= 0 && idx[k] == m - n + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
    return found_vertex;
  }
  std::optional<VertexBasis> start = seed;
  if (!start) start = find_any_vertex(p, comb_cap);
  if (!start) return false;
  try {
    enumerate_vertices(p, *start);
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::degenerate) return false;
    throw;
  }
}

SimplicialCone normal_cone(const HPolytope& p, const VertexBasis& v) {
  return SimplicialCone{rows_for(p, v.tight), v};
}

RVec cone_coefficients(const SimplicialCone& c, const RVec& z) {
  auto mu = solve_linear(RMat(c.rays.transpose()), z);
  if (!mu) fail(Errc::singular, "cone: ray matrix is singular");
  return *mu;
}

bool cone_contains(const SimplicialCone& c, const RVec& z, bool strict) {
  const RVec mu = cone_coefficients(c, z);
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (strict ? (mu(i) <= 0) : (mu(i) < 0)) return false;
  }
  return true;
}

SegmentProfile segment_cone_profile(const SimplicialCone& c, const RVec& w, const RVec& c_obj) {
  // mu(lambda) = lambda * mu_w + (1 - lambda) * mu_c, affine per coordinate.
  const RVec mu_w = cone_coefficients(c, w);
  const RVec mu_c = cone_coefficients(c, c_obj);
  SegmentProfile out;
  Rat lo = 0, hi = 1;
  std::vector<int> lo_rows, hi_rows;
  for (Eigen::Index i = 0; i < mu_w.size(); ++i) {
    const Rat slope = mu_w(i) - mu_c(i);
    const Rat at0 = mu_c(i);
    if (slope == 0) {
      if (at0 < 0) return out;  // empty
      if (at0 == 0) out.flat_row = true;
      continue;
    }
    const Rat root = -at0 / slope;
    if (slope > 0) {
      // mu_i >= 0 for lambda >= root
      if (root > lo) {
        lo = root;
        lo_rows.assign(1, static_cast<int>(i));
      } else if (root == lo) {
        lo_rows.push_back(static_cast<int>(i));
      }
    } else {
      if (root < hi) {
        hi = root;
        hi_rows.assign(1, static_cast<int>(i));
      } else if (root == hi) {
        hi_rows.push_back(static_cast<int>(i));
      }
    }
  }
  if (lo > hi) return out;
  out.empty = false;
  out.lo = lo;
  out.hi = hi;
  out.binding_lo = std::move(lo_rows);
  out.binding_hi = std::move(hi_rows);
  return out;
}

std::optional<std::pair<Rat, Rat>> segment_cone_interval(const SimplicialCone& c, const RVec& w,
                                                         const RVec& c_obj) {
  const auto profile = segment_cone_profile(c, w, c_obj);
  if (profile.empty) return std::nullopt;
  return std::make_pair(profile.lo, profile.hi);
}

Rat cone_linf_inradius(const SimplicialCone& c, const RVec& z) {
  // Facet normals of a simplicial cone are the rows of invert(rays): the row
  // h_j satisfies h_j . ray_i = delta_ij, so h_j >= 0 carves the cone.
  const auto inv = invert(c.rays);
  if (!inv) fail(Errc::singular, "cone_linf_inradius: ray matrix singular");
  std::optional<Rat> best;
  for (int j = 0; j < inv->cols(); ++j) {
    const RVec h = inv->col(j);
    const Rat denom = l1_norm(h);
    if (denom == 0) continue;
    const Rat r = dot(h, z) / denom;
    if (!best || r < *best) best = r;
  }
  return best.value_or(Rat(0));
}

void validate_polytope(const HPolytope& p, std::size_t cap) {
  const int m = p.facet_count();
  const int n = p.dim();
  if (n < 1 || m < n + 1) fail(Errc::bad_input, "polytope: needs at least n+1 facets");
  if (p.b.size() != m) fail(Errc::dimension_mismatch, "polytope: b length != row count");
  if (!p.labels.empty() && static_cast<int>(p.labels.size()) != m) {
    fail(Errc::bad_input, "polytope: label count != row count");
  }
  for (int i = 0; i < m; ++i) {
    if (RVec(p.a.row(i).transpose()).isZero()) fail(Errc::bad_input, "polytope: zero row");
    for (int j = i + 1; j < m; ++j) {
      if (positive_multiple(RVec(p.a.row(i).transpose()), RVec(p.a.row(j).transpose()))) {
        fail(Errc::bad_input, "polytope: rows " + std::to_string(i) + " and " + std::to_string(j) +
                                  " are positive multiples");
      }
    }
  }
  if (p.trusted_bounded) return;
  const auto seed = find_any_vertex(p);
  if (!seed) fail(Errc::infeasible, "polytope: no vertex found");
  enumerate_vertices(p, *seed, cap);  // throws on unbounded edges, degeneracy, or cap
}

std::optional<VertexBasis> find_any_vertex(const HPolytope& p, std::size_t comb_cap) {
  const int m = p.facet_count();
  const int n = p.dim();
  if (binom_capped(m, n, comb_cap) > comb_cap) {
    fail(Errc::limit_exceeded, "find_any_vertex: C(m,n) exceeds cap");
  }
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    auto res = vertex_from_basis(p, idx);
    if (res.outcome == BasisOutcome::vertex) return res.vertex;
    int k = n - 1;
    while (k >= 0 && idx[k] == m - n + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return std::nullopt;
}

VertexBasis vertex_from_point(const HPolytope& p, const RVec& point) {
  if (point.size() != p.dim()) fail(Errc::dimension_mismatch, "vertex_from_point: wrong dimension");
  std::vector<int> tight;
  for (int i = 0; i < p.facet_count(); ++i) {
    const Rat slack = p.b(i) - dot(RVec(p.a.row(i).transpose()), point);
    if (slack < 0) fail(Errc::infeasible, "vertex_from_point: point outside polytope");
    if (slack == 0) tight.push_back(i);
  }
  if (static_cast<int>(tight.size()) != p.dim()) {
    fail(Errc::degenerate, "vertex_from_point: point is not a simple vertex");
  }
  return VertexBasis{point, std::move(tight)};
}

}  // namespace shadowlab
