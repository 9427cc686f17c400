#pragma once

#include <string>
#include <vector>

#include "shadowlab/analysis.hpp"
#include "shadowlab/constructions.hpp"

namespace shadowlab::testing {

inline RVec vec(std::initializer_list<Rat> entries) {
  RVec out(static_cast<int>(entries.size()));
  int i = 0;
  for (const auto& e : entries) out(i++) = e;
  return out;
}

inline RMat mat(std::initializer_list<std::initializer_list<Rat>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(rows.begin()->size());
  RMat out(r, c);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (const auto& e : row) out(i, j++) = e;
    ++i;
  }
  return out;
}

/// Rows -x1<=0, -x2<=0, x1<=1, x2<=1 (the spec's 1..4 ordering, 0-based here).
inline HPolytope unit_square() {
  HPolytope p;
  p.a = mat({{-1, 0}, {0, -1}, {1, 0}, {0, 1}});
  p.b = vec({0, 0, 1, 1});
  p.labels = {"lo1", "lo2", "hi1", "hi2"};
  return p;
}

/// Rows 0..n-1: -x_i <= 0; rows n..2n-1: x_i <= 1.
inline HPolytope unit_cube(int n) {
  HPolytope p;
  p.a = RMat::Zero(2 * n, n);
  p.b = RVec(2 * n);
  for (int i = 0; i < n; ++i) {
    p.a(i, i) = -1;
    p.b(i) = 0;
    p.a(n + i, i) = 1;
    p.b(n + i) = 1;
    p.labels.push_back("lo" + std::to_string(i + 1));
  }
  for (int i = 0; i < n; ++i) p.labels.push_back("hi" + std::to_string(i + 1));
  return p;
}

inline VertexBasis vertex_at(const HPolytope& p, const RVec& point) {
  return vertex_from_point(p, point);
}

inline VertexBasis cube_origin(const HPolytope& cube) {
  return vertex_at(cube, zero_vector(cube.dim()));
}

/// Product polytope in block H-form.
inline HPolytope product(const HPolytope& p, const HPolytope& q) {
  HPolytope out;
  const int n = p.dim() + q.dim();
  const int m = p.facet_count() + q.facet_count();
  out.a = RMat::Zero(m, n);
  out.b = RVec(m);
  out.a.topLeftCorner(p.facet_count(), p.dim()) = p.a;
  out.a.bottomRightCorner(q.facet_count(), q.dim()) = q.a;
  out.b.head(p.facet_count()) = p.b;
  out.b.tail(q.facet_count()) = q.b;
  for (const auto& l : p.labels) out.labels.push_back("p_" + l);
  for (const auto& l : q.labels) out.labels.push_back("q_" + l);
  return out;
}

/// Random objective vector with entries in [-range, range] scaled by /den.
inline RVec random_objective(std::mt19937_64& rng, int n, std::uint64_t range = 40,
                             std::uint64_t den = 7) {
  RVec out(n);
  for (int i = 0; i < n; ++i) out(i) = random_rational(rng, range, den);
  return out;
}

/// A random instance for the agreement suites: a cube (n <= 5) with a few
/// random vertex cuts, or a product of two smaller cut cubes.
struct RandomInstance {
  HPolytope polytope;
  ShadowSpec spec;  // parametric
  VertexBasis start;
};

std::optional<RandomInstance> try_random_instance(std::uint64_t seed, std::uint64_t index);

/// Resamples until an instance with unique generic optima appears.
inline RandomInstance random_instance(std::uint64_t seed, std::uint64_t index) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    if (auto inst = try_random_instance(seed, index * 1000 + attempt)) return std::move(*inst);
  }
}

inline std::optional<RandomInstance> try_random_instance(std::uint64_t seed, std::uint64_t index) {
  auto rng = make_rng(seed, index);
  const bool use_product = draw(rng, 3) == 0;
  HPolytope p;
  if (use_product) {
    HPolytope left = unit_cube(2);
    HPolytope right = unit_cube(1 + static_cast<int>(draw(rng, 2)));
    p = product(left, right);
  } else {
    p = unit_cube(2 + static_cast<int>(draw(rng, 4)));
  }
  const int n = p.dim();

  // A few random vertex cuts with interior directions.
  const int cuts = static_cast<int>(draw(rng, 3));
  for (int k = 0; k < cuts; ++k) {
    auto verts = enumerate_vertices(p, *find_any_vertex(p));
    const auto& v = verts[draw(rng, verts.size())];
    const SimplicialCone cone = normal_cone(p, v);
    RVec w = zero_vector(n);
    for (int i = 0; i < n; ++i) {
      w += random_positive_rational(rng, 12, 5) * RVec(cone.rays.row(i).transpose());
    }
    try {
      p = vertex_cut(p, v, w);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  const RVec w = random_objective(rng, n);
  const RVec c = random_objective(rng, n);
  try {
    ShadowSpec spec(w, c, Convention::parametric);
    auto res = parametric_path(p, spec);
    return RandomInstance{std::move(p), std::move(spec), res.record.vertices.front()};
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace shadowlab::testing
