#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "shadowlab/polytope.hpp"

using namespace shadowlab;
using namespace shadowlab::testing;

TEST_CASE("vertex_from_basis on the unit square") {
  const HPolytope sq = unit_square();
  const std::vector<int> corner{2, 3};  // spec rows {3,4}, 1-based
  auto res = vertex_from_basis(sq, corner);
  REQUIRE(res.outcome == BasisOutcome::vertex);
  CHECK(res.vertex->point == vec({1, 1}));

  const std::vector<int> origin{0, 1};
  res = vertex_from_basis(sq, origin);
  REQUIRE(res.outcome == BasisOutcome::vertex);
  CHECK(res.vertex->point == vec({0, 0}));

  const std::vector<int> parallel{0, 2};  // -x1 and x1
  CHECK(vertex_from_basis(sq, parallel).outcome == BasisOutcome::singular);

  const std::vector<int> bad{0, 0};
  CHECK_THROWS_AS(vertex_from_basis(sq, bad), Error);
}

TEST_CASE("neighbors on square and cube") {
  const HPolytope sq = unit_square();
  const auto at_11 = vertex_at(sq, vec({1, 1}));
  auto nbrs = neighbors(sq, at_11);
  REQUIRE(nbrs.size() == 2);
  CHECK(nbrs[0].leaving == 2);
  CHECK(nbrs[0].vertex.point == vec({0, 1}));
  CHECK(nbrs[1].leaving == 3);
  CHECK(nbrs[1].vertex.point == vec({1, 0}));

  const auto at_00 = vertex_at(sq, vec({0, 0}));
  nbrs = neighbors(sq, at_00);
  std::set<std::pair<Rat, Rat>> points;
  for (const auto& nb : nbrs) points.insert({nb.vertex.point(0), nb.vertex.point(1)});
  CHECK(points == std::set<std::pair<Rat, Rat>>{{1, 0}, {0, 1}});

  const HPolytope cube = unit_cube(3);
  for (const auto& v : enumerate_vertices(cube, cube_origin(cube))) {
    const auto vn = neighbors(cube, v);
    CHECK(vn.size() == 3);
    for (const auto& nb : vn) {
      int hamming = 0;
      for (int i = 0; i < 3; ++i) {
        if (nb.vertex.point(i) != v.point(i)) ++hamming;
      }
      CHECK(hamming == 1);
    }
  }
}

TEST_CASE("neighbors: tight sets differ in exactly one index") {
  auto rng = make_rng(21);
  for (int trial = 0; trial < 12; ++trial) {
    const auto inst = random_instance(21, static_cast<std::uint64_t>(trial));
    const auto verts = enumerate_vertices(inst.polytope, inst.start);
    for (const auto& v : verts) {
      const auto nbrs = neighbors(inst.polytope, v);
      CHECK(static_cast<int>(nbrs.size()) == inst.polytope.dim());
      for (const auto& nb : nbrs) {
        std::vector<int> shared;
        std::set_intersection(v.tight.begin(), v.tight.end(), nb.vertex.tight.begin(),
                              nb.vertex.tight.end(), std::back_inserter(shared));
        CHECK(static_cast<int>(shared.size()) == inst.polytope.dim() - 1);
      }
    }
  }
}

TEST_CASE("enumerate_vertices: squares, cubes, cut square") {
  const HPolytope sq = unit_square();
  CHECK(enumerate_vertices(sq, vertex_at(sq, vec({0, 0}))).size() == 4);

  for (int n = 2; n <= 5; ++n) {
    const HPolytope cube = unit_cube(n);
    CHECK(enumerate_vertices(cube, cube_origin(cube)).size() == (std::size_t{1} << n));
  }

  // Square with the vertex (1,1) cut off: exhaustive basis enumeration over
  // C(5,2) candidate bases is the oracle for the graph traversal.
  HPolytope cut = unit_square();
  cut.a.conservativeResize(5, 2);
  cut.a.row(4) = vec({1, 1}).transpose();
  cut.b.conservativeResize(5);
  cut.b(4) = Rat(3, 2);
  cut.labels.push_back("cut5");
  const auto graph = enumerate_vertices(cut, vertex_at(cut, vec({0, 0})));
  const auto brute = exhaustive_vertex_enumeration(cut, 1000);
  CHECK(graph.size() == 5);
  REQUIRE(graph.size() == brute.size());
  for (std::size_t i = 0; i < graph.size(); ++i) {
    CHECK(graph[i].tight == brute[i].tight);
    CHECK(graph[i].point == brute[i].point);
  }

  CHECK_THROWS_AS(enumerate_vertices(cut, vertex_at(cut, vec({0, 0})), 3), Error);
}

TEST_CASE("is_simple: cube yes, square pyramid no") {
  CHECK(is_simple(unit_cube(3)));

  // Apex (0,0,1) lies on 4 facets in dimension 3.
  HPolytope pyramid;
  pyramid.a = mat({{0, 0, -1}, {1, 0, 1}, {-1, 0, 1}, {0, 1, 1}, {0, -1, 1}});
  pyramid.b = vec({0, 1, 1, 1, 1});
  CHECK_FALSE(is_simple(pyramid));
}

TEST_CASE("normal_cone rays are the tight rows") {
  const HPolytope sq = unit_square();
  CHECK(normal_cone(sq, vertex_at(sq, vec({1, 1}))).rays == mat({{1, 0}, {0, 1}}));
  CHECK(normal_cone(sq, vertex_at(sq, vec({0, 0}))).rays == mat({{-1, 0}, {0, -1}}));
}

TEST_CASE("cone_contains") {
  const SimplicialCone quad{identity(2), std::nullopt};
  CHECK(cone_contains(quad, vec({1, 1}), true));
  CHECK_FALSE(cone_contains(quad, vec({1, 0}), true));  // boundary
  CHECK(cone_contains(quad, vec({1, 0}), false));
  CHECK_FALSE(cone_contains(quad, vec({-1, 1}), false));

  // strict membership implies non-strict
  auto rng = make_rng(31);
  const SimplicialCone cone{mat({{2, 1}, {-1, 3}}), std::nullopt};
  for (int trial = 0; trial < 200; ++trial) {
    const RVec z = vec({random_rational(rng, 9, 4), random_rational(rng, 9, 4)});
    if (cone_contains(cone, z, true)) CHECK(cone_contains(cone, z, false));
  }
}

TEST_CASE("segment_cone_interval frozen cases") {
  const SimplicialCone quad{identity(2), std::nullopt};
  // mu(lambda) = (3l - 1, 2 - 3l); both nonnegative on [1/3, 2/3].
  auto interval = segment_cone_interval(quad, vec({2, -1}), vec({-1, 2}));
  REQUIRE(interval.has_value());
  CHECK(interval->first == Rat(1, 3));
  CHECK(interval->second == Rat(2, 3));

  interval = segment_cone_interval(quad, vec({2, 1}), vec({1, 2}));
  REQUIRE(interval.has_value());
  CHECK(interval->first == 0);
  CHECK(interval->second == 1);

  CHECK_FALSE(segment_cone_interval(quad, vec({-1, -1}), vec({-2, -1})).has_value());
}

TEST_CASE("cone_linf_inradius") {
  // Positive quadrant: facet normals are e1, e2 with ||.||_1 = 1, so the
  // inradius at z is min(z1, z2).
  const SimplicialCone quad{identity(2), std::nullopt};
  CHECK(cone_linf_inradius(quad, vec({1, 1})) == 1);
  CHECK(cone_linf_inradius(quad, vec({2, Rat(1, 3)})) == Rat(1, 3));
  // Cone of the square's cut corner {e1, (1,1)}: inverse rows give normals
  // (1,-1) and (0,1); at (1, 1/2): min(1/4, 1/2) = 1/4.
  const SimplicialCone cut{mat({{1, 0}, {1, 1}}), std::nullopt};
  CHECK(cone_linf_inradius(cut, vec({1, Rat(1, 2)})) == Rat(1, 4));
}

TEST_CASE("validate_polytope rejects bad inputs") {
  HPolytope halfplane;
  halfplane.a = mat({{1, 0}, {0, 1}, {0, -1}});
  halfplane.b = vec({1, 1, 0});
  CHECK_THROWS_AS(validate_polytope(halfplane), Error);  // unbounded in -x1

  HPolytope dup = unit_square();
  dup.a.conservativeResize(5, 2);
  dup.a.row(4) = vec({2, 0}).transpose();  // positive multiple of row 2
  dup.b.conservativeResize(5);
  dup.b(4) = 3;
  dup.labels.push_back("dup");
  CHECK_THROWS_AS(validate_polytope(dup), Error);

  CHECK_NOTHROW(validate_polytope(unit_cube(3)));
}
