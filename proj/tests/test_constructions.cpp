#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "shadowlab/analysis.hpp"
#include "shadowlab/constructions.hpp"

using namespace shadowlab;
using namespace shadowlab::testing;

TEST_CASE("goldfarb_cube small dimensions") {
  const auto g2 = goldfarb_cube(2);
  CHECK(g2.polytope.facet_count() == 4);
  const auto r2 = parametric_path(g2.polytope, g2.spec, g2.start);
  CHECK(r2.record.length == 3);

  const auto g3 = goldfarb_cube(3);
  CHECK(g3.polytope.facet_count() == 6);
  const auto r3 = parametric_path(g3.polytope, g3.spec, g3.start);
  CHECK(r3.record.length == 7);
  const auto verts = enumerate_vertices(g3.polytope, g3.start);
  CHECK(verts.size() == 8);
  // the path visits each vertex exactly once
  std::set<std::vector<int>> visited;
  for (const auto& v : r3.record.vertices) visited.insert(v.tight);
  CHECK(visited.size() == 8);

  CHECK_THROWS_AS(goldfarb_cube(40), Error);  // dimension cap
  CHECK_THROWS_AS(goldfarb_cube(3, Rat(1, 2)), Error);  // degenerate preset rejected
}

TEST_CASE("vertex_cut: frozen square case") {
  const HPolytope sq = unit_square();
  const auto corner = vertex_at(sq, vec({1, 1}));
  const HPolytope cut = vertex_cut(sq, corner, vec({1, 1}));
  CHECK(cut.facet_count() == 5);
  // auto-eps is half the neighbor gap: cut row (1,1) <= 3/2
  CHECK(cut.a.row(4) == vec({1, 1}).transpose());
  CHECK(cut.b(4) == Rat(3, 2));
  const auto verts = enumerate_vertices(cut, vertex_at(cut, vec({0, 0})));
  CHECK(verts.size() == 5);
  CHECK(is_simple(cut));
  // the new vertices
  CHECK_NOTHROW(vertex_at(cut, vec({1, Rat(1, 2)})));
  CHECK_NOTHROW(vertex_at(cut, vec({Rat(1, 2), 1})));
  // exhaustive basis enumeration agrees with the graph walk
  const auto brute = exhaustive_vertex_enumeration(cut, 1000);
  REQUIRE(brute.size() == verts.size());
  for (std::size_t i = 0; i < brute.size(); ++i) CHECK(brute[i].tight == verts[i].tight);

  // normal cone of the new vertex (1, 1/2): rays e1 and the cut normal (1,1)
  const auto cone = normal_cone(cut, vertex_at(cut, vec({1, Rat(1, 2)})));
  CHECK(cone.rays == mat({{1, 0}, {1, 1}}));
}

TEST_CASE("vertex_cut error paths") {
  const HPolytope sq = unit_square();
  const auto corner = vertex_at(sq, vec({1, 1}));
  try {
    vertex_cut(sq, corner, vec({1, 0}));  // on the cone boundary
    FAIL("expected NotInterior");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_interior);
  }
  try {
    vertex_cut(sq, corner, vec({1, 1}), Rat(1));  // eps == min gap
    FAIL("expected EpsTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::eps_too_large);
  }
  CHECK_NOTHROW(vertex_cut(sq, corner, vec({1, 1}), Rat(99, 100)));
}

TEST_CASE("vertex_cut: 3-cube count and fan refinement") {
  const HPolytope cube = unit_cube(3);
  const auto top = vertex_at(cube, vec({1, 1, 1}));
  const HPolytope cut = vertex_cut(cube, top, vec({1, 1, 1}));
  CHECK(cut.facet_count() == 7);
  const auto verts = enumerate_vertices(cut, vertex_at(cut, vec({0, 0, 0})));
  CHECK(verts.size() == 8 - 1 + 3);
  CHECK(is_simple(cut));

  // Fan refinement: each new vertex's cone equals the old rays with exactly
  // one swapped for w.
  const RMat old_rays = normal_cone(cube, top).rays;
  int new_vertices = 0;
  for (const auto& v : verts) {
    if (std::find(v.tight.begin(), v.tight.end(), 6) == v.tight.end()) continue;
    ++new_vertices;
    const RMat rays = normal_cone(cut, v).rays;
    int swapped = 0, kept = 0;
    for (int i = 0; i < rays.rows(); ++i) {
      const RVec ray = rays.row(i).transpose();
      if (ray == vec({1, 1, 1})) {
        ++swapped;
        continue;
      }
      for (int j = 0; j < old_rays.rows(); ++j) {
        if (ray == RVec(old_rays.row(j).transpose())) {
          ++kept;
          break;
        }
      }
    }
    CHECK(swapped == 1);
    CHECK(kept == 2);
  }
  CHECK(new_vertices == 3);
}

TEST_CASE("thin_cone: frozen square case") {
  const HPolytope sq = unit_square();
  const auto corner = vertex_at(sq, vec({1, 1}));
  const Ball d{vec({1, 1}), Rat(1, 4)};
  const auto res = thin_cone(sq, corner, d);
  CHECK(res.polytope.facet_count() == 6);
  CHECK(res.cut_rows == std::vector<int>{4, 5});
  CHECK(res.new_vertex.tight == std::vector<int>{4, 5});
  // both cut normals lie strictly inside the ball
  for (int row : res.cut_rows) {
    CHECK(ball_contains(d, RVec(res.polytope.a.row(row).transpose())));
  }
  CHECK(is_simple(res.polytope));
  const auto verts = enumerate_vertices(res.polytope, vertex_at(res.polytope, vec({0, 0})));
  CHECK(verts.size() == 6);
  // all original cones except the corner's survive
  for (const RVec pt : {vec({0, 0}), vec({1, 0}), vec({0, 1})}) {
    CHECK_NOTHROW(vertex_at(res.polytope, pt));
  }
}

TEST_CASE("thin_cone: 3-cube and error paths") {
  const HPolytope cube = unit_cube(3);
  const auto top = vertex_at(cube, vec({1, 1, 1}));
  const Ball d{vec({1, 1, 1}), Rat(1, 8)};
  const auto res = thin_cone(cube, top, d);
  CHECK(res.polytope.facet_count() == 9);
  CHECK(res.cut_rows.size() == 3);
  for (int row : res.cut_rows) {
    CHECK(ball_contains(d, RVec(res.polytope.a.row(row).transpose())));
  }
  CHECK(is_simple(res.polytope));

  // center outside the cone
  try {
    thin_cone(cube, top, Ball{vec({1, 1, -1}), Rat(1, 8)});
    FAIL("expected BallNotInterior");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ball_not_interior);
  }
  // ball pokes out of the cone
  try {
    thin_cone(cube, top, Ball{vec({1, 1, 1}), Rat(3, 2)});
    FAIL("expected BallNotInterior");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ball_not_interior);
  }
}

TEST_CASE("thin_cone ball test agrees with the corner oracle") {
  // The inradius form of the open-ball-in-open-cone test must match checking
  // all 2^n corners of the closed box, which is the definitional route.
  auto rng = make_rng(71);
  const HPolytope cube = unit_cube(3);
  const auto top = vertex_at(cube, vec({1, 1, 1}));
  const SimplicialCone cone = normal_cone(cube, top);
  for (int trial = 0; trial < 200; ++trial) {
    RVec center = vec({random_positive_rational(rng, 8, 4), random_positive_rational(rng, 8, 4),
                       random_positive_rational(rng, 8, 4)});
    const Rat radius = random_positive_rational(rng, 4, 4);
    bool corners_ok = true;
    for (int mask = 0; mask < 8; ++mask) {
      RVec corner = center;
      for (int i = 0; i < 3; ++i) corner(i) += ((mask >> i) & 1) ? radius : Rat(-radius);
      if (!cone_contains(cone, corner, /*strict=*/false)) {
        corners_ok = false;
        break;
      }
    }
    const bool inradius_ok =
        cone_contains(cone, center, true) && cone_linf_inradius(cone, center) >= radius;
    CHECK(corners_ok == inradius_ok);
  }
}

TEST_CASE("many_from_one on the deformed 3-cube") {
  const auto g = goldfarb_cube(3);
  const auto res = many_from_one(g.polytope, g.spec);
  CHECK(res.q.facet_count() == 6 + 2 * 3);
  CHECK(res.cert.alpha == 7);
  CHECK(res.cert.segment_points.size() == 8);
  CHECK(res.cert.cut_facets[0].size() == 3);
  CHECK(res.cert.cut_facets[1].size() == 3);
  CHECK(res.cert.epsilon > 0);
  CHECK(is_simple(res.q));

  const auto check = check_certificate(res.q, res.a, res.b, res.cert);
  for (const auto& r : check.reasons) INFO(r);
  CHECK(check.ok);

  // corroborating samples
  const auto rep = sample_shadow_paths(res.q, res.a, res.b, 7, 20, 7);
  CHECK(rep.failures.empty());
  CHECK(rep.min_length >= 7);
}

TEST_CASE("many_from_one sanity case: adjacent optima on the square") {
  const HPolytope sq = unit_square();
  const ShadowSpec spec(vec({-3, -1}), vec({-1, 3}), Convention::parametric);
  const auto res = many_from_one(sq, spec);
  CHECK(res.q.facet_count() == 4 + 2 * 2);
  CHECK(res.cert.alpha == 1);
  const auto check = check_certificate(res.q, res.a, res.b, res.cert);
  CHECK(check.ok);
  const auto rep = sample_shadow_paths(res.q, res.a, res.b, 1, 30, 11);
  CHECK(rep.failures.empty());
  CHECK(rep.min_length >= 1);
}

TEST_CASE("certificate tamper tests") {
  const auto g = goldfarb_cube(3);
  const auto res = many_from_one(g.polytope, g.spec);

  SUBCASE("epsilon doubled") {
    Certificate bad = res.cert;
    bad.epsilon *= 2;
    const auto check = check_certificate(res.q, res.a, res.b, bad);
    CHECK_FALSE(check.ok);
  }
  SUBCASE("thin-cone facet replaced") {
    HPolytope tampered = res.q;
    const int row = res.cert.cut_facets[0][0];
    RVec normal = tampered.a.row(row).transpose();
    normal(0) += 10;  // drags the ray far outside D_w
    tampered.a.row(row) = normal.transpose();
    auto moved = vertex_from_basis(tampered, res.a.tight);
    if (moved.outcome == BasisOutcome::vertex) {
      const auto check = check_certificate(tampered, *moved.vertex, res.b, res.cert);
      CHECK_FALSE(check.ok);
    }
  }
  SUBCASE("segment point nudged off the segment") {
    Certificate bad = res.cert;
    bad.segment_points[1](0) += Rat(1, 1000);
    const auto check = check_certificate(res.q, res.a, res.b, bad);
    CHECK_FALSE(check.ok);
  }
}

TEST_CASE("fixed_c_variant: 3n facets and w-only sampling") {
  const auto g = goldfarb_cube(3);
  const auto res = fixed_c_variant(g.polytope, g.spec);
  CHECK(res.q.facet_count() == 9);  // 3n with m = 2n
  CHECK(res.cert.cut_facets[1].empty());
  const auto check = check_certificate(res.q, res.a, res.b, res.cert);
  for (const auto& r : check.reasons) INFO(r);
  CHECK(check.ok);
  const auto rep = sample_shadow_paths(res.q, res.a, res.b, 7, 20, 13, g.spec.c);
  CHECK(rep.failures.empty());
  CHECK(rep.min_length >= 7);
}

TEST_CASE("compress: frozen maps") {
  // diagonal case: w = e1, k = 4 scales the complement by 1/4, so H-rows
  // (a1, a2) map to (a1, 4 a2)
  const HPolytope sq = unit_square();
  const auto [p4, c4] = compress(sq, vec({1, 2}), CompressSpec{vec({1, 0}), Rat(4)});
  CHECK(RMat(compress_map(CompressSpec{vec({1, 0}), Rat(4)})) == mat({{1, 0}, {0, Rat(1, 4)}}));
  CHECK(p4.a == mat({{-1, 0}, {0, -4}, {1, 0}, {0, 4}}));

  // k = 1 is the identity
  const auto [p1, c1] = compress(sq, vec({1, 2}), CompressSpec{vec({1, 1}), Rat(1)});
  CHECK(p1.a == sq.a);
  CHECK(c1 == vec({1, 2}));

  // w = (1,1), k = 2
  const RMat a2 = compress_map(CompressSpec{vec({1, 1}), Rat(2)});
  CHECK(a2 == mat({{Rat(3, 4), Rat(1, 4)}, {Rat(1, 4), Rat(3, 4)}}));
  CHECK(RVec(a2 * vec({1, 1})) == vec({1, 1}));  // A_k fixes w
}

TEST_CASE("compress invariants on a cube") {
  const HPolytope cube = unit_cube(3);
  const RVec c = vec({1, 2, 4});
  const CompressSpec spec{vec({1, 2, -1}), Rat(8)};
  const RMat fwd = compress_map(spec);
  const RMat inv = compress_map_inverse(spec);
  CHECK(RMat(fwd * inv) == identity(3));
  CHECK(fwd == RMat(fwd.transpose()));
  const auto [pk, ck] = compress(cube, c, spec);
  const auto verts = enumerate_vertices(cube, cube_origin(cube));
  for (const auto& u : verts) {
    for (const auto& v : verts) {
      const RVec du = fwd * u.point - fwd * v.point;
      CHECK(dot(ck, du) == dot(c, RVec(u.point - v.point)));
    }
  }
}

TEST_CASE("find_k_for_norm on the deformed 3-cube") {
  const auto g = goldfarb_cube(3);
  for (const auto& norm : {NormSpec::l1(), NormSpec::l2(), NormSpec::linf()}) {
    const auto res = find_k_for_norm(g.polytope, g.spec, g.start, norm);
    CHECK(res.record.length == 7);
    CHECK(res.k >= 2);
  }
  // cap below any workable k
  CHECK_THROWS_AS(find_k_for_norm(g.polytope, g.spec, g.start, NormSpec::l2(), Rat(1)), Error);
}

TEST_CASE("canonicalize_w_to_e1: frozen transforms and path preservation") {
  const HPolytope sq = unit_square();
  const auto start00 = vertex_at(sq, vec({0, 0}));

  // w = e1 gives T = I (parametric spec with w = -e1 canonicalizes -e1... use
  // explicit parametric w = e1: maximized at x1 = 1 side; pick start there)
  {
    const ShadowSpec spec(vec({1, 0}), vec({0, 1}), Convention::parametric);
    const auto res = canonicalize_w_to_e1(sq, spec, vertex_at(sq, vec({1, 0})));
    CHECK(res.t == identity(2));
  }
  {
    const ShadowSpec spec(vec({2, 0}), vec({0, 1}), Convention::parametric);
    const auto res = canonicalize_w_to_e1(sq, spec, vertex_at(sq, vec({1, 0})));
    CHECK(res.t == mat({{Rat(1, 2), 0}, {0, 1}}));
    CHECK(RVec(res.t * vec({2, 0})) == vec({1, 0}));
  }
  {
    const ShadowSpec spec(vec({1, 1}), vec({Rat(1), Rat(3)}), Convention::parametric);
    const auto res = canonicalize_w_to_e1(sq, spec, vertex_at(sq, vec({1, 1})));
    CHECK(RVec(res.t * vec({1, 1})) == vec({1, 0}));
    CHECK(res.spec.w == vec({1, 0}));
  }

  // Path lengths and vertex order are preserved on the deformed cube.
  const auto g = goldfarb_cube(3);
  const auto before = parametric_path(g.polytope, g.spec, g.start);
  const auto canon = canonicalize_w_to_e1(g.polytope, g.spec, g.start);
  const auto after = parametric_path(canon.polytope, canon.spec, canon.start);
  CHECK(after.record.length == before.record.length);
  for (std::size_t i = 0; i < after.record.vertices.size(); ++i) {
    CHECK(after.record.vertices[i].tight == before.record.vertices[i].tight);
  }
  CHECK(local_path_agreement(canon.polytope, canon.spec, canon.start));
  (void)start00;
}

TEST_CASE("battery on a canonicalized compressed instance (smoke)") {
  const auto g = goldfarb_cube(3);
  const auto canon = canonicalize_w_to_e1(g.polytope, g.spec, g.start);
  const NormSpec norms[] = {NormSpec::l1(), NormSpec::l2(), NormSpec::linf(),
                            NormSpec::lp(Rat(3, 2))};
  bool passed = false;
  for (Rat k = 2; k <= 4096; k *= 2) {
    const CompressSpec cs{canon.spec.parametric_w(), k};
    const auto [pk, ck] = compress(canon.polytope, canon.spec.c, cs);
    const auto rep = all_norms_battery(pk, ck, compress_vertex(cs, canon.start), norms);
    if (rep.failures.empty()) {
      passed = true;
      break;
    }
  }
  CHECK(passed);
}
