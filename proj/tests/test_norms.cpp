#include "doctest.h"
#include "helpers.hpp"
#include "shadowlab/norms.hpp"

using namespace shadowlab;
using namespace shadowlab::testing;

TEST_CASE("norm_eval frozen values") {
  const auto l2 = norm_eval(NormSpec::l2(), vec({3, 4}));
  CHECK(l2.form == NormValue::Form::squared);
  CHECK(l2.squared == 25);
  CHECK(l2.exact == 5);  // perfect square reported exactly

  const auto l1 = norm_eval(NormSpec::l1(), vec({Rat(1, 2), Rat(-1, 3)}));
  CHECK(l1.form == NormValue::Form::exact);
  CHECK(l1.exact == Rat(5, 6));

  const auto li = norm_eval(NormSpec::linf(), vec({-2, Rat(3, 2)}));
  CHECK(li.exact == 2);

  const auto wl1 = norm_eval(NormSpec::weighted_l1(vec({1, 4})), vec({1, -1}));
  CHECK(wl1.exact == 5);

  const auto poly = norm_eval(NormSpec::polyhedral(mat({{1, 0}, {0, 1}, {1, 1}})), vec({2, -3}));
  CHECK(poly.exact == 3);  // max(|2|, |-3|, |2-3|)
}

TEST_CASE("lp interval encloses known values") {
  const auto p2 = NormSpec::lp(Rat(2));
  const auto iv = norm_interval(p2, vec({3, 4}), 128);
  CHECK(iv.contains(Rat(5)));
  CHECK(iv.lo_double() == doctest::Approx(5.0));

  // lp(3) of (1,1): 2^(1/3)
  const auto p3 = NormSpec::lp(Rat(3));
  const auto iv3 = norm_interval(p3, vec({1, 1}), 128);
  CHECK(iv3.lo_double() == doctest::Approx(1.2599210498948732).epsilon(1e-12));
  CHECK(iv3.hi_double() == doctest::Approx(1.2599210498948732).epsilon(1e-12));
}

TEST_CASE("norm axioms: exact kinds, exactly") {
  auto rng = make_rng(41);
  const NormSpec kinds[] = {NormSpec::l1(), NormSpec::linf(),
                            NormSpec::weighted_l1(vec({1, 2, Rat(1, 3)})),
                            NormSpec::polyhedral(mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 2}}))};
  for (const auto& spec : kinds) {
    for (int trial = 0; trial < 1000; ++trial) {
      RVec x = random_objective(rng, 3, 25, 8);
      RVec y = random_objective(rng, 3, 25, 8);
      if (x.isZero()) x(0) = 1;
      const Rat nx = norm_exact(spec, x);
      CHECK(nx > 0);  // positivity on nonzero vectors
      Rat lambda = random_rational(rng, 9, 4);
      const Rat abs_lambda = lambda < 0 ? Rat(-lambda) : lambda;
      CHECK(norm_exact(spec, RVec(lambda * x)) == abs_lambda * nx);   // homogeneity
      CHECK(norm_exact(spec, RVec(x + y)) <= nx + norm_exact(spec, y));  // triangle
    }
  }
}

TEST_CASE("norm axioms: l2 squared form and lp certified intervals") {
  auto rng = make_rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    RVec x = random_objective(rng, 3, 25, 8);
    if (x.isZero()) x(0) = 1;
    CHECK(l2_norm_squared(x) > 0);
    Rat lambda = random_rational(rng, 9, 4);
    CHECK(l2_norm_squared(RVec(lambda * x)) == lambda * lambda * l2_norm_squared(x));
  }
  const auto p32 = NormSpec::lp(Rat(3, 2));
  for (int trial = 0; trial < 100; ++trial) {
    RVec x = random_objective(rng, 3, 25, 8);
    RVec y = random_objective(rng, 3, 25, 8);
    if (x.isZero()) x(0) = 1;
    const auto nx = norm_interval(p32, x, 192);
    CHECK(nx.hi_double() > 0);
    // homogeneity: enclosures of eta(lambda x) and |lambda| eta(x) must agree
    Rat lambda = random_rational(rng, 9, 4);
    if (lambda == 0) lambda = 2;
    auto lhs = norm_interval(p32, RVec(lambda * x), 192);
    auto rhs = nx;
    rhs.mul(MpfrInterval::from_rat_abs(lambda, 192));
    CHECK(lhs.overlaps(rhs));
    // triangle: eta(x+y) certifiably not greater than eta(x) + eta(y)
    auto sum = nx;
    sum.add(norm_interval(p32, y, 192));
    const auto both = norm_interval(p32, RVec(x + y), 192);
    CHECK_FALSE(sum.certainly_less(both));
  }
}

TEST_CASE("regularity") {
  CHECK(is_regular(NormSpec::l1(), 4));
  CHECK(is_regular(NormSpec::l2(), 4));
  CHECK(is_regular(NormSpec::lp(Rat(7, 2)), 4));
  CHECK(is_regular(NormSpec::weighted_l1(vec({1, 1})), 2));
  CHECK_FALSE(is_regular(NormSpec::weighted_l1(vec({1, 2})), 2));
  CHECK(is_regular(NormSpec::polyhedral(mat({{1, 0}, {0, -1}, {Rat(1, 2), Rat(1, 2)}})), 2));
  CHECK_FALSE(is_regular(NormSpec::polyhedral(mat({{2, 0}, {0, 1}})), 2));
  CHECK_THROWS_AS(require_regular(NormSpec::weighted_l1(vec({1, 2})), 2), Error);

  NormSpec flagged = NormSpec::weighted_l1(vec({1, 2}));
  flagged.regular_required = true;
  CHECK_THROWS_AS(norm_eval(flagged, vec({1, 1})), Error);
}

TEST_CASE("compare_ratio") {
  // l2: ratios 1/5 vs 1/1 on (3,4) and (1,0)
  CHECK(compare_ratio(NormSpec::l2(), Rat(1), vec({3, 4}), Rat(1), vec({1, 0})) == RatioCmp::less);
  CHECK(compare_ratio(NormSpec::l2(), Rat(1), vec({3, 4}), Rat(1), vec({4, 3})) == RatioCmp::equal);
  CHECK(compare_ratio(NormSpec::l1(), Rat(2), vec({1, 1}), Rat(1), vec({1, 1})) == RatioCmp::greater);
  // lp: certified separation
  CHECK(compare_ratio(NormSpec::lp(Rat(3)), Rat(1), vec({1, 1}), Rat(1), vec({1, 0})) ==
        RatioCmp::less);
  // identical values can never be separated: budget exhausts
  CHECK(compare_ratio(NormSpec::lp(Rat(3)), Rat(1), vec({1, 1}), Rat(1), vec({1, 1})) ==
        RatioCmp::uncertifiable);
}

TEST_CASE("plugin registration spot-checks homogeneity") {
  // A positively homogeneous non-norm normalization: l2 + l1 mix.
  auto good = [](const RVec& x, mpfr_prec_t prec) {
    MpfrInterval out = MpfrInterval::from_rat(l2_norm_squared(x), prec);
    out.sqrt_inplace();
    out.add(MpfrInterval::from_rat(l1_norm(x), prec));
    return out;
  };
  CHECK_NOTHROW(NormSpec::plugin("l2_plus_l1", 3, good));

  // Shifted by a constant: homogeneity fails, registration must reject.
  auto bad = [](const RVec& x, mpfr_prec_t prec) {
    MpfrInterval out = MpfrInterval::from_rat(l1_norm(x), prec);
    out.add(MpfrInterval::from_rat(Rat(1), prec));
    return out;
  };
  CHECK_THROWS_AS(NormSpec::plugin("shifted_l1", 3, bad), Error);
}

TEST_CASE("parse_norm_spec") {
  CHECK(parse_norm_spec("l1").kind() == NormKind::l1);
  CHECK(parse_norm_spec("l2").kind() == NormKind::l2);
  CHECK(parse_norm_spec("linf").kind() == NormKind::linf);
  const auto lp = parse_norm_spec("lp:3/2");
  CHECK(lp.kind() == NormKind::lp);
  CHECK(lp.p_value() == Rat(3, 2));
  const auto wl1 = parse_norm_spec("wl1:1,2,5/3");
  CHECK(wl1.kind() == NormKind::weighted_l1);
  CHECK(wl1.weights() == vec({1, 2, Rat(5, 3)}));
  CHECK_THROWS_AS(parse_norm_spec("lp:1"), Error);
  CHECK_THROWS_AS(parse_norm_spec("nope"), Error);
  auto loader = [](const std::string&) { return mat({{1, 0}, {0, 1}}); };
  CHECK(parse_norm_spec("poly:somefile", loader).kind() == NormKind::polyhedral);
}
