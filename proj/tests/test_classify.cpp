#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "skewprod/classify.hpp"

using namespace skewprod;
using namespace skewprod::testing;

TEST_CASE("double rotation classification") {
  for (long long l : {2LL, 3LL, 5LL}) {
    PresetParams p;
    p.l = l;
    Classification c = classify(make_preset("double-rotation", p));
    INFO("l=" << l);
    CHECK_FALSE(c.topologically_ergodic);
    CHECK_FALSE(c.ergodic_and_uniquely_ergodic);
    CHECK_FALSE(c.weakly_clustering);
    CHECK_FALSE(c.strictly_ergodic);
    CHECK(c.ue_wrt_fixed_point == UeFixedPoint::yes);
    REQUIRE(c.fixed_point.group_generator.has_value());
    CHECK(*c.fixed_point.group_generator == l);
    CHECK(c.fixed_point.shape == FixedPointDescription::Shape::circle_algebra);
  }
}

TEST_CASE("independent nc torus is sharply ergodic") {
  Classification c = classify(make_preset("nctorus-independent"));
  CHECK(c.topologically_ergodic);
  CHECK(c.ergodic_and_uniquely_ergodic);
  CHECK(c.weakly_clustering);
  CHECK(c.strictly_ergodic);
  CHECK(c.sharply_ergodic);
  CHECK(c.minimal_implied);
  CHECK(c.ue_wrt_fixed_point == UeFixedPoint::yes);
  CHECK(c.fixed_point.shape == FixedPointDescription::Shape::trivial_scalars);
}

TEST_CASE("zinf examples split continuous and measurable behaviour") {
  Classification irr = classify(make_preset("zinf"));
  CHECK(irr.topologically_ergodic);
  CHECK_FALSE(irr.ergodic_and_uniquely_ergodic);
  CHECK(irr.ue_wrt_fixed_point == UeFixedPoint::no);

  PresetParams p;
  p.beta_minus_one = true;
  Classification half = classify(make_preset("zinf", p));
  CHECK_FALSE(half.topologically_ergodic);
  REQUIRE(half.fixed_point.group_generator.has_value());
  CHECK(*half.fixed_point.group_generator == 2);
  CHECK(half.ue_wrt_fixed_point == UeFixedPoint::no);
}

TEST_CASE("anzai inverse gives the whole group") {
  for (bool nc : {false, true}) {
    PresetParams p;
    p.nc_variant = nc;
    Classification c = classify(make_preset("anzai-inverse", p));
    REQUIRE(c.fixed_point.group_generator.has_value());
    CHECK(*c.fixed_point.group_generator == 1);
    CHECK(c.ue_wrt_fixed_point == UeFixedPoint::yes);
  }
}

TEST_CASE("classification carries per-level evidence") {
  Classification c = classify(make_preset("double-rotation"));
  CHECK_FALSE(c.evidence.empty());
  for (auto& rep : c.evidence) {
    if (rep.level == 0) continue;
    CHECK(rep.continuous.has_value() == (rep.level % 3 == 0));
  }
}

TEST_CASE("require_valid error taxonomy") {
  SkewSystem bad = make_preset("double-rotation");
  bad.u = alg_scalar(bad.ctx, PhasedScalar(std::complex<double>(2.0, 0.0)));
  CHECK_THROWS_AS(require_valid(bad), InvalidSystem);

  SkewSystem rational = make_preset("double-rotation");
  rational.theta = Automorphism::rotation(Angle::turns(Rational(1, 4)));
  CHECK_THROWS_AS(require_valid(rational), HypothesisViolation);
}

TEST_CASE("classical process detection") {
  CHECK(is_classical_process(make_preset("double-rotation")));
  CHECK(is_classical_process(make_preset("zinf")));
  CHECK_FALSE(is_classical_process(make_preset("nctorus-independent")));
  PresetParams p;
  p.nc_variant = true;
  CHECK_FALSE(is_classical_process(make_preset("anzai-inverse", p)));
}

TEST_CASE("conditional expectation projects onto the fixed-point algebra") {
  PresetParams p;
  p.l = 3;
  SkewSystem sys = make_preset("double-rotation", p);
  FixedPointDescription fp = detect_group(sys);
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    CrossedElement x = rnd_crossed(rng, sys.ctx, sys.alpha);
    CrossedElement e = conditional_expectation_phi(sys, fp, x);
    // idempotent
    CHECK(cp_distance(conditional_expectation_phi(sys, fp, e), e) < 1e-12);
    // invariant under the dynamics
    CHECK(cp_distance(skew_apply(sys, e), e) < 1e-12);
    // only group modes survive
    for (auto& [k, a] : e.modes) CHECK(k % 3 == 0);
    // state preserving
    CHECK(std::abs(cp_state(e) - cp_state(x)) < 1e-12);
  }
  // fixed-point elements are reproduced
  CrossedElement w3 = cp_from_mode(3, fp.generators.at(1), sys.alpha);
  CHECK(cp_distance(conditional_expectation_phi(sys, fp, w3), w3) < 1e-13);
}

TEST_CASE("expectation formula picks the right coefficient") {
  PresetParams p;
  p.l = 3;
  SkewSystem sys = make_preset("double-rotation", p);
  FixedPointDescription fp = detect_group(sys);
  // x = V^3 U^0 * (2 + i) + V^1: the V^1 part dies, the V^3 part keeps its
  // omega_0(w_{-3} a) coefficient
  CrossedElement x =
      cp_add(cp_from_mode(3, alg_scalar(sys.ctx, PhasedScalar(std::complex<double>(2.0, 1.0))),
                          sys.alpha),
             cp_from_mode(1, alg_one(sys.ctx), sys.alpha));
  CrossedElement e = conditional_expectation_phi(sys, fp, x);
  REQUIRE(e.modes.size() == 1);
  REQUIRE(e.modes.count(3) == 1);
  CHECK(std::abs(alg_state(e.modes.at(3)) - std::complex<double>(2.0, 1.0)) < 1e-13);
}

TEST_CASE("cesaro averages trend toward the conditional expectation") {
  PresetParams p;
  p.l = 3;
  SkewSystem sys = make_preset("double-rotation", p);
  FixedPointDescription fp = detect_group(sys);
  CrossedElement x = cp_from_mode(1, alg_one(sys.ctx), sys.alpha);
  AverageDiagnostics d = cesaro_orbit_average(sys, x, 400, fp);
  REQUIRE_FALSE(d.trace.empty());
  CHECK(d.trace.front().first == 1);
  CHECK(d.trace.back().first == 400);
  CHECK(d.trace.back().second < d.trace.front().second);
  // fixed points have identically zero traces
  CrossedElement w = cp_from_mode(3, fp.generators.at(1), sys.alpha);
  AverageDiagnostics dw = cesaro_orbit_average(sys, w, 100, fp);
  for (auto& [j, dist] : dw.trace) CHECK(dist < 1e-12);
  CHECK(dw.converging);
}

TEST_CASE("gns projection residual shrinks with the average length") {
  PresetParams p;
  p.l = 3;
  SkewSystem sys = make_preset("double-rotation", p);
  double r100 = gns_cesaro_check(sys, 1, alg_one(sys.ctx), 100, 8);
  double r1000 = gns_cesaro_check(sys, 1, alg_one(sys.ctx), 1000, 8);
  CHECK(r1000 < r100);
  CHECK(r1000 < 0.1);
  // a fixed vector has residual 0
  FixedPointDescription fp = detect_group(sys);
  double rf = gns_cesaro_check(sys, 3, fp.generators.at(1), 50, 8);
  CHECK(rf < 1e-12);
}

TEST_CASE("pointwise birkhoff products on the zinf example") {
  PresetParams p;
  p.beta_minus_one = true;
  SkewSystem sys = make_preset("zinf", p);
  for (long long n = 1; n <= 8; ++n) {
    // starting right of the support never meets the exceptional point
    CHECK(std::abs(birkhoff_pointwise(sys, 3, n).orbit_coefficient -
                   std::complex<double>(1.0, 0.0)) < 1e-14);
  }
  std::complex<double> f0 = sys.u.zinf().overrides.at(0).value();
  for (long long n = 3; n <= 8; ++n)
    CHECK(std::abs(birkhoff_pointwise(sys, -2, n).orbit_coefficient - f0) < 1e-14);
  CHECK_THROWS(birkhoff_pointwise(make_preset("double-rotation"), 0, 5));
}

TEST_CASE("invariant measure functional reproduces the state on Haar input") {
  PresetParams p;
  p.l = 3;
  SkewSystem sys = make_preset("double-rotation", p);
  FixedPointDescription fp = detect_group(sys);
  Rng rng(1001);
  std::map<long long, std::complex<double>> haar{{0, {1.0, 0.0}}};
  for (int trial = 0; trial < 20; ++trial) {
    CrossedElement F = rnd_crossed(rng, sys.ctx, sys.alpha);
    CHECK(std::abs(invariant_measure_functional(sys, fp, haar, F) - cp_state(F)) < 1e-12);
  }
  // malformed characteristic sequences are rejected
  std::map<long long, std::complex<double>> bad{{0, {2.0, 0.0}}};
  CHECK_THROWS(invariant_measure_functional(sys, fp, bad, cp_one(sys.ctx, sys.alpha)));
  std::map<long long, std::complex<double>> nonherm{
      {0, {1.0, 0.0}}, {1, {0.5, 0.0}}, {-1, {0.0, 0.5}}};
  CHECK_THROWS(invariant_measure_functional(sys, fp, nonherm, cp_one(sys.ctx, sys.alpha)));
  // noncommutative systems are refused
  CHECK_THROWS(invariant_measure_functional(make_preset("nctorus-independent"), fp, haar,
                                            cp_one(sys.ctx, sys.alpha)));
}

TEST_CASE("invariant measure functionals are positive and invariant") {
  PresetParams p;
  p.l = 3;
  SkewSystem sys = make_preset("double-rotation", p);
  FixedPointDescription fp = detect_group(sys);
  Rng rng(2002);
  for (int trial = 0; trial < 10; ++trial) {
    // a genuine measure: convex combination of point masses on the circle
    std::map<long long, std::complex<double>> mu;
    int atoms = 1 + static_cast<int>(rnd_int(rng, 0, 2));
    std::vector<double> wts(atoms), pos(atoms);
    double tot = 0;
    for (int j = 0; j < atoms; ++j) {
      wts[j] = rnd_real(rng, 0.1, 1.0);
      pos[j] = rnd_real(rng, 0.0, 1.0);
      tot += wts[j];
    }
    for (long long l = -3; l <= 3; ++l) {
      std::complex<double> v(0.0, 0.0);
      for (int j = 0; j < atoms; ++j)
        v += (wts[j] / tot) * std::exp(std::complex<double>(0.0, -2 * M_PI * pos[j] * l));
      mu[l] = v;
    }
    CrossedElement F = rnd_crossed(rng, sys.ctx, sys.alpha);
    std::complex<double> sq =
        invariant_measure_functional(sys, fp, mu, cp_mul(cp_adjoint(F), F));
    CHECK(sq.real() > -1e-10);
    CHECK(std::abs(sq.imag()) < 1e-10);
    std::complex<double> before = invariant_measure_functional(sys, fp, mu, F);
    std::complex<double> after = invariant_measure_functional(sys, fp, mu, skew_apply(sys, F));
    CHECK(std::abs(before - after) < 1e-10);
  }
}
