#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "skewprod/algebra.hpp"

using namespace skewprod;
using namespace skewprod::testing;

TEST_CASE("torus monomial relation VU = e^{i gamma} UV") {
  AlgebraContext ctx = AlgebraContext::torus(Angle::symbol("s3"));
  AlgebraElement U = alg_monomial(ctx, 1, 0);
  AlgebraElement V = alg_monomial(ctx, 0, 1);
  AlgebraElement UV = alg_mul(U, V);
  AlgebraElement VU = alg_mul(V, U);
  AlgebraElement twisted = alg_scale(UV, PhasedScalar::unit(ctx.gamma));
  CHECK(alg_exact_equal(VU, twisted));
  CHECK(alg_distance(VU, twisted) < 1e-15);
}

TEST_CASE("commutative specializations") {
  AlgebraContext circle = AlgebraContext::circle();
  Rng rng(7);
  AlgebraElement a = rnd_element(rng, circle), b = rnd_element(rng, circle);
  CHECK(alg_distance(alg_mul(a, b), alg_mul(b, a)) < 1e-13);

  AlgebraContext zc = AlgebraContext::zinf_ctx();
  AlgebraElement f = rnd_element(rng, zc), g = rnd_element(rng, zc);
  CHECK(alg_distance(alg_mul(f, g), alg_mul(g, f)) < 1e-13);
}

TEST_CASE("ring laws on random elements") {
  Rng rng(42);
  std::vector<AlgebraContext> ctxs = {AlgebraContext::circle(),
                                      AlgebraContext::torus(Angle::symbol("s3")),
                                      AlgebraContext::zinf_ctx()};
  for (auto& ctx : ctxs)
    for (int trial = 0; trial < 40; ++trial) {
      AlgebraElement a = rnd_element(rng, ctx);
      AlgebraElement b = rnd_element(rng, ctx);
      AlgebraElement c = rnd_element(rng, ctx);
      CHECK(alg_distance(alg_mul(alg_mul(a, b), c), alg_mul(a, alg_mul(b, c))) < 1e-12);
      CHECK(alg_distance(alg_mul(alg_add(a, b), c),
                         alg_add(alg_mul(a, c), alg_mul(b, c))) < 1e-12);
      CHECK(alg_distance(alg_adjoint(alg_adjoint(a)), a) < 1e-14);
      CHECK(alg_distance(alg_adjoint(alg_mul(a, b)),
                         alg_mul(alg_adjoint(b), alg_adjoint(a))) < 1e-12);
      CHECK(alg_distance(alg_mul(a, alg_one(ctx)), a) < 1e-14);
      CHECK(alg_distance(alg_mul(alg_one(ctx), a), a) < 1e-14);
    }
}

TEST_CASE("state is positive, unital, tracial") {
  Rng rng(99);
  for (auto& ctx : {AlgebraContext::torus(Angle::symbol("s3")), AlgebraContext::circle(),
                    AlgebraContext::zinf_ctx()}) {
    CHECK(std::abs(alg_state(alg_one(ctx)) - std::complex<double>(1.0, 0.0)) < 1e-15);
    for (int trial = 0; trial < 40; ++trial) {
      AlgebraElement a = rnd_element(rng, ctx);
      AlgebraElement b = rnd_element(rng, ctx);
      std::complex<double> p = alg_state(alg_mul(alg_adjoint(a), a));
      CHECK(std::abs(p.imag()) < 1e-12);
      CHECK(p.real() > -1e-12);
      CHECK(std::abs(alg_state(alg_mul(a, b)) - alg_state(alg_mul(b, a))) < 1e-12);
      CHECK(std::abs(alg_state(alg_adjoint(a)) - std::conj(alg_state(a))) < 1e-12);
    }
  }
}

TEST_CASE("trace kills nontrivial monomials and keeps exact phases") {
  AlgebraContext ctx = AlgebraContext::torus(Angle::symbol("s3"));
  CHECK(std::abs(alg_state(alg_monomial(ctx, 2, -1))) == 0.0);
  PhasedScalar c = PhasedScalar::unit(Angle::symbol("s1"));
  PhasedScalar tr = alg_state_exact(alg_scalar(ctx, c));
  REQUIRE(tr.phase.has_value());
  CHECK(phase_equal(*tr.phase, Angle::symbol("s1")));
}

TEST_CASE("monomial powers match repeated multiplication") {
  AlgebraContext ctx = AlgebraContext::torus(Angle::symbol("s3", Rational(1, 2)));
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    long long m = rnd_int(rng, -2, 2), n = rnd_int(rng, -2, 2);
    long long k = rnd_int(rng, -4, 4);
    AlgebraElement x = alg_monomial(ctx, m, n);
    auto [mono, coeff] = detail::mono_pow(ctx, {m, n}, k);
    AlgebraElement fast = alg_zero(ctx);
    fast.torus().terms[mono] = coeff;
    AlgebraElement slow = alg_one(ctx);
    AlgebraElement base = k >= 0 ? x : alg_adjoint(x);
    for (long long j = 0; j < std::llabs(k); ++j) slow = alg_mul(slow, base);
    INFO("m=" << m << " n=" << n << " k=" << k);
    CHECK(alg_exact_equal(fast, slow));
  }
}

TEST_CASE("zinf norm and unitarity") {
  AlgebraContext ctx = AlgebraContext::zinf_ctx();
  AlgebraElement f = alg_zinf(ctx, PhasedScalar::one(),
                              {{0, PhasedScalar(std::complex<double>(-1.0, 0.0))}});
  CHECK(is_unitary(f));
  CHECK(alg_norm(f) == Catch::Approx(3.0));  // |1| + |(-1) - 1|
  AlgebraElement g = alg_zinf(ctx, PhasedScalar(std::complex<double>(0.5, 0.0)));
  CHECK_FALSE(is_unitary(g));
}

TEST_CASE("scalar unitary detection") {
  AlgebraContext ctx = AlgebraContext::torus(Angle::symbol("s3"));
  Mono expo;
  PhasedScalar c;
  AlgebraElement x = alg_monomial(ctx, 2, -1, PhasedScalar::unit(Angle::symbol("s2")));
  REQUIRE(is_scalar_unitary(x, &expo, &c));
  CHECK(expo == Mono{2, -1});
  REQUIRE(c.phase.has_value());
  CHECK(phase_equal(*c.phase, Angle::symbol("s2")));
  AlgebraElement two = alg_monomial(ctx, 1, 0, PhasedScalar(std::complex<double>(2.0, 0.0)));
  CHECK_FALSE(is_scalar_unitary(two));
  CHECK_FALSE(is_scalar_unitary(alg_add(alg_one(ctx), alg_monomial(ctx, 1, 0))));
}

TEST_CASE("rotation automorphisms act by exact characters") {
  AlgebraContext ctx = AlgebraContext::circle();
  Automorphism rot = Automorphism::rotation(Angle::symbol("s1"));
  AlgebraElement u3 = alg_monomial(ctx, 3, 0);
  AlgebraElement img = alg_apply(rot, u3);
  AlgebraElement expect = alg_monomial(ctx, 3, 0, PhasedScalar::unit(Angle::symbol("s1", Rational(3))));
  CHECK(alg_exact_equal(img, expect));
}

TEST_CASE("zinf shift moves the finite part and fixes infinity") {
  AlgebraContext ctx = AlgebraContext::zinf_ctx();
  AlgebraElement f = alg_zinf(ctx, PhasedScalar::one(),
                              {{2, PhasedScalar(std::complex<double>(0.0, 1.0))}});
  // (sigma f)(l) = f(l - 1): the exceptional value moves from 2 to 3
  AlgebraElement g = alg_apply(Automorphism::shift(1), f);
  REQUIRE(g.zinf().overrides.count(3) == 1);
  CHECK(g.zinf().overrides.count(2) == 0);
  CHECK(g.zinf().at_inf.exact_equal(PhasedScalar::one()));
}

TEST_CASE("automorphisms respect products, adjoints, and the state") {
  Rng rng(1234);
  for (int trial = 0; trial < 60; ++trial) {
    SkewSystem sys = rnd_system(rng);
    for (const Automorphism& s : {sys.theta, sys.alpha}) {
      AlgebraElement a = rnd_element(rng, sys.ctx);
      AlgebraElement b = rnd_element(rng, sys.ctx);
      CHECK(alg_distance(alg_apply(s, alg_mul(a, b)),
                         alg_mul(alg_apply(s, a), alg_apply(s, b))) < 1e-12);
      CHECK(alg_distance(alg_apply(s, alg_adjoint(a)),
                         alg_adjoint(alg_apply(s, a))) < 1e-12);
      CHECK(std::abs(alg_state(alg_apply(s, a)) - alg_state(a)) < 1e-12);
    }
  }
}

TEST_CASE("composition, inverse, and powers agree with iteration") {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    SkewSystem sys = rnd_system(rng);
    AlgebraElement a = rnd_element(rng, sys.ctx);
    Automorphism comp = auto_compose(sys.ctx, sys.theta, sys.alpha);
    CHECK(alg_distance(alg_apply(comp, a),
                       alg_apply(sys.theta, alg_apply(sys.alpha, a))) < 1e-12);
    Automorphism inv = auto_inverse(sys.ctx, sys.theta);
    CHECK(alg_distance(alg_apply(inv, alg_apply(sys.theta, a)), a) < 1e-12);
    CHECK(alg_distance(alg_apply(sys.theta, alg_apply(inv, a)), a) < 1e-12);
    long long k = rnd_int(rng, -4, 4);
    AlgebraElement fast = auto_pow_apply(sys.ctx, sys.theta, k, a);
    AlgebraElement slow = a;
    const Automorphism& step = k >= 0 ? sys.theta : inv;
    for (long long j = 0; j < std::llabs(k); ++j) slow = alg_apply(step, slow);
    CHECK(alg_distance(fast, slow) < 1e-12);
  }
}

TEST_CASE("matrix-part torus automorphism acts like the classical Anzai map") {
  AlgebraContext ctx = AlgebraContext::torus(Angle());
  TorusAutomorphism t;
  t.phase_u = Angle::symbol("s1");
  t.exp_u = {1, 0};
  t.exp_v = {1, 1};
  Automorphism theta{t};
  // V maps to e^{i phase_v} U V
  AlgebraElement img = alg_apply(theta, alg_monomial(ctx, 0, 1));
  REQUIRE(img.torus().terms.size() == 1);
  CHECK(img.torus().terms.begin()->first == Mono{1, 1});
  // U maps to the rotated U
  AlgebraElement imgU = alg_apply(theta, alg_monomial(ctx, 1, 0));
  REQUIRE(imgU.torus().terms.size() == 1);
  CHECK(imgU.torus().terms.begin()->first == Mono{1, 0});
  REQUIRE(imgU.torus().terms.begin()->second.phase.has_value());
  CHECK(phase_equal(*imgU.torus().terms.begin()->second.phase, Angle::symbol("s1")));
}
