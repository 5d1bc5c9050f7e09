#pragma once

#include <random>

#include "skewprod/classify.hpp"
#include "skewprod/presets.hpp"

namespace skewprod::testing {

using Rng = std::mt19937_64;

inline long long rnd_int(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline double rnd_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::complex<double> rnd_complex(Rng& rng, double radius = 1.0) {
  return {rnd_real(rng, -radius, radius), rnd_real(rng, -radius, radius)};
}

// a random angle with denominators kept small so character equations stay
// inside modest truncation windows
inline Angle rnd_angle(Rng& rng, bool force_symbol) {
  Rational q0(rnd_int(rng, -5, 5), rnd_int(rng, 1, 6));
  Angle a = Angle::turns(q0);
  long long c = rnd_int(rng, -2, 2);
  if (force_symbol && c == 0) c = 1;
  return a + Angle::symbol("s1", Rational(c));
}

// circle-algebra skew product with rotation base and scalar cocycle
inline SkewSystem rnd_circle_system(Rng& rng) {
  SkewSystem sys;
  sys.ctx = AlgebraContext::circle();
  sys.theta = Automorphism::rotation(rnd_angle(rng, true));
  sys.alpha = rnd_int(rng, 0, 1) ? Automorphism::rotation(rnd_angle(rng, false))
                                 : Automorphism::identity(sys.ctx);
  sys.u = alg_scalar(sys.ctx, PhasedScalar::unit(rnd_angle(rng, false)));
  sys.flags = {true, true};
  return sys;
}

// sequence-algebra skew product with shift base and unimodular step cocycle
inline SkewSystem rnd_zinf_system(Rng& rng, long long alpha_step = 0) {
  SkewSystem sys;
  sys.ctx = AlgebraContext::zinf_ctx();
  sys.theta = Automorphism::shift(rnd_int(rng, 0, 1) ? 1 : -1);
  sys.alpha = Automorphism::shift(alpha_step);
  std::map<long long, PhasedScalar> over;
  for (long long l = -2; l <= 2; ++l)
    if (rnd_int(rng, 0, 1)) over[l] = PhasedScalar::unit(rnd_angle(rng, false));
  sys.u = alg_zinf(sys.ctx, PhasedScalar::unit(rnd_angle(rng, false)), over);
  sys.flags = {false, true};
  return sys;
}

// noncommutative torus system with a matrix-part base map
inline SkewSystem rnd_nctorus_system(Rng& rng) {
  SkewSystem sys;
  sys.ctx = AlgebraContext::torus(Angle::symbol("s3", Rational(rnd_int(rng, 1, 2))));
  TorusAutomorphism t;
  t.phase_u = rnd_angle(rng, true);
  t.phase_v = Angle::symbol("s2", Rational(rnd_int(rng, -1, 1)));
  if (rnd_int(rng, 0, 1)) {
    t.exp_u = {1, 0};
    t.exp_v = {rnd_int(rng, -1, 1), 1};
  }
  sys.theta = Automorphism{t};
  // alpha must commute with theta: a U-phase on alpha breaks that when theta
  // has a matrix part, so only rotate the second generator
  sys.alpha = rnd_int(rng, 0, 1)
                  ? Automorphism::rotation(Angle(), rnd_angle(rng, false))
                  : Automorphism::identity(sys.ctx);
  sys.u = alg_scalar(sys.ctx, PhasedScalar::unit(rnd_angle(rng, false)));
  sys.flags = {true, true};
  return sys;
}

inline SkewSystem rnd_system(Rng& rng) {
  switch (rnd_int(rng, 0, 2)) {
    case 0: return rnd_circle_system(rng);
    case 1: return rnd_zinf_system(rng, rnd_int(rng, -1, 1));
    default: return rnd_nctorus_system(rng);
  }
}

inline AlgebraElement rnd_element(Rng& rng, const AlgebraContext& ctx) {
  if (ctx.kind == AlgebraContext::Kind::nc_torus) {
    AlgebraElement e = alg_zero(ctx);
    long long terms = rnd_int(rng, 1, 3);
    for (long long t = 0; t < terms; ++t) {
      long long m = rnd_int(rng, -2, 2);
      long long n = ctx.generators == 2 ? rnd_int(rng, -2, 2) : 0;
      e = alg_add(e, alg_monomial(ctx, m, n, PhasedScalar(rnd_complex(rng))));
    }
    return e;
  }
  std::map<long long, PhasedScalar> over;
  long long terms = rnd_int(rng, 0, 3);
  for (long long t = 0; t < terms; ++t)
    over[rnd_int(rng, -3, 3)] = PhasedScalar(rnd_complex(rng));
  return alg_zinf(ctx, PhasedScalar(rnd_complex(rng)), over);
}

inline CrossedElement rnd_crossed(Rng& rng, const AlgebraContext& ctx,
                                  const Automorphism& alpha) {
  CrossedElement x = cp_zero(ctx, alpha);
  long long modes = rnd_int(rng, 1, 3);
  for (long long t = 0; t < modes; ++t)
    x = cp_add(x, cp_from_mode(rnd_int(rng, -3, 3), rnd_element(rng, ctx), alpha));
  return x;
}

}  // namespace skewprod::testing
