#pragma once

#include "crossed.hpp"

namespace skewprod {

struct SkewFlags {
  bool omega0_faithful = true;
  bool support_central = true;
};

// Phi(a) = theta(a) on A, Phi(V) = uV, acting on A x_alpha Z
struct SkewSystem {
  AlgebraContext ctx;
  Automorphism theta;
  Automorphism alpha;
  AlgebraElement u;
  SkewFlags flags;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> errors;

  void fail(std::string msg) {
    ok = false;
    errors.push_back(std::move(msg));
  }
};

namespace detail {

inline std::vector<AlgebraElement> generator_samples(const AlgebraContext& ctx) {
  std::vector<AlgebraElement> g;
  if (ctx.kind == AlgebraContext::Kind::nc_torus) {
    g.push_back(alg_monomial(ctx, 1, 0));
    if (ctx.generators == 2) g.push_back(alg_monomial(ctx, 0, 1));
  } else {
    g.push_back(alg_zinf(ctx, PhasedScalar::zero(), {{0, PhasedScalar::one()}}));
    g.push_back(alg_zinf(ctx, PhasedScalar::one(),
                         {{1, PhasedScalar(std::complex<double>(0.5, 0.0))}}));
  }
  return g;
}

// is there a nonzero fixed monomial of theta with trivial phase?
inline bool torus_base_ergodic(const AlgebraContext& ctx, const TorusAutomorphism& t) {
  long long a = t.exp_u[0] - 1, b = t.exp_v[0];
  long long c = t.exp_u[1], d = t.exp_v[1] - 1;
  // fixed monomials: (M - I)(m,n)^T = 0
  auto phase_of = [&](long long m, long long n) {
    auto [k, coeff] = auto_mono(ctx, t, {m, n});
    (void)k;
    return coeff.phase ? *coeff.phase : Angle(ctx.basis);
  };
  long long det = a * d - b * c;
  if (det != 0) return true;  // only (0,0) fixed
  if (a == 0 && b == 0 && c == 0 && d == 0) {
    // every monomial fixed: need no nontrivial character relation
    Angle pu = phase_of(1, 0), pv = phase_of(0, 1);
    // exists (m,n) != 0 with m*pu + n*pv trivial?
    // n = 0: m*pu trivial for some m != 0 iff pu has no symbols (rational)
    if (!pu.has_symbol_part()) return false;
    if (ctx.generators == 1) return true;
    if (!pv.has_symbol_part()) return false;
    // n != 0: solve m*pu + n*pv trivial, i.e. solve_character(pu, pv, n)
    // solvable for some n iff minimal_level(pu, pv) exists
    return !minimal_level(pu, pv).has_value();
  }
  // rank one kernel: primitive direction
  long long km, kn;
  if (a != 0 || b != 0) {
    km = -b;
    kn = a;
  } else {
    km = -d;
    kn = c;
  }
  long long g = std::gcd(std::llabs(km), std::llabs(kn));
  if (g == 0) return true;
  km /= g;
  kn /= g;
  if (c * km + d * kn != 0 || a * km + b * kn != 0) return true;  // direction not in kernel
  Angle psi = phase_of(km, kn);
  // t*psi trivial for some t != 0 iff psi purely rational
  return psi.has_symbol_part();
}

}  // namespace detail

inline bool base_topologically_ergodic(const AlgebraContext& ctx, const Automorphism& theta) {
  if (ctx.kind == AlgebraContext::Kind::zinf) return theta.zinf().step != 0;
  return detail::torus_base_ergodic(ctx, theta.torus());
}

inline ValidationReport skew_validate(const SkewSystem& sys) {
  ValidationReport rep;
  if (!same_context(sys.ctx, sys.u.ctx)) rep.fail("cocycle unitary lives in a different algebra");
  bool torus_ctx = sys.ctx.kind == AlgebraContext::Kind::nc_torus;
  if (sys.theta.is_torus() != torus_ctx || sys.alpha.is_torus() != torus_ctx) {
    rep.fail("automorphism kind does not match the algebra");
    return rep;
  }
  if (torus_ctx) {
    long long dt = sys.theta.torus().det(), da = sys.alpha.torus().det();
    if (dt != 1 && dt != -1) rep.fail("theta exponent matrix not invertible over Z");
    if (da != 1 && da != -1) rep.fail("alpha exponent matrix not invertible over Z");
    if (sys.ctx.generators == 1) {
      if (!sys.ctx.gamma.is_trivial_phase()) rep.fail("C(T) requires trivial gamma");
      auto one_gen = [](const TorusAutomorphism& t) {
        return t.exp_u[0] == 1 && t.exp_u[1] == 0;
      };
      if (!one_gen(sys.theta.torus()) || !one_gen(sys.alpha.torus()))
        rep.fail("automorphism moves off the single-generator line");
    }
  }
  if (!rep.ok) return rep;
  if (!is_unitary(sys.u)) rep.fail("u is not unitary");
  // intertwining u (alpha theta)(a) = (theta alpha)(a) u on generators
  auto at = auto_compose(sys.ctx, sys.alpha, sys.theta);
  auto ta = auto_compose(sys.ctx, sys.theta, sys.alpha);
  for (const auto& g : detail::generator_samples(sys.ctx)) {
    AlgebraElement lhs = alg_mul(sys.u, alg_apply(at, g));
    AlgebraElement rhs = alg_mul(alg_apply(ta, g), sys.u);
    if (!alg_exact_equal(lhs, rhs)) {
      rep.fail("intertwining relation u(alpha theta)(a) = (theta alpha)(a)u fails");
      break;
    }
  }
  if (!base_topologically_ergodic(sys.ctx, sys.theta))
    rep.fail("base transformation theta is not topologically ergodic");
  return rep;
}

// u_0 = 1, u_n = u alpha(u) ... alpha^{n-1}(u) for n > 0, and
// u_n = alpha^{-1}(u*) ... alpha^{n}(u*) for n < 0;
// satisfies u_{m+n} = u_m alpha^m(u_n)
inline AlgebraElement skew_cocycle(const SkewSystem& sys, long long n) {
  AlgebraElement r = alg_one(sys.ctx);
  if (n > 0) {
    for (long long j = 0; j < n; ++j)
      r = alg_mul(r, auto_pow_apply(sys.ctx, sys.alpha, j, sys.u));
  } else if (n < 0) {
    AlgebraElement us = alg_adjoint(sys.u);
    for (long long j = -1; j >= n; --j)
      r = alg_mul(r, auto_pow_apply(sys.ctx, sys.alpha, j, us));
  }
  return r;
}

// alpha^{-n}(u_n): the factor Phi contributes on mode n
inline AlgebraElement skew_multiplier(const SkewSystem& sys, long long n) {
  return auto_pow_apply(sys.ctx, sys.alpha, -n, skew_cocycle(sys, n));
}

// Phi(sum V^k a_k) = sum V^k alpha^{-k}(u_k) theta(a_k)
inline CrossedElement skew_apply(const SkewSystem& sys, const CrossedElement& x) {
  CrossedElement r = cp_zero(sys.ctx, sys.alpha);
  for (auto& [k, a] : x.modes)
    r.modes[k] = alg_mul(skew_multiplier(sys, k), alg_apply(sys.theta, a));
  cp_prune(r);
  return r;
}

// Phi^{-1} = Phi_{theta^{-1}, theta^{-1}(u*)}
inline SkewSystem skew_inverse(const SkewSystem& sys) {
  SkewSystem inv = sys;
  inv.theta = auto_inverse(sys.ctx, sys.theta);
  inv.u = alg_apply(inv.theta, alg_adjoint(sys.u));
  return inv;
}

inline CrossedElement skew_power_apply(const SkewSystem& sys, long long j,
                                       const CrossedElement& x) {
  if (j == 0) return x;
  SkewSystem step = (j > 0) ? sys : skew_inverse(sys);
  CrossedElement r = x;
  for (long long i = 0; i < std::llabs(j); ++i) r = skew_apply(step, r);
  return r;
}

}  // namespace skewprod
