#pragma once

#include "classify.hpp"

namespace skewprod {

struct PresetParams {
  long long l = 3;                 // double-rotation: phi = 2*pi/l
  bool nc_variant = false;         // anzai-inverse: rotate alpha to leave C(T)xZ
  bool beta_minus_one = false;     // zinf: beta = -1 instead of e^{2*pi*i*s2}
};

inline SkewSystem make_preset(const std::string& name, const PresetParams& p = {}) {
  SymbolBasisPtr basis = default_basis();
  SkewSystem sys;
  if (name == "double-rotation") {
    // base C(T), theta the rotation by 2*pi*s1, u = e^{2*pi*i/l}
    if (p.l < 1) throw std::invalid_argument("rotation order l must be positive");
    sys.ctx = AlgebraContext::circle(basis);
    sys.theta = Automorphism::rotation(Angle::symbol("s1", 1, basis));
    sys.alpha = Automorphism::identity(sys.ctx);
    sys.u = alg_scalar(sys.ctx, PhasedScalar::unit(Angle::turns(Rational(1, p.l), basis)));
    sys.flags = {true, true};
  } else if (name == "anzai-inverse") {
    // phi = -theta: the level-1 equation is solved by the generator itself
    sys.ctx = AlgebraContext::circle(basis);
    sys.theta = Automorphism::rotation(Angle::symbol("s1", 1, basis));
    sys.alpha = p.nc_variant ? Automorphism::rotation(Angle::symbol("s3", 1, basis))
                             : Automorphism::identity(sys.ctx);
    sys.u = alg_scalar(sys.ctx, PhasedScalar::unit(Angle::symbol("s1", -1, basis)));
    sys.flags = {true, true};
  } else if (name == "zinf") {
    // shift on Z_inf with f(0) = beta, f = 1 elsewhere
    sys.ctx = AlgebraContext::zinf_ctx(basis);
    sys.theta = Automorphism::shift(1);
    sys.alpha = Automorphism::shift(0);
    Angle beta = p.beta_minus_one ? Angle::turns(Rational(1, 2), basis)
                                  : Angle::symbol("s2", 1, basis);
    sys.u = alg_zinf(sys.ctx, PhasedScalar::one(), {{0, PhasedScalar::unit(beta)}});
    sys.flags = {false, true};  // delta_inf is not faithful
  } else if (name == "nctorus-independent" || name == "nctorus-dependent") {
    // A_gamma with theta(U) = e^{i theta}U, theta(V) = UV; alpha(U) = U,
    // alpha(V) = e^{i alpha}V; u = beta I with phi = 2*pi*s2 or phi = theta
    sys.ctx = AlgebraContext::torus(Angle::symbol("s3", 1, basis), basis);
    TorusAutomorphism th;
    th.phase_u = Angle::symbol("s1", 1, basis);
    th.phase_v = Angle(basis);
    th.exp_u = {1, 0};
    th.exp_v = {1, 1};
    sys.theta = Automorphism{th};
    TorusAutomorphism al;
    al.phase_u = Angle(basis);
    al.phase_v = Angle::symbol("s3", 1, basis);
    sys.alpha = Automorphism{al};
    Angle phi = (name == "nctorus-independent") ? Angle::symbol("s2", 1, basis)
                                                : Angle::symbol("s1", 1, basis);
    sys.u = alg_scalar(sys.ctx, PhasedScalar::unit(phi));
    sys.flags = {true, true};
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return sys;
}

}  // namespace skewprod
