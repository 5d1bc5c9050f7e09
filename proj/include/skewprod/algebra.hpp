#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <variant>

#include "phased.hpp"

namespace skewprod {

// Coefficient algebra: noncommutative torus A_gamma with generators U, V and
// UV = e^{i*gamma} VU (generators == 1 restricts to C(T) spanned by powers of
// U and requires gamma trivial), or C(Z_inf), continuous functions on the
// one-point compactification of Z.
struct AlgebraContext {
  enum class Kind { nc_torus, zinf };
  Kind kind = Kind::nc_torus;
  int generators = 1;  // torus only: 1 or 2
  Angle gamma;         // torus only
  SymbolBasisPtr basis = default_basis();

  static AlgebraContext circle(SymbolBasisPtr b = default_basis()) {
    return AlgebraContext{Kind::nc_torus, 1, Angle(b), b};
  }
  static AlgebraContext torus(Angle gamma_, SymbolBasisPtr b = default_basis()) {
    return AlgebraContext{Kind::nc_torus, 2, std::move(gamma_), b};
  }
  static AlgebraContext zinf_ctx(SymbolBasisPtr b = default_basis()) {
    return AlgebraContext{Kind::zinf, 0, Angle(b), b};
  }
};

inline bool same_context(const AlgebraContext& a, const AlgebraContext& b) {
  if (a.kind != b.kind || !same_basis(a.basis, b.basis)) return false;
  if (a.kind == AlgebraContext::Kind::nc_torus)
    return a.generators == b.generators && phase_equal(a.gamma, b.gamma);
  return true;
}

using Mono = std::pair<long long, long long>;  // U^m V^n in normal order

struct TorusData {
  std::map<Mono, PhasedScalar> terms;
};

struct ZInfData {
  PhasedScalar at_inf;                       // value at infinity
  std::map<long long, PhasedScalar> overrides;  // exact values where f differs
};

struct AlgebraElement {
  AlgebraContext ctx;
  std::variant<TorusData, ZInfData> data;

  TorusData& torus() { return std::get<TorusData>(data); }
  const TorusData& torus() const { return std::get<TorusData>(data); }
  ZInfData& zinf() { return std::get<ZInfData>(data); }
  const ZInfData& zinf() const { return std::get<ZInfData>(data); }
  bool is_torus() const { return std::holds_alternative<TorusData>(data); }
};

inline AlgebraElement alg_zero(const AlgebraContext& ctx) {
  AlgebraElement e;
  e.ctx = ctx;
  if (ctx.kind == AlgebraContext::Kind::nc_torus)
    e.data = TorusData{};
  else
    e.data = ZInfData{};
  return e;
}

inline AlgebraElement alg_scalar(const AlgebraContext& ctx, PhasedScalar c) {
  AlgebraElement e = alg_zero(ctx);
  if (ctx.kind == AlgebraContext::Kind::nc_torus) {
    if (!c.is_zero()) e.torus().terms[{0, 0}] = c;
  } else {
    e.zinf().at_inf = c;
  }
  return e;
}

inline AlgebraElement alg_one(const AlgebraContext& ctx) {
  return alg_scalar(ctx, PhasedScalar::one());
}

inline AlgebraElement alg_monomial(const AlgebraContext& ctx, long long m, long long n,
                                   PhasedScalar c = PhasedScalar::one()) {
  AlgebraElement e = alg_zero(ctx);
  if (ctx.kind != AlgebraContext::Kind::nc_torus)
    throw std::invalid_argument("monomials only exist in the torus algebra");
  if (ctx.generators == 1 && n != 0)
    throw std::invalid_argument("second generator unavailable in C(T)");
  if (!c.is_zero()) e.torus().terms[{m, n}] = c;
  return e;
}

// ZInf element from value at infinity plus exceptional values
inline AlgebraElement alg_zinf(const AlgebraContext& ctx, PhasedScalar at_inf,
                               std::map<long long, PhasedScalar> overrides = {}) {
  AlgebraElement e = alg_zero(ctx);
  e.zinf().at_inf = std::move(at_inf);
  for (auto& [l, v] : overrides)
    if (!v.exact_equal(e.zinf().at_inf)) e.zinf().overrides[l] = v;
  return e;
}

namespace detail {

inline void torus_insert(TorusData& d, Mono key, const PhasedScalar& c) {
  if (c.is_zero()) return;
  auto it = d.terms.find(key);
  if (it == d.terms.end()) {
    d.terms.emplace(key, c);
  } else {
    it->second = it->second + c;
    if (it->second.is_zero()) d.terms.erase(it);
  }
}

// (c1 U^{m1}V^{n1})(c2 U^{m2}V^{n2}) = c1 c2 e^{-i*gamma*n1*m2} U^{m1+m2}V^{n1+n2}
inline std::pair<Mono, PhasedScalar> mono_mul(const AlgebraContext& ctx, Mono a,
                                              const PhasedScalar& ca, Mono b,
                                              const PhasedScalar& cb) {
  PhasedScalar c = ca * cb;
  long long cross = a.second * b.first;
  if (cross != 0 && !c.is_zero())
    c = c * PhasedScalar::unit(ctx.gamma.scaled(-cross));
  return {{a.first + b.first, a.second + b.second}, c};
}

// (c U^{a}V^{b})^t, any integer t
inline std::pair<Mono, PhasedScalar> mono_pow(const AlgebraContext& ctx, Mono x,
                                              PhasedScalar c, long long t) {
  if (t == 0) return {{0, 0}, PhasedScalar::one()};
  if (t < 0) {
    // (U^aV^b)^{-1} = e^{-i*gamma*a*b} U^{-a}V^{-b}
    PhasedScalar ci = c.inverse();
    if (x.first * x.second != 0)
      ci = ci * PhasedScalar::unit(ctx.gamma.scaled(-x.first * x.second));
    return mono_pow(ctx, {-x.first, -x.second}, ci, -t);
  }
  // X^t = c^t e^{-i*gamma*a*b*t(t-1)/2} U^{ta}V^{tb}
  PhasedScalar ct = phased_pow(c, t);
  long long tri = x.first * x.second * (t * (t - 1) / 2);
  if (tri != 0) ct = ct * PhasedScalar::unit(ctx.gamma.scaled(-tri));
  return {{t * x.first, t * x.second}, ct};
}

}  // namespace detail

inline void require_same_ctx(const AlgebraElement& a, const AlgebraElement& b) {
  if (!same_context(a.ctx, b.ctx))
    throw std::invalid_argument("elements of different coefficient algebras");
}

inline AlgebraElement alg_add(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_ctx(a, b);
  AlgebraElement r = a;
  if (a.is_torus()) {
    for (auto& [k, c] : b.torus().terms) detail::torus_insert(r.torus(), k, c);
  } else {
    const ZInfData& x = a.zinf();
    const ZInfData& y = b.zinf();
    ZInfData out;
    out.at_inf = x.at_inf + y.at_inf;
    auto value = [](const ZInfData& d, long long l) {
      auto it = d.overrides.find(l);
      return it == d.overrides.end() ? d.at_inf : it->second;
    };
    for (auto& [l, v] : x.overrides) {
      PhasedScalar s = v + value(y, l);
      if (!s.exact_equal(out.at_inf)) out.overrides[l] = s;
    }
    for (auto& [l, v] : y.overrides) {
      if (x.overrides.count(l)) continue;
      PhasedScalar s = value(x, l) + v;
      if (!s.exact_equal(out.at_inf)) out.overrides[l] = s;
    }
    r.zinf() = std::move(out);
  }
  return r;
}

inline AlgebraElement alg_scale(const AlgebraElement& a, const PhasedScalar& c) {
  AlgebraElement r = alg_zero(a.ctx);
  if (a.is_torus()) {
    if (c.is_zero()) return r;
    for (auto& [k, v] : a.torus().terms) r.torus().terms[k] = v * c;
  } else {
    r.zinf().at_inf = a.zinf().at_inf * c;
    for (auto& [l, v] : a.zinf().overrides) {
      PhasedScalar s = v * c;
      if (!s.exact_equal(r.zinf().at_inf)) r.zinf().overrides[l] = s;
    }
  }
  return r;
}

inline AlgebraElement alg_mul(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_ctx(a, b);
  AlgebraElement r = alg_zero(a.ctx);
  if (a.is_torus()) {
    for (auto& [ka, ca] : a.torus().terms)
      for (auto& [kb, cb] : b.torus().terms) {
        auto [k, c] = detail::mono_mul(a.ctx, ka, ca, kb, cb);
        detail::torus_insert(r.torus(), k, c);
      }
  } else {
    const ZInfData& x = a.zinf();
    const ZInfData& y = b.zinf();
    ZInfData out;
    out.at_inf = x.at_inf * y.at_inf;
    auto value = [](const ZInfData& d, long long l) {
      auto it = d.overrides.find(l);
      return it == d.overrides.end() ? d.at_inf : it->second;
    };
    auto put = [&](long long l) {
      PhasedScalar s = value(x, l) * value(y, l);
      if (!s.exact_equal(out.at_inf)) out.overrides[l] = s;
    };
    for (auto& [l, v] : x.overrides) put(l);
    for (auto& [l, v] : y.overrides)
      if (!x.overrides.count(l)) put(l);
    r.zinf() = std::move(out);
  }
  return r;
}

inline AlgebraElement alg_adjoint(const AlgebraElement& a) {
  AlgebraElement r = alg_zero(a.ctx);
  if (a.is_torus()) {
    // (c U^mV^n)* = conj(c) e^{-i*gamma*m*n} U^{-m}V^{-n}
    for (auto& [k, c] : a.torus().terms) {
      PhasedScalar cc = c.conj();
      if (k.first * k.second != 0)
        cc = cc * PhasedScalar::unit(a.ctx.gamma.scaled(-k.first * k.second));
      detail::torus_insert(r.torus(), {-k.first, -k.second}, cc);
    }
  } else {
    r.zinf().at_inf = a.zinf().at_inf.conj();
    for (auto& [l, v] : a.zinf().overrides) r.zinf().overrides[l] = v.conj();
  }
  return r;
}

// tracial state on the torus (mode (0,0)); evaluation at infinity on ZInf
inline std::complex<double> alg_state(const AlgebraElement& a) {
  if (a.is_torus()) {
    auto it = a.torus().terms.find({0, 0});
    return it == a.torus().terms.end() ? std::complex<double>(0.0) : it->second.value();
  }
  return a.zinf().at_inf.value();
}

inline PhasedScalar alg_state_exact(const AlgebraElement& a) {
  if (a.is_torus()) {
    auto it = a.torus().terms.find({0, 0});
    return it == a.torus().terms.end() ? PhasedScalar::zero() : it->second;
  }
  return a.zinf().at_inf;
}

inline double alg_norm(const AlgebraElement& a) {
  if (a.is_torus()) {
    double s = 0;
    for (auto& [k, c] : a.torus().terms) s += abs_value(c);
    return s;
  }
  // |f(inf)| plus the deviations from it, a crude l1-style bound
  double s = abs_value(a.zinf().at_inf);
  for (auto& [l, v] : a.zinf().overrides)
    s += std::abs(v.value() - a.zinf().at_inf.value());
  return s;
}

inline AlgebraElement alg_sub(const AlgebraElement& a, const AlgebraElement& b) {
  return alg_add(a, alg_scale(b, PhasedScalar(std::complex<double>(-1.0, 0.0))));
}

inline double alg_distance(const AlgebraElement& a, const AlgebraElement& b) {
  return alg_norm(alg_sub(a, b));
}

inline bool alg_exact_equal(const AlgebraElement& a, const AlgebraElement& b) {
  if (!same_context(a.ctx, b.ctx)) return false;
  if (a.is_torus()) {
    auto& x = a.torus().terms;
    auto& y = b.torus().terms;
    if (x.size() != y.size()) return false;
    for (auto& [k, c] : x) {
      auto it = y.find(k);
      if (it == y.end() || !c.exact_equal(it->second)) return false;
    }
    return true;
  }
  auto& x = a.zinf();
  auto& y = b.zinf();
  if (!x.at_inf.exact_equal(y.at_inf)) return false;
  auto value = [](const ZInfData& d, long long l) {
    auto it = d.overrides.find(l);
    return it == d.overrides.end() ? d.at_inf : it->second;
  };
  for (auto& [l, v] : x.overrides)
    if (!v.exact_equal(value(y, l))) return false;
  for (auto& [l, v] : y.overrides)
    if (!value(x, l).exact_equal(v)) return false;
  return true;
}

// single unimodular monomial (torus) or constant unimodular function (zinf)
inline bool is_scalar_unitary(const AlgebraElement& a, Mono* expo = nullptr,
                              PhasedScalar* coeff = nullptr) {
  if (a.is_torus()) {
    if (a.torus().terms.size() != 1) return false;
    auto& [k, c] = *a.torus().terms.begin();
    if (std::abs(std::abs(c.scale) - 1.0) > 1e-12) return false;
    if (expo) *expo = k;
    if (coeff) *coeff = c;
    return true;
  }
  if (!a.zinf().overrides.empty()) return false;
  if (std::abs(std::abs(a.zinf().at_inf.scale) - 1.0) > 1e-12) return false;
  if (expo) *expo = {0, 0};
  if (coeff) *coeff = a.zinf().at_inf;
  return true;
}

inline bool is_unitary(const AlgebraElement& a) {
  return alg_exact_equal(alg_mul(a, alg_adjoint(a)), alg_one(a.ctx)) &&
         alg_exact_equal(alg_mul(alg_adjoint(a), a), alg_one(a.ctx));
}

// ---- automorphisms ----

// torus: U -> e^{i pu} U^{a}V^{c}, V -> e^{i pv} U^{b}V^{d}; the exponent
// matrix [[a,b],[c,d]] must have determinant +-1
struct TorusAutomorphism {
  Angle phase_u, phase_v;
  std::array<long long, 2> exp_u{1, 0};
  std::array<long long, 2> exp_v{0, 1};

  long long det() const { return exp_u[0] * exp_v[1] - exp_v[0] * exp_u[1]; }
  bool matrix_is_identity() const {
    return exp_u[0] == 1 && exp_u[1] == 0 && exp_v[0] == 0 && exp_v[1] == 1;
  }
};

// (sigma f)(l) = f(l - step), fixing the point at infinity
struct ZInfAutomorphism {
  long long step = 0;
};

struct Automorphism {
  std::variant<TorusAutomorphism, ZInfAutomorphism> data;

  TorusAutomorphism& torus() { return std::get<TorusAutomorphism>(data); }
  const TorusAutomorphism& torus() const { return std::get<TorusAutomorphism>(data); }
  ZInfAutomorphism& zinf() { return std::get<ZInfAutomorphism>(data); }
  const ZInfAutomorphism& zinf() const { return std::get<ZInfAutomorphism>(data); }
  bool is_torus() const { return std::holds_alternative<TorusAutomorphism>(data); }

  static Automorphism identity(const AlgebraContext& ctx) {
    if (ctx.kind == AlgebraContext::Kind::nc_torus)
      return Automorphism{TorusAutomorphism{Angle(ctx.basis), Angle(ctx.basis)}};
    return Automorphism{ZInfAutomorphism{0}};
  }
  static Automorphism rotation(const Angle& pu, const Angle& pv) {
    return Automorphism{TorusAutomorphism{pu, pv}};
  }
  static Automorphism rotation(const Angle& pu) {
    return Automorphism{TorusAutomorphism{pu, Angle(pu.basis())}};
  }
  static Automorphism shift(long long step) { return Automorphism{ZInfAutomorphism{step}}; }
};

inline bool auto_equal(const Automorphism& a, const Automorphism& b) {
  if (a.is_torus() != b.is_torus()) return false;
  if (a.is_torus()) {
    auto& x = a.torus();
    auto& y = b.torus();
    return phase_equal(x.phase_u, y.phase_u) && phase_equal(x.phase_v, y.phase_v) &&
           x.exp_u == y.exp_u && x.exp_v == y.exp_v;
  }
  return a.zinf().step == b.zinf().step;
}

inline bool is_identity_automorphism(const Automorphism& s) {
  if (s.is_torus())
    return s.torus().matrix_is_identity() && s.torus().phase_u.is_trivial_phase() &&
           s.torus().phase_v.is_trivial_phase();
  return s.zinf().step == 0;
}

namespace detail {

// image of the monomial U^mV^n under a torus automorphism
inline std::pair<Mono, PhasedScalar> auto_mono(const AlgebraContext& ctx,
                                               const TorusAutomorphism& s, Mono k) {
  auto [ku, cu] = mono_pow(ctx, {s.exp_u[0], s.exp_u[1]},
                           PhasedScalar::unit(s.phase_u), k.first);
  auto [kv, cv] = mono_pow(ctx, {s.exp_v[0], s.exp_v[1]},
                           PhasedScalar::unit(s.phase_v), k.second);
  return mono_mul(ctx, ku, cu, kv, cv);
}

}  // namespace detail

inline AlgebraElement alg_apply(const Automorphism& s, const AlgebraElement& a) {
  AlgebraElement r = alg_zero(a.ctx);
  if (a.is_torus()) {
    if (!s.is_torus()) throw std::invalid_argument("automorphism kind mismatch");
    for (auto& [k, c] : a.torus().terms) {
      auto [kk, cc] = detail::auto_mono(a.ctx, s.torus(), k);
      detail::torus_insert(r.torus(), kk, c * cc);
    }
  } else {
    if (s.is_torus()) throw std::invalid_argument("automorphism kind mismatch");
    long long p = s.zinf().step;
    r.zinf().at_inf = a.zinf().at_inf;
    for (auto& [l, v] : a.zinf().overrides) r.zinf().overrides[l + p] = v;
  }
  return r;
}

inline Automorphism auto_compose(const AlgebraContext& ctx, const Automorphism& s,
                                 const Automorphism& t) {
  if (s.is_torus() != t.is_torus()) throw std::invalid_argument("automorphism kind mismatch");
  if (!s.is_torus()) return Automorphism::shift(s.zinf().step + t.zinf().step);
  auto [ku, cu] = detail::auto_mono(ctx, s.torus(), {t.torus().exp_u[0], t.torus().exp_u[1]});
  auto [kv, cv] = detail::auto_mono(ctx, s.torus(), {t.torus().exp_v[0], t.torus().exp_v[1]});
  TorusAutomorphism r;
  PhasedScalar pu = PhasedScalar::unit(t.torus().phase_u) * cu;
  PhasedScalar pv = PhasedScalar::unit(t.torus().phase_v) * cv;
  r.phase_u = pu.phase ? *pu.phase : Angle(ctx.basis);
  r.phase_v = pv.phase ? *pv.phase : Angle(ctx.basis);
  r.exp_u = {ku.first, ku.second};
  r.exp_v = {kv.first, kv.second};
  return Automorphism{r};
}

inline Automorphism auto_inverse(const AlgebraContext& ctx, const Automorphism& s) {
  if (!s.is_torus()) return Automorphism::shift(-s.zinf().step);
  const TorusAutomorphism& t = s.torus();
  long long d = t.det();
  if (d != 1 && d != -1) throw std::invalid_argument("exponent matrix not invertible over Z");
  TorusAutomorphism inv;
  inv.exp_u = {d * t.exp_v[1], d * (-t.exp_u[1])};
  inv.exp_v = {d * (-t.exp_v[0]), d * t.exp_u[0]};
  // fix phases so that s(inv(U)) = U and s(inv(V)) = V
  auto [ku, cu] = detail::auto_mono(ctx, t, {inv.exp_u[0], inv.exp_u[1]});
  auto [kv, cv] = detail::auto_mono(ctx, t, {inv.exp_v[0], inv.exp_v[1]});
  if (ku != Mono{1, 0} || kv != Mono{0, 1})
    throw std::logic_error("automorphism inverse exponent check failed");
  inv.phase_u = cu.phase ? -*cu.phase : Angle(ctx.basis);
  inv.phase_v = cv.phase ? -*cv.phase : Angle(ctx.basis);
  return Automorphism{inv};
}

// sigma^k applied to a (k may be negative)
inline AlgebraElement auto_pow_apply(const AlgebraContext& ctx, const Automorphism& s,
                                     long long k, const AlgebraElement& a) {
  if (k == 0) return a;
  if (!s.is_torus())
    return alg_apply(Automorphism::shift(k * s.zinf().step), a);
  const TorusAutomorphism& t = s.torus();
  if (t.matrix_is_identity()) {
    TorusAutomorphism p;
    p.phase_u = t.phase_u.scaled(k);
    p.phase_v = t.phase_v.scaled(k);
    return alg_apply(Automorphism{p}, a);
  }
  Automorphism step = (k > 0) ? s : auto_inverse(ctx, s);
  AlgebraElement r = a;
  for (long long i = 0; i < std::llabs(k); ++i) r = alg_apply(step, r);
  return r;
}

}  // namespace skewprod
