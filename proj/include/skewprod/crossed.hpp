#pragma once

#include "algebra.hpp"

namespace skewprod {

// finitely supported sum  x = sum_k V^k a_k  in A x_alpha Z
struct CrossedElement {
  AlgebraContext ctx;
  Automorphism alpha;
  std::map<long long, AlgebraElement> modes;
};

inline CrossedElement cp_zero(const AlgebraContext& ctx, const Automorphism& alpha) {
  return CrossedElement{ctx, alpha, {}};
}

inline CrossedElement cp_from_mode(long long k, const AlgebraElement& a,
                                   const Automorphism& alpha) {
  CrossedElement x{a.ctx, alpha, {}};
  if (alg_norm(a) != 0) x.modes[k] = a;
  return x;
}

inline CrossedElement cp_one(const AlgebraContext& ctx, const Automorphism& alpha) {
  return cp_from_mode(0, alg_one(ctx), alpha);
}

inline void cp_require_compatible(const CrossedElement& a, const CrossedElement& b) {
  if (!same_context(a.ctx, b.ctx) || !auto_equal(a.alpha, b.alpha))
    throw std::invalid_argument("crossed product elements over different data");
}

inline void cp_prune(CrossedElement& x) {
  for (auto it = x.modes.begin(); it != x.modes.end();)
    it = (alg_norm(it->second) == 0) ? x.modes.erase(it) : std::next(it);
}

inline CrossedElement cp_add(const CrossedElement& a, const CrossedElement& b) {
  cp_require_compatible(a, b);
  CrossedElement r = a;
  for (auto& [k, v] : b.modes) {
    auto it = r.modes.find(k);
    if (it == r.modes.end())
      r.modes[k] = v;
    else
      it->second = alg_add(it->second, v);
  }
  cp_prune(r);
  return r;
}

inline CrossedElement cp_scale(const CrossedElement& a, const PhasedScalar& c) {
  CrossedElement r = cp_zero(a.ctx, a.alpha);
  if (c.is_zero()) return r;
  for (auto& [k, v] : a.modes) r.modes[k] = alg_scale(v, c);
  cp_prune(r);
  return r;
}

inline CrossedElement cp_sub(const CrossedElement& a, const CrossedElement& b) {
  return cp_add(a, cp_scale(b, PhasedScalar(std::complex<double>(-1.0, 0.0))));
}

// (V^m a)(V^n b) = V^{m+n} alpha^{-n}(a) b
inline CrossedElement cp_mul(const CrossedElement& a, const CrossedElement& b) {
  cp_require_compatible(a, b);
  CrossedElement r = cp_zero(a.ctx, a.alpha);
  for (auto& [m, am] : a.modes)
    for (auto& [n, bn] : b.modes) {
      AlgebraElement t = alg_mul(auto_pow_apply(a.ctx, a.alpha, -n, am), bn);
      auto it = r.modes.find(m + n);
      if (it == r.modes.end())
        r.modes[m + n] = std::move(t);
      else
        it->second = alg_add(it->second, t);
    }
  cp_prune(r);
  return r;
}

// (V^m a)* = V^{-m} alpha^m(a*)
inline CrossedElement cp_adjoint(const CrossedElement& a) {
  CrossedElement r = cp_zero(a.ctx, a.alpha);
  for (auto& [m, am] : a.modes)
    r.modes[-m] = auto_pow_apply(a.ctx, a.alpha, m, alg_adjoint(am));
  cp_prune(r);
  return r;
}

// gauge action: mode k picks up e^{i*k*z}
inline CrossedElement cp_gauge(const CrossedElement& a, const Angle& z) {
  CrossedElement r = a;
  for (auto& [k, v] : r.modes)
    if (k != 0) v = alg_scale(v, PhasedScalar::unit(z.scaled(k)));
  return r;
}

inline AlgebraElement cp_mode(const CrossedElement& a, long long k) {
  auto it = a.modes.find(k);
  return it == a.modes.end() ? alg_zero(a.ctx) : it->second;
}

// conditional expectation onto A: the mode-zero coefficient
inline AlgebraElement cp_expectation(const CrossedElement& a) { return cp_mode(a, 0); }

// omega = omega_0 compose E
inline std::complex<double> cp_state(const CrossedElement& a) {
  return alg_state(cp_mode(a, 0));
}

inline double cp_norm(const CrossedElement& a) {
  double s = 0;
  for (auto& [k, v] : a.modes) s += alg_norm(v);
  return s;
}

inline double cp_distance(const CrossedElement& a, const CrossedElement& b) {
  return cp_norm(cp_sub(a, b));
}

inline bool cp_exact_equal(const CrossedElement& a, const CrossedElement& b) {
  if (!same_context(a.ctx, b.ctx) || !auto_equal(a.alpha, b.alpha)) return false;
  for (auto& [k, v] : a.modes)
    if (!alg_exact_equal(v, cp_mode(b, k))) return false;
  for (auto& [k, v] : b.modes)
    if (!a.modes.count(k) && alg_norm(v) != 0) return false;
  return true;
}

// Fejer smoothing: mode k scaled by max(0, 1 - |k|/N)
inline CrossedElement cp_fejer(const CrossedElement& a, long long N) {
  if (N <= 0) throw std::invalid_argument("Fejer order must be positive");
  CrossedElement r = cp_zero(a.ctx, a.alpha);
  for (auto& [k, v] : a.modes) {
    double w = 1.0 - static_cast<double>(std::llabs(k)) / static_cast<double>(N);
    if (w > 0) r.modes[k] = alg_scale(v, PhasedScalar(std::complex<double>(w, 0.0)));
  }
  cp_prune(r);
  return r;
}

// Abel smoothing: mode k scaled by r^{|k|}, 0 < r < 1
inline CrossedElement cp_abel(const CrossedElement& a, double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("Abel parameter must lie in (0,1)");
  CrossedElement out = cp_zero(a.ctx, a.alpha);
  for (auto& [k, v] : a.modes) {
    double w = std::pow(r, static_cast<double>(std::llabs(k)));
    out.modes[k] = alg_scale(v, PhasedScalar(std::complex<double>(w, 0.0)));
  }
  cp_prune(out);
  return out;
}

}  // namespace skewprod
