#pragma once

#include <complex>
#include <optional>

#include "angle.hpp"

namespace skewprod {

// scale * e^{i*phase}.  Products and adjoints keep the phase exact; sums fold
// mismatched phases into the numeric scale.
struct PhasedScalar {
  std::complex<double> scale{0.0, 0.0};
  std::optional<Angle> phase;  // absent means trivial phase

  PhasedScalar() = default;
  PhasedScalar(std::complex<double> s) : scale(s) {}
  PhasedScalar(std::complex<double> s, Angle a) : scale(s), phase(std::move(a)) {
    if (phase->is_trivial_phase()) phase.reset();
  }

  static PhasedScalar one() { return PhasedScalar(std::complex<double>(1.0, 0.0)); }
  static PhasedScalar zero() { return PhasedScalar(); }
  static PhasedScalar unit(Angle a) { return PhasedScalar(std::complex<double>(1.0, 0.0), std::move(a)); }

  bool is_zero() const { return scale == std::complex<double>(0.0, 0.0); }

  std::complex<double> value() const {
    if (!phase) return scale;
    double r = phase->to_radians();
    return scale * std::complex<double>(std::cos(r), std::sin(r));
  }

  PhasedScalar conj() const {
    PhasedScalar r;
    r.scale = std::conj(scale);
    if (phase) r.phase = -*phase;
    return r;
  }

  PhasedScalar inverse() const {
    PhasedScalar r;
    r.scale = 1.0 / scale;
    if (phase) r.phase = -*phase;
    return r;
  }

  // exact equality of representations (trivial phases compare equal to absent)
  bool exact_equal(const PhasedScalar& o) const {
    if (scale != o.scale) return false;
    Angle a = phase ? phase->canonical() : Angle(basis_or(o));
    Angle b = o.phase ? o.phase->canonical() : Angle(basis_or(*this));
    if (!same_basis(a.basis(), b.basis())) return false;
    return phase_equal(a, b);
  }

  // exactly the scalar 1 (unit scale, trivial phase)
  bool is_exact_one() const {
    return scale == std::complex<double>(1.0, 0.0) && (!phase || phase->is_trivial_phase());
  }

 private:
  SymbolBasisPtr basis_or(const PhasedScalar& o) const {
    if (phase) return phase->basis();
    if (o.phase) return o.phase->basis();
    return default_basis();
  }
};

inline PhasedScalar operator*(const PhasedScalar& a, const PhasedScalar& b) {
  PhasedScalar r;
  r.scale = a.scale * b.scale;
  if (r.scale == std::complex<double>(0.0, 0.0)) return PhasedScalar();
  if (a.phase && b.phase)
    r.phase = *a.phase + *b.phase;
  else if (a.phase)
    r.phase = a.phase;
  else if (b.phase)
    r.phase = b.phase;
  if (r.phase && r.phase->is_trivial_phase()) r.phase.reset();
  return r;
}

inline PhasedScalar operator+(const PhasedScalar& a, const PhasedScalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  bool compat;
  if (!a.phase && !b.phase)
    compat = true;
  else if (a.phase && b.phase && same_basis(a.phase->basis(), b.phase->basis()))
    compat = phase_equal(*a.phase, *b.phase);
  else
    compat = (a.phase ? a.phase->is_trivial_phase() : true) &&
             (b.phase ? b.phase->is_trivial_phase() : true);
  PhasedScalar r;
  if (compat) {
    r.scale = a.scale + b.scale;
    if (r.scale == std::complex<double>(0.0, 0.0)) return PhasedScalar();
    r.phase = a.phase ? a.phase : b.phase;
    if (r.phase && r.phase->is_trivial_phase()) r.phase.reset();
  } else {
    r.scale = a.value() + b.value();
    if (std::abs(r.scale) < 1e-15) return PhasedScalar();
  }
  return r;
}

inline PhasedScalar operator-(const PhasedScalar& a, const PhasedScalar& b) {
  PhasedScalar nb = b;
  nb.scale = -nb.scale;
  return a + nb;
}

// c^k with exact phase handling (k may be negative; scale must be nonzero then)
inline PhasedScalar phased_pow(const PhasedScalar& c, long long k) {
  if (k == 0) return PhasedScalar::one();
  PhasedScalar base = (k > 0) ? c : c.inverse();
  long long t = (k > 0) ? k : -k;
  PhasedScalar r;
  r.scale = std::pow(base.scale, static_cast<double>(t));
  if (base.scale == std::complex<double>(1.0, 0.0)) r.scale = {1.0, 0.0};
  if (base.phase) r.phase = base.phase->scaled(t);
  if (r.phase && r.phase->is_trivial_phase()) r.phase.reset();
  return r;
}

inline double abs_value(const PhasedScalar& c) { return std::abs(c.scale); }

// exact phase of a unimodular scalar whose scale is one of 1, -1, i, -i;
// nullopt when the representation cannot be made exact
inline std::optional<Angle> exact_phase_of(const PhasedScalar& c,
                                           SymbolBasisPtr basis = default_basis()) {
  if (c.phase) basis = c.phase->basis();
  Angle base = c.phase ? *c.phase : Angle(basis);
  using C = std::complex<double>;
  if (c.scale == C(1.0, 0.0)) return base;
  if (c.scale == C(-1.0, 0.0)) return base + Angle::turns(Rational(1, 2), basis);
  if (c.scale == C(0.0, 1.0)) return base + Angle::turns(Rational(1, 4), basis);
  if (c.scale == C(0.0, -1.0)) return base + Angle::turns(Rational(3, 4), basis);
  return std::nullopt;
}

}  // namespace skewprod
