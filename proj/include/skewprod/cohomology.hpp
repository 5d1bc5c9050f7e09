#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "skew.hpp"

namespace skewprod {

enum class SolveMethod { closed_form, scan, oracle };
enum class MeasurableStatus { none, continuous_only, measurable_non_continuous };

struct LevelReport {
  long long level = 0;
  std::optional<AlgebraElement> continuous;
  MeasurableStatus measurable = MeasurableStatus::none;
  std::string witness;
  SolveMethod method = SolveMethod::closed_form;
};

struct FixedPointDescription {
  enum class Shape { trivial_scalars, circle_algebra };
  std::optional<long long> group_generator;  // G = n0 Z; absent means G = {0}
  Shape shape = Shape::trivial_scalars;
  std::map<long long, AlgebraElement> generators;  // l -> w_{n0 l}
  SolveMethod method = SolveMethod::closed_form;
};

struct UnsupportedShape : std::runtime_error {
  explicit UnsupportedShape(const std::string& what)
      : std::runtime_error(what + " (use the numerical oracle)") {}
};

namespace detail {

inline std::optional<long long> solve_lin_cong(long long A, long long B, long long M) {
  A = mod_ll(A, M);
  B = mod_ll(B, M);
  long long g = std::gcd(A, M);
  if (g == 0) return B == 0 ? std::optional<long long>(0) : std::nullopt;
  if (B % g != 0) return std::nullopt;
  long long Mg = M / g, x, y;
  ext_gcd(A / g, Mg == 0 ? 1 : Mg, x, y);
  if (Mg == 0) return 0;
  return mod_ll(static_cast<__int128>(mod_ll(x, Mg)) * (B / g), Mg);
}

// integer (m,k) with chi + m*psu + k*psv trivial phase
inline std::optional<std::pair<long long, long long>> solve_character2(const Angle& psu,
                                                                      const Angle& psv,
                                                                      const Angle& chi) {
  psu.require_same(psv);
  psu.require_same(chi);
  struct Row {
    Rational a, b, t;
  };
  std::vector<Row> rows;
  for (std::size_t i = 1; i < psu.dim(); ++i)
    rows.push_back({psu.coeff(i), psv.coeff(i), -chi.coeff(i)});
  auto verify = [&](const Rational& m, const Rational& k) {
    for (auto& r : rows)
      if (r.a * m + r.b * k != r.t) return false;
    return true;
  };
  auto finish = [&](long long m, long long k) -> std::optional<std::pair<long long, long long>> {
    Rational c = chi.coeff(0) + psu.coeff(0) * m + psv.coeff(0) * k;
    if (rat_frac(c) != 0) return std::nullopt;
    return std::make_pair(m, k);
  };
  int r1 = -1, r2 = -1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].a == 0 && rows[i].b == 0) continue;
    if (r1 < 0) {
      r1 = static_cast<int>(i);
    } else if (rows[r1].a * rows[i].b != rows[r1].b * rows[i].a) {
      r2 = static_cast<int>(i);
      break;
    }
  }
  if (r1 >= 0 && r2 >= 0) {
    Rational det = rows[r1].a * rows[r2].b - rows[r2].a * rows[r1].b;
    Rational m = (rows[r1].t * rows[r2].b - rows[r2].t * rows[r1].b) / det;
    Rational k = (rows[r1].a * rows[r2].t - rows[r2].a * rows[r1].t) / det;
    if (!verify(m, k)) return std::nullopt;
    if (m.denominator() != 1 || k.denominator() != 1) return std::nullopt;
    return finish(m.numerator(), k.numerator());
  }
  if (r1 >= 0) {
    // rank one: integer lattice line plus a rational congruence along it
    const Row& r = rows[r1];
    long long L = std::lcm(std::lcm(r.a.denominator(), r.b.denominator()), r.t.denominator());
    long long A = r.a.numerator() * (L / r.a.denominator());
    long long B = r.b.numerator() * (L / r.b.denominator());
    long long T = r.t.numerator() * (L / r.t.denominator());
    long long g = std::gcd(std::llabs(A), std::llabs(B));
    if (T % g != 0) return std::nullopt;
    long long x, y;
    ext_gcd(A, B, x, y);  // A x + B y = +-g
    long long gg = A * x + B * y;
    long long m0 = x * (T / gg), k0 = y * (T / gg);
    if (!verify(Rational(m0), Rational(k0))) return std::nullopt;
    long long dm = -B / g, dk = A / g;
    Rational step = psu.coeff(0) * dm + psv.coeff(0) * dk;
    Rational target = -chi.coeff(0) - psu.coeff(0) * m0 - psv.coeff(0) * k0;
    auto cs = solve_phase_congruence(step, target);
    if (!cs) return std::nullopt;
    long long t = tie_break(*cs);
    return std::make_pair(m0 + t * dm, k0 + t * dk);
  }
  // rank zero: pure rational two-variable congruence
  for (auto& r : rows)
    if (r.t != 0) return std::nullopt;
  Rational su = rat_frac(psu.coeff(0)), sv = rat_frac(psv.coeff(0));
  Rational tg = rat_frac(-chi.coeff(0));
  long long L = std::lcm(su.denominator(), sv.denominator());
  long long A1 = su.numerator() * (L / su.denominator());
  long long A2 = sv.numerator() * (L / sv.denominator());
  if (L % tg.denominator() != 0) return std::nullopt;
  long long T = tg.numerator() * (L / tg.denominator());
  long long g1 = std::gcd(A1, L);
  long long base = (g1 == 0) ? L : g1;
  auto k = solve_lin_cong(A2, T, base);
  if (!k) return std::nullopt;
  auto m = solve_lin_cong(A1, T - A2 * (*k), L);
  if (!m) return std::nullopt;
  Rational c = chi.coeff(0) + psu.coeff(0) * (*m) + psv.coeff(0) * (*k);
  if (rat_frac(c) != 0) return std::nullopt;
  return std::make_pair(*m, *k);
}

// least n >= 1 with solve_character2(psu, psv, n*phi-shifted) solvable, for a
// symbol matrix of full rank (the validated two-rotation case)
inline std::optional<std::tuple<long long, long long, long long>> minimal_level2(
    const Angle& psu, const Angle& psv, const Angle& phi) {
  struct Row {
    Rational a, b, t;
  };
  std::vector<Row> rows;
  for (std::size_t i = 1; i < psu.dim(); ++i)
    rows.push_back({psu.coeff(i), psv.coeff(i), -phi.coeff(i)});
  int r1 = -1, r2 = -1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].a == 0 && rows[i].b == 0) continue;
    if (r1 < 0) {
      r1 = static_cast<int>(i);
    } else if (rows[r1].a * rows[i].b != rows[r1].b * rows[i].a) {
      r2 = static_cast<int>(i);
      break;
    }
  }
  if (r1 < 0 || r2 < 0) return std::nullopt;  // caller falls back to scanning
  Rational det = rows[r1].a * rows[r2].b - rows[r2].a * rows[r1].b;
  Rational rm = (rows[r1].t * rows[r2].b - rows[r2].t * rows[r1].b) / det;
  Rational rk = (rows[r1].a * rows[r2].t - rows[r2].a * rows[r1].t) / det;
  for (auto& r : rows)
    if (r.a * rm + r.b * rk != r.t) return std::nullopt;
  Rational c = phi.coeff(0) + psu.coeff(0) * rm + psv.coeff(0) * rk;
  long long n0 = std::lcm(std::lcm(rm.denominator(), rk.denominator()), c.denominator());
  return std::make_tuple(n0, (rm * n0).numerator(), (rk * n0).numerator());
}

struct Mat2 {
  long long a = 1, b = 0, c = 0, d = 1;  // (m,k) -> (am + bk, cm + dk)
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
  long long det_mi() const { return (a - 1) * (d - 1) - b * c; }  // det(M - I)
};

inline Mat2 theta_matrix(const TorusAutomorphism& t) {
  return {t.exp_u[0], t.exp_v[0], t.exp_u[1], t.exp_v[1]};
}

// reject matrices with periodic non-fixed lattice vectors: those need summed
// orbit analysis that the closed form does not cover
inline void guard_matrix(const Mat2& M) {
  Mat2 P = M;
  for (int k = 2; k <= 6; ++k) {
    P = P * M;
    if (k == 5) continue;
    if (!M.is_identity() && P.is_identity())
      throw UnsupportedShape("theta exponent matrix has finite order");
    if (M.det_mi() != 0 && P.det_mi() == 0)
      throw UnsupportedShape("theta exponent matrix has periodic non-fixed vectors");
  }
}

// phase psi with mult * theta(X_v) = e^{i psi} X_v, for v in the affine fixed set
inline Angle residual_phase(const SkewSystem& sys, const AlgebraElement& mult, Mono v) {
  AlgebraElement x = alg_zero(sys.ctx);
  x.torus().terms[{v.first, v.second}] = PhasedScalar::one();
  AlgebraElement lhs = alg_mul(mult, alg_apply(sys.theta, x));
  if (lhs.torus().terms.size() != 1) throw std::logic_error("residual not a monomial");
  auto& [kk, cc] = *lhs.torus().terms.begin();
  if (kk != v) throw std::logic_error("residual moved off the candidate monomial");
  auto ph = exact_phase_of(cc, sys.ctx.basis);
  if (!ph) throw UnsupportedShape("cocycle phase is not exactly representable");
  return *ph;
}

inline AlgebraElement make_mono(const SkewSystem& sys, Mono v) {
  AlgebraElement w = alg_zero(sys.ctx);
  w.torus().terms[{v.first, v.second}] = PhasedScalar::one();
  return w;
}

inline std::optional<AlgebraElement> solve_continuous_torus(const SkewSystem& sys,
                                                            long long n) {
  AlgebraElement mult = skew_multiplier(sys, n);
  Mono pq;
  PhasedScalar c;
  if (!is_scalar_unitary(mult, &pq, &c))
    throw UnsupportedShape("cocycle is not a scalar-unitary monomial");
  auto chi = exact_phase_of(c, sys.ctx.basis);
  if (!chi) throw UnsupportedShape("cocycle phase is not exactly representable");

  if (sys.ctx.generators == 1) {
    // circle case: e^{i chi} U^P theta(a) = a; drift P != 0 kills everything
    if (pq.first != 0) return std::nullopt;
    Angle psu = sys.theta.torus().phase_u;
    auto m = solve_character(psu, *chi, 1);
    if (!m) return std::nullopt;
    return make_mono(sys, {*m, 0});
  }

  Mat2 M = theta_matrix(sys.theta.torus());
  guard_matrix(M);
  long long P = pq.first, Q = pq.second;
  // fixed monomial exponents: (M - I)v = -(P,Q)
  long long a = M.a - 1, b = M.b, cc2 = M.c, d = M.d - 1;
  long long det = a * d - b * cc2;
  if (det != 0) {
    long long vm_num = (-P) * d - b * (-Q);
    long long vk_num = a * (-Q) - cc2 * (-P);
    if (vm_num % det != 0 || vk_num % det != 0) return std::nullopt;
    Mono v{vm_num / det, vk_num / det};
    if (residual_phase(sys, mult, v).is_trivial_phase()) return make_mono(sys, v);
    return std::nullopt;
  }
  bool plane = (a == 0 && b == 0 && cc2 == 0 && d == 0);
  if (plane) {
    if (P != 0 || Q != 0) return std::nullopt;
    Angle p00 = residual_phase(sys, mult, {0, 0});
    Angle pu = residual_phase(sys, mult, {1, 0}) - p00;
    Angle pv = residual_phase(sys, mult, {0, 1}) - p00;
    auto mk = solve_character2(pu, pv, p00);
    if (!mk) return std::nullopt;
    return make_mono(sys, {mk->first, mk->second});
  }
  // rank-one kernel: affine line of fixed exponents (if consistent)
  long long r1a = a, r1b = b, t1 = -P;
  if (r1a == 0 && r1b == 0) {
    r1a = cc2;
    r1b = d;
    t1 = -Q;
  }
  long long g = std::gcd(std::llabs(r1a), std::llabs(r1b));
  if (t1 % g != 0) return std::nullopt;
  long long x, y;
  ext_gcd(r1a, r1b, x, y);
  long long gg = r1a * x + r1b * y;
  long long m0 = x * (t1 / gg), k0 = y * (t1 / gg);
  if (cc2 * m0 + d * k0 != -Q || a * m0 + b * k0 != -P) return std::nullopt;
  long long dm = -r1b / g, dk = r1a / g;
  if (cc2 * dm + d * dk != 0 || a * dm + b * dk != 0) return std::nullopt;
  Angle psi0 = residual_phase(sys, mult, {m0, k0});
  Angle psi1 = residual_phase(sys, mult, {m0 + dm, k0 + dk});
  Angle psi2 = residual_phase(sys, mult, {m0 + 2 * dm, k0 + 2 * dk});
  Angle slope = psi1 - psi0;
  if (!phase_equal(psi2 - psi1, slope))
    throw UnsupportedShape("cocycle phase is not affine along the fixed line");
  auto t = solve_character(slope, psi0, 1);
  if (!t) return std::nullopt;
  return make_mono(sys, {m0 + (*t) * dm, k0 + (*t) * dk});
}

struct ZInfPhases {
  Angle at_inf;                          // phase of the multiplier at infinity
  std::map<long long, Angle> overrides;  // exact phases at exceptional points
};

inline ZInfPhases zinf_phases(const SkewSystem& sys, const AlgebraElement& mult) {
  ZInfPhases r{Angle(sys.ctx.basis), {}};
  auto pi = exact_phase_of(mult.zinf().at_inf, sys.ctx.basis);
  if (!pi || std::abs(std::abs(mult.zinf().at_inf.scale) - 1.0) > 1e-12)
    throw UnsupportedShape("cocycle value at infinity is not an exact unimodular");
  r.at_inf = *pi;
  for (auto& [l, v] : mult.zinf().overrides) {
    auto p = exact_phase_of(v, sys.ctx.basis);
    if (!p) throw UnsupportedShape("cocycle value is not an exact unimodular");
    r.overrides[l] = *p;
  }
  return r;
}

inline std::optional<AlgebraElement> solve_continuous_zinf(const SkewSystem& sys,
                                                           long long n) {
  long long t = sys.theta.zinf().step;
  AlgebraElement mult = skew_multiplier(sys, n);
  ZInfPhases g = zinf_phases(sys, mult);
  if (!g.at_inf.is_trivial_phase()) return std::nullopt;
  long long T = std::llabs(t);
  // per residue class the override phases must telescope away
  std::map<long long, Angle> class_sum;
  for (auto& [l, p] : g.overrides) {
    long long r = mod_ll(l, T);
    auto it = class_sum.find(r);
    if (it == class_sum.end())
      class_sum.emplace(r, p);
    else
      it->second = it->second + p;
  }
  for (auto& [r, s] : class_sum)
    if (!s.is_trivial_phase()) return std::nullopt;
  if (g.overrides.empty()) return alg_one(sys.ctx);
  // partial telescoping products on the finite window between the extremes
  long long lo = g.overrides.begin()->first, hi = g.overrides.rbegin()->first;
  AlgebraElement w = alg_one(sys.ctx);
  for (long long l = lo; l <= hi; ++l) {
    Angle acc(sys.ctx.basis);
    for (auto& [j, p] : g.overrides) {
      if (mod_ll(j - l, T) != 0) continue;
      if (t > 0 ? (j <= l) : (j >= l)) acc = acc + p;
    }
    if (!acc.is_trivial_phase()) w.zinf().overrides[l] = PhasedScalar::unit(acc);
  }
  return w;
}

}  // namespace detail

// exact solution w of the level-n cohomological equation
// alpha^{-n}(u_n) theta(w) = w, normalized, or nullopt
inline std::optional<AlgebraElement> solve_continuous(const SkewSystem& sys, long long n) {
  if (n == 0) return alg_one(sys.ctx);
  std::optional<AlgebraElement> w;
  if (sys.ctx.kind == AlgebraContext::Kind::nc_torus)
    w = detail::solve_continuous_torus(sys, n);
  else
    w = detail::solve_continuous_zinf(sys, n);
  if (w) {
    AlgebraElement lhs = alg_mul(skew_multiplier(sys, n), alg_apply(sys.theta, *w));
    if (!alg_exact_equal(lhs, *w))
      throw std::logic_error("cohomology solution failed the substitution check");
  }
  return w;
}

// measurable solvability in the GNS space of omega_0
inline MeasurableStatus solve_measurable(const SkewSystem& sys, long long n) {
  bool cont = solve_continuous(sys, n).has_value();
  if (sys.ctx.kind == AlgebraContext::Kind::nc_torus) {
    // Haar/trace GNS modes decouple; unimodular recursions force measurable
    // solutions onto the same character lines as the continuous ones
    return cont ? MeasurableStatus::continuous_only : MeasurableStatus::none;
  }
  // L2(delta_inf) is one-dimensional: solvable iff the multiplier is 1 at infinity
  AlgebraElement mult = skew_multiplier(sys, n);
  detail::ZInfPhases g = detail::zinf_phases(sys, mult);
  if (!g.at_inf.is_trivial_phase()) return MeasurableStatus::none;
  return cont ? MeasurableStatus::continuous_only : MeasurableStatus::measurable_non_continuous;
}

inline LevelReport solve_level(const SkewSystem& sys, long long n) {
  LevelReport rep;
  rep.level = n;
  rep.continuous = solve_continuous(sys, n);
  rep.measurable = solve_measurable(sys, n);
  rep.method = SolveMethod::closed_form;
  if (rep.continuous) {
    if (rep.continuous->is_torus()) {
      auto& [k, c] = *rep.continuous->torus().terms.begin();
      rep.witness = "monomial U^" + std::to_string(k.first) +
                    (sys.ctx.generators == 2 ? " V^" + std::to_string(k.second) : "");
    } else {
      rep.witness = "telescoped step function";
    }
  } else if (rep.measurable == MeasurableStatus::measurable_non_continuous) {
    rep.witness = "L2(delta_inf) scalar";
  } else {
    rep.witness = "none";
  }
  return rep;
}

namespace detail {

// closed-form minimal level when the cocycle is a genuine character (scalar u)
inline std::optional<MinimalLevel> group_closed_form(const SkewSystem& sys) {
  Mono pq;
  PhasedScalar c;
  if (!is_scalar_unitary(sys.u, &pq, &c)) throw UnsupportedShape("cocycle is not monomial");
  auto phi = exact_phase_of(c, sys.ctx.basis);
  if (!phi) throw UnsupportedShape("cocycle phase is not exactly representable");
  if (sys.ctx.kind == AlgebraContext::Kind::zinf)
    throw std::logic_error("torus-only closed form");
  if (pq.first != 0 || pq.second != 0) {
    // drifting multiplier exponent n*(p,q): no solutions unless the drift can
    // be absorbed, which needs a non-identity theta matrix -> scan instead
    bool alpha_id = sys.alpha.torus().matrix_is_identity();
    Mat2 M = theta_matrix(sys.theta.torus());
    if (alpha_id && M.is_identity()) return std::nullopt;  // G = {0}, exactly
    throw UnsupportedShape("non-character cocycle exponent");
  }
  if (sys.ctx.generators == 1) return minimal_level(sys.theta.torus().phase_u, *phi);
  Mat2 M = theta_matrix(sys.theta.torus());
  guard_matrix(M);
  if (M.det_mi() != 0) return minimal_level(Angle(sys.ctx.basis), *phi);
  if (M.is_identity()) {
    auto r = minimal_level2(sys.theta.torus().phase_u, sys.theta.torus().phase_v, *phi);
    if (!r) throw UnsupportedShape("degenerate symbol matrix for the two-rotation base");
    return MinimalLevel{std::get<0>(*r), std::get<1>(*r)};
  }
  // rank-one fixed line with direction X and rotation phase psi
  long long a = M.a - 1, b = M.b, cc2 = M.c, d = M.d - 1;
  long long km, kn;
  if (a != 0 || b != 0) {
    km = -b;
    kn = a;
  } else {
    km = -d;
    kn = cc2;
  }
  long long g = std::gcd(std::llabs(km), std::llabs(kn));
  km /= g;
  kn /= g;
  AlgebraElement img = alg_apply(sys.theta, make_mono(sys, {km, kn}));
  auto psi = exact_phase_of(img.torus().terms.begin()->second, sys.ctx.basis);
  if (!psi) throw UnsupportedShape("theta phase is not exactly representable");
  return minimal_level(*psi, *phi);
}

inline std::optional<MinimalLevel> zinf_group_closed_form(const SkewSystem& sys) {
  if (sys.alpha.zinf().step != 0) throw UnsupportedShape("shifted cocycle translates");
  // continuous levels: n * at_inf trivial and n * (class sums) trivial
  AlgebraElement mult = skew_multiplier(sys, 1);  // = u itself when alpha = id
  ZInfPhases g = zinf_phases(sys, mult);
  long long T = std::llabs(sys.theta.zinf().step);
  std::vector<Angle> conds{g.at_inf};
  std::map<long long, Angle> class_sum;
  for (auto& [l, p] : g.overrides) {
    long long r = mod_ll(l, T);
    Angle rel = p - g.at_inf;
    auto it = class_sum.find(r);
    if (it == class_sum.end())
      class_sum.emplace(r, rel);
    else
      it->second = it->second + rel;
  }
  for (auto& [r, s] : class_sum) conds.push_back(s);
  long long n0 = 1;
  for (auto& cnd : conds) {
    if (cnd.has_symbol_part()) return std::nullopt;
    n0 = std::lcm(n0, rat_frac(cnd.coeff(0)).denominator());
  }
  return MinimalLevel{n0, 0};
}

}  // namespace detail

// do two crossed elements span the same complex line?
inline bool cp_same_line(const CrossedElement& x, const CrossedElement& y) {
  if (x.modes.empty() || y.modes.empty()) return x.modes.empty() == y.modes.empty();
  auto first_coeff = [](const CrossedElement& z) -> PhasedScalar {
    const AlgebraElement& a = z.modes.begin()->second;
    if (a.is_torus()) return a.torus().terms.begin()->second;
    return a.zinf().overrides.empty() ? a.zinf().at_inf
                                      : a.zinf().overrides.begin()->second;
  };
  if (x.modes.begin()->first != y.modes.begin()->first) return false;
  PhasedScalar cy = first_coeff(y);
  if (cy.is_zero()) return false;
  PhasedScalar ratio = first_coeff(x) * cy.inverse();
  if (std::abs(std::abs(ratio.scale) - 1.0) > 1e-9) return false;
  CrossedElement scaled = cp_scale(y, ratio);
  if (cp_exact_equal(x, scaled)) return true;
  return cp_distance(x, scaled) < 1e-9;
}

inline FixedPointDescription detect_group(const SkewSystem& sys, long long n_max = 24) {
  FixedPointDescription fp;
  std::optional<MinimalLevel> lvl;
  bool closed = true;
  try {
    if (sys.ctx.kind == AlgebraContext::Kind::nc_torus)
      lvl = detail::group_closed_form(sys);
    else
      lvl = detail::zinf_group_closed_form(sys);
  } catch (const UnsupportedShape&) {
    closed = false;
    for (long long n = 1; n <= n_max; ++n)
      if (solve_continuous(sys, n)) {
        lvl = MinimalLevel{n, 0};
        break;
      }
  }
  fp.method = closed ? SolveMethod::closed_form : SolveMethod::scan;
  if (!lvl) {
    fp.shape = FixedPointDescription::Shape::trivial_scalars;
    fp.generators[0] = alg_one(sys.ctx);
    return fp;
  }
  fp.group_generator = lvl->n;
  fp.shape = FixedPointDescription::Shape::circle_algebra;
  for (long long l = -3; l <= 3; ++l) {
    auto w = solve_continuous(sys, lvl->n * l);
    if (!w) throw std::logic_error("group level unexpectedly unsolvable");
    fp.generators[l] = *w;
  }
  // group law: V^{n0 l} w_l products stay on the expected lines
  for (long long l = -1; l <= 1; ++l)
    for (long long m = -1; m <= 1; ++m) {
      CrossedElement xl = cp_from_mode(lvl->n * l, fp.generators[l], sys.alpha);
      CrossedElement xm = cp_from_mode(lvl->n * m, fp.generators[m], sys.alpha);
      CrossedElement xs = cp_from_mode(lvl->n * (l + m), fp.generators[l + m], sys.alpha);
      if (!cp_same_line(cp_mul(xl, xm), xs))
        throw std::logic_error("fixed point generators violate the group law");
    }
  return fp;
}

struct OracleReport {
  long long nullspace_dim = 0;
  std::vector<double> singular_values;  // ascending
  bool boundary_leak = false;
};

// SVD nullspace of pi(alpha^{-n}(u_n)) V_{omega_0,theta} - I on a truncated
// GNS monomial basis, using the numeric symbol witnesses
inline OracleReport oracle_nullspace(const SkewSystem& sys, long long n, int M,
                                     double tol = 1e-8) {
  if (M < 1) throw std::invalid_argument("truncation radius must be positive");
  OracleReport rep;
  AlgebraElement mult = skew_multiplier(sys, n);
  if (sys.ctx.kind == AlgebraContext::Kind::zinf) {
    std::complex<double> v = mult.zinf().at_inf.value();
    double sv = std::abs(v - 1.0);
    rep.singular_values = {sv};
    rep.nullspace_dim = sv < tol ? 1 : 0;
    return rep;
  }
  std::vector<Mono> basis;
  int K = (sys.ctx.generators == 2) ? M : 0;
  for (int m = -M; m <= M; ++m)
    for (int k = -K; k <= K; ++k) basis.push_back({m, k});
  std::map<Mono, int> index;
  for (std::size_t j = 0; j < basis.size(); ++j) index[basis[j]] = static_cast<int>(j);
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    AlgebraElement b = alg_zero(sys.ctx);
    b.torus().terms[basis[j]] = PhasedScalar::one();
    AlgebraElement img = alg_mul(mult, alg_apply(sys.theta, b));
    for (auto& [k, c] : img.torus().terms) {
      auto it = index.find(k);
      if (it == index.end())
        rep.boundary_leak = true;
      else
        A(it->second, j) += c.value();
    }
    A(j, j) -= 1.0;
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
  auto sv = svd.singularValues();
  rep.singular_values.assign(sv.data(), sv.data() + sv.size());
  std::sort(rep.singular_values.begin(), rep.singular_values.end());
  for (double s : rep.singular_values)
    if (s < tol) ++rep.nullspace_dim;
  return rep;
}

}  // namespace skewprod
