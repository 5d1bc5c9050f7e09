#pragma once

#include "cohomology.hpp"

namespace skewprod {

struct HypothesisViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class UeFixedPoint { yes, no, unknown };

struct Classification {
  bool topologically_ergodic = false;
  bool ergodic_and_uniquely_ergodic = false;
  bool weakly_clustering = false;
  bool strictly_ergodic = false;
  bool sharply_ergodic = false;
  bool minimal_implied = false;
  UeFixedPoint ue_wrt_fixed_point = UeFixedPoint::unknown;
  FixedPointDescription fixed_point;
  std::vector<LevelReport> evidence;
};

inline void require_valid(const SkewSystem& sys) {
  ValidationReport rep = skew_validate(sys);
  if (rep.ok) return;
  for (auto& e : rep.errors)
    if (e.find("topologically ergodic") != std::string::npos) throw HypothesisViolation(e);
  throw InvalidSystem(rep.errors.front());
}

// commutative crossed product: a genuine classical process
inline bool is_classical_process(const SkewSystem& sys) {
  if (!is_identity_automorphism(sys.alpha)) return false;
  if (sys.ctx.kind == AlgebraContext::Kind::zinf) return true;
  return sys.ctx.gamma.is_trivial_phase();
}

inline Classification classify(const SkewSystem& sys, long long n_max = 24) {
  require_valid(sys);
  Classification out;
  out.fixed_point = detect_group(sys, n_max);
  out.topologically_ergodic = !out.fixed_point.group_generator.has_value();

  bool unique = false;
  bool any_mnc = false;  // measurable-but-not-continuous witness seen
  bool ue_scan_bounded = false;
  if (sys.ctx.kind == AlgebraContext::Kind::nc_torus) {
    // Haar/trace: every measurable solution is continuous
    unique = out.topologically_ergodic;
  } else {
    AlgebraElement mult = skew_multiplier(sys, 1);
    if (sys.alpha.zinf().step == 0) {
      // measurable level-n solvability is n * phase(u(inf)) trivial, so unique
      // ergodicity means that phase is irrational
      detail::ZInfPhases g = detail::zinf_phases(sys, mult);
      unique = g.at_inf.has_symbol_part();
    } else {
      ue_scan_bounded = true;
      unique = true;
      for (long long n = 1; n <= n_max && unique; ++n)
        if (solve_measurable(sys, n) != MeasurableStatus::none) unique = false;
    }
  }

  long long top = std::min<long long>(n_max, 6);
  for (long long n = 0; n <= top; ++n) {
    LevelReport rep = solve_level(sys, n);
    if (ue_scan_bounded) rep.method = SolveMethod::scan;
    if (rep.measurable == MeasurableStatus::measurable_non_continuous) any_mnc = true;
    out.evidence.push_back(std::move(rep));
  }
  if (out.fixed_point.group_generator && *out.fixed_point.group_generator > top)
    out.evidence.push_back(solve_level(sys, *out.fixed_point.group_generator));

  out.ergodic_and_uniquely_ergodic = unique;
  out.weakly_clustering = unique;
  out.strictly_ergodic = unique && sys.flags.omega0_faithful;
  out.sharply_ergodic = out.strictly_ergodic && sys.flags.support_central;
  out.minimal_implied = out.strictly_ergodic;

  if (unique) {
    out.ue_wrt_fixed_point = UeFixedPoint::yes;
  } else if (out.fixed_point.group_generator == 1) {
    out.ue_wrt_fixed_point = UeFixedPoint::yes;  // G = Z
  } else if (is_classical_process(sys)) {
    if (sys.ctx.kind == AlgebraContext::Kind::nc_torus) {
      out.ue_wrt_fixed_point = UeFixedPoint::yes;  // measurable = continuous
    } else {
      // measurable levels form nm*Z; continuous levels nc*Z; equality decides
      detail::ZInfPhases g = detail::zinf_phases(sys, skew_multiplier(sys, 1));
      long long nm = rat_frac(g.at_inf.coeff(0)).denominator();  // symbol-free here
      bool match = out.fixed_point.group_generator &&
                   *out.fixed_point.group_generator == nm;
      out.ue_wrt_fixed_point = match ? UeFixedPoint::yes : UeFixedPoint::no;
    }
  } else if (any_mnc) {
    out.ue_wrt_fixed_point = UeFixedPoint::no;
  } else {
    out.ue_wrt_fixed_point = UeFixedPoint::unknown;
  }
  return out;
}

// E_Phi(x) = sum over l in G of omega_0(w_{-l} E(V^{-l} x)) V^l w_l
inline CrossedElement conditional_expectation_phi(const SkewSystem& sys,
                                                  const FixedPointDescription& fp,
                                                  const CrossedElement& x) {
  CrossedElement r = cp_zero(sys.ctx, sys.alpha);
  auto generator_at = [&](long long level) -> AlgebraElement {
    if (level == 0) return alg_one(sys.ctx);
    long long n0 = *fp.group_generator;
    auto it = fp.generators.find(level / n0);
    if (it != fp.generators.end()) return it->second;
    auto w = solve_continuous(sys, level);
    if (!w) throw std::logic_error("missing fixed point generator");
    return *w;
  };
  for (auto& [k, a] : x.modes) {
    if (k != 0 && (!fp.group_generator || k % *fp.group_generator != 0)) continue;
    AlgebraElement wk = generator_at(k);
    AlgebraElement wmk = generator_at(-k);
    PhasedScalar s = alg_state_exact(alg_mul(wmk, a));
    if (s.is_zero()) continue;
    r = cp_add(r, cp_from_mode(k, alg_scale(wk, s), sys.alpha));
  }
  return r;
}

struct AverageDiagnostics {
  long long iterations = 0;
  std::vector<std::pair<long long, double>> trace;  // (j, distance)
  double final_residual = 0.0;
  double tolerance = 5e-2;
  bool converging = false;
};

// running Cesaro means of Phi^k(x) against E_Phi(x) in the l1 coefficient norm
inline AverageDiagnostics cesaro_orbit_average(const SkewSystem& sys, const CrossedElement& x,
                                               long long n, const FixedPointDescription& fp,
                                               double tolerance = 5e-2) {
  AverageDiagnostics diag;
  diag.iterations = n;
  diag.tolerance = tolerance;
  CrossedElement target = conditional_expectation_phi(sys, fp, x);
  std::vector<long long> checkpoints;
  for (long long j = 1, step = 1; j <= n; j += step) {
    checkpoints.push_back(j);
    if (j >= 10 * step) step *= 10;
  }
  if (checkpoints.back() != n) checkpoints.push_back(n);
  std::size_t next = 0;
  CrossedElement y = x;
  CrossedElement sum = cp_zero(sys.ctx, sys.alpha);
  for (long long k = 0; k < n; ++k) {
    sum = cp_add(sum, y);
    long long j = k + 1;
    if (next < checkpoints.size() && checkpoints[next] == j) {
      double inv = 1.0 / static_cast<double>(j);
      double d = cp_distance(cp_scale(sum, PhasedScalar(std::complex<double>(inv, 0.0))),
                             target);
      diag.trace.emplace_back(j, d);
      ++next;
    }
    if (k + 1 < n) y = skew_apply(sys, y);
  }
  diag.final_residual = diag.trace.empty() ? 0.0 : diag.trace.back().second;
  diag.converging = diag.final_residual < tolerance;
  return diag;
}

inline double gns_norm(const CrossedElement& z) {
  double v = std::real(cp_state(cp_mul(cp_adjoint(z), z)));
  return std::sqrt(std::max(0.0, v));
}

// residual of the mean ergodic theorem in the GNS space: average of
// V_{omega,Phi}^k applied to pi(V^m a) xi against the projection onto the
// fixed vectors pi(V^l w_l) xi
inline double gns_cesaro_check(const SkewSystem& sys, long long m, const AlgebraElement& a,
                               long long n, int M) {
  if (std::llabs(m) > M) throw std::invalid_argument("mode exceeds truncation");
  if (a.is_torus())
    for (auto& [k, c] : a.torus().terms)
      if (std::llabs(k.first) > M || std::llabs(k.second) > M)
        throw std::invalid_argument("support exceeds truncation");
  CrossedElement x = cp_from_mode(m, a, sys.alpha);
  FixedPointDescription fp = detect_group(sys);
  CrossedElement y = x;
  CrossedElement sum = cp_zero(sys.ctx, sys.alpha);
  for (long long k = 0; k < n; ++k) {
    sum = cp_add(sum, y);
    if (k + 1 < n) y = skew_apply(sys, y);
  }
  double inv = 1.0 / static_cast<double>(n);
  CrossedElement avg = cp_scale(sum, PhasedScalar(std::complex<double>(inv, 0.0)));
  CrossedElement proj = cp_zero(sys.ctx, sys.alpha);
  for (auto& [k, ak] : x.modes) {
    if (k != 0 && (!fp.group_generator || k % *fp.group_generator != 0)) continue;
    AlgebraElement wk = (k == 0) ? alg_one(sys.ctx) : *solve_continuous(sys, k);
    CrossedElement eta = cp_from_mode(k, wk, sys.alpha);
    std::complex<double> ip = cp_state(cp_mul(cp_adjoint(eta), x));
    proj = cp_add(proj, cp_scale(eta, PhasedScalar(ip)));
  }
  return gns_norm(cp_sub(avg, proj));
}

struct BirkhoffResult {
  std::complex<double> orbit_coefficient;   // factor on z after n steps
  std::complex<double> cesaro_coefficient;  // Cesaro average of the factors
};

// classical point dynamics Phi(l, z) = (l + p, f(l) z) on Z_inf x T,
// observable h(l, z) = z
inline BirkhoffResult birkhoff_pointwise(const SkewSystem& sys, long long l0, long long n) {
  if (sys.ctx.kind != AlgebraContext::Kind::zinf)
    throw std::invalid_argument("pointwise averages are for the ZInf family");
  long long p = sys.theta.zinf().step;
  auto value = [&](long long l) {
    auto it = sys.u.zinf().overrides.find(l);
    return (it == sys.u.zinf().overrides.end() ? sys.u.zinf().at_inf : it->second).value();
  };
  std::complex<double> prod(1.0, 0.0), sum(0.0, 0.0);
  long long l = l0;
  for (long long k = 0; k < n; ++k) {
    sum += prod;
    prod *= value(l);
    l += p;
  }
  return {prod, sum / static_cast<double>(n)};
}

// T(mu)(F) = sum_l mu_check(l) * omega_0(conj(g_{n0 l}) * mode_{n0 l}(F))
inline std::complex<double> invariant_measure_functional(
    const SkewSystem& sys, const FixedPointDescription& fp,
    const std::map<long long, std::complex<double>>& mu_check, const CrossedElement& F) {
  if (!is_classical_process(sys))
    throw std::invalid_argument("invariant measure parametrization needs a classical process");
  auto it0 = mu_check.find(0);
  if (it0 == mu_check.end() || std::abs(it0->second - std::complex<double>(1.0, 0.0)) > 1e-12)
    throw std::invalid_argument("characteristic sequence must have mu_check(0) = 1");
  for (auto& [l, v] : mu_check) {
    auto itn = mu_check.find(-l);
    if (itn == mu_check.end() || std::abs(std::conj(v) - itn->second) > 1e-12)
      throw std::invalid_argument("characteristic sequence must be Hermitian");
  }
  std::complex<double> total(0.0, 0.0);
  for (auto& [l, mv] : mu_check) {
    long long mode = (l == 0) ? 0 : *fp.group_generator * l;
    if (l != 0 && !fp.group_generator) continue;
    AlgebraElement al = cp_mode(F, mode);
    if (alg_norm(al) == 0) continue;
    AlgebraElement w = (l == 0) ? alg_one(sys.ctx) : *solve_continuous(sys, mode);
    total += mv * alg_state(alg_mul(alg_adjoint(w), al));
  }
  return total;
}

}  // namespace skewprod
