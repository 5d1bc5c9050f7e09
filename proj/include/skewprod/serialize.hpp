#pragma once

#include <json.hpp>

#include "classify.hpp"
#include "cohomology.hpp"
#include "skew.hpp"

namespace skewprod {

using nlohmann::json;

inline json angle_to_json(const Angle& a) {
  json j;
  j["q0"] = format_rational(a.coeff(0));
  json sym = json::object();
  for (std::size_t i = 1; i < a.dim(); ++i)
    if (a.coeff(i) != 0) sym[a.basis()->symbols[i - 1].name] = format_rational(a.coeff(i));
  j["sym"] = sym;
  return j;
}

inline Angle angle_from_json(const json& j, SymbolBasisPtr basis) {
  Angle a(basis);
  a.coeff(0) = parse_rational(j.at("q0").get<std::string>());
  if (j.contains("sym"))
    for (auto& [name, v] : j.at("sym").items()) {
      int idx = basis->index_of(name);
      if (idx < 0) throw std::invalid_argument("unknown symbol in angle: " + name);
      a.coeff(1 + idx) = parse_rational(v.get<std::string>());
    }
  return a;
}

inline json basis_to_json(const SymbolBasisPtr& b) {
  json arr = json::array();
  for (auto& s : b->symbols) arr.push_back({{"name", s.name}, {"witness", s.witness}});
  return arr;
}

inline SymbolBasisPtr basis_from_json(const json& j) {
  auto b = std::make_shared<SymbolBasis>();
  for (auto& e : j)
    b->symbols.push_back({e.at("name").get<std::string>(), e.at("witness").get<double>()});
  return b;
}

inline void scalar_to_json(json& t, const PhasedScalar& c) {
  t["re"] = c.scale.real();
  t["im"] = c.scale.imag();
  if (c.phase) t["phase"] = angle_to_json(*c.phase);
}

inline PhasedScalar scalar_from_json(const json& t, SymbolBasisPtr basis) {
  PhasedScalar c(std::complex<double>(t.at("re").get<double>(), t.at("im").get<double>()));
  if (t.contains("phase")) {
    Angle a = angle_from_json(t.at("phase"), basis);
    if (!c.is_zero()) return PhasedScalar(c.scale, a);
  }
  return c;
}

inline json context_to_json(const AlgebraContext& ctx) {
  json j;
  j["kind"] = ctx.kind == AlgebraContext::Kind::nc_torus ? "nctorus" : "zinf";
  j["basis"] = basis_to_json(ctx.basis);
  if (ctx.kind == AlgebraContext::Kind::nc_torus) {
    j["generators"] = ctx.generators;
    j["gamma"] = angle_to_json(ctx.gamma);
  }
  return j;
}

inline AlgebraContext context_from_json(const json& j) {
  SymbolBasisPtr basis = j.contains("basis") ? basis_from_json(j.at("basis")) : default_basis();
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "zinf") return AlgebraContext::zinf_ctx(basis);
  if (kind != "nctorus") throw std::invalid_argument("unknown algebra kind: " + kind);
  AlgebraContext ctx = AlgebraContext::circle(basis);
  if (j.contains("generators")) ctx.generators = j.at("generators").get<int>();
  if (j.contains("gamma")) ctx.gamma = angle_from_json(j.at("gamma"), basis);
  return ctx;
}

inline json element_to_json(const AlgebraElement& a) {
  json j;
  if (a.is_torus()) {
    j["gamma"] = angle_to_json(a.ctx.gamma);
    json terms = json::array();
    for (auto& [k, c] : a.torus().terms) {
      json t;
      t["m"] = k.first;
      t["n"] = k.second;
      scalar_to_json(t, c);
      terms.push_back(t);
    }
    j["terms"] = terms;
  } else {
    json inf;
    scalar_to_json(inf, a.zinf().at_inf);
    j["at_inf"] = inf;
    json ov = json::array();
    for (auto& [l, c] : a.zinf().overrides) {
      json t;
      t["l"] = l;
      scalar_to_json(t, c);
      ov.push_back(t);
    }
    j["overrides"] = ov;
  }
  return j;
}

inline AlgebraElement element_from_json(const json& j, const AlgebraContext& ctx) {
  AlgebraElement a = alg_zero(ctx);
  if (ctx.kind == AlgebraContext::Kind::nc_torus) {
    for (auto& t : j.at("terms")) {
      PhasedScalar c = scalar_from_json(t, ctx.basis);
      if (!c.is_zero())
        a.torus().terms[{t.at("m").get<long long>(), t.at("n").get<long long>()}] = c;
    }
  } else {
    a.zinf().at_inf = scalar_from_json(j.at("at_inf"), ctx.basis);
    if (j.contains("overrides"))
      for (auto& t : j.at("overrides"))
        a.zinf().overrides[t.at("l").get<long long>()] = scalar_from_json(t, ctx.basis);
  }
  return a;
}

inline json automorphism_to_json(const Automorphism& s) {
  json j;
  if (s.is_torus()) {
    auto& t = s.torus();
    j["kind"] = "torus";
    j["phase_u"] = angle_to_json(t.phase_u);
    j["phase_v"] = angle_to_json(t.phase_v);
    j["exp_u"] = {t.exp_u[0], t.exp_u[1]};
    j["exp_v"] = {t.exp_v[0], t.exp_v[1]};
  } else {
    j["kind"] = "shift";
    j["shift"] = s.zinf().step;
  }
  return j;
}

inline Automorphism automorphism_from_json(const json& j, const AlgebraContext& ctx) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "shift") return Automorphism::shift(j.at("shift").get<long long>());
  if (kind != "torus") throw std::invalid_argument("unknown automorphism kind: " + kind);
  TorusAutomorphism t;
  t.phase_u = angle_from_json(j.at("phase_u"), ctx.basis);
  t.phase_v = angle_from_json(j.at("phase_v"), ctx.basis);
  auto eu = j.at("exp_u");
  auto ev = j.at("exp_v");
  t.exp_u = {eu.at(0).get<long long>(), eu.at(1).get<long long>()};
  t.exp_v = {ev.at(0).get<long long>(), ev.at(1).get<long long>()};
  return Automorphism{t};
}

inline json crossed_to_json(const CrossedElement& x) {
  json j;
  j["alpha"] = automorphism_to_json(x.alpha);
  json modes = json::array();
  for (auto& [k, a] : x.modes) modes.push_back({{"k", k}, {"coeff", element_to_json(a)}});
  j["modes"] = modes;
  return j;
}

inline CrossedElement crossed_from_json(const json& j, const AlgebraContext& ctx) {
  CrossedElement x = cp_zero(ctx, automorphism_from_json(j.at("alpha"), ctx));
  for (auto& m : j.at("modes"))
    x.modes[m.at("k").get<long long>()] = element_from_json(m.at("coeff"), ctx);
  cp_prune(x);
  return x;
}

inline json system_to_json(const SkewSystem& sys) {
  json j;
  j["algebra"] = context_to_json(sys.ctx);
  j["theta"] = automorphism_to_json(sys.theta);
  j["alpha"] = automorphism_to_json(sys.alpha);
  j["u"] = element_to_json(sys.u);
  j["flags"] = {{"omega0_faithful", sys.flags.omega0_faithful},
                {"support_central", sys.flags.support_central}};
  return j;
}

inline SkewSystem system_from_json(const json& j) {
  SkewSystem sys;
  sys.ctx = context_from_json(j.at("algebra"));
  sys.theta = automorphism_from_json(j.at("theta"), sys.ctx);
  sys.alpha = automorphism_from_json(j.at("alpha"), sys.ctx);
  sys.u = element_from_json(j.at("u"), sys.ctx);
  if (j.contains("flags")) {
    sys.flags.omega0_faithful = j.at("flags").value("omega0_faithful", true);
    sys.flags.support_central = j.at("flags").value("support_central", true);
  }
  return sys;
}

inline std::string method_name(SolveMethod m) {
  switch (m) {
    case SolveMethod::closed_form: return "closed_form";
    case SolveMethod::scan: return "scan";
    default: return "oracle";
  }
}

inline SolveMethod method_from_name(const std::string& s) {
  if (s == "closed_form") return SolveMethod::closed_form;
  if (s == "scan") return SolveMethod::scan;
  return SolveMethod::oracle;
}

inline std::string measurable_name(MeasurableStatus m) {
  switch (m) {
    case MeasurableStatus::none: return "none";
    case MeasurableStatus::continuous_only: return "continuous_only";
    default: return "measurable_non_continuous";
  }
}

inline MeasurableStatus measurable_from_name(const std::string& s) {
  if (s == "none") return MeasurableStatus::none;
  if (s == "continuous_only") return MeasurableStatus::continuous_only;
  return MeasurableStatus::measurable_non_continuous;
}

inline json level_report_to_json(const LevelReport& r) {
  json j;
  j["level"] = r.level;
  if (r.continuous) j["continuous"] = element_to_json(*r.continuous);
  j["measurable"] = measurable_name(r.measurable);
  j["witness"] = r.witness;
  j["method"] = method_name(r.method);
  return j;
}

inline LevelReport level_report_from_json(const json& j, const AlgebraContext& ctx) {
  LevelReport r;
  r.level = j.at("level").get<long long>();
  if (j.contains("continuous")) r.continuous = element_from_json(j.at("continuous"), ctx);
  r.measurable = measurable_from_name(j.at("measurable").get<std::string>());
  r.witness = j.at("witness").get<std::string>();
  r.method = method_from_name(j.at("method").get<std::string>());
  return r;
}

inline json fixed_point_to_json(const FixedPointDescription& fp) {
  json j;
  if (fp.group_generator) j["group_generator"] = *fp.group_generator;
  j["shape"] = fp.shape == FixedPointDescription::Shape::circle_algebra ? "circle_algebra"
                                                                        : "trivial_scalars";
  json gens = json::object();
  for (auto& [l, w] : fp.generators) gens[std::to_string(l)] = element_to_json(w);
  j["generators"] = gens;
  j["method"] = method_name(fp.method);
  return j;
}

inline FixedPointDescription fixed_point_from_json(const json& j, const AlgebraContext& ctx) {
  FixedPointDescription fp;
  if (j.contains("group_generator")) fp.group_generator = j.at("group_generator").get<long long>();
  fp.shape = j.at("shape").get<std::string>() == "circle_algebra"
                 ? FixedPointDescription::Shape::circle_algebra
                 : FixedPointDescription::Shape::trivial_scalars;
  for (auto& [l, w] : j.at("generators").items())
    fp.generators[std::stoll(l)] = element_from_json(w, ctx);
  fp.method = method_from_name(j.at("method").get<std::string>());
  return fp;
}

inline std::string uefp_name(UeFixedPoint v) {
  switch (v) {
    case UeFixedPoint::yes: return "yes";
    case UeFixedPoint::no: return "no";
    default: return "unknown";
  }
}

inline UeFixedPoint uefp_from_name(const std::string& s) {
  if (s == "yes") return UeFixedPoint::yes;
  if (s == "no") return UeFixedPoint::no;
  return UeFixedPoint::unknown;
}

inline json classification_to_json(const Classification& c) {
  json j;
  j["topologically_ergodic"] = c.topologically_ergodic;
  j["ergodic_and_uniquely_ergodic"] = c.ergodic_and_uniquely_ergodic;
  j["weakly_clustering"] = c.weakly_clustering;
  j["strictly_ergodic"] = c.strictly_ergodic;
  j["sharply_ergodic"] = c.sharply_ergodic;
  j["minimal"] = c.minimal_implied ? "implied" : "not_implied";
  j["ue_wrt_fixed_point"] = uefp_name(c.ue_wrt_fixed_point);
  j["fixed_point"] = fixed_point_to_json(c.fixed_point);
  json ev = json::array();
  for (auto& r : c.evidence) ev.push_back(level_report_to_json(r));
  j["evidence"] = ev;
  return j;
}

inline Classification classification_from_json(const json& j, const AlgebraContext& ctx) {
  Classification c;
  c.topologically_ergodic = j.at("topologically_ergodic").get<bool>();
  c.ergodic_and_uniquely_ergodic = j.at("ergodic_and_uniquely_ergodic").get<bool>();
  c.weakly_clustering = j.at("weakly_clustering").get<bool>();
  c.strictly_ergodic = j.at("strictly_ergodic").get<bool>();
  c.sharply_ergodic = j.at("sharply_ergodic").get<bool>();
  c.minimal_implied = j.at("minimal").get<std::string>() == "implied";
  c.ue_wrt_fixed_point = uefp_from_name(j.at("ue_wrt_fixed_point").get<std::string>());
  c.fixed_point = fixed_point_from_json(j.at("fixed_point"), ctx);
  for (auto& r : j.at("evidence")) c.evidence.push_back(level_report_from_json(r, ctx));
  return c;
}

inline json diagnostics_to_json(const AverageDiagnostics& d) {
  json j;
  j["iterations"] = d.iterations;
  json tr = json::array();
  for (auto& [k, v] : d.trace) tr.push_back({{"j", k}, {"distance", v}});
  j["trace"] = tr;
  j["final_residual"] = d.final_residual;
  j["tolerance"] = d.tolerance;
  j["verdict"] = d.converging ? "converging" : "diverging";
  return j;
}

inline json oracle_to_json(const OracleReport& r, std::size_t max_values = 8) {
  json j;
  j["nullspace_dim"] = r.nullspace_dim;
  json sv = json::array();
  for (std::size_t i = 0; i < r.singular_values.size() && i < max_values; ++i)
    sv.push_back(r.singular_values[i]);
  j["smallest_singular_values"] = sv;
  j["boundary_leak"] = r.boundary_leak;
  return j;
}

}  // namespace skewprod
