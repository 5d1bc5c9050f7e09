#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "skewprod/presets.hpp"
#include "skewprod/serialize.hpp"

using namespace skewprod;

namespace {

struct Scenario {
  std::optional<std::string> preset;
  std::optional<json> system_json;
  PresetParams params;
  long long n_max = 24;
  int truncation = 12;
  double tol = -1.0;  // command-dependent default
  long long iterations = 10000;
  long long level = 1;
  long long mode = 1;
  std::optional<long long> l0;
  bool oracle = false;
  std::string out;
  std::string csv;
  std::optional<json> element;
};

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok) throw std::runtime_error("unknown key \"" + it.key() + "\" in " + where);
  }
}

void load_config(Scenario& sc, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  json j = json::parse(in);
  require_keys(j,
               {"system", "params", "n_max", "truncation", "tol", "iterations", "level",
                "mode", "l0", "oracle", "out", "csv", "element"},
               "config");
  if (j.contains("system")) {
    if (j["system"].is_string())
      sc.preset = j["system"].get<std::string>();
    else
      sc.system_json = j["system"];
  }
  if (j.contains("params")) {
    const json& p = j["params"];
    require_keys(p, {"l", "nc_variant", "beta_minus_one"}, "params");
    if (p.contains("l")) sc.params.l = p["l"].get<long long>();
    if (p.contains("nc_variant")) sc.params.nc_variant = p["nc_variant"].get<bool>();
    if (p.contains("beta_minus_one"))
      sc.params.beta_minus_one = p["beta_minus_one"].get<bool>();
  }
  if (j.contains("n_max")) sc.n_max = j["n_max"].get<long long>();
  if (j.contains("truncation")) sc.truncation = j["truncation"].get<int>();
  if (j.contains("tol")) sc.tol = j["tol"].get<double>();
  if (j.contains("iterations")) sc.iterations = j["iterations"].get<long long>();
  if (j.contains("level")) sc.level = j["level"].get<long long>();
  if (j.contains("mode")) sc.mode = j["mode"].get<long long>();
  if (j.contains("l0")) sc.l0 = j["l0"].get<long long>();
  if (j.contains("oracle")) sc.oracle = j["oracle"].get<bool>();
  if (j.contains("out")) sc.out = j["out"].get<std::string>();
  if (j.contains("csv")) sc.csv = j["csv"].get<std::string>();
  if (j.contains("element")) sc.element = j["element"];
}

SkewSystem build_system(const Scenario& sc) {
  if (sc.system_json) return system_from_json(*sc.system_json);
  if (sc.preset) return make_preset(*sc.preset, sc.params);
  throw std::runtime_error("no system given: use --preset or a config with \"system\"");
}

void emit(const Scenario& sc, const json& report) {
  if (sc.out.empty()) {
    std::cout << report.dump(2) << "\n";
    return;
  }
  std::ofstream out(sc.out);
  if (!out) throw std::runtime_error("cannot write: " + sc.out);
  out << report.dump(2) << "\n";
}

void emit_csv(const Scenario& sc, const std::vector<std::pair<long long, double>>& trace) {
  if (sc.csv.empty()) return;
  std::ofstream out(sc.csv);
  if (!out) throw std::runtime_error("cannot write: " + sc.csv);
  out << "j,distance\n";
  out.precision(15);
  for (auto& [j, d] : trace) out << j << "," << d << "\n";
}

int cmd_classify(const Scenario& sc) {
  SkewSystem sys = build_system(sc);
  Classification c = classify(sys, sc.n_max);
  emit(sc, classification_to_json(c));
  return 0;
}

int cmd_solve(const Scenario& sc) {
  SkewSystem sys = build_system(sc);
  require_valid(sys);
  double tol = sc.tol > 0 ? sc.tol : 1e-8;
  json report;
  try {
    report = level_report_to_json(solve_level(sys, sc.level));
  } catch (const UnsupportedShape& e) {
    if (!sc.oracle) throw;
    report = json{{"level", sc.level}, {"unsupported", e.what()}};
  }
  if (sc.oracle)
    report["oracle"] = oracle_to_json(oracle_nullspace(sys, sc.level, sc.truncation, tol));
  emit(sc, report);
  return 0;
}

int cmd_average(const Scenario& sc) {
  SkewSystem sys = build_system(sc);
  require_valid(sys);
  double tol = sc.tol > 0 ? sc.tol : 5e-2;
  if (sc.l0) {
    // classical pointwise products along the orbit of (l0, z)
    if (sys.ctx.kind != AlgebraContext::Kind::zinf)
      throw std::runtime_error("--l0 applies to the sequence-algebra family only");
    BirkhoffResult fin = birkhoff_pointwise(sys, *sc.l0, sc.iterations);
    std::vector<std::pair<long long, double>> trace;
    for (long long j = 1, step = 1; j <= sc.iterations; j += step) {
      BirkhoffResult r = birkhoff_pointwise(sys, *sc.l0, j);
      trace.emplace_back(j, std::abs(r.orbit_coefficient - fin.orbit_coefficient));
      if (j >= 10 * step) step *= 10;
    }
    emit_csv(sc, trace);
    emit(sc, json{{"l0", *sc.l0},
                  {"iterations", sc.iterations},
                  {"orbit_coefficient", {fin.orbit_coefficient.real(), fin.orbit_coefficient.imag()}},
                  {"cesaro_coefficient",
                   {fin.cesaro_coefficient.real(), fin.cesaro_coefficient.imag()}}});
    return 0;
  }
  CrossedElement x = sc.element ? crossed_from_json(*sc.element, sys.ctx)
                                : cp_from_mode(sc.mode, alg_one(sys.ctx), sys.alpha);
  FixedPointDescription fp = detect_group(sys, sc.n_max);
  AverageDiagnostics d = cesaro_orbit_average(sys, x, sc.iterations, fp, tol);
  emit_csv(sc, d.trace);
  emit(sc, diagnostics_to_json(d));
  return 0;
}

int cmd_expect(const Scenario& sc) {
  SkewSystem sys = build_system(sc);
  require_valid(sys);
  CrossedElement x = sc.element ? crossed_from_json(*sc.element, sys.ctx)
                                : cp_from_mode(sc.mode, alg_one(sys.ctx), sys.alpha);
  FixedPointDescription fp = detect_group(sys, sc.n_max);
  json report;
  report["gauge_expectation"] = element_to_json(cp_expectation(x));
  report["fixed_point_expectation"] = crossed_to_json(conditional_expectation_phi(sys, fp, x));
  report["fixed_point"] = fixed_point_to_json(fp);
  emit(sc, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skew-product dynamics on crossed products"};
  app.require_subcommand(1);

  Scenario sc;
  std::string config_path;
  // shared flags, attached to each subcommand
  auto wire = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "JSON scenario config");
    cmd->add_option("--preset", sc.preset,
                    "double-rotation | anzai-inverse | zinf | nctorus-independent | "
                    "nctorus-dependent");
    cmd->add_option("--l", sc.params.l, "double-rotation order");
    cmd->add_flag("--nc-variant", sc.params.nc_variant, "noncommutative preset variant");
    cmd->add_flag("--beta-minus-one", sc.params.beta_minus_one, "use beta = -1 in zinf");
    cmd->add_option("--n-max", sc.n_max, "level scan bound");
    cmd->add_option("--truncation", sc.truncation, "oracle basis radius M");
    cmd->add_option("--tol", sc.tol, "tolerance (oracle or convergence)");
    cmd->add_option("--iterations", sc.iterations, "average length");
    cmd->add_option("--out", sc.out, "write the JSON report here instead of stdout");
    cmd->add_option("--csv", sc.csv, "write the trace CSV here");
  };

  CLI::App* c_classify = app.add_subcommand("classify", "ergodicity classification");
  wire(c_classify);
  CLI::App* c_solve = app.add_subcommand("solve", "cohomological equation at one level");
  wire(c_solve);
  c_solve->add_option("--level", sc.level, "equation level n");
  c_solve->add_flag("--oracle", sc.oracle, "attach SVD nullspace evidence");
  CLI::App* c_average = app.add_subcommand("average", "Cesaro average simulation");
  wire(c_average);
  c_average->add_option("--mode", sc.mode, "observable V^mode");
  c_average->add_option("--l0", sc.l0, "classical orbit start (sequence family)");
  CLI::App* c_expect = app.add_subcommand("expect", "gauge and fixed-point expectations");
  wire(c_expect);
  c_expect->add_option("--mode", sc.mode, "observable V^mode");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (!config_path.empty()) {
      Scenario fresh;
      load_config(fresh, config_path);
      // command-line flags win over config values
      CLI::App* sub = app.get_subcommands().front();
      auto keep = [&](const std::string& flag) { return sub->count(flag) > 0; };
      if (sc.preset) fresh.preset = sc.preset;
      if (keep("--l")) fresh.params.l = sc.params.l;
      if (keep("--nc-variant")) fresh.params.nc_variant = sc.params.nc_variant;
      if (keep("--beta-minus-one")) fresh.params.beta_minus_one = sc.params.beta_minus_one;
      if (keep("--n-max")) fresh.n_max = sc.n_max;
      if (keep("--truncation")) fresh.truncation = sc.truncation;
      if (keep("--tol")) fresh.tol = sc.tol;
      if (keep("--iterations")) fresh.iterations = sc.iterations;
      if (sub->get_option_no_throw("--level") && keep("--level")) fresh.level = sc.level;
      if (sub->get_option_no_throw("--mode") && keep("--mode")) fresh.mode = sc.mode;
      if (sub->get_option_no_throw("--l0") && keep("--l0")) fresh.l0 = sc.l0;
      if (sub->get_option_no_throw("--oracle") && keep("--oracle")) fresh.oracle = sc.oracle;
      if (keep("--out")) fresh.out = sc.out;
      if (keep("--csv")) fresh.csv = sc.csv;
      sc = fresh;
    }
    if (app.got_subcommand("classify")) return cmd_classify(sc);
    if (app.got_subcommand("solve")) return cmd_solve(sc);
    if (app.got_subcommand("average")) return cmd_average(sc);
    return cmd_expect(sc);
  } catch (const HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 3;
  } catch (const InvalidSystem& e) {
    std::cerr << "invalid system: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedShape& e) {
    std::cerr << "unsupported shape: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid system: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
