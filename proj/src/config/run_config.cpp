// SPDX-License-Identifier: Apache-2.0
#include "phaselab/config/run_config.hpp"

#include <json.hpp>

#include <set>

#include "phaselab/errors.hpp"
#include "phaselab/theory/transition.hpp"

namespace phaselab {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
  if (!obj.is_object()) throw InputError("config: " + where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key))
      throw InputError("config: unknown key '" + key + "' in " + where);
  }
  for (const auto& key : allowed)
    if (!obj.contains(key))
      throw InputError("config: missing key '" + key + "' in " + where);
}

std::optional<double> parse_auto_or_number(const json& v, const std::string& what) {
  if (v.is_string()) {
    if (v.get<std::string>() == "auto") return std::nullopt;
    throw InputError("config: " + what + " must be a number or \"auto\"");
  }
  if (!v.is_number()) throw InputError("config: " + what + " must be a number or \"auto\"");
  return v.get<double>();
}

json auto_or_number(const std::optional<double>& v) {
  if (v) return *v;
  return "auto";
}

std::string rho_mode_to_string(RunConfig::RhoGrid::Mode m) {
  switch (m) {
    case RunConfig::RhoGrid::Mode::CenteredReal: return "centered-real";
    case RunConfig::RhoGrid::Mode::CenteredComplex: return "centered-complex";
    case RunConfig::RhoGrid::Mode::Explicit: return "explicit";
  }
  return "?";
}

RunConfig::RhoGrid::Mode rho_mode_from_string(const std::string& s) {
  if (s == "centered-real") return RunConfig::RhoGrid::Mode::CenteredReal;
  if (s == "centered-complex") return RunConfig::RhoGrid::Mode::CenteredComplex;
  if (s == "explicit") return RunConfig::RhoGrid::Mode::Explicit;
  throw InputError("config: unknown rho_grid mode: " + s);
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InputError(std::string("config: invalid JSON: ") + e.what());
  }

  require_keys(doc,
               {"schema_version", "label", "ensemble", "signal_model", "N", "trials",
                "base_seed", "deltas", "rho_grid", "algorithm", "solver", "out"},
               "config");
  RunConfig cfg;
  try {
    cfg.schema_version = doc.at("schema_version").get<int>();
    if (cfg.schema_version != 1)
      throw InputError("config: unsupported schema_version");
    cfg.label = doc.at("label").get<std::string>();
    cfg.ensemble = ensemble_kind_from_string(doc.at("ensemble").get<std::string>());
    cfg.signal_model =
        signal_model_from_string(doc.at("signal_model").get<std::string>());
    cfg.N = doc.at("N").get<Index>();
    cfg.trials = doc.at("trials").get<int>();
    cfg.base_seed = doc.at("base_seed").get<std::uint64_t>();
    cfg.deltas = doc.at("deltas").get<std::vector<double>>();

    const json& rg = doc.at("rho_grid");
    require_keys(rg, {"mode", "half_width", "step", "values"}, "rho_grid");
    cfg.rho_grid.mode = rho_mode_from_string(rg.at("mode").get<std::string>());
    cfg.rho_grid.half_width = rg.at("half_width").get<double>();
    cfg.rho_grid.step = rg.at("step").get<double>();
    cfg.rho_grid.values = rg.at("values").get<std::vector<std::vector<double>>>();
    if (cfg.rho_grid.mode == RunConfig::RhoGrid::Mode::Explicit &&
        cfg.rho_grid.values.size() != cfg.deltas.size())
      throw InputError("config: explicit rho_grid needs one list per delta");

    cfg.algorithm = algorithm_from_string(doc.at("algorithm").get<std::string>());

    const json& sv = doc.at("solver");
    require_keys(sv,
                 {"variant", "r", "mu0", "outer_max", "inner_max", "inner_tol",
                  "stop_tol"},
                 "solver");
    std::string variant = sv.at("variant").get<std::string>();
    if (variant == "exact")
      cfg.solver.variant = SolverVariant::Exact;
    else if (variant == "relaxed")
      cfg.solver.variant = SolverVariant::Relaxed;
    else
      throw InputError("config: solver.variant must be 'exact' or 'relaxed'");
    cfg.solver.r = parse_auto_or_number(sv.at("r"), "solver.r");
    cfg.solver.mu0 = parse_auto_or_number(sv.at("mu0"), "solver.mu0");
    cfg.solver.outer_max = sv.at("outer_max").get<int>();
    cfg.solver.inner_max = sv.at("inner_max").get<int>();
    cfg.solver.inner_tol = sv.at("inner_tol").get<double>();
    cfg.solver.stop_tol = sv.at("stop_tol").get<double>();

    cfg.out = doc.at("out").get<std::string>();
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }

  if (cfg.N < 1) throw InputError("config: N must be positive");
  if (cfg.trials < 1) throw InputError("config: trials must be >= 1");
  if (cfg.deltas.empty()) throw InputError("config: deltas must be non-empty");
  for (double d : cfg.deltas)
    if (!(d > 0.0 && d <= 1.0)) throw InputError("config: deltas must lie in (0, 1]");
  return cfg;
}

std::string serialize_run_config(const RunConfig& cfg) {
  json doc;
  doc["schema_version"] = cfg.schema_version;
  doc["label"] = cfg.label;
  doc["ensemble"] = to_string(cfg.ensemble);
  doc["signal_model"] = to_string(cfg.signal_model);
  doc["N"] = cfg.N;
  doc["trials"] = cfg.trials;
  doc["base_seed"] = cfg.base_seed;
  doc["deltas"] = cfg.deltas;
  doc["rho_grid"] = {{"mode", rho_mode_to_string(cfg.rho_grid.mode)},
                     {"half_width", cfg.rho_grid.half_width},
                     {"step", cfg.rho_grid.step},
                     {"values", cfg.rho_grid.values}};
  doc["algorithm"] = to_string(cfg.algorithm);
  doc["solver"] = {
      {"variant", cfg.solver.variant == SolverVariant::Exact ? "exact" : "relaxed"},
      {"r", auto_or_number(cfg.solver.r)},
      {"mu0", auto_or_number(cfg.solver.mu0)},
      {"outer_max", cfg.solver.outer_max},
      {"inner_max", cfg.solver.inner_max},
      {"inner_tol", cfg.solver.inner_tol},
      {"stop_tol", cfg.solver.stop_tol}};
  doc["out"] = cfg.out;
  return doc.dump(2) + "\n";
}

PhaseGrid build_grid(const RunConfig& cfg) {
  PhaseGrid grid;
  grid.deltas = cfg.deltas;
  grid.N = cfg.N;
  grid.trials_per_cell = cfg.trials;
  grid.ensemble = EnsembleSpec{cfg.ensemble, cfg.signal_model};
  grid.base_seed = cfg.base_seed;
  for (std::size_t i = 0; i < cfg.deltas.size(); ++i) {
    double d = cfg.deltas[i];
    switch (cfg.rho_grid.mode) {
      case RunConfig::RhoGrid::Mode::CenteredReal:
        grid.rho_lists.push_back(centered_rho_list(theory::real_transition(d),
                                                   cfg.rho_grid.half_width,
                                                   cfg.rho_grid.step, d, cfg.N));
        break;
      case RunConfig::RhoGrid::Mode::CenteredComplex:
        grid.rho_lists.push_back(centered_rho_list(theory::complex_transition(d),
                                                   cfg.rho_grid.half_width,
                                                   cfg.rho_grid.step, d, cfg.N));
        break;
      case RunConfig::RhoGrid::Mode::Explicit:
        grid.rho_lists.push_back(cfg.rho_grid.values[i]);
        break;
    }
  }
  return grid;
}

SolverConfig to_solver_config(const RunConfig& cfg) {
  SolverConfig sc;
  sc.variant = cfg.solver.variant;
  sc.r = cfg.solver.r;
  sc.mu0 = cfg.solver.mu0;
  sc.outer_max = cfg.solver.outer_max;
  sc.inner_max = cfg.solver.inner_max;
  sc.inner_tol = cfg.solver.inner_tol;
  sc.stop_tol = cfg.solver.stop_tol;
  switch (cfg.algorithm) {
    case Algorithm::Direct: sc.threshold_rule = ThresholdRule::ComplexScalar; break;
    case Algorithm::Indirect: sc.threshold_rule = ThresholdRule::RealScalar; break;
    case Algorithm::Block2: sc.threshold_rule = ThresholdRule::Block2; break;
  }
  return sc;
}

namespace {

RunConfig base_config(EnsembleKind kind, Index N, SolverVariant variant,
                      Algorithm algorithm, int trials, std::uint64_t seed) {
  RunConfig cfg;
  cfg.ensemble = kind;
  cfg.signal_model = SignalModel::CircularGaussian;
  cfg.N = N;
  cfg.trials = trials;
  cfg.base_seed = seed;
  cfg.deltas = default_deltas();
  cfg.rho_grid.mode = RunConfig::RhoGrid::Mode::CenteredReal;
  cfg.rho_grid.half_width = 0.20;
  cfg.rho_grid.step = 0.01;
  cfg.algorithm = algorithm;
  cfg.solver.variant = variant;
  cfg.label = to_string(kind) + "_N" + std::to_string(N) + "_" +
              (algorithm == Algorithm::Indirect
                   ? "indirect"
                   : (variant == SolverVariant::Exact ? "exact" : "relaxed"));
  cfg.out = cfg.label + ".csv";
  return cfg;
}

constexpr std::uint64_t kPresetSeed = 20260810ULL;

}  // namespace

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3"}; }

std::vector<RunConfig> preset_configs(const std::string& name,
                                      const PresetOverrides& overrides) {
  std::vector<RunConfig> out;
  std::uint64_t seed = overrides.base_seed.value_or(kPresetSeed);
  int trials = overrides.trials.value_or(20);

  if (name == "fig1") {
    std::vector<Index> ns = overrides.N_values.empty()
                                ? std::vector<Index>{1024, 2048, 4096, 8192}
                                : overrides.N_values;
    out.push_back(base_config(EnsembleKind::PartialFourier, ns.front(),
                              SolverVariant::Exact, Algorithm::Direct, trials, seed));
    for (Index n : ns)
      out.push_back(base_config(EnsembleKind::PartialFourier, n,
                                SolverVariant::Relaxed, Algorithm::Direct, trials,
                                seed));
  } else if (name == "fig2") {
    Index fourier_n = overrides.N_values.empty() ? 8192 : overrides.N_values.front();
    Index other_n = overrides.N_values.empty() ? 1000 : overrides.N_values.front();
    out.push_back(base_config(EnsembleKind::PartialFourier, fourier_n,
                              SolverVariant::Relaxed, Algorithm::Direct, trials, seed));
    for (EnsembleKind kind : {EnsembleKind::ComplexGaussian,
                              EnsembleKind::ComplexBernoulli,
                              EnsembleKind::ComplexTernary})
      out.push_back(base_config(kind, other_n, SolverVariant::Relaxed,
                                Algorithm::Direct, trials, seed));
  } else if (name == "fig3") {
    Index n = overrides.N_values.empty() ? 1024 : overrides.N_values.front();
    out.push_back(base_config(EnsembleKind::PartialFourier, n, SolverVariant::Relaxed,
                              Algorithm::Direct, trials, seed));
    out.push_back(base_config(EnsembleKind::PartialFourier, n, SolverVariant::Relaxed,
                              Algorithm::Indirect, trials, seed));
  } else {
    throw InputError("unknown preset: " + name);
  }

  if (!overrides.deltas.empty())
    for (auto& cfg : out) cfg.deltas = overrides.deltas;
  return out;
}

}  // namespace phaselab
