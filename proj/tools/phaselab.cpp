// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "phaselab/config/run_config.hpp"
#include "phaselab/ensembles/ensembles.hpp"
#include "phaselab/errors.hpp"
#include "phaselab/experiment/csv.hpp"
#include "phaselab/experiment/experiment.hpp"
#include "phaselab/report/svg_plot.hpp"
#include "phaselab/solver/solver.hpp"
#include "phaselab/theory/transition.hpp"

namespace fs = std::filesystem;
using namespace phaselab;

namespace {

std::optional<std::uint64_t> env_seed_override() {
  const char* env = std::getenv("PHASELAB_SEED");
  if (!env) return std::nullopt;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw InputError("PHASELAB_SEED is not a valid unsigned integer");
  }
}

struct SolveArgs {
  std::string ensemble = "fourier";
  std::string signal = "circular-gaussian";
  Index N = 0;
  double delta = 0.0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  std::string variant = "relaxed";
  bool indirect = false;
  bool block2 = false;
  double r = 0.0;
  double mu0 = 0.0;
  int outer_max = 5000;
  int inner_max = 100;
  double inner_tol = 1e-6;
  double stop_tol = 1e-8;
};

int cmd_solve(const SolveArgs& a) {
  SolverConfig cfg;
  cfg.variant = a.variant == "exact" ? SolverVariant::Exact : SolverVariant::Relaxed;
  if (a.r > 0.0) cfg.r = a.r;
  if (a.mu0 > 0.0) cfg.mu0 = a.mu0;
  cfg.outer_max = a.outer_max;
  cfg.inner_max = a.inner_max;
  cfg.inner_tol = a.inner_tol;
  cfg.stop_tol = a.stop_tol;

  EnsembleSpec spec{ensemble_kind_from_string(a.ensemble),
                    signal_model_from_string(a.signal)};
  SparseInstance inst = make_instance(spec, a.N, a.delta, a.rho, a.seed);

  SolverResult result;
  if (a.block2) {
    cfg.threshold_rule = ThresholdRule::Block2;
    result = solve_block2(inst, cfg);
  } else if (a.indirect) {
    cfg.threshold_rule = ThresholdRule::RealScalar;
    result = solve_indirect(inst, cfg);
  } else {
    result = solve(inst, cfg);
  }
  Classification c = classify_full(result, inst.x_true);

  std::cout << "ensemble:    " << a.ensemble << " / " << a.signal << "\n"
            << "problem:     N=" << inst.N << " n=" << inst.n << " k=" << inst.k
            << " (delta=" << a.delta << ", rho=" << a.rho << ", seed=" << a.seed
            << ")\n"
            << "algorithm:   "
            << (a.block2 ? "block2" : (a.indirect ? "indirect" : "direct")) << " "
            << a.variant << "\n"
            << "status:      " << to_string(c.status) << "\n"
            << "rrmse:       " << format_double(c.rrmse) << "\n"
            << "l1_ratio:    " << format_double(c.l1_ratio) << "\n"
            << "feasibility: " << format_double(result.feasibility_residual) << "\n"
            << "iterations:  " << result.outer_iters << " outer / "
            << result.total_inner_iters << " inner\n"
            << "converged:   " << (result.converged ? "yes" : "no") << "\n";

  switch (c.status) {
    case TrialStatus::Success: return 0;
    case TrialStatus::RecoveryFailure: return 2;
    default: return 3;
  }
}

struct RunArgs {
  std::string config_path;
  std::string preset;
  std::vector<Index> N_values;
  int trials = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::vector<double> deltas;
  std::string out_dir = ".";
  bool resume = false;
  int workers = 1;
  bool emit_config_only = false;
};

void print_status_summary(const std::string& label,
                          const std::vector<TrialRecord>& records) {
  std::map<TrialStatus, int> counts;
  for (const auto& r : records) counts[r.status]++;
  std::cerr << label << ": " << records.size() << " trials";
  for (const auto& [status, count] : counts)
    std::cerr << ", " << to_string(status) << "=" << count;
  std::cerr << "\n";
}

int run_one_sweep(const RunConfig& cfg, const RunArgs& args) {
  fs::path out_path = fs::path(args.out_dir) / cfg.out;
  if (fs::exists(out_path) && !args.resume)
    throw InputError("output exists (pass --resume to continue): " +
                     out_path.string());
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());

  CsvTrialSink sink(out_path, to_string(cfg.ensemble));
  RunGridOptions opts;
  opts.algorithm = cfg.algorithm;
  opts.workers = args.workers;
  opts.progress = [&](std::size_t done, std::size_t total) {
    if (done == total || done % std::max<std::size_t>(1, total / 200) == 0)
      std::cerr << '\r' << cfg.label << ": " << done << '/' << total << std::flush;
  };
  auto records = run_grid(build_grid(cfg), to_solver_config(cfg), sink, opts);
  std::cerr << '\n';
  canonicalize_trials_csv(out_path);
  print_status_summary(cfg.label, records);
  std::cout << out_path.string() << "\n";
  return 0;
}

int cmd_run(RunArgs args) {
  std::vector<RunConfig> sweeps;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) throw InputError("cannot read config: " + args.config_path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    sweeps.push_back(parse_run_config(buffer.str()));
  } else {
    PresetOverrides overrides;
    overrides.N_values = args.N_values;
    if (args.trials > 0) overrides.trials = args.trials;
    if (args.seed_given) overrides.base_seed = args.seed;
    overrides.deltas = args.deltas;
    sweeps = preset_configs(args.preset, overrides);
  }

  if (auto env = env_seed_override())
    for (auto& cfg : sweeps) cfg.base_seed = *env;

  fs::create_directories(args.out_dir);
  for (const auto& cfg : sweeps) {
    fs::path cfg_path = fs::path(args.out_dir) / (cfg.label + ".config.json");
    std::ofstream out(cfg_path, std::ios::trunc);
    out << serialize_run_config(cfg);
    if (!out) throw IoError("cannot write " + cfg_path.string());
  }
  if (args.emit_config_only) return 0;

  for (const auto& cfg : sweeps) run_one_sweep(cfg, args);
  return 0;
}

struct FitArgs {
  std::string trials_path;
  std::string out;
  bool exclude_solver_failures = false;
};

int cmd_fit(const FitArgs& args) {
  auto rows = read_trials_csv(args.trials_path);
  if (rows.empty()) throw InputError("no trial rows in " + args.trials_path);

  int solver_failures = 0;
  for (const auto& r : rows)
    if (r.rec.status == TrialStatus::SolverFailure) ++solver_failures;
  if (solver_failures > 0)
    std::cerr << "note: " << solver_failures << " SolverFailure trial(s) "
              << (args.exclude_solver_failures ? "excluded from" : "counted as failures in")
              << " the fits\n";

  std::map<std::tuple<std::string, Index, double>, std::vector<TrialRecord>> groups;
  for (const auto& r : rows)
    groups[{r.ensemble, r.rec.N, r.rec.delta}].push_back(r.rec);

  std::vector<TransitionRow> out_rows;
  int fitted = 0;
  for (const auto& [key, records] : groups) {
    TransitionRow row;
    row.ensemble = std::get<0>(key);
    row.N = std::get<1>(key);
    row.delta = std::get<2>(key);
    try {
      row.estimate = fit_transition(records, args.exclude_solver_failures
                                                 ? FailurePolicy::ExcludeSolverFailures
                                                 : FailurePolicy::CountAsFailure);
      ++fitted;
    } catch (const EstimationError& e) {
      row.reason = e.what();
    }
    out_rows.push_back(std::move(row));
  }
  write_transitions_csv(args.out, out_rows);
  std::cout << args.out << "\n";
  if (fitted == 0) {
    std::cerr << "error: no delta group could be fitted\n";
    return 1;
  }
  return 0;
}

struct CurveArgs {
  std::string kind = "both";
  double min = 0.02;
  double max = 0.98;
  double step = 0.01;
  std::string out;
};

int cmd_curve(const CurveArgs& args) {
  std::vector<theory::TransitionCurve> curves;
  if (args.kind == "real" || args.kind == "both")
    curves.push_back(
        theory::sample_curve(theory::CurveKind::RealL1, args.min, args.max, args.step));
  if (args.kind == "complex" || args.kind == "both")
    curves.push_back(theory::sample_curve(theory::CurveKind::ComplexL1, args.min,
                                          args.max, args.step));
  if (curves.empty()) throw InputError("curve: kind must be real, complex or both");
  write_curve_csv(args.out, curves);
  std::cout << args.out << "\n";
  return 0;
}

struct PlotArgs {
  std::vector<std::string> transitions;
  std::vector<std::string> curves;
  std::vector<std::string> labels;
  std::string title;
  std::string out;
};

int cmd_plot(const PlotArgs& args) {
  std::vector<report::PlotSeries> series;
  std::size_t label_idx = 0;
  for (const auto& path : args.transitions) {
    auto rows = read_transitions_csv(path);
    std::map<std::pair<std::string, Index>, report::PlotSeries> groups;
    for (const auto& row : rows) {
      if (!row.estimate) continue;
      auto& s = groups[{row.ensemble, row.N}];
      s.points.emplace_back(row.delta, row.estimate->rho50);
    }
    const std::string stem = fs::path(path).stem().string();
    for (auto& [key, s] : groups) {
      if (label_idx < args.labels.size()) {
        s.label = args.labels[label_idx++];
      } else if (groups.size() == 1) {
        s.label = stem;
      } else {
        s.label = key.first + " N=" + std::to_string(key.second);
      }
      series.push_back(std::move(s));
    }
  }
  for (const auto& path : args.curves) {
    for (const auto& curve : read_curve_csv(path)) {
      report::PlotSeries s;
      s.label = theory::to_string(curve.kind) + " theory";
      s.points = curve.samples;
      series.push_back(std::move(s));
    }
  }
  report::write_phase_plot_svg(args.out, series, args.title);
  std::cout << args.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // Worker-level parallelism is handled by --workers; keep BLAS single
  // threaded so the two do not multiply.
  setenv("OPENBLAS_NUM_THREADS", "1", 0);
  setenv("OMP_NUM_THREADS", "1", 0);

  CLI::App app{"Complex basis-pursuit phase-transition laboratory"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one random instance");
  solve_cmd->add_option("--ensemble", solve_args.ensemble,
                        "fourier|gaussian|bernoulli|ternary|real-gaussian")
      ->capture_default_str();
  solve_cmd->add_option("--signal", solve_args.signal,
                        "circular-gaussian|unit-modulus|equal-real-imag")
      ->capture_default_str();
  solve_cmd->add_option("--N", solve_args.N, "Signal length")->required();
  solve_cmd->add_option("--delta", solve_args.delta, "Sampling ratio n/N in (0,1]")
      ->required()
      ->check(CLI::Range(1e-9, 1.0));
  solve_cmd->add_option("--rho", solve_args.rho, "Sparsity ratio k/n in (0,1]")
      ->required()
      ->check(CLI::Range(1e-9, 1.0));
  solve_cmd->add_option("--seed", solve_args.seed, "Instance seed")
      ->capture_default_str();
  solve_cmd->add_option("--variant", solve_args.variant, "exact|relaxed")
      ->check(CLI::IsMember({"exact", "relaxed"}))
      ->capture_default_str();
  solve_cmd->add_flag("--indirect", solve_args.indirect,
                      "Minimize the stacked real l1 norm instead");
  solve_cmd->add_flag("--block2", solve_args.block2,
                      "Run the block-2 route on the real reformulation");
  solve_cmd->add_option("--r", solve_args.r, "Penalty growth factor (default: auto)");
  solve_cmd->add_option("--mu0", solve_args.mu0, "Initial penalty (default: auto)");
  solve_cmd->add_option("--outer-max", solve_args.outer_max)->capture_default_str();
  solve_cmd->add_option("--inner-max", solve_args.inner_max)->capture_default_str();
  solve_cmd->add_option("--inner-tol", solve_args.inner_tol)->capture_default_str();
  solve_cmd->add_option("--stop-tol", solve_args.stop_tol)->capture_default_str();

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Run a phase-plane sweep");
  auto* config_opt = run_cmd->add_option("--config", run_args.config_path,
                                         "RunConfig JSON path");
  auto* preset_opt =
      run_cmd->add_option("--preset", run_args.preset, "fig1|fig2|fig3")
          ->check(CLI::IsMember(preset_names()));
  config_opt->excludes(preset_opt);
  run_cmd->add_option("--N", run_args.N_values, "Override preset N (repeatable)");
  run_cmd->add_option("--trials", run_args.trials, "Override trials per cell");
  run_cmd->add_option("--seed", run_args.seed, "Override base seed")
      ->each([&run_args](const std::string&) { run_args.seed_given = true; });
  run_cmd->add_option("--deltas", run_args.deltas, "Override delta list");
  run_cmd->add_option("--out-dir", run_args.out_dir, "Output directory")
      ->capture_default_str();
  run_cmd->add_flag("--resume", run_args.resume, "Skip cells already in the CSV");
  run_cmd->add_option("--workers", run_args.workers, "Worker threads")
      ->check(CLI::Range(1, 256))
      ->capture_default_str();
  run_cmd->add_flag("--emit-config-only", run_args.emit_config_only,
                    "Write resolved config JSONs and exit");

  FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "Fit logistic transitions per delta");
  fit_cmd->add_option("trials", fit_args.trials_path, "Trials CSV")->required();
  fit_cmd->add_option("--out", fit_args.out, "Transitions CSV path")->required();
  fit_cmd->add_flag("--exclude-solver-failures", fit_args.exclude_solver_failures,
                    "Drop SolverFailure trials instead of counting them as failures");

  CurveArgs curve_args;
  auto* curve_cmd = app.add_subcommand("curve", "Export theory transition curves");
  curve_cmd->add_option("--kind", curve_args.kind, "real|complex|both")
      ->check(CLI::IsMember({"real", "complex", "both"}))
      ->capture_default_str();
  curve_cmd->add_option("--min", curve_args.min)->capture_default_str();
  curve_cmd->add_option("--max", curve_args.max)->capture_default_str();
  curve_cmd->add_option("--step", curve_args.step)->capture_default_str();
  curve_cmd->add_option("--out", curve_args.out, "Curve CSV path")->required();

  PlotArgs plot_args;
  auto* plot_cmd = app.add_subcommand("plot", "Render transitions and curves as SVG");
  plot_cmd->add_option("--transitions", plot_args.transitions,
                       "Transitions CSV (repeatable)");
  plot_cmd->add_option("--curve", plot_args.curves, "Curve CSV (repeatable)");
  plot_cmd->add_option("--label", plot_args.labels,
                       "Legend label override (repeatable, in order)");
  plot_cmd->add_option("--title", plot_args.title, "Plot title");
  plot_cmd->add_option("--out", plot_args.out, "Output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand(solve_cmd)) return cmd_solve(solve_args);
    if (app.got_subcommand(run_cmd)) {
      if (run_args.config_path.empty() && run_args.preset.empty())
        throw InputError("run: pass --config or --preset");
      return cmd_run(run_args);
    }
    if (app.got_subcommand(fit_cmd)) return cmd_fit(fit_args);
    if (app.got_subcommand(curve_cmd)) return cmd_curve(curve_args);
    if (app.got_subcommand(plot_cmd)) return cmd_plot(plot_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
