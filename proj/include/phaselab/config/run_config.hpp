// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phaselab/experiment/experiment.hpp"
#include "phaselab/solver/solver.hpp"

namespace phaselab {

/// One sweep, fully explicit: every knob appears in the JSON document and no
/// key outside the schema is accepted, so a config file reproduces its run
/// with nothing implied. The rho grid is either given verbatim per delta or
/// described by a centering rule evaluated from the theory curves.
struct RunConfig {
  int schema_version = 1;
  std::string label;
  EnsembleKind ensemble = EnsembleKind::PartialFourier;
  SignalModel signal_model = SignalModel::CircularGaussian;
  Index N = 0;
  int trials = 0;
  std::uint64_t base_seed = 0;
  std::vector<double> deltas;

  struct RhoGrid {
    enum class Mode { CenteredReal, CenteredComplex, Explicit };
    Mode mode = Mode::CenteredReal;
    double half_width = 0.20;                 // centered modes
    double step = 0.01;                       // centered modes
    std::vector<std::vector<double>> values;  // explicit mode, one list per delta
  };
  RhoGrid rho_grid;

  Algorithm algorithm = Algorithm::Direct;

  struct Solver {
    SolverVariant variant = SolverVariant::Relaxed;
    std::optional<double> r;    // nullopt encodes "auto"
    std::optional<double> mu0;  // nullopt encodes "auto"
    int outer_max = 5000;
    int inner_max = 100;
    double inner_tol = 1e-6;
    double stop_tol = 1e-8;
  };
  Solver solver;

  std::string out;  // trials CSV path
};

/// Strict parse/serialize; parse rejects unknown keys and missing fields and
/// round-trips losslessly through serialize.
RunConfig parse_run_config(const std::string& json_text);
std::string serialize_run_config(const RunConfig& cfg);

PhaseGrid build_grid(const RunConfig& cfg);
SolverConfig to_solver_config(const RunConfig& cfg);

/// Built-in experiment families patterned on the paper's three figures.
/// Overrides (when non-empty) replace the corresponding preset fields.
struct PresetOverrides {
  std::vector<Index> N_values;
  std::optional<int> trials;
  std::optional<std::uint64_t> base_seed;
  std::vector<double> deltas;
};

std::vector<RunConfig> preset_configs(const std::string& name,
                                      const PresetOverrides& overrides = {});

std::vector<std::string> preset_names();

}  // namespace phaselab
