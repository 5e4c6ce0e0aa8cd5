// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "phaselab/common.hpp"
#include "phaselab/ensembles/ensembles.hpp"
#include "phaselab/solver/solver.hpp"

namespace phaselab {

enum class TrialStatus { Success, RecoveryFailure, SolverFailure, Indeterminate };

std::string to_string(TrialStatus s);
TrialStatus trial_status_from_string(const std::string& s);

struct TrialRecord {
  double delta = 0.0;
  double rho = 0.0;
  Index N = 0;
  Index n = 0;
  Index k = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  TrialStatus status = TrialStatus::Indeterminate;
  double rrmse = 0.0;
  double l1_ratio = 0.0;
  int outer_iters = 0;
  double runtime_ms = 0.0;
};

struct Classification {
  TrialStatus status = TrialStatus::Indeterminate;
  double rrmse = 0.0;
  double l1_ratio = 0.0;
};

/// Success iff RRMSE < 1e-4. Otherwise SolverFailure when the returned point
/// has l1 norm at least (1 + 1e-5) times the truth (the optimizer fell short
/// of the l1 optimum), RecoveryFailure when a converged run found a feasible
/// point of no-greater l1 norm (so basis pursuit itself does not recover
/// x_true), and Indeterminate for non-converged runs matching no criterion.
Classification classify_full(const SolverResult& result, const CxVector& x_true);
TrialStatus classify(const SolverResult& result, const CxVector& x_true);

struct PhaseGrid {
  std::vector<double> deltas;
  std::vector<std::vector<double>> rho_lists;  // one list per delta
  Index N = 0;
  int trials_per_cell = 0;
  EnsembleSpec ensemble;
  std::uint64_t base_seed = 0;
};

/// The 33 equispaced sampling ratios 0.02, 0.05, ..., 0.98.
std::vector<double> default_deltas();

/// 41 sparsity ratios centered on the real transition, step 0.01, clipped to
/// [1/n, 1] with duplicates collapsed.
std::vector<double> default_rho_list(double delta, Index N);

/// Sparsity ratios centered on an arbitrary value (focused sweeps).
std::vector<double> centered_rho_list(double center, double half_width, double step,
                                      double delta, Index N);

PhaseGrid make_default_grid(const EnsembleSpec& ensemble, Index N, int trials_per_cell,
                            std::uint64_t base_seed);

enum class Algorithm { Direct, Indirect, Block2 };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct TrialKey {
  Index N = 0;
  double delta = 0.0;
  double rho = 0.0;
  int trial = 0;
  auto operator<=>(const TrialKey&) const = default;
};

/// Receives finished trials. Implementations must make append thread-safe.
class TrialSink {
 public:
  virtual ~TrialSink() = default;
  virtual bool contains(const TrialKey& key) const = 0;
  virtual void append(const TrialRecord& rec) = 0;
  virtual std::vector<TrialRecord> snapshot() const = 0;
};

class MemoryTrialSink : public TrialSink {
 public:
  bool contains(const TrialKey& key) const override;
  void append(const TrialRecord& rec) override;
  std::vector<TrialRecord> snapshot() const override;

 private:
  mutable std::mutex mutex_;
  std::vector<TrialRecord> records_;
};

struct RunGridOptions {
  Algorithm algorithm = Algorithm::Direct;
  int workers = 1;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

/// Executes every (delta, rho, trial) cell of the grid not already present in
/// the sink; each trial's randomness comes only from the seed derived from
/// (base_seed, delta index, rho index, trial index), so results do not depend
/// on worker count or execution order. Returns the grid's records in
/// canonical order (delta, rho, trial ascending). Solver overflow failures
/// are recorded as SolverFailure rows rather than aborting the sweep.
std::vector<TrialRecord> run_grid(const PhaseGrid& grid, const SolverConfig& cfg,
                                  TrialSink& sink, const RunGridOptions& opts = {});

struct TransitionEstimate {
  double delta = 0.0;
  double rho50 = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double se_slope = 0.0;
  double se_intercept = 0.0;
  int n_cells = 0;
  bool separated = false;
};

enum class FailurePolicy {
  CountAsFailure,         // SolverFailure and Indeterminate trials count as failures
  ExcludeSolverFailures,  // SolverFailure trials are dropped from the counts
};

/// Logistic-GLM estimate of the 50% success point from one delta's records.
/// Completely separated data returns the midpoint of the bracketing rho pair
/// with separated = true. Throws EstimationError when the data cannot pin a
/// crossing (all success, all failure, or a non-decreasing fit).
TransitionEstimate fit_transition(std::span<const TrialRecord> records,
                                  FailurePolicy policy = FailurePolicy::CountAsFailure);

/// rho at 10% success minus rho at 90% success from the fitted logistic;
/// zero for separated fits.
double transition_width(const TransitionEstimate& estimate);
double transition_width(std::span<const TrialRecord> records,
                        FailurePolicy policy = FailurePolicy::CountAsFailure);

}  // namespace phaselab
