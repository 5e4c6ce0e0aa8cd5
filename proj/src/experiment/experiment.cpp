// SPDX-License-Identifier: Apache-2.0
#include "phaselab/experiment/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>
#include <thread>

#include "phaselab/errors.hpp"
#include "phaselab/experiment/glm.hpp"
#include "phaselab/kernels/kernels.hpp"
#include "phaselab/rng.hpp"
#include "phaselab/theory/transition.hpp"

namespace phaselab {

namespace {

constexpr double kSuccessRrmse = 1e-4;
constexpr double kL1Slack = 1e-5;
constexpr double kLogit90 = 2.1972245773362196;  // ln 9

Index ceil_ratio(double ratio, Index count) {
  return static_cast<Index>(std::ceil(ratio * static_cast<double>(count) - 1e-9));
}

}  // namespace

std::string to_string(TrialStatus s) {
  switch (s) {
    case TrialStatus::Success: return "Success";
    case TrialStatus::RecoveryFailure: return "RecoveryFailure";
    case TrialStatus::SolverFailure: return "SolverFailure";
    case TrialStatus::Indeterminate: return "Indeterminate";
  }
  return "?";
}

TrialStatus trial_status_from_string(const std::string& s) {
  if (s == "Success") return TrialStatus::Success;
  if (s == "RecoveryFailure") return TrialStatus::RecoveryFailure;
  if (s == "SolverFailure") return TrialStatus::SolverFailure;
  if (s == "Indeterminate") return TrialStatus::Indeterminate;
  throw InputError("unknown trial status: " + s);
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Direct: return "direct";
    case Algorithm::Indirect: return "indirect";
    case Algorithm::Block2: return "block2";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "direct") return Algorithm::Direct;
  if (s == "indirect") return Algorithm::Indirect;
  if (s == "block2") return Algorithm::Block2;
  throw InputError("unknown algorithm: " + s);
}

Classification classify_full(const SolverResult& result, const CxVector& x_true) {
  const auto n = static_cast<std::size_t>(x_true.size());
  double truth2 = kernels::sum_abs2_complex(x_true.data(), n);
  if (!(truth2 > 0.0)) throw InputError("classify: x_true is zero");
  if (result.x_hat.size() != x_true.size())
    throw InputError("classify: length mismatch");

  Classification c;
  c.rrmse = std::sqrt(
      kernels::sum_abs2_diff_complex(result.x_hat.data(), x_true.data(), n) / truth2);
  c.l1_ratio = result.l1_value / kernels::l1_norm_complex(x_true.data(), n);

  if (c.rrmse < kSuccessRrmse) {
    c.status = TrialStatus::Success;
  } else if (c.l1_ratio >= 1.0 + kL1Slack) {
    c.status = TrialStatus::SolverFailure;
  } else {
    c.status = result.converged ? TrialStatus::RecoveryFailure
                                : TrialStatus::Indeterminate;
  }
  return c;
}

TrialStatus classify(const SolverResult& result, const CxVector& x_true) {
  return classify_full(result, x_true).status;
}

std::vector<double> default_deltas() {
  std::vector<double> out;
  for (int i = 0; i < 33; ++i) out.push_back(0.02 + 0.03 * i);
  return out;
}

std::vector<double> centered_rho_list(double center, double half_width, double step,
                                      double delta, Index N) {
  if (!(step > 0.0) || !(half_width >= 0.0))
    throw InputError("centered_rho_list: bad step or width");
  const Index n = ceil_ratio(delta, N);
  const double lo = 1.0 / static_cast<double>(n);
  std::vector<double> out;
  int clipped = 0;
  const int count = static_cast<int>(std::round(2.0 * half_width / step)) + 1;
  for (int i = 0; i < count; ++i) {
    double rho = center - half_width + step * i;
    double clamped = std::min(std::max(rho, lo), 1.0);
    if (clamped != rho) ++clipped;
    if (out.empty() || clamped != out.back()) out.push_back(clamped);
  }
  if (clipped > 0)
    std::clog << "phaselab: rho grid at delta=" << delta << ": " << clipped
              << " value(s) clipped to [1/n, 1]\n";
  return out;
}

std::vector<double> default_rho_list(double delta, Index N) {
  return centered_rho_list(theory::real_transition(delta), 0.20, 0.01, delta, N);
}

PhaseGrid make_default_grid(const EnsembleSpec& ensemble, Index N, int trials_per_cell,
                            std::uint64_t base_seed) {
  PhaseGrid grid;
  grid.deltas = default_deltas();
  for (double d : grid.deltas) grid.rho_lists.push_back(default_rho_list(d, N));
  grid.N = N;
  grid.trials_per_cell = trials_per_cell;
  grid.ensemble = ensemble;
  grid.base_seed = base_seed;
  return grid;
}

bool MemoryTrialSink::contains(const TrialKey& key) const {
  std::lock_guard<std::mutex> lock(mutex_);
  for (const auto& r : records_)
    if (TrialKey{r.N, r.delta, r.rho, r.trial} == key) return true;
  return false;
}

void MemoryTrialSink::append(const TrialRecord& rec) {
  std::lock_guard<std::mutex> lock(mutex_);
  records_.push_back(rec);
}

std::vector<TrialRecord> MemoryTrialSink::snapshot() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return records_;
}

namespace {

struct Task {
  std::size_t delta_idx;
  std::size_t rho_idx;
  int trial;
};

TrialRecord execute_trial(const PhaseGrid& grid, const SolverConfig& cfg,
                          Algorithm algorithm, const Task& task) {
  const double delta = grid.deltas[task.delta_idx];
  const double rho = grid.rho_lists[task.delta_idx][task.rho_idx];
  TrialRecord rec;
  rec.delta = delta;
  rec.rho = rho;
  rec.N = grid.N;
  rec.trial = task.trial;
  rec.seed = derive_seed(grid.base_seed, task.delta_idx, task.rho_idx,
                         static_cast<std::uint64_t>(task.trial));

  const auto start = std::chrono::steady_clock::now();
  SparseInstance inst =
      make_instance(grid.ensemble, grid.N, delta, rho, rec.seed);
  rec.n = inst.n;
  rec.k = inst.k;
  try {
    SolverResult result;
    switch (algorithm) {
      case Algorithm::Direct: result = solve(inst, cfg); break;
      case Algorithm::Indirect: result = solve_indirect(inst, cfg); break;
      case Algorithm::Block2: result = solve_block2(inst, cfg); break;
    }
    Classification c = classify_full(result, inst.x_true);
    rec.status = c.status;
    rec.rrmse = c.rrmse;
    rec.l1_ratio = c.l1_ratio;
    rec.outer_iters = result.outer_iters;
  } catch (const NumericalError& err) {
    rec.status = TrialStatus::SolverFailure;
    rec.rrmse = std::numeric_limits<double>::quiet_NaN();
    rec.l1_ratio = std::numeric_limits<double>::quiet_NaN();
    rec.outer_iters = static_cast<int>(err.iteration);
  }
  rec.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rec;
}

}  // namespace

std::vector<TrialRecord> run_grid(const PhaseGrid& grid, const SolverConfig& cfg,
                                  TrialSink& sink, const RunGridOptions& opts) {
  if (grid.deltas.empty() || grid.deltas.size() != grid.rho_lists.size())
    throw InputError("run_grid: malformed grid");
  if (grid.trials_per_cell < 1) throw InputError("run_grid: trials_per_cell must be >= 1");
  if (grid.N < 1) throw InputError("run_grid: N must be positive");

  std::vector<Task> tasks;
  int skipped = 0;
  for (std::size_t di = 0; di < grid.deltas.size(); ++di) {
    const Index n = ceil_ratio(grid.deltas[di], grid.N);
    for (std::size_t ri = 0; ri < grid.rho_lists[di].size(); ++ri) {
      const double rho = grid.rho_lists[di][ri];
      const Index k = ceil_ratio(rho, n);
      if (rho <= 0.0 || rho > 1.0 || k < 1 || k > n) {
        ++skipped;
        continue;
      }
      for (int t = 0; t < grid.trials_per_cell; ++t) {
        if (!sink.contains(TrialKey{grid.N, grid.deltas[di], rho, t}))
          tasks.push_back(Task{di, ri, t});
      }
    }
  }
  if (skipped > 0)
    std::clog << "phaselab: skipped " << skipped << " infeasible grid cell(s)\n";

  const std::size_t total = tasks.size();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        TrialRecord rec = execute_trial(grid, cfg, opts.algorithm, tasks[i]);
        sink.append(rec);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
        return;
      }
      std::size_t d = done.fetch_add(1) + 1;
      if (opts.progress) opts.progress(d, total);
    }
  };

  const int workers = std::max(1, opts.workers);
  if (workers == 1 || total <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    const int spawn = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers), total));
    pool.reserve(spawn);
    for (int w = 0; w < spawn; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Canonical view of this grid's cells, regardless of completion order.
  std::vector<TrialRecord> records = sink.snapshot();
  std::vector<TrialRecord> mine;
  for (const auto& r : records) {
    if (r.N != grid.N) continue;
    bool in_grid = false;
    for (std::size_t di = 0; di < grid.deltas.size() && !in_grid; ++di)
      if (r.delta == grid.deltas[di])
        for (double rho : grid.rho_lists[di])
          if (r.rho == rho && r.trial < grid.trials_per_cell) {
            in_grid = true;
            break;
          }
    if (in_grid) mine.push_back(r);
  }
  std::sort(mine.begin(), mine.end(), [](const TrialRecord& a, const TrialRecord& b) {
    if (a.delta != b.delta) return a.delta < b.delta;
    if (a.rho != b.rho) return a.rho < b.rho;
    return a.trial < b.trial;
  });
  return mine;
}

TransitionEstimate fit_transition(std::span<const TrialRecord> records,
                                  FailurePolicy policy) {
  if (records.empty()) throw EstimationError("fit_transition: no records");
  const double delta = records.front().delta;
  std::map<double, std::pair<double, double>> cells;  // rho -> (successes, trials)
  for (const auto& r : records) {
    if (r.delta != delta)
      throw InputError("fit_transition: records span multiple deltas");
    if (policy == FailurePolicy::ExcludeSolverFailures &&
        r.status == TrialStatus::SolverFailure)
      continue;
    auto& cell = cells[r.rho];
    cell.second += 1.0;
    if (r.status == TrialStatus::Success) cell.first += 1.0;
  }
  if (cells.size() < 2)
    throw EstimationError("fit_transition: need at least two distinct rho cells");

  double total_success = 0.0, total = 0.0;
  for (const auto& [rho, c] : cells) {
    total_success += c.first;
    total += c.second;
  }
  if (total_success == 0.0)
    throw EstimationError("fit_transition: no successes; widen the grid downward");
  if (total_success == total)
    throw EstimationError("fit_transition: no failures; widen the grid upward");

  TransitionEstimate est;
  est.delta = delta;
  est.n_cells = static_cast<int>(cells.size());

  // Complete separation: every cell pure, all-success strictly below all-failure.
  bool any_mixed = false;
  double max_success_rho = -1.0, min_failure_rho = 2.0;
  for (const auto& [rho, c] : cells) {
    if (c.first == c.second)
      max_success_rho = std::max(max_success_rho, rho);
    else if (c.first == 0.0)
      min_failure_rho = std::min(min_failure_rho, rho);
    else
      any_mixed = true;
  }
  if (!any_mixed && max_success_rho >= 0.0 && min_failure_rho <= 1.0 &&
      max_success_rho < min_failure_rho) {
    est.separated = true;
    est.rho50 = 0.5 * (max_success_rho + min_failure_rho);
    est.slope = -std::numeric_limits<double>::infinity();
    est.intercept = std::numeric_limits<double>::infinity();
    return est;
  }

  std::vector<BinomialCell> data;
  for (const auto& [rho, c] : cells)
    data.push_back(BinomialCell{rho, c.first, c.second});
  LogisticFit fit = fit_logistic_irls(data);
  if (!(fit.slope < 0.0))
    throw EstimationError("fit_transition: success probability is not decreasing in rho");
  est.slope = fit.slope;
  est.intercept = fit.intercept;
  est.se_slope = fit.se_slope;
  est.se_intercept = fit.se_intercept;
  est.rho50 = -fit.intercept / fit.slope;
  const double lo = cells.begin()->first, hi = cells.rbegin()->first;
  if (!std::isfinite(est.rho50) || est.rho50 < lo - 0.05 || est.rho50 > hi + 0.05)
    throw EstimationError("fit_transition: fitted crossing lies outside the rho range");
  return est;
}

double transition_width(const TransitionEstimate& estimate) {
  if (estimate.separated) return 0.0;
  return -2.0 * kLogit90 / estimate.slope;
}

double transition_width(std::span<const TrialRecord> records, FailurePolicy policy) {
  return transition_width(fit_transition(records, policy));
}

}  // namespace phaselab
