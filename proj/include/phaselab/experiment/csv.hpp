// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "phaselab/experiment/experiment.hpp"
#include "phaselab/theory/transition.hpp"

namespace phaselab {

/// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);
double parse_double(const std::string& s);

struct TrialRow {
  std::string ensemble;
  TrialRecord rec;
};

inline constexpr const char* kTrialsSchemaComment = "# phaselab-trials v1";
inline constexpr const char* kTrialsHeader =
    "ensemble,N,delta,rho,n,k,trial,seed,status,rrmse,l1_ratio,outer_iters,runtime_ms";

std::string trial_row_to_csv(const std::string& ensemble, const TrialRecord& rec);

/// Parses a trials CSV; throws IoError naming the 1-based line on malformed rows.
std::vector<TrialRow> read_trials_csv(const std::filesystem::path& path);

/// Rewrites the file with rows in canonical order
/// (ensemble, N, delta, rho, trial ascending).
void canonicalize_trials_csv(const std::filesystem::path& path);

/// Append-only CSV sink. Existing rows whose ensemble matches are loaded for
/// resume; appends are flushed per row so partial runs survive interruption.
class CsvTrialSink : public TrialSink {
 public:
  CsvTrialSink(std::filesystem::path path, std::string ensemble);
  bool contains(const TrialKey& key) const override;
  void append(const TrialRecord& rec) override;
  std::vector<TrialRecord> snapshot() const override;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::string ensemble_;
  mutable std::mutex mutex_;
  std::set<TrialKey> keys_;
  std::vector<TrialRecord> records_;
  std::ofstream out_;
};

struct TransitionRow {
  std::string ensemble;
  Index N = 0;
  std::optional<TransitionEstimate> estimate;  // empty on degenerate groups
  double delta = 0.0;
  std::string reason;  // non-empty when estimate is missing
};

inline constexpr const char* kTransitionsSchemaComment = "# phaselab-transitions v1";
inline constexpr const char* kTransitionsHeader =
    "ensemble,N,delta,rho50,slope,intercept,separated,n_cells,reason";

void write_transitions_csv(const std::filesystem::path& path,
                           const std::vector<TransitionRow>& rows);
std::vector<TransitionRow> read_transitions_csv(const std::filesystem::path& path);

/// Theory-curve export/import: columns delta,rho,kind.
void write_curve_csv(const std::filesystem::path& path,
                     const std::vector<theory::TransitionCurve>& curves);
std::vector<theory::TransitionCurve> read_curve_csv(const std::filesystem::path& path);

}  // namespace phaselab
