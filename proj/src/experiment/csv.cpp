// SPDX-License-Identifier: Apache-2.0
#include "phaselab/experiment/csv.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "phaselab/errors.hpp"

namespace phaselab {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw IoError("malformed number: '" + s + "'");
  return v;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

long parse_long(const std::string& s) {
  long v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw IoError("malformed integer: '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw IoError("malformed unsigned integer: '" + s + "'");
  return v;
}

}  // namespace

std::string trial_row_to_csv(const std::string& ensemble, const TrialRecord& r) {
  std::ostringstream os;
  os << ensemble << ',' << r.N << ',' << format_double(r.delta) << ','
     << format_double(r.rho) << ',' << r.n << ',' << r.k << ',' << r.trial << ','
     << r.seed << ',' << to_string(r.status) << ',' << format_double(r.rrmse) << ','
     << format_double(r.l1_ratio) << ',' << r.outer_iters << ','
     << format_double(r.runtime_ms);
  return os.str();
}

std::vector<TrialRow> read_trials_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trials CSV: " + path.string());
  std::vector<TrialRow> rows;
  std::string line;
  long lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kTrialsHeader)
        throw IoError(path.string() + ": line " + std::to_string(lineno) +
                      ": unexpected trials header");
      header_seen = true;
      continue;
    }
    auto f = split_csv_line(line);
    if (f.size() != 13)
      throw IoError(path.string() + ": line " + std::to_string(lineno) +
                    ": expected 13 fields, got " + std::to_string(f.size()));
    try {
      TrialRow row;
      row.ensemble = f[0];
      row.rec.N = parse_long(f[1]);
      row.rec.delta = parse_double(f[2]);
      row.rec.rho = parse_double(f[3]);
      row.rec.n = parse_long(f[4]);
      row.rec.k = parse_long(f[5]);
      row.rec.trial = static_cast<int>(parse_long(f[6]));
      row.rec.seed = parse_u64(f[7]);
      row.rec.status = trial_status_from_string(f[8]);
      row.rec.rrmse = parse_double(f[9]);
      row.rec.l1_ratio = parse_double(f[10]);
      row.rec.outer_iters = static_cast<int>(parse_long(f[11]));
      row.rec.runtime_ms = parse_double(f[12]);
      rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      throw IoError(path.string() + ": line " + std::to_string(lineno) + ": " +
                    e.what());
    }
  }
  if (!header_seen)
    throw IoError(path.string() + ": missing trials header");
  return rows;
}

namespace {

bool canonical_less(const TrialRow& a, const TrialRow& b) {
  if (a.ensemble != b.ensemble) return a.ensemble < b.ensemble;
  if (a.rec.N != b.rec.N) return a.rec.N < b.rec.N;
  if (a.rec.delta != b.rec.delta) return a.rec.delta < b.rec.delta;
  if (a.rec.rho != b.rec.rho) return a.rec.rho < b.rec.rho;
  return a.rec.trial < b.rec.trial;
}

}  // namespace

void canonicalize_trials_csv(const std::filesystem::path& path) {
  std::vector<TrialRow> rows = read_trials_csv(path);
  std::stable_sort(rows.begin(), rows.end(), canonical_less);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write: " + tmp.string());
    out << kTrialsSchemaComment << '\n' << kTrialsHeader << '\n';
    for (const auto& row : rows) out << trial_row_to_csv(row.ensemble, row.rec) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

CsvTrialSink::CsvTrialSink(std::filesystem::path path, std::string ensemble)
    : path_(std::move(path)), ensemble_(std::move(ensemble)) {
  bool fresh = !std::filesystem::exists(path_);
  if (!fresh) {
    for (auto& row : read_trials_csv(path_)) {
      if (row.ensemble != ensemble_) continue;
      keys_.insert(TrialKey{row.rec.N, row.rec.delta, row.rec.rho, row.rec.trial});
      records_.push_back(std::move(row.rec));
    }
  }
  out_.open(path_, std::ios::app);
  if (!out_) throw IoError("cannot open trials CSV for append: " + path_.string());
  if (fresh) {
    out_ << kTrialsSchemaComment << '\n' << kTrialsHeader << '\n';
    out_.flush();
  }
}

bool CsvTrialSink::contains(const TrialKey& key) const {
  std::lock_guard<std::mutex> lock(mutex_);
  return keys_.count(key) > 0;
}

void CsvTrialSink::append(const TrialRecord& rec) {
  std::lock_guard<std::mutex> lock(mutex_);
  out_ << trial_row_to_csv(ensemble_, rec) << '\n';
  out_.flush();
  if (!out_) throw IoError("trials CSV write failed: " + path_.string());
  keys_.insert(TrialKey{rec.N, rec.delta, rec.rho, rec.trial});
  records_.push_back(rec);
}

std::vector<TrialRecord> CsvTrialSink::snapshot() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return records_;
}

void write_transitions_csv(const std::filesystem::path& path,
                           const std::vector<TransitionRow>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write transitions CSV: " + path.string());
  out << kTransitionsSchemaComment << '\n' << kTransitionsHeader << '\n';
  for (const auto& row : rows) {
    out << row.ensemble << ',' << row.N << ',' << format_double(row.delta) << ',';
    if (row.estimate) {
      const auto& e = *row.estimate;
      out << format_double(e.rho50) << ',' << format_double(e.slope) << ','
          << format_double(e.intercept) << ',' << (e.separated ? 1 : 0) << ','
          << e.n_cells << ',';
    } else {
      out << ",,,," << ',';
    }
    out << row.reason << '\n';
  }
  if (!out) throw IoError("transitions CSV write failed: " + path.string());
}

std::vector<TransitionRow> read_transitions_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open transitions CSV: " + path.string());
  std::vector<TransitionRow> rows;
  std::string line;
  long lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kTransitionsHeader)
        throw IoError(path.string() + ": line " + std::to_string(lineno) +
                      ": unexpected transitions header");
      header_seen = true;
      continue;
    }
    auto f = split_csv_line(line);
    if (f.size() != 9)
      throw IoError(path.string() + ": line " + std::to_string(lineno) +
                    ": expected 9 fields, got " + std::to_string(f.size()));
    try {
      TransitionRow row;
      row.ensemble = f[0];
      row.N = parse_long(f[1]);
      row.delta = parse_double(f[2]);
      row.reason = f[8];
      if (!f[3].empty()) {
        TransitionEstimate e;
        e.delta = row.delta;
        e.rho50 = parse_double(f[3]);
        e.slope = parse_double(f[4]);
        e.intercept = parse_double(f[5]);
        e.separated = parse_long(f[6]) != 0;
        e.n_cells = static_cast<int>(parse_long(f[7]));
        row.estimate = e;
      }
      rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      throw IoError(path.string() + ": line " + std::to_string(lineno) + ": " +
                    e.what());
    }
  }
  if (!header_seen) throw IoError(path.string() + ": missing transitions header");
  return rows;
}

void write_curve_csv(const std::filesystem::path& path,
                     const std::vector<theory::TransitionCurve>& curves) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write curve CSV: " + path.string());
  out << "delta,rho,kind\n";
  for (const auto& curve : curves)
    for (const auto& [delta, rho] : curve.samples)
      out << format_double(delta) << ',' << format_double(rho) << ','
          << theory::to_string(curve.kind) << '\n';
  if (!out) throw IoError("curve CSV write failed: " + path.string());
}

std::vector<theory::TransitionCurve> read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open curve CSV: " + path.string());
  std::string line;
  long lineno = 0;
  bool header_seen = false;
  std::vector<theory::TransitionCurve> curves;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "delta,rho,kind")
        throw IoError(path.string() + ": line " + std::to_string(lineno) +
                      ": unexpected curve header");
      header_seen = true;
      continue;
    }
    auto f = split_csv_line(line);
    if (f.size() != 3)
      throw IoError(path.string() + ": line " + std::to_string(lineno) +
                    ": expected 3 fields, got " + std::to_string(f.size()));
    try {
      theory::CurveKind kind = theory::curve_kind_from_string(f[2]);
      auto it = std::find_if(curves.begin(), curves.end(),
                             [&](const auto& c) { return c.kind == kind; });
      if (it == curves.end()) {
        curves.push_back(theory::TransitionCurve{kind, {}});
        it = curves.end() - 1;
      }
      it->samples.emplace_back(parse_double(f[0]), parse_double(f[1]));
    } catch (const std::exception& e) {
      throw IoError(path.string() + ": line " + std::to_string(lineno) + ": " +
                    e.what());
    }
  }
  if (!header_seen) throw IoError(path.string() + ": missing curve header");
  return curves;
}

}  // namespace phaselab
