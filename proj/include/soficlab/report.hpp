#pragma once
// Experiment reports and their persistence. A report carries the refinement
// ladder (each rung = one (delta, eps-list) setting evaluated on every
// level) plus a summary bracket. Persistence writes three sibling files,
// each atomically (temp file + rename):
//   <out>             JSON, schema "v1", deterministic byte-for-byte for a
//                     fixed config + seed (it contains no timing data)
//   <out minus .json>.csv   per-level rows, including wall-clock times
//   <out>.timing.json wall-clock sidecar, outside the determinism contract
//
// The summary bracket is [max over levels of the normalized lower bound,
// max over levels of the normalized upper bound] at the finest rung, for
// the first configured eps: the per-level sequence is reported in full and
// its max plays the role of the limit superior over the computed window —
// no extrapolation is applied.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "soficlab/config.hpp"
#include "soficlab/epsdim.hpp"

namespace soficlab {

struct EpsRecord {
  double epsilon = 0.0;
  long long lower_dim = 0;
  long long upper_dim = 0;
  std::string lower_method;
  NormalizedBracket normalized;
};

struct LevelReport {
  std::uint32_t degree = 0;
  long long witness_total = 0;
  long long witness_passed = 0;
  long long witness_undetermined = 0;
  double pass_fraction = 0.0;
  double max_defect = 0.0;
  std::vector<EpsRecord> eps_records;
  // Auxiliary named values (sample residuals, cross-checks); insertion
  // order is fixed by the pipeline, keeping serialization deterministic.
  std::vector<std::pair<std::string, double>> diagnostics;
  double wall_ms = 0.0;  // CSV + timing sidecar only, never the JSON report
};

struct RungReport {
  double delta = 0.0;
  std::vector<double> eps;
  std::vector<LevelReport> levels;
  double bracket_lower = 0.0;  // max over levels, first eps
  double bracket_upper = 0.0;
};

struct DimensionReport {
  ExperimentConfig config;
  std::vector<RungReport> rungs;
  double summary_lower = 0.0;  // finest rung's bracket
  double summary_upper = 0.0;
};

// Recomputes rung brackets and the summary from the per-level records.
void finalize_report(DimensionReport& report);

// Deterministic JSON ({"schema":"v1", "config":..., "levels":..., "rungs":
// ..., "summary":{"bracket":[lo,hi]}}); `levels` echoes the finest rung.
// No timing data and no output paths appear in it.
std::string report_to_json(const DimensionReport& report);

// CSV rows over all rungs and levels, one row per (level, eps). Columns:
// experiment_id, level_degree, epsilon, lower_dim, upper_dim,
// normalized_lower, normalized_upper, witness_pass_fraction, wall_ms.
std::string report_to_csv(const DimensionReport& report);

// Wall-clock sidecar content.
std::string report_timing_json(const DimensionReport& report);

// Writes content to path via a temp file in the same directory + rename.
void write_file_atomic(const std::string& path, const std::string& content);

// report.json -> report.csv; anything else gets .csv appended.
std::string csv_path_for(const std::string& json_path);

// JSON to json_path, CSV and timing sidecar next to it, all atomic.
void write_report_files(const DimensionReport& report, const std::string& json_path);

}  // namespace soficlab
