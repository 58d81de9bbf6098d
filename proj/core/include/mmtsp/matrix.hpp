#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmtsp/reference.hpp"
#include "mmtsp/results.hpp"
#include "mmtsp/solver.hpp"
#include "mmtsp/stats.hpp"

namespace mmtsp {

struct ConfigEntry {
  std::string label;
  SolverConfig config;
};

// JSON grid document:
//   { "configs": [ { "label": "...", "construction": "recursive", ... } ],
//     "instances": [ "path", ... ] }
// Config keys (all optional, defaults as in SolverConfig): construction
// (recursive|balance), metric (insertion|estimated|actual), top_vehicles,
// multiswap (off|fixed|variable), group_size, candidates, fixed_sort
// (insertion|savings), group_insertion (edge|recursive), perturb_attempts,
// runs, seed, time_limit (seconds), tour_passes. Unknown keys are errors.
struct Grid {
  std::vector<ConfigEntry> configs;
  std::vector<std::string> instances;
};

// Throws InvalidInput on malformed JSON, unknown keys or bad values.
Grid parse_grid(std::string_view json_text);

ConstructionMethod parse_construction(std::string_view s);
VehicleSortMetric parse_metric(std::string_view s);
// "off" yields nullopt; "fixed" and "variable" yield the default group
// parameters with that structure.
std::optional<MultiSwapConfig> parse_multiswap(std::string_view s);
FixedGroupSort parse_fixed_sort(std::string_view s);
GroupInsertionRule parse_group_insertion(std::string_view s);

// Compact description such as "recursive/insertion/n2/fixed-m2-c20".
std::string config_label(const SolverConfig& cfg);

struct MatrixOptions {
  int threads = 1;
  const ReferenceTable* reference = nullptr;  // deviation baseline when present
};

using RowSink = std::function<void(const ResultRow&)>;

struct ConfigSummary {
  std::string config;
  std::size_t rows = 0;
  std::size_t errors = 0;
  std::optional<Summary> deviation_pct;
  std::optional<Summary> wall_s;
};

struct MatrixResult {
  std::vector<ResultRow> rows;            // cell order: instance-major
  std::vector<double> deviation_pct;      // aligned with rows; NaN for error rows
  std::vector<ConfigSummary> summary;     // one per config, grid order
};

// Solves every (instance, config) cell. The cell seed is derived from the
// config's rng_seed and the instance name. `sink` sees each row once, in
// completion order, from one thread at a time; a failing cell becomes an
// error row. Deviation baseline: the reference objective when the table
// has the instance, else the best objective across configs.
MatrixResult run_matrix(std::span<const Instance> instances, std::span<const ConfigEntry> configs,
                        const RowSink& sink = {}, const MatrixOptions& options = {});

// "config,rows,errors,dev_min,dev_max,dev_mean,dev_median,wall_min,wall_max,wall_mean,wall_median"
std::string summary_csv(std::span<const ConfigSummary> summary);

// Deviation samples grouped by config label, ready for emit_plot_data.
std::vector<std::pair<std::string, double>> deviation_samples(const MatrixResult& result);

}  // namespace mmtsp
