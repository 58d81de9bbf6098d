#include "mmtsp/matrix.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "mmtsp/error.hpp"
#include "mmtsp/instance_io.hpp"

namespace mmtsp {

namespace {

using nlohmann::json;

[[noreturn]] void bad_value(std::string_view what, std::string_view value) {
  throw InvalidInput("unknown " + std::string(what) + " '" + std::string(value) + "'");
}

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InvalidInput("grid key '" + key + "' has the wrong type");
  }
}

SolverConfig config_from_json(const json& j, std::string& label) {
  if (!j.is_object()) throw InvalidInput("grid config must be an object");
  SolverConfig cfg;
  std::optional<MultiSwapConfig> ms = cfg.multiswap;
  int group_size = ms->m, candidates = ms->n_candidates;
  FixedGroupSort fixed_sort = ms->fixed_sort;
  GroupInsertionRule rule = ms->variable_insertion;
  for (const auto& [key, v] : j.items()) {
    if (key == "label") {
      label = get_as<std::string>(v, key);
    } else if (key == "construction") {
      cfg.construction = parse_construction(get_as<std::string>(v, key));
    } else if (key == "metric") {
      cfg.switch_swap.metric = parse_metric(get_as<std::string>(v, key));
    } else if (key == "top_vehicles") {
      cfg.switch_swap.n_vehicles = get_as<int>(v, key);
    } else if (key == "multiswap") {
      ms = parse_multiswap(get_as<std::string>(v, key));
    } else if (key == "group_size") {
      group_size = get_as<int>(v, key);
    } else if (key == "candidates") {
      candidates = get_as<int>(v, key);
    } else if (key == "fixed_sort") {
      fixed_sort = parse_fixed_sort(get_as<std::string>(v, key));
    } else if (key == "group_insertion") {
      rule = parse_group_insertion(get_as<std::string>(v, key));
    } else if (key == "perturb_attempts") {
      cfg.perturb_attempts = get_as<int>(v, key);
    } else if (key == "runs") {
      cfg.runs = get_as<int>(v, key);
    } else if (key == "seed") {
      cfg.rng_seed = get_as<std::uint64_t>(v, key);
    } else if (key == "time_limit") {
      cfg.time_limit = std::chrono::duration<double>(get_as<double>(v, key));
    } else if (key == "tour_passes") {
      cfg.tour_budget.max_passes = get_as<int>(v, key);
    } else {
      throw InvalidInput("unknown grid key '" + key + "'");
    }
  }
  if (ms) {
    ms->m = group_size;
    ms->n_candidates = candidates;
    ms->fixed_sort = fixed_sort;
    ms->variable_insertion = rule;
  }
  cfg.multiswap = ms;
  validate_config(cfg);
  if (label.empty()) label = config_label(cfg);
  return cfg;
}

}  // namespace

ConstructionMethod parse_construction(std::string_view s) {
  if (s == "recursive") return ConstructionMethod::RecursiveInsertion;
  if (s == "balance") return ConstructionMethod::BalancedAssignment;
  bad_value("construction", s);
}

VehicleSortMetric parse_metric(std::string_view s) {
  if (s == "insertion") return VehicleSortMetric::LeastInsertionCost;
  if (s == "estimated") return VehicleSortMetric::LeastEstimatedTour;
  if (s == "actual") return VehicleSortMetric::LeastActualTour;
  bad_value("metric", s);
}

std::optional<MultiSwapConfig> parse_multiswap(std::string_view s) {
  if (s == "off") return std::nullopt;
  MultiSwapConfig ms;
  if (s == "fixed") {
    ms.structure = GroupStructure::Fixed;
  } else if (s == "variable") {
    ms.structure = GroupStructure::Variable;
  } else {
    bad_value("multiswap", s);
  }
  return ms;
}

FixedGroupSort parse_fixed_sort(std::string_view s) {
  if (s == "insertion") return FixedGroupSort::InsertionCost;
  if (s == "savings") return FixedGroupSort::SavingsMinusInsertion;
  bad_value("fixed_sort", s);
}

GroupInsertionRule parse_group_insertion(std::string_view s) {
  if (s == "edge") return GroupInsertionRule::GroupEdge;
  if (s == "recursive") return GroupInsertionRule::Recursive;
  bad_value("group_insertion", s);
}

std::string config_label(const SolverConfig& cfg) {
  std::ostringstream out;
  out << to_string(cfg.construction) << '/' << to_string(cfg.switch_swap.metric) << "/n"
      << cfg.switch_swap.n_vehicles << '/';
  if (!cfg.multiswap) {
    out << "off";
  } else if (cfg.multiswap->structure == GroupStructure::Fixed) {
    out << "fixed-m" << cfg.multiswap->m << "-c" << cfg.multiswap->n_candidates
        << (cfg.multiswap->fixed_sort == FixedGroupSort::InsertionCost ? "" : "-savings");
  } else {
    out << "variable-m" << cfg.multiswap->m << "-c" << cfg.multiswap->n_candidates
        << (cfg.multiswap->variable_insertion == GroupInsertionRule::GroupEdge ? "" : "-recursive");
  }
  return out.str();
}

Grid parse_grid(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("grid: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidInput("grid must be a JSON object");
  Grid grid;
  for (const auto& [key, v] : doc.items()) {
    if (key == "configs") {
      if (!v.is_array()) throw InvalidInput("grid 'configs' must be an array");
      for (const auto& c : v) {
        ConfigEntry e;
        e.config = config_from_json(c, e.label);
        grid.configs.push_back(std::move(e));
      }
    } else if (key == "instances") {
      grid.instances = get_as<std::vector<std::string>>(v, key);
    } else {
      throw InvalidInput("unknown grid key '" + key + "'");
    }
  }
  if (grid.configs.empty()) throw InvalidInput("grid has no configs");
  return grid;
}

MatrixResult run_matrix(std::span<const Instance> instances, std::span<const ConfigEntry> configs,
                        const RowSink& sink, const MatrixOptions& options) {
  const size_t nc = configs.size();
  const size_t cells = instances.size() * nc;
  MatrixResult result;
  result.rows.resize(cells);

  std::mutex sink_mu;
  std::atomic<size_t> next{0};
  const auto worker = [&] {
    for (size_t cell = next++; cell < cells; cell = next++) {
      const Instance& inst = instances[cell / nc];
      const ConfigEntry& ce = configs[cell % nc];
      ResultRow row;
      row.instance = inst.name();
      row.config = ce.label;
      row.runs = ce.config.runs;
      row.seed = derive_seed(ce.config.rng_seed, inst.name());
      const auto start = std::chrono::steady_clock::now();
      try {
        SolverConfig cfg = ce.config;
        cfg.rng_seed = row.seed;
        const SolveResult sr = solve(inst, cfg);
        row.objective = sr.best.objective;
        row.status = sr.truncated ? "truncated" : "ok";
      } catch (const std::exception& e) {
        row.objective = std::numeric_limits<double>::quiet_NaN();
        row.status = std::string("error:") + e.what();
      }
      row.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      result.rows[cell] = row;
      if (sink) {
        std::lock_guard lock(sink_mu);
        sink(row);
      }
    }
  };
  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(std::max<size_t>(cells, 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  // Baselines per instance.
  std::map<std::string, double> baseline;
  for (const auto& row : result.rows) {
    if (row.is_error()) continue;
    auto [it, inserted] = baseline.try_emplace(row.instance, row.objective);
    if (!inserted) it->second = std::min(it->second, row.objective);
  }
  if (options.reference) {
    for (auto& [name, value] : baseline) {
      if (auto it = options.reference->find(name); it != options.reference->end()) value = it->second.objective;
    }
  }

  result.deviation_pct.resize(cells, std::numeric_limits<double>::quiet_NaN());
  for (size_t c = 0; c < nc; ++c) {
    ConfigSummary s;
    s.config = configs[c].label;
    std::vector<double> dev, wall;
    for (size_t i = 0; i < instances.size(); ++i) {
      const size_t cell = i * nc + c;
      const ResultRow& row = result.rows[cell];
      ++s.rows;
      if (row.is_error()) {
        ++s.errors;
        continue;
      }
      result.deviation_pct[cell] = deviation_pct(row.objective, baseline.at(row.instance));
      dev.push_back(result.deviation_pct[cell]);
      wall.push_back(row.wall_s);
    }
    if (!dev.empty()) {
      s.deviation_pct = summarize(dev);
      s.wall_s = summarize(wall);
    }
    result.summary.push_back(std::move(s));
  }
  return result;
}

std::string summary_csv(std::span<const ConfigSummary> summary) {
  std::ostringstream out;
  out << "config,rows,errors,dev_min,dev_max,dev_mean,dev_median,wall_min,wall_max,wall_mean,wall_median\n";
  const auto put = [&](const std::optional<Summary>& s) {
    if (!s) {
      out << ",,,,";
      return;
    }
    out << ',' << format_double(s->min) << ',' << format_double(s->max) << ',' << format_double(s->mean) << ','
        << format_double(s->median);
  };
  for (const auto& s : summary) {
    out << s.config << ',' << s.rows << ',' << s.errors;
    put(s.deviation_pct);
    put(s.wall_s);
    out << '\n';
  }
  return out.str();
}

std::vector<std::pair<std::string, double>> deviation_samples(const MatrixResult& result) {
  std::vector<std::pair<std::string, double>> out;
  for (size_t i = 0; i < result.rows.size(); ++i) {
    if (!std::isnan(result.deviation_pct[i])) out.emplace_back(result.rows[i].config, result.deviation_pct[i]);
  }
  return out;
}

}  // namespace mmtsp
