// mmtsp command-line front end: solve, generate, matrix, compare, oracle.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mmtsp/error.hpp"
#include "mmtsp/instance_io.hpp"
#include "mmtsp/instgen.hpp"
#include "mmtsp/matrix.hpp"
#include "mmtsp/oracle.hpp"
#include "mmtsp/reference.hpp"
#include "mmtsp/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mmtsp::Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void dump(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw mmtsp::Error("cannot write " + path.string());
  out << text;
}

json tours_json(const mmtsp::Solution& sol) {
  json tours = json::array();
  for (const auto& t : sol.tours) tours.push_back({{"vehicle", t.vehicle}, {"cost", t.cost}, {"order", t.order}});
  return tours;
}

struct SolveArgs {
  std::string instance;
  std::string construction = "recursive";
  std::string metric = "insertion";
  int top_vehicles = 2;
  std::string multiswap = "fixed";
  int group_size = 2;
  int candidates = 20;
  std::string fixed_sort = "insertion";
  std::string group_insertion = "edge";
  int perturb_attempts = 5;
  int runs = 3;
  std::uint64_t seed = 1;
  double time_limit = 3600.0;
  std::string out;
};

int run_solve(const SolveArgs& a) {
  const mmtsp::Instance inst = mmtsp::read_instance_file(a.instance);
  mmtsp::SolverConfig cfg;
  cfg.construction = mmtsp::parse_construction(a.construction);
  cfg.switch_swap.metric = mmtsp::parse_metric(a.metric);
  cfg.switch_swap.n_vehicles = a.top_vehicles;
  cfg.multiswap = mmtsp::parse_multiswap(a.multiswap);
  if (cfg.multiswap) {
    cfg.multiswap->m = a.group_size;
    cfg.multiswap->n_candidates = a.candidates;
    cfg.multiswap->fixed_sort = mmtsp::parse_fixed_sort(a.fixed_sort);
    cfg.multiswap->variable_insertion = mmtsp::parse_group_insertion(a.group_insertion);
  }
  cfg.perturb_attempts = a.perturb_attempts;
  cfg.runs = a.runs;
  cfg.rng_seed = a.seed;
  cfg.time_limit = std::chrono::duration<double>(a.time_limit);

  const mmtsp::SolveResult res = mmtsp::solve(inst, cfg);
  std::cout << inst.name() << ": objective " << mmtsp::format_double(res.best.objective) << " ("
            << mmtsp::config_label(cfg) << ")" << (res.truncated ? " [truncated]" : "") << '\n';
  for (const auto& r : res.runs) {
    std::cout << "  run seed " << r.seed << ": " << mmtsp::format_double(r.objective) << " in " << r.wall_s << " s\n";
  }

  if (!a.out.empty()) {
    json runs = json::array();
    for (const auto& r : res.runs) {
      json trace = json::array();
      for (const auto& e : r.trace) trace.push_back({{"stage", e.stage}, {"objective", e.objective}, {"elapsed_s", e.elapsed_s}});
      runs.push_back({{"seed", r.seed}, {"objective", r.objective}, {"wall_s", r.wall_s},
                      {"truncated", r.truncated}, {"trace", trace}});
    }
    const json doc = {{"instance", inst.name()}, {"config", mmtsp::config_label(cfg)},
                      {"objective", res.best.objective}, {"truncated", res.truncated},
                      {"tours", tours_json(res.best)}, {"runs", runs}};
    dump(a.out, doc.dump(2) + "\n");
  }
  return 0;
}

struct GenerateArgs {
  std::vector<std::string> bases;
  int synthetic = 0;
  int targets = 50;
  int vehicles = 5;
  std::uint64_t seed = 1;
  std::string out = ".";
};

int run_generate(const GenerateArgs& a) {
  std::vector<mmtsp::BaseInstance> bases;
  std::vector<mmtsp::SuiteError> read_errors;
  for (const auto& path : a.bases) {
    try {
      bases.push_back(mmtsp::base_from_instance(mmtsp::read_instance_file(path)));
    } catch (const mmtsp::Error& e) {
      read_errors.push_back({path, e.what()});
    }
  }
  mmtsp::Rng rng(mmtsp::derive_seed(a.seed, std::string_view("synthetic")));
  for (int i = 0; i < a.synthetic; ++i) {
    bases.push_back(mmtsp::random_base_instance("MM" + std::to_string(i + 1), a.targets, a.vehicles, rng));
  }

  mmtsp::Suite suite = mmtsp::generate_suite(bases, a.seed);
  suite.errors.insert(suite.errors.begin(), read_errors.begin(), read_errors.end());
  fs::create_directories(a.out);
  for (const auto& inst : suite.instances) mmtsp::write_instance_file(fs::path(a.out) / (inst.name() + ".txt"), inst);
  for (const auto& e : suite.errors) std::cerr << "error: " << e.base << ": " << e.message << '\n';
  std::cout << "wrote " << suite.instances.size() << " instances to " << a.out << '\n';
  return suite.errors.empty() ? 0 : 1;
}

struct MatrixArgs {
  std::string grid;
  std::vector<std::string> instances;
  std::string out = "results.csv";
  std::string reference;
  std::string summary;
  std::string plot_data;
  int threads = 1;
  bool strict = false;
};

int run_matrix_cmd(const MatrixArgs& a) {
  const mmtsp::Grid grid = mmtsp::parse_grid(slurp(a.grid));
  std::vector<std::string> paths = grid.instances;
  paths.insert(paths.end(), a.instances.begin(), a.instances.end());
  if (paths.empty()) throw mmtsp::InvalidInput("no instances given");
  std::vector<mmtsp::Instance> instances;
  for (const auto& p : paths) {
    fs::path path(p);
    if (path.is_relative() && !fs::exists(path)) path = fs::path(a.grid).parent_path() / path;
    instances.push_back(mmtsp::read_instance_file(path));
  }

  mmtsp::ReferenceTable ref;
  mmtsp::MatrixOptions opts;
  opts.threads = a.threads;
  if (!a.reference.empty()) {
    ref = mmtsp::read_reference_file(a.reference);
    opts.reference = &ref;
  }

  mmtsp::ResultsAppender appender(a.out);
  const auto result = mmtsp::run_matrix(instances, grid.configs,
                                        [&](const mmtsp::ResultRow& row) { appender.append(row); }, opts);
  const std::string summary = mmtsp::summary_csv(result.summary);
  std::cout << summary;
  if (!a.summary.empty()) dump(a.summary, summary);
  if (!a.plot_data.empty()) {
    const auto samples = mmtsp::deviation_samples(result);
    dump(a.plot_data, mmtsp::plot_data_csv(mmtsp::emit_plot_data(samples)));
  }
  const bool any_error = std::any_of(result.rows.begin(), result.rows.end(), [](const auto& r) { return r.is_error(); });
  return a.strict && any_error ? 1 : 0;
}

int run_compare(const std::string& results, const std::string& reference, const std::string& out) {
  const auto rows = mmtsp::read_results_file(results);
  const auto report = mmtsp::compare_to_reference(rows, mmtsp::read_reference_file(reference));
  const std::string csv = mmtsp::comparison_csv(report);
  if (out.empty()) {
    std::cout << csv;
  } else {
    dump(out, csv);
  }
  std::cout << "better " << report.better << ", equal " << report.equal << ", worse " << report.worse << '\n';
  return 0;
}

int run_oracle(const std::string& instance, int max_free, const std::string& out) {
  const mmtsp::Instance inst = mmtsp::read_instance_file(instance);
  mmtsp::OracleLimit limit;
  limit.max_free_targets = max_free;
  const auto res = mmtsp::brute_force_minmax(inst, limit);
  std::cout << inst.name() << ": optimum " << mmtsp::format_double(res.objective) << " over " << res.assignments
            << " assignments\n";
  if (!out.empty()) {
    const json doc = {{"instance", inst.name()}, {"objective", res.objective}, {"tours", tours_json(res.solution)}};
    dump(out, doc.dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heterogeneous min-max multi-depot TSP solver"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("--instance", sa.instance, "Instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("--construction", sa.construction)->check(CLI::IsMember({"recursive", "balance"}));
  solve->add_option("--metric", sa.metric)->check(CLI::IsMember({"insertion", "estimated", "actual"}));
  solve->add_option("--top-vehicles", sa.top_vehicles)->check(CLI::PositiveNumber);
  solve->add_option("--multiswap", sa.multiswap)->check(CLI::IsMember({"off", "fixed", "variable"}));
  solve->add_option("--group-size", sa.group_size)->check(CLI::Range(2, 1000));
  solve->add_option("--candidates", sa.candidates)->check(CLI::PositiveNumber);
  solve->add_option("--fixed-sort", sa.fixed_sort)->check(CLI::IsMember({"insertion", "savings"}));
  solve->add_option("--group-insertion", sa.group_insertion)->check(CLI::IsMember({"edge", "recursive"}));
  solve->add_option("--perturb-attempts", sa.perturb_attempts)->check(CLI::PositiveNumber);
  solve->add_option("--runs", sa.runs)->check(CLI::PositiveNumber);
  solve->add_option("--seed", sa.seed);
  solve->add_option("--time-limit", sa.time_limit, "Seconds per run")->check(CLI::PositiveNumber);
  solve->add_option("--out", sa.out, "Write the solution as JSON");

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Build 0/3/5-target suite variants from base instances");
  generate->add_option("--bases", ga.bases, "Base instance files");
  generate->add_option("--synthetic", ga.synthetic, "Number of random bases to add")->check(CLI::NonNegativeNumber);
  generate->add_option("--targets", ga.targets, "Targets per random base")->check(CLI::PositiveNumber);
  generate->add_option("--vehicles", ga.vehicles, "Vehicles per random base")->check(CLI::PositiveNumber);
  generate->add_option("--seed", ga.seed);
  generate->add_option("--out", ga.out, "Output directory");

  MatrixArgs ma;
  auto* matrix = app.add_subcommand("matrix", "Run a config grid over instances");
  matrix->add_option("--grid", ma.grid, "Grid JSON file")->required()->check(CLI::ExistingFile);
  matrix->add_option("--instances", ma.instances, "Extra instance files");
  matrix->add_option("--out", ma.out, "Results CSV (appended)");
  matrix->add_option("--reference", ma.reference, "Reference CSV used as deviation baseline");
  matrix->add_option("--summary", ma.summary, "Per-config summary CSV");
  matrix->add_option("--plot-data", ma.plot_data, "Per-config quartile CSV");
  matrix->add_option("--threads", ma.threads)->check(CLI::PositiveNumber);
  matrix->add_flag("--strict", ma.strict, "Exit nonzero if any cell failed");

  std::string cmp_results, cmp_reference, cmp_out;
  auto* compare = app.add_subcommand("compare", "Compare a results CSV against a reference table");
  compare->add_option("--results", cmp_results)->required()->check(CLI::ExistingFile);
  compare->add_option("--reference", cmp_reference)->required()->check(CLI::ExistingFile);
  compare->add_option("--out", cmp_out, "Comparison CSV (default stdout)");

  std::string or_instance, or_out;
  int or_max_free = 10;
  auto* oracle = app.add_subcommand("oracle", "Exact solve of a tiny instance");
  oracle->add_option("--instance", or_instance)->required()->check(CLI::ExistingFile);
  oracle->add_option("--max-free", or_max_free)->check(CLI::NonNegativeNumber);
  oracle->add_option("--out", or_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return run_solve(sa);
    if (*generate) return run_generate(ga);
    if (*matrix) return run_matrix_cmd(ma);
    if (*compare) return run_compare(cmp_results, cmp_reference, cmp_out);
    if (*oracle) return run_oracle(or_instance, or_max_free, or_out);
  } catch (const std::exception& e) {
    std::cerr << "mmtsp: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
