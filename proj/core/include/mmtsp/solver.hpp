#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmtsp/construct.hpp"
#include "mmtsp/neighborhoods.hpp"
#include "mmtsp/rng.hpp"

namespace mmtsp {

// Defaults are the configuration the heuristic recommends: recursive
// insertion, least-insertion-cost metric over the top 2 vehicles, fixed
// multi-target swap with m = 2 and 20 candidates, 3 runs.
struct SolverConfig {
  ConstructionMethod construction = ConstructionMethod::RecursiveInsertion;
  SwitchSwapConfig switch_swap{};
  std::optional<MultiSwapConfig> multiswap = MultiSwapConfig{};
  int perturb_attempts = 5;
  int runs = 3;
  std::uint64_t rng_seed = 1;
  std::chrono::duration<double> time_limit{3600.0};
  TourOptimizerBudget tour_budget{};
};

// Throws InvalidInput when a count or size parameter is out of range.
void validate_config(const SolverConfig& cfg);

struct TraceEntry {
  std::string stage;  // "construct", "local_search" or "perturbation"
  double objective = 0.0;
  double elapsed_s = 0.0;
};

struct RunRecord {
  std::string instance;
  double objective = 0.0;
  double wall_s = 0.0;
  std::vector<TraceEntry> trace;
  std::uint64_t seed = 0;
  bool truncated = false;
};

struct SolveResult {
  Solution best;
  std::vector<RunRecord> runs;
  bool truncated = false;  // some run hit the time limit
};

// Receives every incumbent on the true instance, tagged with its stage.
using IncumbentObserver = std::function<void(std::string_view stage, const Solution&)>;

struct SolveHooks {
  IncumbentObserver on_incumbent;
  ExternalTourOptimizer external_optimizer;
  ProbeObserver probe;
};

// Switch to exhaustion, then swap, then (if configured) the multi-target
// swap; any improvement restarts from switch. Returns when all fail or the
// deadline in `opts` passes.
Solution local_search(const Solution& sol, const Instance& inst, const SolverConfig& cfg,
                      const NeighborhoodOptions& opts = {},
                      const std::function<void(const Solution&)>& on_improvement = {});

// Depot displaced by r_j (mean of its two depot-edge costs in `tour`)
// along `angle` radians. An empty tour leaves the depot in place.
Point perturb_depot(const Instance& inst, const Tour& tour, double angle);

// theta + attempt * 144 degrees, wrapped into [0, 2*pi).
double perturbation_angle(double theta, int attempt);

struct PerturbationResult {
  bool improved = false;
  Solution solution;                         // new incumbent when improved
  int attempts = 0;                          // attempts actually run
  std::vector<double> thetas;                // base angle per vehicle
  std::vector<std::vector<double>> angles;   // [attempt][vehicle]
};

// One perturbation step: up to cfg.perturb_attempts depot displacements,
// each followed by a local search on the displaced graph and tour
// re-optimization on the true one. Stops at the first strict improvement.
PerturbationResult perturbation_round(const Solution& sol, const Instance& inst, const SolverConfig& cfg,
                                      Rng& rng, const NeighborhoodOptions& opts = {});

SolveResult solve(const Instance& inst, const SolverConfig& cfg, const SolveHooks& hooks = {});

}  // namespace mmtsp
