#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mmtsp/model.hpp"

namespace mmtsp {

// Single-vehicle tour construction and improvement. 2-opt plus Or-opt to a
// local optimum stands in for an external Lin-Kernighan style optimizer;
// TourOptimizer can wrap an external one instead.

struct TourOptimizerBudget {
  int max_passes = 50;
  std::optional<std::chrono::duration<double>> time_limit;
};

inline constexpr int kHeldKarpMaxTargets = 13;

// Moves whose gain is below this are not applied by the improvement passes.
// Keeps the local search finite under floating-point round-off.
inline constexpr double kImprovementEpsilon = 1e-10;

Tour nn_construct(const Instance& inst, VehicleId vehicle, std::span<const TargetId> targets);

// First-improvement 2-opt, sweeping until a full sweep finds nothing.
// tour.cost is updated by the exact move deltas, not recomputed.
// Returns true if any exchange was applied.
bool two_opt_pass(const Instance& inst, Tour& tour);

// Relocates segments of 1..max_segment consecutive targets (either
// orientation) to a cheaper slot, sweeping until nothing improves.
bool or_opt_pass(const Instance& inst, Tour& tour, int max_segment = 3);

// Alternates 2-opt and Or-opt until a combined pass does not improve or the
// budget runs out. The returned cost is recomputed from scratch.
Tour optimize_tour(const Instance& inst, Tour tour, const TourOptimizerBudget& budget = {});

// Bitmask DP; throws CapacityError above kHeldKarpMaxTargets targets.
Tour exact_tsp_held_karp(const Instance& inst, VehicleId vehicle, std::span<const TargetId> targets);

// Hook for an external single-vehicle optimizer. Receives the current order
// and returns a permutation of it.
using ExternalTourOptimizer = std::function<std::vector<TargetId>(
    const Instance&, VehicleId, std::span<const TargetId>)>;

// The tour improver used by construction, neighborhoods and perturbation.
class TourOptimizer {
 public:
  TourOptimizer() = default;
  explicit TourOptimizer(TourOptimizerBudget budget, ExternalTourOptimizer external = {})
      : budget_(budget), external_(std::move(external)) {}

  // Never returns a tour more expensive than its input; a hook result that
  // is not a permutation of the input is rejected in favour of the built-in
  // optimizer.
  Tour operator()(const Instance& inst, Tour tour) const;

  const TourOptimizerBudget& budget() const noexcept { return budget_; }

 private:
  TourOptimizerBudget budget_;
  ExternalTourOptimizer external_;
};

}  // namespace mmtsp
