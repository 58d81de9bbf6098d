#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mmtsp/construct.hpp"
#include "mmtsp/model.hpp"
#include "mmtsp/tourkit.hpp"

namespace mmtsp {

// ---------------------------------------------------------------------------
// Savings and insertion primitives
// ---------------------------------------------------------------------------

// Tour-time decrease from removing t and joining its neighbors directly.
// Throws InvalidMove if t is not on the tour.
double savings(const Instance& inst, const Tour& tour, TargetId t);
double savings_at(const Instance& inst, const Tour& tour, int position);

inline double estimated_cost_after_insert(double prev_cost, double insertion_cost) {
  return prev_cost + insertion_cost;
}
inline double estimated_cost_after_remove(double prev_cost, double savings_value) {
  return prev_cost - savings_value;
}

// Savings of removing a group one target after the other. The group must
// occupy consecutive tour slots, skipping only targets in the tour
// vehicle's R_i (those stay on the tour). Throws InvalidMove otherwise.
double group_savings(const Instance& inst, const Tour& tour, std::span<const TargetId> group);

struct GroupInsertion {
  double cost = 0.0;
  int position = 0;       // the group starts at order index `position`
  bool reversed = false;  // true: group spliced in back-to-front
};

// Cheapest edge and orientation for splicing the ordered group in as one
// block. Forward orientation and lower positions win ties. Throws
// InvalidMove if the group is empty or overlaps the tour.
GroupInsertion group_insertion_cost(const Instance& inst, const Tour& tour,
                                    std::span<const TargetId> group);

// (entry leg + exit leg) / internal path length of a consecutive group;
// +infinity when the group's points coincide. Speed cancels.
double removal_ratio(const Instance& inst, const Tour& tour, std::span<const TargetId> group);

// Inserts the group's members one after the other, each at its cheapest
// slot in the growing tour. Returns the accumulated insertion cost.
double recursive_group_insertion_cost(const Instance& inst, const Tour& tour,
                                      std::span<const TargetId> group);

// ---------------------------------------------------------------------------
// Neighborhood configuration
// ---------------------------------------------------------------------------

enum class VehicleSortMetric { LeastActualTour, LeastInsertionCost, LeastEstimatedTour };

struct SwitchSwapConfig {
  VehicleSortMetric metric = VehicleSortMetric::LeastInsertionCost;
  int n_vehicles = 2;
};

enum class GroupStructure { Fixed, Variable };
enum class FixedGroupSort { InsertionCost, SavingsMinusInsertion };
enum class GroupInsertionRule { GroupEdge, Recursive };

struct MultiSwapConfig {
  GroupStructure structure = GroupStructure::Fixed;
  int m = 2;
  int n_candidates = 20;
  FixedGroupSort fixed_sort = FixedGroupSort::InsertionCost;
  GroupInsertionRule variable_insertion = GroupInsertionRule::GroupEdge;
};

struct MoveOutcome {
  bool improved = false;
  Solution solution;
};

// One tentative tour evaluated inside a neighborhood, reported before any
// tour optimization runs. estimated_cost is the proxy value the acceptance
// test uses.
struct ProbeEvent {
  const char* neighborhood;
  VehicleId vehicle;
  std::span<const TargetId> order;
  double estimated_cost;
};

using ProbeObserver = std::function<void(const ProbeEvent&)>;

struct NeighborhoodOptions {
  TourOptimizer optimizer;
  ProbeObserver probe;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Vehicles other than `exclude`, ascending by the metric for target t; ties
// go to the lower vehicle id.
std::vector<VehicleId> sort_vehicles(const Instance& inst, VehicleSortMetric metric, TargetId t,
                                     const Solution& sol, VehicleId exclude);

// ---------------------------------------------------------------------------
// Neighborhoods. Each works on a scratch copy; `sol` is never modified and
// an improved outcome always has a strictly lower objective.
// ---------------------------------------------------------------------------

MoveOutcome neighborhood_switch(const Solution& sol, const Instance& inst, const SwitchSwapConfig& cfg,
                                const NeighborhoodOptions& opts = {});

MoveOutcome neighborhood_swap(const Solution& sol, const Instance& inst, const SwitchSwapConfig& cfg,
                              const NeighborhoodOptions& opts = {});

MoveOutcome neighborhood_multiswap_fixed(const Solution& sol, const Instance& inst,
                                         const MultiSwapConfig& cfg, const NeighborhoodOptions& opts = {});

MoveOutcome neighborhood_multiswap_variable(const Solution& sol, const Instance& inst,
                                            const MultiSwapConfig& cfg,
                                            const NeighborhoodOptions& opts = {});

// Dispatches on cfg.structure.
MoveOutcome neighborhood_multiswap(const Solution& sol, const Instance& inst, const MultiSwapConfig& cfg,
                                   const NeighborhoodOptions& opts = {});

const char* to_string(VehicleSortMetric metric);

}  // namespace mmtsp
