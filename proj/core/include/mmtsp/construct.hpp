#pragma once

#include <functional>
#include <span>

#include "mmtsp/model.hpp"
#include "mmtsp/tourkit.hpp"

namespace mmtsp {

enum class ConstructionMethod { RecursiveInsertion, BalancedAssignment };

struct Insertion {
  double cost = 0.0;
  int position = 0;  // the target lands at order index `position`
};

// Cheapest slot for t in the tour, scanning edges depot->u1, u1->u2, ...,
// un->depot; the lowest position wins ties. An empty tour yields the
// out-and-back cost at position 0. Throws InvalidMove if t is on the tour.
Insertion insertion_cost_single(const Instance& inst, const Tour& tour, TargetId t);

// Same as above without the membership check; for hot loops.
Insertion cheapest_insertion(const Instance& inst, const Tour& tour, TargetId t);

// Splices t in at `ins.position` and adds ins.cost to the cached cost.
void apply_insertion(Tour& tour, TargetId t, const Insertion& ins);

// Called before each insertion with the chosen vehicle's tour, the free
// pool (chosen target included), and the chosen target and slot.
using InsertionObserver = std::function<void(const Tour& before, std::span<const TargetId> pool,
                                             TargetId chosen, const Insertion& where)>;

// Seeds every vehicle with its R_i, then repeatedly gives the least-cost
// vehicle the free target it can absorb most cheaply. Every tour is
// optimized once all targets are placed.
Solution recursive_insertion(const Instance& inst, const TourOptimizer& optimizer = {},
                             const InsertionObserver& observer = {});

// Speed-proportional quota per vehicle (largest remainder rounding).
std::vector<int> speed_quotas(const Instance& inst, int free_targets);

// Free targets go to vehicles by a min-cost transportation problem with
// cost edge_cost(depot, target) and speed-proportional quotas.
Solution balanced_assignment_construct(const Instance& inst, const TourOptimizer& optimizer = {});

Solution construct(const Instance& inst, ConstructionMethod method, const TourOptimizer& optimizer = {});

const char* to_string(ConstructionMethod method);

}  // namespace mmtsp
