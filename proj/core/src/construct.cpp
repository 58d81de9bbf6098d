#include "mmtsp/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mmtsp/error.hpp"
#include "mmtsp/transport.hpp"

namespace mmtsp {

Insertion cheapest_insertion(const Instance& inst, const Tour& tour, TargetId t) {
  const VehicleId v = tour.vehicle;
  Insertion best{std::numeric_limits<double>::infinity(), 0};
  const int m = tour.size();
  for (int p = 0; p <= m; ++p) {
    const VertexId a = tour_vertex(inst, tour, p);
    const VertexId b = tour_vertex(inst, tour, p + 1);
    const double c = inst.cost(v, a, t) + inst.cost(v, t, b) - inst.cost(v, a, b);
    if (c < best.cost) best = {c, p};
  }
  return best;
}

Insertion insertion_cost_single(const Instance& inst, const Tour& tour, TargetId t) {
  if (t < 0 || t >= inst.num_targets()) throw InvalidInput("unknown target " + std::to_string(t));
  if (std::find(tour.order.begin(), tour.order.end(), t) != tour.order.end()) {
    throw InvalidMove("target " + std::to_string(t) + " is already on the tour of vehicle " +
                      std::to_string(tour.vehicle));
  }
  return cheapest_insertion(inst, tour, t);
}

void apply_insertion(Tour& tour, TargetId t, const Insertion& ins) {
  tour.order.insert(tour.order.begin() + ins.position, t);
  tour.cost += ins.cost;
}

Solution recursive_insertion(const Instance& inst, const TourOptimizer& optimizer,
                             const InsertionObserver& observer) {
  const int k = inst.num_vehicles();
  Solution sol;
  sol.tours.reserve(static_cast<size_t>(k));
  for (VehicleId v = 0; v < k; ++v) {
    const auto& req = inst.vehicle(v).required;
    sol.tours.push_back(optimizer(inst, nn_construct(inst, v, req)));
  }

  std::vector<TargetId> pool;
  for (TargetId t = 0; t < inst.num_targets(); ++t) {
    if (inst.is_free(t)) pool.push_back(t);
  }

  while (!pool.empty()) {
    VehicleId chosen = 0;
    for (VehicleId v = 1; v < k; ++v) {
      if (sol.tours[static_cast<size_t>(v)].cost < sol.tours[static_cast<size_t>(chosen)].cost) chosen = v;
    }
    Tour& tour = sol.tours[static_cast<size_t>(chosen)];
    size_t best_slot = 0;
    Insertion best{std::numeric_limits<double>::infinity(), 0};
    for (size_t i = 0; i < pool.size(); ++i) {
      const Insertion ins = cheapest_insertion(inst, tour, pool[i]);
      if (ins.cost < best.cost) {
        best = ins;
        best_slot = i;
      }
    }
    if (observer) observer(tour, pool, pool[best_slot], best);
    apply_insertion(tour, pool[best_slot], best);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best_slot));
  }

  for (auto& tour : sol.tours) tour = optimizer(inst, std::move(tour));
  sol.refresh_objective();
  return sol;
}

std::vector<int> speed_quotas(const Instance& inst, int free_targets) {
  const int k = inst.num_vehicles();
  double total_speed = 0.0;
  for (const auto& veh : inst.vehicles()) total_speed += veh.speed;

  std::vector<int> quota(static_cast<size_t>(k));
  std::vector<double> remainder(static_cast<size_t>(k));
  int assigned = 0;
  for (VehicleId v = 0; v < k; ++v) {
    const double exact = free_targets * inst.vehicle(v).speed / total_speed;
    quota[static_cast<size_t>(v)] = static_cast<int>(std::floor(exact));
    remainder[static_cast<size_t>(v)] = exact - quota[static_cast<size_t>(v)];
    assigned += quota[static_cast<size_t>(v)];
  }
  std::vector<VehicleId> by_remainder(static_cast<size_t>(k));
  std::iota(by_remainder.begin(), by_remainder.end(), 0);
  std::stable_sort(by_remainder.begin(), by_remainder.end(), [&](VehicleId a, VehicleId b) {
    return remainder[static_cast<size_t>(a)] > remainder[static_cast<size_t>(b)];
  });
  for (int i = 0; assigned < free_targets; ++i, ++assigned) {
    ++quota[static_cast<size_t>(by_remainder[static_cast<size_t>(i % k)])];
  }
  return quota;
}

Solution balanced_assignment_construct(const Instance& inst, const TourOptimizer& optimizer) {
  const int k = inst.num_vehicles();
  std::vector<TargetId> free;
  for (TargetId t = 0; t < inst.num_targets(); ++t) {
    if (inst.is_free(t)) free.push_back(t);
  }
  const int f = static_cast<int>(free.size());
  std::vector<double> cost(static_cast<size_t>(f) * static_cast<size_t>(k));
  for (int i = 0; i < f; ++i) {
    for (VehicleId v = 0; v < k; ++v) {
      cost[static_cast<size_t>(i) * static_cast<size_t>(k) + static_cast<size_t>(v)] =
          inst.cost(v, inst.depot_vertex(v), free[static_cast<size_t>(i)]);
    }
  }
  const auto sink = solve_unit_transportation(cost, f, k, speed_quotas(inst, f));

  std::vector<std::vector<TargetId>> members(static_cast<size_t>(k));
  for (VehicleId v = 0; v < k; ++v) members[static_cast<size_t>(v)] = inst.vehicle(v).required;
  for (int i = 0; i < f; ++i) members[static_cast<size_t>(sink[static_cast<size_t>(i)])].push_back(free[static_cast<size_t>(i)]);

  Solution sol;
  sol.tours.reserve(static_cast<size_t>(k));
  for (VehicleId v = 0; v < k; ++v) {
    sol.tours.push_back(optimizer(inst, nn_construct(inst, v, members[static_cast<size_t>(v)])));
  }
  sol.refresh_objective();
  return sol;
}

Solution construct(const Instance& inst, ConstructionMethod method, const TourOptimizer& optimizer) {
  switch (method) {
    case ConstructionMethod::RecursiveInsertion:
      return recursive_insertion(inst, optimizer);
    case ConstructionMethod::BalancedAssignment:
      return balanced_assignment_construct(inst, optimizer);
  }
  throw InvalidInput("unknown construction method");
}

const char* to_string(ConstructionMethod method) {
  switch (method) {
    case ConstructionMethod::RecursiveInsertion:
      return "recursive";
    case ConstructionMethod::BalancedAssignment:
      return "balance";
  }
  return "?";
}

}  // namespace mmtsp
