#include "mmtsp/oracle.hpp"

#include <limits>

#include "mmtsp/error.hpp"
#include "mmtsp/tourkit.hpp"

namespace mmtsp {

OracleResult brute_force_minmax(const Instance& inst, const OracleLimit& limit) {
  const int k = inst.num_vehicles();
  std::vector<TargetId> free;
  for (TargetId t = 0; t < inst.num_targets(); ++t) {
    if (inst.is_free(t)) free.push_back(t);
  }
  const int f = static_cast<int>(free.size());
  if (f > limit.max_free_targets) {
    throw CapacityError("oracle: " + std::to_string(f) + " free targets exceed the limit of " +
                        std::to_string(limit.max_free_targets));
  }
  const int cap = std::min(limit.max_per_vehicle, kHeldKarpMaxTargets);
  for (VehicleId v = 0; v < k; ++v) {
    const int worst = static_cast<int>(inst.vehicle(v).required.size()) + f;
    if (worst > cap) {
      throw CapacityError("oracle: vehicle " + std::to_string(v) + " could hold " + std::to_string(worst) +
                          " targets, limit " + std::to_string(cap));
    }
  }

  // Exact tour cost of vehicle v serving R_v plus the free subset `mask`,
  // computed on first use.
  const size_t subsets = size_t{1} << f;
  constexpr double kUnset = -1.0;
  std::vector<double> memo(static_cast<size_t>(k) * subsets, kUnset);
  const auto members = [&](VehicleId v, size_t mask) {
    std::vector<TargetId> set = inst.vehicle(v).required;
    for (int i = 0; i < f; ++i) {
      if (mask >> i & 1U) set.push_back(free[static_cast<size_t>(i)]);
    }
    return set;
  };
  const auto cost_of = [&](VehicleId v, size_t mask) {
    double& slot = memo[static_cast<size_t>(v) * subsets + mask];
    if (slot == kUnset) slot = exact_tsp_held_karp(inst, v, members(v, mask)).cost;
    return slot;
  };

  std::vector<int> digit(static_cast<size_t>(f), 0);
  std::vector<int> best_digit = digit;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t count = 0;
  std::vector<size_t> mask(static_cast<size_t>(k));
  while (true) {
    ++count;
    std::fill(mask.begin(), mask.end(), 0);
    for (int i = 0; i < f; ++i) mask[static_cast<size_t>(digit[static_cast<size_t>(i)])] |= size_t{1} << i;
    double worst = 0.0;
    for (VehicleId v = 0; v < k && worst < best; ++v) worst = std::max(worst, cost_of(v, mask[static_cast<size_t>(v)]));
    if (worst < best) {
      best = worst;
      best_digit = digit;
    }
    int i = 0;
    while (i < f && ++digit[static_cast<size_t>(i)] == k) digit[static_cast<size_t>(i++)] = 0;
    if (i == f) break;
  }

  std::fill(mask.begin(), mask.end(), 0);
  for (int i = 0; i < f; ++i) mask[static_cast<size_t>(best_digit[static_cast<size_t>(i)])] |= size_t{1} << i;
  OracleResult res;
  for (VehicleId v = 0; v < k; ++v) {
    res.solution.tours.push_back(exact_tsp_held_karp(inst, v, members(v, mask[static_cast<size_t>(v)])));
  }
  res.solution.refresh_objective();
  res.objective = res.solution.objective;
  res.assignments = count;
  return res;
}

}  // namespace mmtsp
