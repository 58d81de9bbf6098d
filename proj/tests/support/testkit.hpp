#pragma once

// Shared fixtures for the unit and acceptance tests. Everything that serves
// as an oracle here works from raw coordinates and does not call into the
// library's cost code.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "mmtsp/model.hpp"
#include "mmtsp/rng.hpp"

namespace testkit {

using mmtsp::Instance;
using mmtsp::Point;
using mmtsp::Rng;
using mmtsp::Solution;
using mmtsp::TargetId;
using mmtsp::Tour;
using mmtsp::VehicleId;
using mmtsp::VehicleSpec;

inline constexpr double kSpeeds[] = {1.0, 1.25, 1.5, 1.75, 2.0};

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform01(); }

inline Point random_point(Rng& rng, double extent = 100.0) {
  return {uniform(rng, 0.0, extent), uniform(rng, 0.0, extent)};
}

// n targets, k vehicles, `required` R_i members per vehicle picked at random.
inline Instance random_instance(Rng& rng, int n, int k, int required = 0, bool random_speeds = true,
                                double extent = 100.0, std::string name = "rand") {
  std::vector<Point> targets;
  for (int i = 0; i < n; ++i) targets.push_back(random_point(rng, extent));
  std::vector<TargetId> ids(static_cast<size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  for (size_t i = ids.size(); i > 1; --i) std::swap(ids[i - 1], ids[rng.index(i)]);
  std::vector<VehicleSpec> vehicles;
  size_t next = 0;
  for (int v = 0; v < k; ++v) {
    VehicleSpec spec{random_point(rng, extent), random_speeds ? kSpeeds[rng.index(5)] : 1.0, {}};
    for (int r = 0; r < required && next < ids.size(); ++r) spec.required.push_back(ids[next++]);
    vehicles.push_back(std::move(spec));
  }
  return Instance(std::move(name), std::move(targets), std::move(vehicles));
}

// Oracle cost of a closed walk depot -> order -> depot, from coordinates.
inline double raw_tour_cost(const Instance& inst, VehicleId v, std::span<const TargetId> order) {
  const VehicleSpec& veh = inst.vehicle(v);
  const auto pt = [&](TargetId t) { return inst.targets()[static_cast<size_t>(t)]; };
  const auto len = [](Point a, Point b) { return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y)); };
  if (order.empty()) return 0.0;
  double d = len(veh.depot, pt(order.front())) + len(pt(order.back()), veh.depot);
  for (size_t i = 1; i < order.size(); ++i) d += len(pt(order[i - 1]), pt(order[i]));
  return d / veh.speed;
}

inline double raw_objective(const Instance& inst, const Solution& sol) {
  double worst = 0.0;
  for (const Tour& t : sol.tours) worst = std::max(worst, raw_tour_cost(inst, t.vehicle, t.order));
  return worst;
}

// Random partition respecting R_i, random visiting order, exact costs.
inline Solution random_solution(const Instance& inst, Rng& rng) {
  const int k = inst.num_vehicles();
  std::vector<std::vector<TargetId>> orders(static_cast<size_t>(k));
  for (TargetId t = 0; t < inst.num_targets(); ++t) {
    const VehicleId owner = inst.required_owner(t);
    const VehicleId v = owner == mmtsp::kNoVehicle ? static_cast<VehicleId>(rng.index(static_cast<uint64_t>(k))) : owner;
    orders[static_cast<size_t>(v)].push_back(t);
  }
  Solution sol;
  for (VehicleId v = 0; v < k; ++v) {
    auto& o = orders[static_cast<size_t>(v)];
    for (size_t i = o.size(); i > 1; --i) std::swap(o[i - 1], o[rng.index(i)]);
    sol.tours.push_back({v, o, raw_tour_cost(inst, v, o)});
  }
  sol.refresh_objective();
  return sol;
}

// Exhaustive single-vehicle TSP by permutation enumeration.
inline double brute_force_tsp(const Instance& inst, VehicleId v, std::vector<TargetId> targets) {
  std::sort(targets.begin(), targets.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, raw_tour_cost(inst, v, targets));
  } while (std::next_permutation(targets.begin(), targets.end()));
  return targets.empty() ? 0.0 : best;
}

inline bool rel_close(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline Instance make_instance(std::vector<Point> targets, std::vector<VehicleSpec> vehicles,
                              std::string name = "hand") {
  return Instance(std::move(name), std::move(targets), std::move(vehicles));
}

}  // namespace testkit
