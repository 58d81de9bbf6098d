#include "mmtsp/instgen.hpp"

#include <algorithm>
#include <numeric>

#include "mmtsp/error.hpp"

namespace mmtsp {

int required_per_vehicle(HeterogeneityMode mode) {
  switch (mode) {
    case HeterogeneityMode::ZeroTargets:
      return 0;
    case HeterogeneityMode::ThreeTargets:
      return 3;
    case HeterogeneityMode::FiveTargets:
      return 5;
  }
  return 0;
}

const char* suffix(HeterogeneityMode mode) {
  switch (mode) {
    case HeterogeneityMode::ZeroTargets:
      return "_0";
    case HeterogeneityMode::ThreeTargets:
      return "_3";
    case HeterogeneityMode::FiveTargets:
      return "_5";
  }
  return "";
}

std::vector<double> assign_speeds(int k, Rng& rng) {
  if (k < 0) throw InvalidInput("assign_speeds: negative vehicle count");
  std::vector<double> out(static_cast<size_t>(k));
  for (double& s : out) s = kSpeedSet[rng.index(std::size(kSpeedSet))];
  return out;
}

std::vector<int> pick_indices(int pool_size, HeterogeneityMode mode) {
  const int L = pool_size;
  const int need = required_per_vehicle(mode);
  if (L < need) throw InvalidInput("pool of " + std::to_string(L) + " targets is too small");
  if (need == 0) return {};

  std::vector<int> picks;
  if (mode == HeterogeneityMode::ThreeTargets) {
    picks = {0, L - 1};
  } else {
    picks = {0, 1, L - 2, L - 1};
  }
  // Lower median, stepped toward the center if an extreme pick holds it.
  int med = (L - 1) / 2;
  const double center = (L - 1) / 2.0;
  for (int step = 0; std::find(picks.begin(), picks.end(), med) != picks.end(); ++step) {
    med = med < center ? med + 1 : med - 1;
    if (step > L) throw Error("pick_indices: no free median slot");
  }
  picks.push_back(med);
  std::sort(picks.begin(), picks.end());
  return picks;
}

Instance assign_required_targets(const Instance& inst, HeterogeneityMode mode) {
  const int k = inst.num_vehicles();
  const int n = inst.num_targets();
  const int need = required_per_vehicle(mode);
  if (n < need * k) {
    throw InvalidInput("instance " + inst.name() + ": " + std::to_string(n) + " targets cannot supply " +
                       std::to_string(need) + " required targets to each of " + std::to_string(k) + " vehicles");
  }

  std::vector<VehicleSpec> vehicles(inst.vehicles().begin(), inst.vehicles().end());
  std::vector<TargetId> pool(static_cast<size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (VehicleId v = 0; v < k; ++v) {
    auto& veh = vehicles[static_cast<size_t>(v)];
    veh.required.clear();
    if (need == 0) continue;
    const VertexId depot = inst.depot_vertex(v);
    std::vector<std::pair<double, TargetId>> sorted;
    sorted.reserve(pool.size());
    for (TargetId t : pool) sorted.emplace_back(inst.distance(depot, t), t);
    std::sort(sorted.begin(), sorted.end());
    for (int idx : pick_indices(static_cast<int>(sorted.size()), mode)) {
      veh.required.push_back(sorted[static_cast<size_t>(idx)].second);
    }
    std::sort(veh.required.begin(), veh.required.end());
    std::erase_if(pool, [&](TargetId t) {
      return std::binary_search(veh.required.begin(), veh.required.end(), t);
    });
  }
  return Instance(inst.name(), {inst.targets().begin(), inst.targets().end()}, std::move(vehicles));
}

BaseInstance base_from_instance(const Instance& inst) {
  BaseInstance b{inst.name(), {inst.targets().begin(), inst.targets().end()}, {}};
  for (const auto& v : inst.vehicles()) b.depots.push_back(v.depot);
  return b;
}

Suite generate_suite(std::span<const BaseInstance> bases, std::uint64_t seed) {
  Suite suite;
  for (const BaseInstance& base : bases) {
    try {
      const int k = static_cast<int>(base.depots.size());
      Rng rng(derive_seed(seed, base.name));
      const auto speeds = assign_speeds(k, rng);
      std::vector<VehicleSpec> vehicles;
      for (int v = 0; v < k; ++v) vehicles.push_back({base.depots[static_cast<size_t>(v)], speeds[static_cast<size_t>(v)], {}});
      const Instance plain(base.name, base.targets, vehicles);

      std::vector<Instance> variants;
      for (auto mode : {HeterogeneityMode::ZeroTargets, HeterogeneityMode::ThreeTargets,
                        HeterogeneityMode::FiveTargets}) {
        if (mode == HeterogeneityMode::FiveTargets && plain.num_targets() < 5 * k) continue;
        const Instance withR = assign_required_targets(plain, mode);
        variants.emplace_back(base.name + suffix(mode), std::vector<Point>(withR.targets().begin(), withR.targets().end()),
                              std::vector<VehicleSpec>(withR.vehicles().begin(), withR.vehicles().end()));
      }
      for (auto& v : variants) suite.instances.push_back(std::move(v));
    } catch (const Error& e) {
      suite.errors.push_back({base.name, e.what()});
    }
  }
  return suite;
}

BaseInstance random_base_instance(std::string name, int targets, int vehicles, Rng& rng, double extent) {
  if (targets < 0 || vehicles < 1) throw InvalidInput("random_base_instance: bad sizes");
  BaseInstance b;
  b.name = std::move(name);
  for (int i = 0; i < targets; ++i) b.targets.push_back({rng.uniform01() * extent, rng.uniform01() * extent});
  for (int i = 0; i < vehicles; ++i) b.depots.push_back({rng.uniform01() * extent, rng.uniform01() * extent});
  return b;
}

}  // namespace mmtsp
