#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mmtsp/model.hpp"
#include "mmtsp/rng.hpp"

namespace mmtsp {

enum class HeterogeneityMode { ZeroTargets, ThreeTargets, FiveTargets };

inline constexpr double kSpeedSet[] = {1.0, 1.25, 1.5, 1.75, 2.0};

// 0, 3 or 5.
int required_per_vehicle(HeterogeneityMode mode);

// k independent uniform draws from kSpeedSet. Throws InvalidInput if k < 0.
std::vector<double> assign_speeds(int k, Rng& rng);

// Copy of `inst` with R_i rebuilt for the mode. Vehicles in index order
// take picks from the pool of still unassigned targets, sorted by distance
// to their depot (ties by target id). Throws InvalidInput naming the
// instance when |T| < mode size * k.
Instance assign_required_targets(const Instance& inst, HeterogeneityMode mode);

// Pool indices picked for a sorted pool of size L.
std::vector<int> pick_indices(int pool_size, HeterogeneityMode mode);

// Coordinates only; speeds and R_i come from generation.
struct BaseInstance {
  std::string name;
  std::vector<Point> targets;
  std::vector<Point> depots;
};

BaseInstance base_from_instance(const Instance& inst);

struct SuiteError {
  std::string base;
  std::string message;
};

struct Suite {
  std::vector<Instance> instances;
  std::vector<SuiteError> errors;
};

// Per base: <name>_0 and <name>_3, plus <name>_5 when |T| >= 5k. All
// variants of a base share one speed draw from a stream derived from
// (seed, base name). A base that fails is recorded in `errors` and the
// suite continues.
Suite generate_suite(std::span<const BaseInstance> bases, std::uint64_t seed);

// Uniform points in [0, extent]^2.
BaseInstance random_base_instance(std::string name, int targets, int vehicles, Rng& rng, double extent = 100.0);

const char* suffix(HeterogeneityMode mode);

}  // namespace mmtsp
