#pragma once

#include <cstdint>

#include "mmtsp/model.hpp"

namespace mmtsp {

struct OracleLimit {
  int max_free_targets = 10;
  int max_per_vehicle = 13;
};

struct OracleResult {
  Solution solution;
  double objective = 0.0;
  std::uint64_t assignments = 0;  // assignments enumerated
};

// Certified min-max optimum by enumerating every assignment of free targets
// (mixed-radix counter, first minimum kept) with an exact TSP per vehicle.
// Throws CapacityError when the free-target count exceeds the limit or some
// vehicle could end up with more than max_per_vehicle targets.
OracleResult brute_force_minmax(const Instance& inst, const OracleLimit& limit = {});

}  // namespace mmtsp
