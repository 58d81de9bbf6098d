#pragma once

#include <vector>

namespace mmtsp {

// Balanced transportation problem: every source ships exactly one unit and
// sink j receives exactly capacity[j] units; sum(capacity) must equal the
// number of sources. Solved exactly by successive shortest augmenting paths
// (Dijkstra with Johnson potentials). cost is row-major sources x sinks.
// Returns the sink of every source.
std::vector<int> solve_unit_transportation(const std::vector<double>& cost, int sources, int sinks,
                                           const std::vector<int>& capacity);

}  // namespace mmtsp
