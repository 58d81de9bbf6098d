#pragma once

// Position-based group helpers shared by the multi-target neighborhoods.

#include <span>
#include <vector>

#include "mmtsp/neighborhoods.hpp"

namespace mmtsp::detail {

// Increasing order positions of the group's members; throws InvalidMove if
// a member is missing or the span between them holds anything other than
// R_i targets of the tour's vehicle.
std::vector<int> group_positions(const Instance& inst, const Tour& tour, std::span<const TargetId> group);

std::vector<TargetId> members_at(const Tour& tour, std::span<const int> positions);

// Sequential single-target savings over the members at `positions`.
double window_savings(const Instance& inst, const Tour& tour, std::span<const int> positions);

double window_removal_ratio(const Instance& inst, const Tour& tour, std::span<const int> positions);

// Removes the members and subtracts `savings_value` from the cached cost.
void remove_positions(Tour& tour, std::span<const int> positions, double savings_value);

GroupInsertion cheapest_group_insertion(const Instance& inst, const Tour& tour,
                                        std::span<const TargetId> group);
void apply_group_insertion(Tour& tour, std::span<const TargetId> group, const GroupInsertion& ins);

// Inserts members one after the other at their cheapest slots; the cached
// cost grows by the accumulated insertion cost.
double recursive_group_insert(const Instance& inst, Tour& tour, std::span<const TargetId> group);

// All windows of `size` consecutive eligible positions. Eligible: not in the
// vehicle's R_i and not flagged in `excluded` (indexed by target id). A
// window may skip over R_i targets but not over excluded ones. Windows never
// wrap across the depot.
std::vector<std::vector<int>> enumerate_windows(const Instance& inst, const Tour& tour, int size,
                                                const std::vector<char>& excluded);

int removable_count(const Instance& inst, const Tour& tour);

}  // namespace mmtsp::detail
