#include "groups.hpp"

#include <algorithm>
#include <limits>

#include "mmtsp/error.hpp"

namespace mmtsp {

namespace detail {

std::vector<int> group_positions(const Instance& inst, const Tour& tour, std::span<const TargetId> group) {
  if (group.empty()) throw InvalidMove("empty group");
  std::vector<int> pos;
  pos.reserve(group.size());
  for (TargetId t : group) {
    auto it = std::find(tour.order.begin(), tour.order.end(), t);
    if (it == tour.order.end()) {
      throw InvalidMove("target " + std::to_string(t) + " is not on the tour of vehicle " +
                        std::to_string(tour.vehicle));
    }
    pos.push_back(static_cast<int>(it - tour.order.begin()));
  }
  std::sort(pos.begin(), pos.end());
  if (std::adjacent_find(pos.begin(), pos.end()) != pos.end()) throw InvalidMove("group repeats a target");
  for (size_t k = 1; k < pos.size(); ++k) {
    for (int p = pos[k - 1] + 1; p < pos[k]; ++p) {
      if (inst.required_owner(tour.order[static_cast<size_t>(p)]) != tour.vehicle) {
        throw InvalidMove("group is not consecutive: target " +
                          std::to_string(tour.order[static_cast<size_t>(p)]) + " separates its members");
      }
    }
  }
  return pos;
}

std::vector<TargetId> members_at(const Tour& tour, std::span<const int> positions) {
  std::vector<TargetId> out;
  out.reserve(positions.size());
  for (int p : positions) out.push_back(tour.order[static_cast<size_t>(p)]);
  return out;
}

double window_savings(const Instance& inst, const Tour& tour, std::span<const int> positions) {
  const VehicleId v = tour.vehicle;
  const int first = positions.front(), last = positions.back();
  // Walk the span removing members in tour order; `prev` is the vertex that
  // currently precedes the next member.
  VertexId prev = tour_vertex(inst, tour, first);
  double total = 0.0;
  size_t k = 0;
  for (int p = first; p <= last; ++p) {
    const VertexId u = tour.order[static_cast<size_t>(p)];
    if (k < positions.size() && positions[k] == p) {
      const VertexId next = tour_vertex(inst, tour, p + 2);
      total += inst.cost(v, prev, u) + inst.cost(v, u, next) - inst.cost(v, prev, next);
      ++k;
    } else {
      prev = u;
    }
  }
  return total;
}

double window_removal_ratio(const Instance& inst, const Tour& tour, std::span<const int> positions) {
  const int first = positions.front(), last = positions.back();
  const VertexId head = tour.order[static_cast<size_t>(first)];
  const VertexId tail = tour.order[static_cast<size_t>(last)];
  const double legs = inst.distance(tour_vertex(inst, tour, first), head) +
                      inst.distance(tail, tour_vertex(inst, tour, last + 2));
  double internal = 0.0;
  for (int p = first + 1; p <= last; ++p) {
    internal += inst.distance(tour.order[static_cast<size_t>(p - 1)], tour.order[static_cast<size_t>(p)]);
  }
  if (internal <= 0.0) return std::numeric_limits<double>::infinity();
  return legs / internal;
}

void remove_positions(Tour& tour, std::span<const int> positions, double savings_value) {
  for (auto it = positions.rbegin(); it != positions.rend(); ++it) {
    tour.order.erase(tour.order.begin() + *it);
  }
  tour.cost -= savings_value;
}

GroupInsertion cheapest_group_insertion(const Instance& inst, const Tour& tour,
                                        std::span<const TargetId> group) {
  const VehicleId v = tour.vehicle;
  double internal = 0.0;
  for (size_t q = 1; q < group.size(); ++q) internal += inst.cost(v, group[q - 1], group[q]);
  const TargetId head = group.front(), tail = group.back();

  GroupInsertion best{std::numeric_limits<double>::infinity(), 0, false};
  for (int p = 0; p <= tour.size(); ++p) {
    const VertexId a = tour_vertex(inst, tour, p);
    const VertexId b = tour_vertex(inst, tour, p + 1);
    const double base = inst.cost(v, a, b);
    const double fwd = inst.cost(v, a, head) + internal + inst.cost(v, tail, b) - base;
    const double rev = inst.cost(v, a, tail) + internal + inst.cost(v, head, b) - base;
    if (fwd < best.cost) best = {fwd, p, false};
    if (rev < best.cost) best = {rev, p, true};
  }
  return best;
}

void apply_group_insertion(Tour& tour, std::span<const TargetId> group, const GroupInsertion& ins) {
  const auto at = tour.order.begin() + ins.position;
  if (ins.reversed) {
    tour.order.insert(at, group.rbegin(), group.rend());
  } else {
    tour.order.insert(at, group.begin(), group.end());
  }
  tour.cost += ins.cost;
}

double recursive_group_insert(const Instance& inst, Tour& tour, std::span<const TargetId> group) {
  double total = 0.0;
  for (TargetId t : group) {
    const Insertion ins = cheapest_insertion(inst, tour, t);
    apply_insertion(tour, t, ins);
    total += ins.cost;
  }
  return total;
}

std::vector<std::vector<int>> enumerate_windows(const Instance& inst, const Tour& tour, int size,
                                                const std::vector<char>& excluded) {
  std::vector<int> eligible;
  // breaks[k]: something other than an R_i target sits between eligible[k]
  // and eligible[k + 1]
  std::vector<char> breaks;
  bool pending_break = false;
  for (int p = 0; p < tour.size(); ++p) {
    const TargetId t = tour.order[static_cast<size_t>(p)];
    const bool required = inst.required_owner(t) == tour.vehicle;
    const bool skip = !excluded.empty() && excluded[static_cast<size_t>(t)];
    if (required) continue;
    if (skip) {
      pending_break = true;
      continue;
    }
    if (!eligible.empty()) breaks.push_back(pending_break ? 1 : 0);
    pending_break = false;
    eligible.push_back(p);
  }

  std::vector<std::vector<int>> windows;
  if (size < 1 || static_cast<int>(eligible.size()) < size) return windows;
  for (size_t a = 0; a + static_cast<size_t>(size) <= eligible.size(); ++a) {
    bool ok = true;
    for (size_t k = a; k + 1 < a + static_cast<size_t>(size); ++k) {
      if (breaks[k]) {
        ok = false;
        break;
      }
    }
    if (ok) windows.emplace_back(eligible.begin() + static_cast<std::ptrdiff_t>(a),
                                 eligible.begin() + static_cast<std::ptrdiff_t>(a) + size);
  }
  return windows;
}

int removable_count(const Instance& inst, const Tour& tour) {
  int n = 0;
  for (TargetId t : tour.order) n += inst.required_owner(t) != tour.vehicle;
  return n;
}

}  // namespace detail

namespace {

void check_disjoint(const Tour& tour, std::span<const TargetId> group) {
  if (group.empty()) throw InvalidMove("empty group");
  for (TargetId t : group) {
    if (std::find(tour.order.begin(), tour.order.end(), t) != tour.order.end()) {
      throw InvalidMove("target " + std::to_string(t) + " is already on the tour of vehicle " +
                        std::to_string(tour.vehicle));
    }
  }
}

}  // namespace

double savings_at(const Instance& inst, const Tour& tour, int position) {
  const VehicleId v = tour.vehicle;
  const VertexId prev = tour_vertex(inst, tour, position);
  const VertexId u = tour.order[static_cast<size_t>(position)];
  const VertexId next = tour_vertex(inst, tour, position + 2);
  return inst.cost(v, prev, u) + inst.cost(v, u, next) - inst.cost(v, prev, next);
}

double savings(const Instance& inst, const Tour& tour, TargetId t) {
  auto it = std::find(tour.order.begin(), tour.order.end(), t);
  if (it == tour.order.end()) {
    throw InvalidMove("target " + std::to_string(t) + " is not on the tour of vehicle " +
                      std::to_string(tour.vehicle));
  }
  return savings_at(inst, tour, static_cast<int>(it - tour.order.begin()));
}

double group_savings(const Instance& inst, const Tour& tour, std::span<const TargetId> group) {
  const auto pos = detail::group_positions(inst, tour, group);
  return detail::window_savings(inst, tour, pos);
}

GroupInsertion group_insertion_cost(const Instance& inst, const Tour& tour, std::span<const TargetId> group) {
  check_disjoint(tour, group);
  return detail::cheapest_group_insertion(inst, tour, group);
}

double removal_ratio(const Instance& inst, const Tour& tour, std::span<const TargetId> group) {
  if (group.size() < 2) throw InvalidMove("removal ratio needs a group of at least two targets");
  const auto pos = detail::group_positions(inst, tour, group);
  return detail::window_removal_ratio(inst, tour, pos);
}

double recursive_group_insertion_cost(const Instance& inst, const Tour& tour,
                                      std::span<const TargetId> group) {
  check_disjoint(tour, group);
  Tour scratch = tour;
  return detail::recursive_group_insert(inst, scratch, group);
}

}  // namespace mmtsp
