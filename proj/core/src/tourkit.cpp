#include "mmtsp/tourkit.hpp"

#include <algorithm>
#include <limits>

#include "mmtsp/error.hpp"

namespace mmtsp {

Tour nn_construct(const Instance& inst, VehicleId vehicle, std::span<const TargetId> targets) {
  std::vector<TargetId> pool(targets.begin(), targets.end());
  std::sort(pool.begin(), pool.end());
  Tour tour{vehicle, {}, 0.0};
  tour.order.reserve(pool.size());
  std::vector<char> used(pool.size(), 0);
  VertexId here = inst.depot_vertex(vehicle);
  for (size_t step = 0; step < pool.size(); ++step) {
    size_t best = pool.size();
    double best_cost = std::numeric_limits<double>::infinity();
    for (size_t c = 0; c < pool.size(); ++c) {
      if (used[c]) continue;
      const double d = inst.cost(vehicle, here, pool[c]);
      if (d < best_cost) {
        best_cost = d;
        best = c;
      }
    }
    used[best] = 1;
    tour.order.push_back(pool[best]);
    here = pool[best];
  }
  tour.cost = tour_cost(inst, vehicle, tour.order);
  return tour;
}

bool two_opt_pass(const Instance& inst, Tour& tour) {
  const int m = tour.size();
  if (m < 3) return false;
  const VehicleId v = tour.vehicle;
  auto at = [&](int slot) { return tour_vertex(inst, tour, slot); };

  bool any = false;
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < m - 1; ++i) {
      for (int j = i + 2; j <= m; ++j) {
        if (i == 0 && j == m) continue;  // reversing the whole walk is a no-op
        const VertexId a = at(i), b = at(i + 1), c = at(j), d = at(j + 1);
        const double delta =
            inst.cost(v, a, c) + inst.cost(v, b, d) - inst.cost(v, a, b) - inst.cost(v, c, d);
        if (delta < -kImprovementEpsilon) {
          std::reverse(tour.order.begin() + i, tour.order.begin() + j);
          tour.cost += delta;
          improved = any = true;
        }
      }
    }
  }
  return any;
}

namespace {

// One sweep of segment relocation; applies the first improving move found
// for each start position.
bool or_opt_sweep(const Instance& inst, Tour& tour, int max_segment) {
  const VehicleId v = tour.vehicle;
  bool any = false;
  for (int len = 1; len <= max_segment; ++len) {
    for (int p = 0; p + len <= tour.size(); ++p) {
      const int m = tour.size();
      if (m <= len) break;
      auto at = [&](int slot) { return tour_vertex(inst, tour, slot); };
      // segment occupies slots p+1 .. p+len
      const VertexId prev = at(p), first = at(p + 1), last = at(p + len), next = at(p + len + 1);
      const double gain =
          inst.cost(v, prev, first) + inst.cost(v, last, next) - inst.cost(v, prev, next);
      if (gain <= kImprovementEpsilon) continue;

      double best_delta = -kImprovementEpsilon;
      int best_edge = -1;
      bool best_reversed = false;
      for (int q = 0; q <= m; ++q) {
        if (q >= p && q <= p + len) continue;  // edges touching the segment
        const VertexId x = at(q), y = at(q + 1);
        const double base = inst.cost(v, x, y);
        const double fwd = inst.cost(v, x, first) + inst.cost(v, last, y) - base - gain;
        const double rev = inst.cost(v, x, last) + inst.cost(v, first, y) - base - gain;
        if (fwd < best_delta) {
          best_delta = fwd;
          best_edge = q;
          best_reversed = false;
        }
        if (rev < best_delta) {
          best_delta = rev;
          best_edge = q;
          best_reversed = true;
        }
      }
      if (best_edge < 0) continue;

      std::vector<TargetId> segment(tour.order.begin() + p, tour.order.begin() + p + len);
      if (best_reversed) std::reverse(segment.begin(), segment.end());
      tour.order.erase(tour.order.begin() + p, tour.order.begin() + p + len);
      const int insert_at = best_edge < p ? best_edge : best_edge - len;
      tour.order.insert(tour.order.begin() + insert_at, segment.begin(), segment.end());
      tour.cost += best_delta;
      any = true;
    }
  }
  return any;
}

}  // namespace

bool or_opt_pass(const Instance& inst, Tour& tour, int max_segment) {
  if (tour.size() < 2) return false;
  bool any = false;
  while (or_opt_sweep(inst, tour, max_segment)) any = true;
  return any;
}

Tour optimize_tour(const Instance& inst, Tour tour, const TourOptimizerBudget& budget) {
  tour.cost = tour_cost(inst, tour.vehicle, tour.order);
  if (tour.size() <= 2) return tour;
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const int max_passes = std::max(1, budget.max_passes);
  for (int pass = 0; pass < max_passes; ++pass) {
    const bool a = two_opt_pass(inst, tour);
    const bool b = or_opt_pass(inst, tour);
    if (!a && !b) break;
    if (budget.time_limit && Clock::now() - start >= *budget.time_limit) break;
  }
  tour.cost = tour_cost(inst, tour.vehicle, tour.order);
  return tour;
}

Tour exact_tsp_held_karp(const Instance& inst, VehicleId vehicle, std::span<const TargetId> targets) {
  const int n = static_cast<int>(targets.size());
  if (n > kHeldKarpMaxTargets) {
    throw CapacityError("exact_tsp_held_karp: " + std::to_string(n) + " targets exceeds cap of " +
                        std::to_string(kHeldKarpMaxTargets));
  }
  if (n == 0) return Tour{vehicle, {}, 0.0};

  const VertexId depot = inst.depot_vertex(vehicle);
  const size_t full = (size_t{1} << n);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(full * static_cast<size_t>(n), kInf);
  std::vector<signed char> parent(full * static_cast<size_t>(n), -1);
  auto idx = [n](size_t mask, int j) { return mask * static_cast<size_t>(n) + static_cast<size_t>(j); };

  for (int j = 0; j < n; ++j) dp[idx(size_t{1} << j, j)] = inst.cost(vehicle, depot, targets[j]);
  for (size_t mask = 1; mask < full; ++mask) {
    for (int j = 0; j < n; ++j) {
      if (!(mask & (size_t{1} << j))) continue;
      const double here = dp[idx(mask, j)];
      if (here == kInf) continue;
      for (int nx = 0; nx < n; ++nx) {
        if (mask & (size_t{1} << nx)) continue;
        const size_t next_mask = mask | (size_t{1} << nx);
        const double cand = here + inst.cost(vehicle, targets[j], targets[nx]);
        if (cand < dp[idx(next_mask, nx)]) {
          dp[idx(next_mask, nx)] = cand;
          parent[idx(next_mask, nx)] = static_cast<signed char>(j);
        }
      }
    }
  }

  double best = kInf;
  int last = -1;
  for (int j = 0; j < n; ++j) {
    const double c = dp[idx(full - 1, j)] + inst.cost(vehicle, targets[j], depot);
    if (c < best) {
      best = c;
      last = j;
    }
  }
  std::vector<TargetId> order;
  order.reserve(static_cast<size_t>(n));
  size_t mask = full - 1;
  while (last >= 0) {
    order.push_back(targets[last]);
    const int prev = parent[idx(mask, last)];
    mask &= ~(size_t{1} << last);
    last = prev;
  }
  std::reverse(order.begin(), order.end());
  return make_tour(inst, vehicle, std::move(order));
}

Tour TourOptimizer::operator()(const Instance& inst, Tour tour) const {
  if (!external_) return optimize_tour(inst, std::move(tour), budget_);
  tour.cost = tour_cost(inst, tour.vehicle, tour.order);
  std::vector<TargetId> proposal = external_(inst, tour.vehicle, tour.order);
  std::vector<TargetId> a = proposal, b = tour.order;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return optimize_tour(inst, std::move(tour), budget_);
  Tour candidate = make_tour(inst, tour.vehicle, std::move(proposal));
  return candidate.cost < tour.cost ? candidate : tour;
}

}  // namespace mmtsp
