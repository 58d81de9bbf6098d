#include "mmtsp/transport.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "mmtsp/error.hpp"

namespace mmtsp {

namespace {

struct Arc {
  int to;
  int rev;
  int cap;
  double cost;
};

class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : adj_(static_cast<size_t>(nodes)) {}

  void add_arc(int from, int to, int cap, double cost) {
    adj_[static_cast<size_t>(from)].push_back({to, static_cast<int>(adj_[static_cast<size_t>(to)].size()), cap, cost});
    adj_[static_cast<size_t>(to)].push_back({from, static_cast<int>(adj_[static_cast<size_t>(from)].size()) - 1, 0, -cost});
  }

  // Pushes `amount` units from s to t along successive shortest paths.
  // Returns the units actually shipped.
  int min_cost_flow(int s, int t, int amount) {
    const auto n = adj_.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> potential(n, 0.0), dist(n);
    std::vector<int> prev_node(n), prev_arc(n);
    int shipped = 0;
    while (shipped < amount) {
      std::fill(dist.begin(), dist.end(), kInf);
      dist[static_cast<size_t>(s)] = 0.0;
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
      heap.push({0.0, s});
      while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[static_cast<size_t>(u)]) continue;
        const auto& arcs = adj_[static_cast<size_t>(u)];
        for (size_t e = 0; e < arcs.size(); ++e) {
          const Arc& a = arcs[e];
          if (a.cap <= 0) continue;
          const double reduced = std::max(
              0.0, a.cost + potential[static_cast<size_t>(u)] - potential[static_cast<size_t>(a.to)]);
          const double nd = d + reduced;
          if (nd < dist[static_cast<size_t>(a.to)]) {
            dist[static_cast<size_t>(a.to)] = nd;
            prev_node[static_cast<size_t>(a.to)] = u;
            prev_arc[static_cast<size_t>(a.to)] = static_cast<int>(e);
            heap.push({nd, a.to});
          }
        }
      }
      if (dist[static_cast<size_t>(t)] == kInf) break;
      for (size_t v = 0; v < n; ++v) {
        if (dist[v] < kInf) potential[v] += dist[v];
      }
      int push = amount - shipped;
      for (int v = t; v != s; v = prev_node[static_cast<size_t>(v)]) {
        const Arc& a = adj_[static_cast<size_t>(prev_node[static_cast<size_t>(v)])][static_cast<size_t>(prev_arc[static_cast<size_t>(v)])];
        push = std::min(push, a.cap);
      }
      for (int v = t; v != s; v = prev_node[static_cast<size_t>(v)]) {
        Arc& a = adj_[static_cast<size_t>(prev_node[static_cast<size_t>(v)])][static_cast<size_t>(prev_arc[static_cast<size_t>(v)])];
        a.cap -= push;
        adj_[static_cast<size_t>(a.to)][static_cast<size_t>(a.rev)].cap += push;
      }
      shipped += push;
    }
    return shipped;
  }

  const std::vector<Arc>& arcs(int node) const { return adj_[static_cast<size_t>(node)]; }

 private:
  std::vector<std::vector<Arc>> adj_;
};

}  // namespace

std::vector<int> solve_unit_transportation(const std::vector<double>& cost, int sources, int sinks,
                                           const std::vector<int>& capacity) {
  if (sources < 0 || sinks < 0 || cost.size() != static_cast<size_t>(sources) * static_cast<size_t>(sinks) ||
      capacity.size() != static_cast<size_t>(sinks)) {
    throw InvalidInput("solve_unit_transportation: inconsistent dimensions");
  }
  if (std::accumulate(capacity.begin(), capacity.end(), 0) != sources ||
      std::any_of(capacity.begin(), capacity.end(), [](int c) { return c < 0; })) {
    throw InvalidInput("solve_unit_transportation: capacities must be non-negative and sum to the source count");
  }
  if (sources == 0) return {};

  // Shifting a row by a constant leaves the optimum unchanged (each source
  // ships exactly once) and makes every arc cost non-negative.
  std::vector<double> shifted(cost);
  for (int i = 0; i < sources; ++i) {
    auto row = shifted.begin() + static_cast<std::ptrdiff_t>(i) * sinks;
    const double lo = *std::min_element(row, row + sinks);
    for (int j = 0; j < sinks; ++j) row[j] -= lo;
  }

  const int s = 0, first_source = 1, first_sink = 1 + sources, t = 1 + sources + sinks;
  FlowNetwork net(t + 1);
  for (int i = 0; i < sources; ++i) net.add_arc(s, first_source + i, 1, 0.0);
  for (int i = 0; i < sources; ++i) {
    for (int j = 0; j < sinks; ++j) {
      net.add_arc(first_source + i, first_sink + j, 1,
                  shifted[static_cast<size_t>(i) * static_cast<size_t>(sinks) + static_cast<size_t>(j)]);
    }
  }
  for (int j = 0; j < sinks; ++j) {
    if (capacity[static_cast<size_t>(j)] > 0) net.add_arc(first_sink + j, t, capacity[static_cast<size_t>(j)], 0.0);
  }
  if (net.min_cost_flow(s, t, sources) != sources) {
    throw Error("solve_unit_transportation: network could not ship every source");
  }

  std::vector<int> assigned(static_cast<size_t>(sources), -1);
  for (int i = 0; i < sources; ++i) {
    for (const Arc& a : net.arcs(first_source + i)) {
      if (a.to >= first_sink && a.to < t && a.cap == 0) assigned[static_cast<size_t>(i)] = a.to - first_sink;
    }
  }
  return assigned;
}

}  // namespace mmtsp
