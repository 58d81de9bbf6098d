#include "mmtsp/neighborhoods.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "groups.hpp"
#include "mmtsp/error.hpp"

namespace mmtsp {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool past_deadline(const NeighborhoodOptions& opts) {
  return opts.deadline && Clock::now() >= *opts.deadline;
}

double max_excluding(const Solution& sol, VehicleId a, VehicleId b) {
  double best = 0.0;
  for (const auto& tour : sol.tours) {
    if (tour.vehicle != a && tour.vehicle != b) best = std::max(best, tour.cost);
  }
  return best;
}

void report(const NeighborhoodOptions& opts, const char* name, const Tour& tour) {
  if (opts.probe) opts.probe(ProbeEvent{name, tour.vehicle, tour.order, tour.cost});
}

// Optimizes both touched tours and returns the new incumbent, or nothing if
// the optimized objective is not strictly lower.
std::optional<Solution> commit(const Solution& sol, const Instance& inst, const NeighborhoodOptions& opts,
                               Tour a, Tour b) {
  Solution next = sol;
  const auto va = static_cast<size_t>(a.vehicle), vb = static_cast<size_t>(b.vehicle);
  next.tours[va] = opts.optimizer(inst, std::move(a));
  next.tours[vb] = opts.optimizer(inst, std::move(b));
  next.refresh_objective();
  if (!(next.objective < sol.objective)) return std::nullopt;
  return next;
}

struct RankedTarget {
  int position;
  TargetId target;
  double savings;
};

// Targets of the tour outside its vehicle's R_i, by decreasing savings.
std::vector<RankedTarget> removable_by_savings(const Instance& inst, const Tour& tour) {
  std::vector<RankedTarget> out;
  for (int p = 0; p < tour.size(); ++p) {
    const TargetId t = tour.order[static_cast<size_t>(p)];
    if (inst.required_owner(t) == tour.vehicle) continue;
    out.push_back({p, t, savings_at(inst, tour, p)});
  }
  std::sort(out.begin(), out.end(), [](const RankedTarget& a, const RankedTarget& b) {
    if (a.savings != b.savings) return a.savings > b.savings;
    return a.target < b.target;
  });
  return out;
}

}  // namespace

std::vector<VehicleId> sort_vehicles(const Instance& inst, VehicleSortMetric metric, TargetId t,
                                     const Solution& sol, VehicleId exclude) {
  std::vector<std::pair<double, VehicleId>> keyed;
  keyed.reserve(sol.tours.size());
  for (const auto& tour : sol.tours) {
    if (tour.vehicle == exclude) continue;
    double key = tour.cost;
    if (metric != VehicleSortMetric::LeastActualTour) {
      const double ins = cheapest_insertion(inst, tour, t).cost;
      key = metric == VehicleSortMetric::LeastInsertionCost ? ins : estimated_cost_after_insert(tour.cost, ins);
    }
    keyed.emplace_back(key, tour.vehicle);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<VehicleId> out;
  out.reserve(keyed.size());
  for (const auto& [key, v] : keyed) out.push_back(v);
  return out;
}

MoveOutcome neighborhood_switch(const Solution& sol, const Instance& inst, const SwitchSwapConfig& cfg,
                                const NeighborhoodOptions& opts) {
  constexpr const char* kName = "switch";
  MoveOutcome out{false, sol};
  if (sol.tours.size() < 2) return out;
  const VehicleId i = sol.maximal_vehicle();
  const Tour& ti = sol.tours[static_cast<size_t>(i)];

  for (const auto& cand : removable_by_savings(inst, ti)) {
    if (past_deadline(opts)) return out;
    const double est_i = estimated_cost_after_remove(ti.cost, cand.savings);
    const auto vehicles = sort_vehicles(inst, cfg.metric, cand.target, sol, i);
    const size_t limit = std::min(vehicles.size(), static_cast<size_t>(std::max(cfg.n_vehicles, 0)));
    for (size_t r = 0; r < limit; ++r) {
      const VehicleId j = vehicles[r];
      const Tour& tj = sol.tours[static_cast<size_t>(j)];
      const Insertion ins = cheapest_insertion(inst, tj, cand.target);
      const double est_j = estimated_cost_after_insert(tj.cost, ins.cost);
      const double estimate = std::max({est_i, est_j, max_excluding(sol, i, j)});

      const bool accept = estimate < sol.objective;
      if (!accept && !opts.probe) continue;
      Tour a = ti;
      detail::remove_positions(a, std::span<const int>(&cand.position, 1), cand.savings);
      Tour b = tj;
      apply_insertion(b, cand.target, ins);
      report(opts, kName, a);
      report(opts, kName, b);
      if (!accept) continue;
      if (auto next = commit(sol, inst, opts, std::move(a), std::move(b))) return {true, std::move(*next)};
    }
  }
  return out;
}

MoveOutcome neighborhood_swap(const Solution& sol, const Instance& inst, const SwitchSwapConfig& cfg,
                              const NeighborhoodOptions& opts) {
  constexpr const char* kName = "swap";
  MoveOutcome out{false, sol};
  if (sol.tours.size() < 2) return out;
  const VehicleId i = sol.maximal_vehicle();
  const Tour& ti = sol.tours[static_cast<size_t>(i)];

  struct Incoming {
    int position_in_plus;
    TargetId target;
    Insertion into_i;
  };

  for (const auto& cand : removable_by_savings(inst, ti)) {
    if (past_deadline(opts)) return out;
    const TargetId t = cand.target;
    Tour ti_minus = ti;
    detail::remove_positions(ti_minus, std::span<const int>(&cand.position, 1), cand.savings);

    std::vector<VehicleId> vehicles;
    for (VehicleId j : sort_vehicles(inst, cfg.metric, t, sol, i)) {
      if (detail::removable_count(inst, sol.tours[static_cast<size_t>(j)]) > 0) vehicles.push_back(j);
    }
    const size_t limit = std::min(vehicles.size(), static_cast<size_t>(std::max(cfg.n_vehicles, 0)));
    for (size_t r = 0; r < limit; ++r) {
      const VehicleId j = vehicles[r];
      const Tour& tj = sol.tours[static_cast<size_t>(j)];
      const Insertion ins_t = cheapest_insertion(inst, tj, t);
      Tour tj_plus = tj;
      apply_insertion(tj_plus, t, ins_t);

      std::vector<Incoming> incoming;
      for (int p = 0; p < tj.size(); ++p) {
        const TargetId u = tj.order[static_cast<size_t>(p)];
        if (inst.required_owner(u) == j) continue;
        incoming.push_back({p >= ins_t.position ? p + 1 : p, u, cheapest_insertion(inst, ti_minus, u)});
      }
      std::sort(incoming.begin(), incoming.end(), [](const Incoming& a, const Incoming& b) {
        if (a.into_i.cost != b.into_i.cost) return a.into_i.cost < b.into_i.cost;
        return a.target < b.target;
      });
      if (incoming.empty()) continue;
      // Cheapest incoming target already costs i more than it saved.
      if (cand.savings < incoming.front().into_i.cost) continue;

      for (const auto& in : incoming) {
        const double est_i = ti.cost - cand.savings + in.into_i.cost;
        const double sav_u = savings_at(inst, tj_plus, in.position_in_plus);
        const double est_j = tj.cost + ins_t.cost - sav_u;
        const double estimate = std::max({est_i, est_j, max_excluding(sol, i, j)});

        const bool accept = estimate < sol.objective;
        if (!accept && !opts.probe) continue;
        Tour a = ti_minus;
        apply_insertion(a, in.target, in.into_i);
        Tour b = tj_plus;
        detail::remove_positions(b, std::span<const int>(&in.position_in_plus, 1), sav_u);
        report(opts, kName, a);
        report(opts, kName, b);
        if (!accept) continue;
        if (auto next = commit(sol, inst, opts, std::move(a), std::move(b))) return {true, std::move(*next)};
      }
    }
  }
  return out;
}

namespace {

// How a group enters a tour: as one oriented block or one
// target at a time.
struct GroupEntry {
  double cost = kInf;
  GroupInsertion block;
};

GroupEntry price_entry(const Instance& inst, const Tour& tour, std::span<const TargetId> group,
                       GroupInsertionRule rule) {
  if (rule == GroupInsertionRule::Recursive) {
    Tour scratch = tour;
    return {detail::recursive_group_insert(inst, scratch, group), {}};
  }
  const GroupInsertion g = detail::cheapest_group_insertion(inst, tour, group);
  return {g.cost, g};
}

void apply_entry(const Instance& inst, Tour& tour, std::span<const TargetId> group, GroupInsertionRule rule,
                 const GroupEntry& entry) {
  if (rule == GroupInsertionRule::Recursive) {
    detail::recursive_group_insert(inst, tour, group);
  } else {
    detail::apply_group_insertion(tour, group, entry.block);
  }
}

MoveOutcome multiswap_search(const Solution& sol, const Instance& inst, const MultiSwapConfig& cfg,
                             const NeighborhoodOptions& opts) {
  const bool variable = cfg.structure == GroupStructure::Variable;
  const char* name = variable ? "multiswap-variable" : "multiswap-fixed";
  const GroupInsertionRule rule = variable ? cfg.variable_insertion : GroupInsertionRule::GroupEdge;
  MoveOutcome out{false, sol};
  if (sol.tours.size() < 2 || cfg.m < 2) return out;

  const VehicleId i = sol.maximal_vehicle();
  const Tour& ti = sol.tours[static_cast<size_t>(i)];

  struct Outgoing {
    std::vector<int> positions;
    double rank;  // ascending
  };
  std::vector<Outgoing> outgoing;
  const int min_size = variable ? 2 : cfg.m;
  for (int size = min_size; size <= cfg.m; ++size) {
    for (auto& w : detail::enumerate_windows(inst, ti, size, {})) {
      const double key = variable ? detail::window_removal_ratio(inst, ti, w) : detail::window_savings(inst, ti, w);
      outgoing.push_back({std::move(w), -key});
    }
  }
  std::stable_sort(outgoing.begin(), outgoing.end(),
                   [](const Outgoing& a, const Outgoing& b) { return a.rank < b.rank; });

  const int min_removable = variable ? 1 : cfg.m - 1;
  std::vector<char> excluded(static_cast<size_t>(inst.num_targets()), 0);

  for (const auto& w : outgoing) {
    if (past_deadline(opts)) return out;
    const auto members = detail::members_at(ti, w.positions);
    Tour ti_minus = ti;
    detail::remove_positions(ti_minus, w.positions, detail::window_savings(inst, ti, w.positions));

    VehicleId j = kNoVehicle;
    GroupEntry entry;
    for (const auto& tour : sol.tours) {
      if (tour.vehicle == i || detail::removable_count(inst, tour) < min_removable) continue;
      GroupEntry e = price_entry(inst, tour, members, rule);
      if (e.cost < entry.cost) {
        entry = e;
        j = tour.vehicle;
      }
    }
    if (j == kNoVehicle) continue;

    Tour tj_plus = sol.tours[static_cast<size_t>(j)];
    apply_entry(inst, tj_plus, members, rule, entry);
    two_opt_pass(inst, ti_minus);
    two_opt_pass(inst, tj_plus);
    report(opts, name, ti_minus);
    report(opts, name, tj_plus);

    struct Incoming {
      std::vector<int> positions;
      std::vector<TargetId> members;
      double savings;
      GroupEntry entry;
      double rank;  // ascending
    };
    for (TargetId t : members) excluded[static_cast<size_t>(t)] = 1;
    std::vector<Incoming> incoming;
    const int lo = variable ? 1 : cfg.m - 1;
    for (int size = lo; size <= cfg.m; ++size) {
      for (auto& pos : detail::enumerate_windows(inst, tj_plus, size, excluded)) {
        Incoming in;
        in.members = detail::members_at(tj_plus, pos);
        in.savings = detail::window_savings(inst, tj_plus, pos);
        in.entry = price_entry(inst, ti_minus, in.members, rule);
        if (variable) {
          const double ratio = in.entry.cost > 0.0 ? in.savings / in.entry.cost : (in.savings > 0.0 ? kInf : 0.0);
          in.rank = -ratio;
        } else if (cfg.fixed_sort == FixedGroupSort::InsertionCost) {
          in.rank = in.entry.cost;
        } else {
          in.rank = -(in.savings - in.entry.cost);
        }
        in.positions = std::move(pos);
        incoming.push_back(std::move(in));
      }
    }
    for (TargetId t : members) excluded[static_cast<size_t>(t)] = 0;
    std::stable_sort(incoming.begin(), incoming.end(),
                     [](const Incoming& a, const Incoming& b) { return a.rank < b.rank; });

    const size_t limit = std::min(incoming.size(), static_cast<size_t>(std::max(cfg.n_candidates, 0)));
    const double others = max_excluding(sol, i, j);
    for (size_t c = 0; c < limit; ++c) {
      const auto& in = incoming[c];
      Tour a = ti_minus;
      apply_entry(inst, a, in.members, rule, in.entry);
      Tour b = tj_plus;
      detail::remove_positions(b, in.positions, in.savings);
      two_opt_pass(inst, a);
      two_opt_pass(inst, b);
      report(opts, name, a);
      report(opts, name, b);
      if (!(std::max({a.cost, b.cost, others}) < sol.objective)) continue;
      if (auto next = commit(sol, inst, opts, std::move(a), std::move(b))) return {true, std::move(*next)};
    }
  }
  return out;
}

}  // namespace

MoveOutcome neighborhood_multiswap_fixed(const Solution& sol, const Instance& inst, const MultiSwapConfig& cfg,
                                         const NeighborhoodOptions& opts) {
  if (cfg.structure != GroupStructure::Fixed) throw InvalidInput("fixed multi-swap needs a Fixed config");
  return multiswap_search(sol, inst, cfg, opts);
}

MoveOutcome neighborhood_multiswap_variable(const Solution& sol, const Instance& inst, const MultiSwapConfig& cfg,
                                            const NeighborhoodOptions& opts) {
  if (cfg.structure != GroupStructure::Variable) throw InvalidInput("variable multi-swap needs a Variable config");
  return multiswap_search(sol, inst, cfg, opts);
}

MoveOutcome neighborhood_multiswap(const Solution& sol, const Instance& inst, const MultiSwapConfig& cfg,
                                   const NeighborhoodOptions& opts) {
  return multiswap_search(sol, inst, cfg, opts);
}

const char* to_string(VehicleSortMetric metric) {
  switch (metric) {
    case VehicleSortMetric::LeastActualTour:
      return "actual";
    case VehicleSortMetric::LeastInsertionCost:
      return "insertion";
    case VehicleSortMetric::LeastEstimatedTour:
      return "estimated";
  }
  return "?";
}

}  // namespace mmtsp
