#include "mmtsp/solver.hpp"

#include <cmath>
#include <numbers>

#include "mmtsp/error.hpp"

namespace mmtsp {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kLadderStep = 144.0 * std::numbers::pi / 180.0;

bool past(const std::optional<Clock::time_point>& deadline) {
  return deadline && Clock::now() >= *deadline;
}

Solution reoptimize(const Instance& inst, const Solution& source, const TourOptimizer& optimizer) {
  Solution out;
  out.tours.reserve(source.tours.size());
  for (const Tour& t : source.tours) out.tours.push_back(optimizer(inst, make_tour(inst, t.vehicle, t.order)));
  out.refresh_objective();
  return out;
}

}  // namespace

void validate_config(const SolverConfig& cfg) {
  if (cfg.runs < 1) throw InvalidInput("runs must be at least 1");
  if (cfg.perturb_attempts < 1) throw InvalidInput("perturb_attempts must be at least 1");
  if (cfg.switch_swap.n_vehicles < 1) throw InvalidInput("n_vehicles must be at least 1");
  if (cfg.multiswap) {
    if (cfg.multiswap->m < 2) throw InvalidInput("group size m must be at least 2");
    if (cfg.multiswap->n_candidates < 1) throw InvalidInput("n_candidates must be at least 1");
  }
  if (!(cfg.time_limit.count() > 0.0)) throw InvalidInput("time_limit must be positive");
  if (cfg.tour_budget.max_passes < 1) throw InvalidInput("tour_budget.max_passes must be at least 1");
}

Solution local_search(const Solution& sol, const Instance& inst, const SolverConfig& cfg,
                      const NeighborhoodOptions& opts, const std::function<void(const Solution&)>& on_improvement) {
  Solution cur = sol;
  while (!past(opts.deadline)) {
    MoveOutcome out = neighborhood_switch(cur, inst, cfg.switch_swap, opts);
    if (!out.improved) out = neighborhood_swap(cur, inst, cfg.switch_swap, opts);
    if (!out.improved && cfg.multiswap) out = neighborhood_multiswap(cur, inst, *cfg.multiswap, opts);
    if (!out.improved) break;
    cur = std::move(out.solution);
    if (on_improvement) on_improvement(cur);
  }
  return cur;
}

Point perturb_depot(const Instance& inst, const Tour& tour, double angle) {
  const Point& d = inst.vehicle(tour.vehicle).depot;
  if (tour.empty()) return d;
  const VertexId depot = inst.depot_vertex(tour.vehicle);
  const double r =
      0.5 * (inst.cost(tour.vehicle, tour.order.back(), depot) + inst.cost(tour.vehicle, depot, tour.order.front()));
  return {d.x + r * std::cos(angle), d.y + r * std::sin(angle)};
}

double perturbation_angle(double theta, int attempt) {
  double a = std::fmod(theta + attempt * kLadderStep, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

PerturbationResult perturbation_round(const Solution& sol, const Instance& inst, const SolverConfig& cfg, Rng& rng,
                                      const NeighborhoodOptions& opts) {
  const int k = inst.num_vehicles();
  PerturbationResult res;
  res.thetas.resize(static_cast<size_t>(k));
  for (double& th : res.thetas) th = rng.uniform01() * kTwoPi;

  for (int a = 0; a < cfg.perturb_attempts; ++a) {
    if (past(opts.deadline)) break;
    ++res.attempts;
    std::vector<double> angles(static_cast<size_t>(k));
    std::vector<Point> depots(static_cast<size_t>(k));
    for (VehicleId v = 0; v < k; ++v) {
      angles[static_cast<size_t>(v)] = perturbation_angle(res.thetas[static_cast<size_t>(v)], a);
      depots[static_cast<size_t>(v)] =
          perturb_depot(inst, sol.tours[static_cast<size_t>(v)], angles[static_cast<size_t>(v)]);
    }
    res.angles.push_back(angles);

    const Instance displaced = inst.with_depots(depots);
    Solution moved = reoptimize(displaced, sol, opts.optimizer);
    moved = local_search(moved, displaced, cfg, opts);
    Solution back = reoptimize(inst, moved, opts.optimizer);
    if (back.objective < sol.objective) {
      res.improved = true;
      res.solution = std::move(back);
      return res;
    }
  }
  return res;
}

SolveResult solve(const Instance& inst, const SolverConfig& cfg, const SolveHooks& hooks) {
  validate_config(cfg);
  SolveResult result;

  for (int r = 0; r < cfg.runs; ++r) {
    const auto start = Clock::now();
    const auto deadline = start + std::chrono::duration_cast<Clock::duration>(cfg.time_limit);
    const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

    RunRecord rec;
    rec.instance = inst.name();
    rec.seed = derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(r));
    Rng rng(rec.seed);

    NeighborhoodOptions opts;
    opts.optimizer = TourOptimizer(cfg.tour_budget, hooks.external_optimizer);
    opts.probe = hooks.probe;
    opts.deadline = deadline;

    const auto note = [&](const char* stage, const Solution& s) {
      rec.trace.push_back({stage, s.objective, elapsed()});
      if (hooks.on_incumbent) hooks.on_incumbent(stage, s);
    };
    const auto on_ls = [&](const Solution& s) {
      if (hooks.on_incumbent) hooks.on_incumbent("local_search", s);
    };

    Solution cur = construct(inst, cfg.construction, opts.optimizer);
    note("construct", cur);
    cur = local_search(cur, inst, cfg, opts, on_ls);
    note("local_search", cur);

    while (!past(deadline)) {
      PerturbationResult p = perturbation_round(cur, inst, cfg, rng, opts);
      if (!p.improved) break;
      cur = std::move(p.solution);
      note("perturbation", cur);
      cur = local_search(cur, inst, cfg, opts, on_ls);
      note("local_search", cur);
    }

    rec.truncated = past(deadline);
    rec.objective = cur.objective;
    rec.wall_s = elapsed();
    result.truncated = result.truncated || rec.truncated;
    if (r == 0 || cur.objective < result.best.objective) result.best = std::move(cur);
    result.runs.push_back(std::move(rec));
  }
  return result;
}

}  // namespace mmtsp
