#include <gtest/gtest.h>

#include <numbers>

#include "mmtsp/error.hpp"
#include "mmtsp/instgen.hpp"
#include "mmtsp/oracle.hpp"
#include "mmtsp/solver.hpp"
#include "testkit.hpp"

using namespace mmtsp;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

}  // namespace

TEST(PerturbDepot, Examples) {
  const Instance slow("x", {{3, 0}, {0, 4}}, {{{0, 0}, 1.0, {}}});
  const Tour t = make_tour(slow, 0, {0, 1});
  const Point p = perturb_depot(slow, t, 0.0);
  EXPECT_NEAR(p.x, 3.5, 1e-12);
  EXPECT_NEAR(p.y, 0.0, 1e-12);
  const Point up = perturb_depot(slow, t, 90 * kDeg);
  EXPECT_NEAR(up.x, 0.0, 1e-12);
  EXPECT_NEAR(up.y, 3.5, 1e-12);

  const Instance fast("x", {{3, 0}, {0, 4}}, {{{0, 0}, 2.0, {}}});
  EXPECT_NEAR(perturb_depot(fast, make_tour(fast, 0, {0, 1}), 0.0).x, 1.75, 1e-12);

  const Instance moved("x", {{3, 0}}, {{{2, 2}, 1.0, {}}});
  EXPECT_EQ(perturb_depot(moved, make_tour(moved, 0, {}), 1.0), (Point{2, 2}));
}

TEST(PerturbationAngle, Ladder) {
  const double theta = 10 * kDeg;
  const double expected[] = {10, 154, 298, 82, 226};
  for (int a = 0; a < 5; ++a) EXPECT_NEAR(perturbation_angle(theta, a), expected[a] * kDeg, 1e-12);
  EXPECT_NEAR(perturbation_angle(300 * kDeg, 1), 84 * kDeg, 1e-12);
}

TEST(LocalSearch, FixedPointAndMonotone) {
  Rng rng(10);
  SolverConfig cfg;
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = testkit::random_instance(rng, 10, 2, trial % 2);
    const Solution start = construct(inst, ConstructionMethod::RecursiveInsertion);
    const Solution once = local_search(start, inst, cfg);
    EXPECT_LE(once.objective, start.objective);
    EXPECT_TRUE(validate_solution(inst, once).ok());
    const Solution twice = local_search(once, inst, cfg);
    EXPECT_EQ(twice.objective, once.objective);
    EXPECT_EQ(twice.allocation(), once.allocation());
  }
}

TEST(LocalSearch, CloseToOracleOnEightTargets) {
  Rng rng(808);
  SolverConfig cfg;
  int within = 0;
  for (int seed = 0; seed < 50; ++seed) {
    const Instance inst = testkit::random_instance(rng, 8, 2);
    const double opt = brute_force_minmax(inst).objective;
    const Solution s = local_search(construct(inst, cfg.construction), inst, cfg);
    within += s.objective <= 1.10 * opt;
  }
  EXPECT_GE(within, 45);
}

TEST(Perturbation, OptimalIncumbentNeverImproves) {
  Rng rng(5150);
  SolverConfig cfg;
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = testkit::random_instance(rng, 7, 2, 1);
    const OracleResult opt = brute_force_minmax(inst);
    Rng r(static_cast<std::uint64_t>(trial));
    const PerturbationResult p = perturbation_round(opt.solution, inst, cfg, r);
    EXPECT_FALSE(p.improved);
    EXPECT_EQ(p.attempts, 5);
    ASSERT_EQ(p.angles.size(), 5u);
    for (int a = 0; a < 5; ++a) {
      for (VehicleId v = 0; v < 2; ++v) {
        EXPECT_DOUBLE_EQ(p.angles[static_cast<size_t>(a)][static_cast<size_t>(v)],
                         perturbation_angle(p.thetas[static_cast<size_t>(v)], a));
      }
    }
  }
}

TEST(Solve, SingleVehicleAllRequired) {
  Rng rng(2);
  Instance base = testkit::random_instance(rng, 9, 1);
  std::vector<VehicleSpec> v(base.vehicles().begin(), base.vehicles().end());
  v[0].required = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  const Instance inst("one", {base.targets().begin(), base.targets().end()}, v);
  const SolveResult res = solve(inst, SolverConfig{});
  const Tour expected = optimize_tour(inst, nn_construct(inst, 0, v[0].required));
  EXPECT_EQ(res.best.tours[0].order, expected.order);
  EXPECT_DOUBLE_EQ(res.best.objective, expected.cost);
}

TEST(Solve, MonotoneDeterministicAndPure) {
  Rng rng(42);
  SolverConfig cfg;
  cfg.rng_seed = 99;
  for (int trial = 0; trial < 5; ++trial) {
    const Instance inst = testkit::random_instance(rng, 30, 3, trial % 2 ? 3 : 0);
    const std::string before = [&] {
      std::string s;
      for (const auto& p : inst.targets()) s += std::to_string(p.x) + std::to_string(p.y);
      for (const auto& v : inst.vehicles()) s += std::to_string(v.depot.x) + std::to_string(v.depot.y);
      return s;
    }();
    std::vector<Point> depots;
    for (const auto& v : inst.vehicles()) depots.push_back(v.depot);

    int observed = 0;
    SolveHooks hooks;
    hooks.on_incumbent = [&](std::string_view, const Solution& s) {
      ++observed;
      EXPECT_TRUE(validate_solution(inst, s).ok());
    };
    const SolveResult a = solve(inst, cfg, hooks);
    const SolveResult b = solve(inst, cfg);
    EXPECT_GT(observed, 0);
    ASSERT_EQ(a.runs.size(), 3u);
    const double constructed = construct(inst, cfg.construction).objective;
    EXPECT_LE(a.best.objective, constructed);
    for (size_t r = 0; r < a.runs.size(); ++r) {
      const auto& ta = a.runs[r].trace;
      const auto& tb = b.runs[r].trace;
      ASSERT_EQ(ta.size(), tb.size());
      for (size_t s = 0; s < ta.size(); ++s) {
        EXPECT_EQ(ta[s].stage, tb[s].stage);
        EXPECT_EQ(ta[s].objective, tb[s].objective);
        if (s > 0) EXPECT_LE(ta[s].objective, ta[s - 1].objective);
      }
      EXPECT_EQ(a.runs[r].seed, b.runs[r].seed);
      EXPECT_GE(a.best.objective, 0.0);
      EXPECT_LE(a.best.objective, a.runs[r].objective);
      EXPECT_FALSE(a.runs[r].truncated);
    }
    for (VehicleId v = 0; v < inst.num_vehicles(); ++v) EXPECT_EQ(inst.vehicle(v).depot, depots[static_cast<size_t>(v)]);
    EXPECT_TRUE(validate_solution(inst, a.best).ok());
  }
}

TEST(Solve, TimeLimitTruncates) {
  Rng rng(7);
  const Instance inst = testkit::random_instance(rng, 200, 5);
  SolverConfig cfg;
  cfg.runs = 1;
  cfg.time_limit = std::chrono::duration<double>(1e-4);
  const SolveResult res = solve(inst, cfg);
  EXPECT_TRUE(res.truncated);
  EXPECT_TRUE(res.runs[0].truncated);
  EXPECT_TRUE(validate_solution(inst, res.best).ok());
}

TEST(Solve, RejectsBadConfig) {
  Rng rng(1);
  const Instance inst = testkit::random_instance(rng, 5, 2);
  SolverConfig cfg;
  cfg.runs = 0;
  EXPECT_THROW(solve(inst, cfg), InvalidInput);
  cfg = {};
  cfg.perturb_attempts = 0;
  EXPECT_THROW(solve(inst, cfg), InvalidInput);
  cfg = {};
  cfg.multiswap->m = 1;
  EXPECT_THROW(solve(inst, cfg), InvalidInput);
  cfg = {};
  cfg.switch_swap.n_vehicles = 0;
  EXPECT_THROW(solve(inst, cfg), InvalidInput);
}

TEST(Rng, DeterministicAndInRange) {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform01();
    EXPECT_EQ(x, b.uniform01());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    EXPECT_LT(a.index(7), 7u);
    b.index(7);
  }
  EXPECT_NE(derive_seed(1, std::uint64_t{0}), derive_seed(1, std::uint64_t{1}));
  EXPECT_EQ(derive_seed(3, std::string_view("MM1")), derive_seed(3, std::string_view("MM1")));
}
