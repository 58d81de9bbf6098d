#include <gtest/gtest.h>

#include "mmtsp/error.hpp"
#include "mmtsp/model.hpp"
#include "testkit.hpp"

using namespace mmtsp;

TEST(EdgeCost, Examples) {
  EXPECT_DOUBLE_EQ(edge_cost({0, 0}, {3, 4}, 1.0), 5.0);
  EXPECT_DOUBLE_EQ(edge_cost({0, 0}, {3, 4}, 2.0), 2.5);
  EXPECT_DOUBLE_EQ(edge_cost({7, 7}, {7, 7}, 1.25), 0.0);
}

TEST(EdgeCost, RejectsBadInput) {
  EXPECT_THROW(edge_cost({0, 0}, {NAN, 1}, 1.0), InvalidInput);
  EXPECT_THROW(edge_cost({0, INFINITY}, {0, 1}, 1.0), InvalidInput);
  EXPECT_THROW(edge_cost({0, 0}, {0, 1}, 0.0), InvalidInput);
  EXPECT_THROW(edge_cost({0, 0}, {0, 1}, -1.0), InvalidInput);
}

TEST(EdgeCost, SymmetricAndTriangle) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Point a = testkit::random_point(rng), b = testkit::random_point(rng), c = testkit::random_point(rng);
    const double v = testkit::kSpeeds[rng.index(5)];
    EXPECT_EQ(edge_cost(a, b, v), edge_cost(b, a, v));
    EXPECT_LE(edge_cost(a, c, v), edge_cost(a, b, v) + edge_cost(b, c, v) + 1e-12);
  }
}

TEST(Instance, RejectsInvalidData) {
  EXPECT_THROW(Instance("x", {{0, 0}}, {}), InvalidInput);
  EXPECT_THROW(Instance("x", {{0, NAN}}, {{{0, 0}, 1.0, {}}}), InvalidInput);
  EXPECT_THROW(Instance("x", {{0, 0}}, {{{0, 0}, 0.0, {}}}), InvalidInput);
  EXPECT_THROW(Instance("x", {{0, 0}}, {{{0, 0}, 1.0, {1}}}), InvalidInput);
  EXPECT_THROW(Instance("x", {{0, 0}}, {{{0, 0}, 1.0, {0, 0}}}), InvalidInput);
}

TEST(Instance, OverlappingRequiredSetsNameBothVehicles) {
  try {
    Instance("x", {{0, 0}, {1, 1}}, {{{0, 0}, 1.0, {1}}, {{0, 0}, 1.0, {1}}});
    FAIL() << "expected InvalidInput";
  } catch (const InvalidInput& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("vehicle 0"), std::string::npos) << msg;
    EXPECT_NE(msg.find("vehicle 1"), std::string::npos) << msg;
  }
}

TEST(Instance, IndexSpaceAndOwnership) {
  const Instance inst("x", {{0, 0}, {3, 4}, {6, 8}}, {{{0, 0}, 2.0, {2}}, {{1, 1}, 1.0, {}}});
  EXPECT_EQ(inst.num_vertices(), 5);
  EXPECT_EQ(inst.depot_vertex(1), 4);
  EXPECT_EQ(inst.vertex(4), (Point{1, 1}));
  EXPECT_EQ(inst.required_owner(2), 0);
  EXPECT_TRUE(inst.is_free(1));
  EXPECT_EQ(inst.num_free_targets(), 2);
  EXPECT_DOUBLE_EQ(inst.cost(0, 0, 1), 2.5);
  EXPECT_TRUE(inst.has_distance_matrix());
}

TEST(Instance, WithDepotsMovesOnlyDepots) {
  Rng rng(3);
  const Instance inst = testkit::random_instance(rng, 12, 3, 1);
  const std::vector<Point> moved = {{1, 2}, {3, 4}, {5, 6}};
  const Instance d = inst.with_depots(moved);
  for (VehicleId v = 0; v < 3; ++v) {
    EXPECT_EQ(d.vehicle(v).depot, moved[static_cast<size_t>(v)]);
    EXPECT_EQ(d.vehicle(v).required, inst.vehicle(v).required);
    EXPECT_EQ(d.vehicle(v).speed, inst.vehicle(v).speed);
    for (TargetId t = 0; t < 12; ++t) {
      EXPECT_DOUBLE_EQ(d.distance(d.depot_vertex(v), t), euclidean(moved[static_cast<size_t>(v)], inst.targets()[t]));
    }
  }
  for (TargetId a = 0; a < 12; ++a) {
    for (TargetId b = 0; b < 12; ++b) EXPECT_EQ(d.distance(a, b), inst.distance(a, b));
  }
}

TEST(TourCost, Examples) {
  const Instance slow("x", {{0, 3}, {4, 3}}, {{{0, 0}, 1.0, {}}});
  const Instance fast("x", {{0, 3}, {4, 3}}, {{{0, 0}, 2.0, {}}});
  const std::vector<TargetId> order = {0, 1};
  EXPECT_DOUBLE_EQ(tour_cost(slow, 0, {}), 0.0);
  EXPECT_DOUBLE_EQ(tour_cost(slow, 0, order), 12.0);
  EXPECT_DOUBLE_EQ(tour_cost(fast, 0, order), 6.0);
  const std::vector<TargetId> bad = {0, 7};
  EXPECT_THROW(tour_cost(slow, 0, bad), InvalidInput);
}

TEST(TourCost, RotationAndReversalInvariant) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = testkit::random_instance(rng, 9, 1);
    std::vector<TargetId> order(9);
    std::iota(order.begin(), order.end(), 0);
    const double base = tour_cost(inst, 0, order);
    EXPECT_TRUE(testkit::rel_close(base, testkit::raw_tour_cost(inst, 0, order)));
    std::vector<TargetId> rev(order.rbegin(), order.rend());
    EXPECT_TRUE(testkit::rel_close(base, tour_cost(inst, 0, rev)));
  }
  // Rotation keeps the cyclic sequence when the depot is one of the points.
  const Instance inst("x", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0, 0}, 1.0, {}}});
  const std::vector<TargetId> a = {1, 2, 3, 0}, b = {0, 1, 2, 3};
  EXPECT_DOUBLE_EQ(tour_cost(inst, 0, a), tour_cost(inst, 0, b));
}

TEST(Validate, FeasibleSolutionIsOk) {
  Rng rng(8);
  const Instance inst = testkit::random_instance(rng, 10, 2, 2);
  const Solution sol = testkit::random_solution(inst, rng);
  const auto rep = validate_solution(inst, sol);
  EXPECT_TRUE(rep.ok()) << rep.to_string();
  EXPECT_TRUE(testkit::rel_close(sol.objective, testkit::raw_objective(inst, sol)));
}

TEST(Validate, ReportsEachViolation) {
  const Instance inst("x", {{1, 0}, {2, 0}, {3, 0}}, {{{0, 0}, 1.0, {0}}, {{5, 0}, 1.0, {}}});

  Solution dup = make_solution(inst, {{0, 1}, {1, 2}});
  auto rep = validate_solution(inst, dup);
  EXPECT_NE(rep.to_string().find("duplicate target 1"), std::string::npos) << rep.to_string();

  Solution breach = make_solution(inst, {{1}, {0, 2}});
  rep = validate_solution(inst, breach);
  EXPECT_NE(rep.to_string().find("required-assignment breach"), std::string::npos) << rep.to_string();

  Solution missed = make_solution(inst, {{0}, {2}});
  rep = validate_solution(inst, missed);
  EXPECT_NE(rep.to_string().find("missed target 1"), std::string::npos) << rep.to_string();

  Solution drift = make_solution(inst, {{0, 1}, {2}});
  drift.tours[1].cost += 1e-3;
  rep = validate_solution(inst, drift);
  EXPECT_NE(rep.to_string().find("cost-cache drift"), std::string::npos) << rep.to_string();

  Solution obj = make_solution(inst, {{0, 1}, {2}});
  obj.objective *= 2;
  rep = validate_solution(inst, obj);
  EXPECT_NE(rep.to_string().find("objective drift"), std::string::npos) << rep.to_string();
}

TEST(Solution, MaximalVehicleLowestIndexOnTie) {
  const Instance inst("x", {{1, 0}, {-1, 0}}, {{{0, 0}, 1.0, {}}, {{0, 0}, 1.0, {}}});
  const Solution sol = make_solution(inst, {{0}, {1}});
  EXPECT_EQ(sol.maximal_vehicle(), 0);
  EXPECT_DOUBLE_EQ(sol.objective, 2.0);
  const auto who = assignment_of(inst, sol);
  EXPECT_EQ(who, (std::vector<VehicleId>{0, 1}));
}
