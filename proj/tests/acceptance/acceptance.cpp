// Acceptance suite: runs the nine release criteria and prints one PASS/FAIL
// line per criterion. `mmtsp_acceptance 3 7` runs a subset.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "mmtsp/instgen.hpp"
#include "mmtsp/neighborhoods.hpp"
#include "mmtsp/oracle.hpp"
#include "mmtsp/reference.hpp"
#include "mmtsp/solver.hpp"
#include "testkit.hpp"

using namespace mmtsp;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Instance with_speeds(const BaseInstance& base, const std::vector<double>& speeds) {
  std::vector<VehicleSpec> v;
  for (size_t i = 0; i < base.depots.size(); ++i) v.push_back({base.depots[i], speeds[i], {}});
  return Instance(base.name, base.targets, v);
}

// 1. Oracle gap on 2-vehicle, 8-free-target instances.
Outcome oracle_gap() {
  const auto t0 = Clock::now();
  int within = 0, exact = 0;
  for (int i = 0; i < 50; ++i) {
    Rng rng(derive_seed(2024, static_cast<std::uint64_t>(i)));
    const bool three = i % 2 == 1;
    const BaseInstance base = random_base_instance("gap" + std::to_string(i), three ? 14 : 8, 2, rng);
    Instance inst = with_speeds(base, assign_speeds(2, rng));
    if (three) inst = assign_required_targets(inst, HeterogeneityMode::ThreeTargets);
    SolverConfig cfg;
    cfg.rng_seed = static_cast<std::uint64_t>(i);
    const double got = solve(inst, cfg).best.objective;
    const double opt = brute_force_minmax(inst).objective;
    within += got <= 1.10 * opt;
    exact += std::abs(got - opt) <= 1e-6 * opt;
  }
  const double secs = seconds_since(t0);
  return {within >= 45 && exact >= 25 && secs < 300.0,
          fmt("within 10%% on %d/50 (need 45), exact on %d/50 (need 25), %.1f s (limit 300)", within, exact, secs)};
}

// 2. Every probed estimate equals a from-scratch recomputation.
Outcome proxy_exactness() {
  Rng rng(77001);
  long probes = 0, violations = 0;
  long per_family[3] = {0, 0, 0};
  double worst = 0.0;
  for (int state = 0; state < 2000 && (probes < 1000 || per_family[0] < 100 || per_family[1] < 100 ||
                                         per_family[2] < 100);
       ++state) {
    const int k = 2 + static_cast<int>(rng.index(4));
    const int n = std::max(k * 3, 5 + static_cast<int>(rng.index(56)));
    const int req = static_cast<int>(rng.index(3));
    const Instance inst = testkit::random_instance(rng, n, k, req);
    Solution sol = testkit::random_solution(inst, rng);
    if (state % 2 == 0) {
      for (auto& t : sol.tours) t = optimize_tour(inst, t);
      sol.refresh_objective();
    }
    int family = 0;
    NeighborhoodOptions opts;
    opts.probe = [&](const ProbeEvent& e) {
      ++probes;
      ++per_family[family];
      const std::vector<TargetId> order(e.order.begin(), e.order.end());
      const double truth = testkit::raw_tour_cost(inst, e.vehicle, order);
      const double rel = std::abs(e.estimated_cost - truth) / std::max(1.0, std::abs(truth));
      worst = std::max(worst, rel);
      violations += rel > 1e-9;
    };
    SwitchSwapConfig ss;
    ss.metric = static_cast<VehicleSortMetric>(rng.index(3));
    ss.n_vehicles = 1 + static_cast<int>(rng.index(3));
    family = 0;
    neighborhood_switch(sol, inst, ss, opts);
    family = 1;
    neighborhood_swap(sol, inst, ss, opts);
    family = 2;
    MultiSwapConfig ms;
    ms.structure = rng.index(2) ? GroupStructure::Variable : GroupStructure::Fixed;
    ms.m = 2 + static_cast<int>(rng.index(2));
    ms.n_candidates = 1 + static_cast<int>(rng.index(20));
    ms.fixed_sort = static_cast<FixedGroupSort>(rng.index(2));
    ms.variable_insertion = static_cast<GroupInsertionRule>(rng.index(2));
    neighborhood_multiswap(sol, inst, ms, opts);
  }
  const bool enough = probes >= 1000 && per_family[0] > 0 && per_family[1] > 0 && per_family[2] > 0;
  return {enough && violations == 0,
          fmt("%ld probes (switch %ld, swap %ld, multiswap %ld), %ld violations, worst rel error %.2e", probes,
              per_family[0], per_family[1], per_family[2], violations, worst)};
}

// 3. Trace monotonicity and feasibility of every intermediate incumbent.
Outcome monotone_feasible() {
  Rng rng(3003);
  std::vector<BaseInstance> bases;
  for (int b = 0; b < 20; ++b) {
    const int n = 20 + static_cast<int>(rng.index(81));
    const int k = 2 + static_cast<int>(rng.index(std::min<std::uint64_t>(5, static_cast<std::uint64_t>(n / 5 - 1))));
    bases.push_back(random_base_instance("S" + std::to_string(b), n, k, rng));
  }
  const Suite suite = generate_suite(bases, 3003);
  long runs = 0, incumbents = 0, violations = 0;
  for (int r = 0; r < 200; ++r) {
    const Instance& inst = suite.instances[static_cast<size_t>(r) % suite.instances.size()];
    SolverConfig cfg;
    cfg.runs = 1;
    cfg.rng_seed = static_cast<std::uint64_t>(r);
    SolveHooks hooks;
    hooks.on_incumbent = [&](std::string_view, const Solution& s) {
      ++incumbents;
      violations += !validate_solution(inst, s).ok();
    };
    const SolveResult res = solve(inst, cfg, hooks);
    ++runs;
    const auto& trace = res.runs[0].trace;
    for (size_t s = 1; s < trace.size(); ++s) violations += trace[s].objective > trace[s - 1].objective;
    violations += !validate_solution(inst, res.best).ok();
  }
  return {runs == 200 && violations == 0 && incumbents > 0,
          fmt("%ld runs over %zu suite instances, %ld incumbents checked, %ld violations", runs,
              suite.instances.size(), incumbents, violations)};
}

// 4. Group savings do not depend on the removal order.
Outcome group_savings_order() {
  Rng rng(4004);
  long pairs = 0, violations = 0;
  double worst = 0.0;
  while (pairs < 500) {
    const int n = 6 + static_cast<int>(rng.index(15));
    const Instance inst = testkit::random_instance(rng, n, 1, static_cast<int>(rng.index(3)));
    std::vector<TargetId> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
    const Tour tour = make_tour(inst, 0, order);
    const int size = 1 + static_cast<int>(rng.index(4));
    // Next `size` movable targets from a random start; own R_i targets in
    // between stay on the tour.
    std::vector<TargetId> group;
    for (size_t p = rng.index(order.size()); p < order.size() && static_cast<int>(group.size()) < size; ++p) {
      if (inst.is_free(order[p])) group.push_back(order[p]);
    }
    if (static_cast<int>(group.size()) != size) continue;
    ++pairs;
    const double got = group_savings(inst, tour, group);
    std::sort(group.begin(), group.end());
    do {
      std::vector<TargetId> cur = order;
      double sum = 0.0;
      for (TargetId x : group) {
        const double before = testkit::raw_tour_cost(inst, 0, cur);
        cur.erase(std::find(cur.begin(), cur.end(), x));
        sum += before - testkit::raw_tour_cost(inst, 0, cur);
      }
      const double rel = std::abs(sum - got) / std::max(1.0, std::abs(got));
      worst = std::max(worst, rel);
      violations += rel > 1e-9;
    } while (std::next_permutation(group.begin(), group.end()));
  }
  return {violations == 0, fmt("%ld (tour, group) pairs, %ld violations, worst rel error %.2e", pairs, violations, worst)};
}

// 5. Oriented group insertion equals the brute-force splice minimum.
Outcome splice_oracle() {
  Rng rng(5005);
  long cases = 0, violations = 0;
  double worst = 0.0;
  for (; cases < 500; ++cases) {
    const int in_tour = static_cast<int>(rng.index(16));
    const int size = 1 + static_cast<int>(rng.index(4));
    const Instance inst = testkit::random_instance(rng, in_tour + size, 1);
    std::vector<TargetId> order(static_cast<size_t>(in_tour));
    std::iota(order.begin(), order.end(), 0);
    for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
    std::vector<TargetId> group;
    for (int g = 0; g < size; ++g) group.push_back(in_tour + g);
    for (size_t i = group.size(); i > 1; --i) std::swap(group[i - 1], group[rng.index(i)]);
    const GroupInsertion got = group_insertion_cost(inst, make_tour(inst, 0, order), group);
    const double base = testkit::raw_tour_cost(inst, 0, order);
    double best = std::numeric_limits<double>::infinity();
    for (size_t p = 0; p <= order.size(); ++p) {
      for (bool rev : {false, true}) {
        auto o = order;
        if (rev) {
          o.insert(o.begin() + static_cast<std::ptrdiff_t>(p), group.rbegin(), group.rend());
        } else {
          o.insert(o.begin() + static_cast<std::ptrdiff_t>(p), group.begin(), group.end());
        }
        best = std::min(best, testkit::raw_tour_cost(inst, 0, o) - base);
      }
    }
    const double rel = std::abs(got.cost - best) / std::max(1.0, std::abs(best));
    worst = std::max(worst, rel);
    violations += rel > 1e-9;
  }
  return {violations == 0, fmt("%ld cases, %ld violations, worst rel error %.2e", cases, violations, worst)};
}

// 6. 43 bases, one too small for five targets per vehicle, give 128 instances.
Outcome suite_shape() {
  Rng rng(6006);
  std::vector<BaseInstance> bases;
  bases.push_back(random_base_instance("MM1", 18, 4, rng));  // ratio 4.5
  for (int b = 2; b <= 43; ++b) {
    const int k = 2 + static_cast<int>(rng.index(19));
    const int n = std::max(5 * k, 20 + static_cast<int>(rng.index(481)));
    bases.push_back(random_base_instance("MM" + std::to_string(b), n, k, rng));
  }
  const Suite suite = generate_suite(bases, 6006);
  int bad_cardinality = 0;
  int per_mode[6] = {0, 0, 0, 0, 0, 0};
  for (const auto& inst : suite.instances) {
    const int mode = inst.name().back() - '0';
    ++per_mode[mode];
    for (const auto& v : inst.vehicles()) bad_cardinality += static_cast<int>(v.required.size()) != mode;
  }
  const bool ok = suite.instances.size() == 128 && suite.errors.empty() && bad_cardinality == 0 && per_mode[0] == 43 &&
                  per_mode[3] == 43 && per_mode[5] == 42;
  return {ok, fmt("%zu instances (%d/%d/%d for 0/3/5), %zu errors, %d wrong R_i sizes", suite.instances.size(),
                  per_mode[0], per_mode[3], per_mode[5], suite.errors.size(), bad_cardinality)};
}

// 7. Perturbation: strict improvement on acceptance, <= 5 attempts, 144 degree ladder.
Outcome perturbation_contract() {
  Rng rng(7007);
  constexpr double kStep = 144.0 * std::numbers::pi / 180.0;
  int accepted = 0, violations = 0, max_attempts = 0;
  SolverConfig cfg;
  for (int round = 0; round < 100; ++round) {
    const int k = 2 + static_cast<int>(rng.index(4));
    const Instance inst = testkit::random_instance(rng, 10 + static_cast<int>(rng.index(31)), k,
                                                   static_cast<int>(rng.index(2)));
    Solution inc = testkit::random_solution(inst, rng);
    for (auto& t : inc.tours) t = optimize_tour(inst, t);
    inc.refresh_objective();
    if (round % 2 == 0) inc = local_search(inc, inst, cfg);
    Rng r(derive_seed(7007, static_cast<std::uint64_t>(round)));
    const PerturbationResult p = perturbation_round(inc, inst, cfg, r);
    max_attempts = std::max(max_attempts, p.attempts);
    violations += p.attempts < 1 || p.attempts > 5 || static_cast<int>(p.angles.size()) != p.attempts;
    violations += !p.improved && p.attempts != 5;
    for (int a = 0; a < static_cast<int>(p.angles.size()); ++a) {
      for (int v = 0; v < k; ++v) {
        const double theta = p.thetas[static_cast<size_t>(v)];
        violations += !(theta >= 0.0 && theta < 2 * std::numbers::pi);
        const double want = std::fmod(theta + a * kStep, 2 * std::numbers::pi);
        violations += std::abs(p.angles[static_cast<size_t>(a)][static_cast<size_t>(v)] - want) > 1e-12;
      }
    }
    if (p.improved) {
      ++accepted;
      violations += !(testkit::raw_objective(inst, p.solution) < inc.objective);
      violations += !validate_solution(inst, p.solution).ok();
    }
  }
  return {violations == 0,
          fmt("100 rounds, %d accepted, max %d attempts, %d violations", accepted, max_attempts, violations)};
}

// 8. Desk-scale runtime.
Outcome runtime() {
  Rng rng(8008);
  const BaseInstance b100 = random_base_instance("R100", 100, 10, rng);
  const Instance i100 = with_speeds(b100, assign_speeds(10, rng));
  auto t0 = Clock::now();
  const SolveResult r100 = solve(i100, SolverConfig{});
  const double s100 = seconds_since(t0);

  const BaseInstance b500 = random_base_instance("R500", 500, 20, rng);
  const Instance i500 = with_speeds(b500, assign_speeds(20, rng));
  int completed_seed = -1;
  double s500 = 0.0;
  for (int seed = 1; seed <= 3 && completed_seed < 0; ++seed) {
    SolverConfig cfg;
    cfg.runs = 1;
    cfg.rng_seed = static_cast<std::uint64_t>(seed);
    t0 = Clock::now();
    const SolveResult r = solve(i500, cfg);
    s500 = seconds_since(t0);
    if (!r.truncated) completed_seed = seed;
  }
  return {s100 < 120.0 && !r100.truncated && completed_seed > 0,
          fmt("100x10 with 3 runs: %.2f s (limit 120); 500x20: %s in %.1f s", s100,
              completed_seed > 0 ? ("completed on seed " + std::to_string(completed_seed)).c_str() : "truncated",
              s500)};
}

// 9. Better/equal/worse bookkeeping.
Outcome reference_bookkeeping() {
  Rng rng(9009);
  ReferenceTable ref;
  std::vector<ResultRow> rows;
  int better = 0, equal = 0, worse = 0;
  for (int i = 0; i < 300; ++i) {
    const std::string name = "I" + std::to_string(i);
    const double r = testkit::uniform(rng, 10.0, 500.0);
    ref[name] = {r, 1.0};
    const double factors[] = {0.9, 1.0, 1.0 + 1e-8, 1.0 - 1e-8, 1.1, 1.0 + 1e-4};
    const double obj = r * factors[rng.index(6)];
    rows.push_back({name, "c", obj, 0.0, 0, 1, "ok"});
    // Independent tally: relative gap against the published value.
    const double gap = (obj - r) / r;
    if (std::abs(gap) <= 1e-6) {
      ++equal;
    } else if (gap < 0) {
      ++better;
    } else {
      ++worse;
    }
  }
  const ComparisonReport rep = compare_to_reference(rows, ref);
  const bool counts = rep.better == better && rep.equal == equal && rep.worse == worse &&
                      rep.better + rep.equal + rep.worse == static_cast<int>(rows.size());

  const ReferenceTable md = read_reference_file(std::string(MMTSP_DATA_DIR) + "/reference/modified_md.csv");
  const std::vector<ResultRow> example = {{"MM11_0", "c", 70.12, 0.0, 0, 1, "ok"}};
  const ComparisonReport ex = compare_to_reference(example, md);
  const bool worked = ex.rows.size() == 1 && ex.rows[0].reference == 73.49 && ex.rows[0].verdict == Verdict::Better &&
                      std::abs(ex.rows[0].deviation_pct - (-4.59)) < 0.005;
  return {counts && worked, fmt("counts %d/%d/%d vs tally %d/%d/%d; MM11_0 73.49 -> 70.12 %s (%.2f%%)", rep.better,
                                rep.equal, rep.worse, better, equal, worse,
                                ex.rows.empty() ? "?" : to_string(ex.rows[0].verdict),
                                ex.rows.empty() ? 0.0 : ex.rows[0].deviation_pct)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"oracle gap", oracle_gap},
      {"proxy-cost exactness", proxy_exactness},
      {"monotonicity and feasibility", monotone_feasible},
      {"group-savings order independence", group_savings_order},
      {"group splice oracle", splice_oracle},
      {"suite shape", suite_shape},
      {"perturbation contract", perturbation_contract},
      {"desk-scale runtime", runtime},
      {"reference bookkeeping", reference_bookkeeping},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (int c = 1; c <= 9; ++c) {
    if (!only.empty() && !only.count(c)) continue;
    const auto t0 = Clock::now();
    Outcome out;
    try {
      out = criteria[c - 1].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failed += !out.pass;
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", out.pass ? "PASS" : "FAIL", c, criteria[c - 1].first,
                out.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
