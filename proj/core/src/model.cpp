#include "mmtsp/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mmtsp/error.hpp"

namespace mmtsp {

namespace {

bool finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace

double euclidean(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double edge_cost(const Point& a, const Point& b, double speed) {
  if (!finite(a) || !finite(b)) throw InvalidInput("edge_cost: non-finite coordinate");
  if (!(speed > 0.0) || !std::isfinite(speed)) throw InvalidInput("edge_cost: speed must be positive");
  return euclidean(a, b) / speed;
}

Instance::Instance(std::string name, std::vector<Point> targets, std::vector<VehicleSpec> vehicles)
    : name_(std::move(name)), targets_(std::move(targets)), vehicles_(std::move(vehicles)) {
  if (vehicles_.empty()) throw InvalidInput("instance '" + name_ + "': needs at least one vehicle");
  for (size_t t = 0; t < targets_.size(); ++t) {
    if (!finite(targets_[t])) {
      throw InvalidInput("instance '" + name_ + "': target " + std::to_string(t) +
                         " has a non-finite coordinate");
    }
  }
  owner_.assign(targets_.size(), kNoVehicle);
  for (size_t v = 0; v < vehicles_.size(); ++v) {
    const auto& spec = vehicles_[v];
    if (!finite(spec.depot)) {
      throw InvalidInput("instance '" + name_ + "': depot of vehicle " + std::to_string(v) +
                         " has a non-finite coordinate");
    }
    if (!(spec.speed > 0.0) || !std::isfinite(spec.speed)) {
      throw InvalidInput("instance '" + name_ + "': vehicle " + std::to_string(v) +
                         " needs a positive finite speed");
    }
    for (TargetId t : spec.required) {
      if (t < 0 || t >= num_targets()) {
        throw InvalidInput("instance '" + name_ + "': vehicle " + std::to_string(v) +
                           " requires unknown target " + std::to_string(t));
      }
      auto& owner = owner_[static_cast<size_t>(t)];
      if (owner == static_cast<VehicleId>(v)) {
        throw InvalidInput("instance '" + name_ + "': target " + std::to_string(t) +
                           " listed twice for vehicle " + std::to_string(v));
      }
      if (owner != kNoVehicle) {
        throw InvalidInput("instance '" + name_ + "': target " + std::to_string(t) +
                           " required by both vehicle " + std::to_string(owner) + " and vehicle " +
                           std::to_string(v));
      }
      owner = static_cast<VehicleId>(v);
    }
  }
  num_free_ = static_cast<int>(std::count(owner_.begin(), owner_.end(), kNoVehicle));

  const int n = num_vertices();
  if (n <= kMaxMatrixVertices) {
    matrix_.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) {
      const Point& pa = vertex(a);
      matrix_[static_cast<size_t>(a) * static_cast<size_t>(n) + static_cast<size_t>(a)] = 0.0;
      for (int b = a + 1; b < n; ++b) {
        const double d = euclidean(pa, vertex(b));
        matrix_[static_cast<size_t>(a) * static_cast<size_t>(n) + static_cast<size_t>(b)] = d;
        matrix_[static_cast<size_t>(b) * static_cast<size_t>(n) + static_cast<size_t>(a)] = d;
      }
    }
  }
}

const Point& Instance::vertex(VertexId id) const {
  if (id < num_targets()) return targets_[static_cast<size_t>(id)];
  return vehicles_[static_cast<size_t>(id - num_targets())].depot;
}

void Instance::fill_depot_rows() {
  if (matrix_.empty()) return;
  const auto n = static_cast<size_t>(num_vertices());
  for (int v = 0; v < num_vehicles(); ++v) {
    const auto a = static_cast<size_t>(depot_vertex(v));
    const Point& pa = vertex(depot_vertex(v));
    for (size_t b = 0; b < n; ++b) {
      const double d = (a == b) ? 0.0 : euclidean(pa, vertex(static_cast<VertexId>(b)));
      matrix_[a * n + b] = d;
      matrix_[b * n + a] = d;
    }
  }
}

Instance Instance::with_depots(std::span<const Point> depots) const {
  if (static_cast<int>(depots.size()) != num_vehicles()) {
    throw InvalidInput("with_depots: expected one depot per vehicle");
  }
  for (const auto& p : depots) {
    if (!finite(p)) throw InvalidInput("with_depots: non-finite depot coordinate");
  }
  Instance moved = *this;
  for (size_t v = 0; v < depots.size(); ++v) moved.vehicles_[v].depot = depots[v];
  moved.fill_depot_rows();
  return moved;
}

double tour_cost(const Instance& inst, VehicleId vehicle, std::span<const TargetId> order) {
  if (vehicle < 0 || vehicle >= inst.num_vehicles()) {
    throw InvalidInput("tour_cost: unknown vehicle " + std::to_string(vehicle));
  }
  if (order.empty()) return 0.0;
  for (TargetId t : order) {
    if (t < 0 || t >= inst.num_targets()) {
      throw InvalidInput("tour_cost: unknown target " + std::to_string(t));
    }
  }
  const VertexId depot = inst.depot_vertex(vehicle);
  double total = inst.cost(vehicle, depot, order.front());
  for (size_t i = 1; i < order.size(); ++i) total += inst.cost(vehicle, order[i - 1], order[i]);
  total += inst.cost(vehicle, order.back(), depot);
  return total;
}

Tour make_tour(const Instance& inst, VehicleId vehicle, std::vector<TargetId> order) {
  Tour tour{vehicle, std::move(order), 0.0};
  tour.cost = tour_cost(inst, vehicle, tour.order);
  return tour;
}

void Solution::refresh_objective() {
  objective = 0.0;
  for (const auto& t : tours) objective = std::max(objective, t.cost);
}

VehicleId Solution::maximal_vehicle() const {
  VehicleId best = tours.empty() ? kNoVehicle : 0;
  for (size_t v = 1; v < tours.size(); ++v) {
    if (tours[v].cost > tours[static_cast<size_t>(best)].cost) best = static_cast<VehicleId>(v);
  }
  return best;
}

std::vector<std::vector<TargetId>> Solution::allocation() const {
  std::vector<std::vector<TargetId>> out;
  out.reserve(tours.size());
  for (const auto& t : tours) out.push_back(t.order);
  return out;
}

Solution make_solution(const Instance& inst, std::vector<std::vector<TargetId>> orders) {
  if (static_cast<int>(orders.size()) != inst.num_vehicles()) {
    throw InvalidInput("make_solution: expected one order per vehicle");
  }
  Solution sol;
  sol.tours.reserve(orders.size());
  for (size_t v = 0; v < orders.size(); ++v) {
    sol.tours.push_back(make_tour(inst, static_cast<VehicleId>(v), std::move(orders[v])));
  }
  sol.refresh_objective();
  return sol;
}

std::vector<VehicleId> assignment_of(const Instance& inst, const Solution& sol) {
  std::vector<VehicleId> who(static_cast<size_t>(inst.num_targets()), kNoVehicle);
  for (const auto& tour : sol.tours) {
    for (TargetId t : tour.order) {
      if (t >= 0 && t < inst.num_targets()) who[static_cast<size_t>(t)] = tour.vehicle;
    }
  }
  return who;
}

bool nearly_equal(double a, double b, double rel_tol) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= rel_tol * scale;
}

std::string ValidationReport::to_string() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

ValidationReport validate_solution(const Instance& inst, const Solution& sol) {
  constexpr double kDriftTol = 1e-9;
  ValidationReport report;
  auto& out = report.violations;

  if (static_cast<int>(sol.tours.size()) != inst.num_vehicles()) {
    out.push_back("expected " + std::to_string(inst.num_vehicles()) + " tours, found " +
                  std::to_string(sol.tours.size()));
  }

  std::vector<int> seen(static_cast<size_t>(inst.num_targets()), 0);
  double recomputed_objective = 0.0;
  for (size_t slot = 0; slot < sol.tours.size(); ++slot) {
    const Tour& tour = sol.tours[slot];
    if (tour.vehicle != static_cast<VehicleId>(slot)) {
      out.push_back("tour " + std::to_string(slot) + " is labelled vehicle " +
                    std::to_string(tour.vehicle));
      continue;
    }
    if (tour.vehicle >= inst.num_vehicles()) continue;
    bool ids_ok = true;
    for (TargetId t : tour.order) {
      if (t < 0 || t >= inst.num_targets()) {
        out.push_back("unknown target " + std::to_string(t) + " in tour " + std::to_string(slot));
        ids_ok = false;
        continue;
      }
      if (++seen[static_cast<size_t>(t)] == 2) out.push_back("duplicate target " + std::to_string(t));
      const VehicleId owner = inst.required_owner(t);
      if (owner != kNoVehicle && owner != tour.vehicle) {
        out.push_back("required-assignment breach: target " + std::to_string(t) +
                      " belongs to vehicle " + std::to_string(owner) + " but is in tour " +
                      std::to_string(tour.vehicle));
      }
    }
    if (!ids_ok) continue;
    const double exact = tour_cost(inst, tour.vehicle, tour.order);
    if (!nearly_equal(exact, tour.cost, kDriftTol)) {
      out.push_back("cost-cache drift on tour " + std::to_string(slot) + ": cached " +
                    std::to_string(tour.cost) + ", recomputed " + std::to_string(exact));
    }
    recomputed_objective = std::max(recomputed_objective, exact);
  }
  for (TargetId t = 0; t < inst.num_targets(); ++t) {
    if (seen[static_cast<size_t>(t)] == 0) out.push_back("missed target " + std::to_string(t));
  }
  if (!nearly_equal(recomputed_objective, sol.objective, kDriftTol)) {
    out.push_back("objective drift: cached " + std::to_string(sol.objective) + ", recomputed " +
                  std::to_string(recomputed_objective));
  }
  return report;
}

}  // namespace mmtsp
