#pragma once

#include <span>
#include <string>
#include <vector>

namespace mmtsp {

// Targets are dense ids 0..|T|-1 and vehicles 0..k-1. Internally the depot
// of vehicle v is addressed as vertex |T| + v so that tours, distances and
// depots share one index space.
using TargetId = int;
using VehicleId = int;
using VertexId = int;

inline constexpr VehicleId kNoVehicle = -1;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double euclidean(const Point& a, const Point& b);

// Travel time between two points for a vehicle of the given speed.
// Throws InvalidInput for non-finite coordinates or a non-positive speed.
double edge_cost(const Point& a, const Point& b, double speed);

struct VehicleSpec {
  Point depot;
  double speed = 1.0;
  std::vector<TargetId> required;  // R_i; immovable targets of this vehicle
};

// Immutable problem data. The constructor validates every invariant
// (finite coordinates, positive speeds, R_i in range and mutually disjoint)
// and precomputes the Euclidean distance matrix for up to
// kMaxMatrixVertices vertices. Safe to share between threads.
class Instance {
 public:
  static constexpr int kMaxMatrixVertices = 2000;

  Instance(std::string name, std::vector<Point> targets, std::vector<VehicleSpec> vehicles);

  const std::string& name() const noexcept { return name_; }
  std::span<const Point> targets() const noexcept { return targets_; }
  std::span<const VehicleSpec> vehicles() const noexcept { return vehicles_; }
  const VehicleSpec& vehicle(VehicleId v) const { return vehicles_[static_cast<size_t>(v)]; }

  int num_targets() const noexcept { return static_cast<int>(targets_.size()); }
  int num_vehicles() const noexcept { return static_cast<int>(vehicles_.size()); }
  int num_vertices() const noexcept { return num_targets() + num_vehicles(); }
  int num_free_targets() const noexcept { return num_free_; }

  VertexId depot_vertex(VehicleId v) const noexcept { return num_targets() + v; }
  const Point& vertex(VertexId id) const;

  double distance(VertexId a, VertexId b) const {
    if (!matrix_.empty()) {
      return matrix_[static_cast<size_t>(a) * static_cast<size_t>(num_vertices()) +
                     static_cast<size_t>(b)];
    }
    return euclidean(vertex(a), vertex(b));
  }

  // Edge cost in vehicle v's graph G_v.
  double cost(VehicleId v, VertexId a, VertexId b) const {
    return distance(a, b) / vehicles_[static_cast<size_t>(v)].speed;
  }

  // Vehicle whose R_i holds t, or kNoVehicle for a free target.
  VehicleId required_owner(TargetId t) const { return owner_[static_cast<size_t>(t)]; }
  bool is_free(TargetId t) const { return required_owner(t) == kNoVehicle; }

  bool has_distance_matrix() const noexcept { return !matrix_.empty(); }

  // Same targets and R_i, depots moved. Only the depot rows of the distance
  // matrix are recomputed.
  Instance with_depots(std::span<const Point> depots) const;

 private:
  void fill_depot_rows();

  std::string name_;
  std::vector<Point> targets_;
  std::vector<VehicleSpec> vehicles_;
  std::vector<VehicleId> owner_;
  std::vector<double> matrix_;
  int num_free_ = 0;
};

struct Tour {
  VehicleId vehicle = kNoVehicle;
  std::vector<TargetId> order;  // depot implicit at both ends
  double cost = 0.0;            // cached travel time

  int size() const noexcept { return static_cast<int>(order.size()); }
  bool empty() const noexcept { return order.empty(); }
};

// Vertex at slot s of the closed walk depot, order[0], ..., order[n-1];
// slot 0 and slot n+1 are both the depot.
inline VertexId tour_vertex(const Instance& inst, const Tour& tour, int slot) {
  if (slot <= 0 || slot > tour.size()) return inst.depot_vertex(tour.vehicle);
  return tour.order[static_cast<size_t>(slot - 1)];
}

// Sum of edge costs depot -> order... -> depot. Throws InvalidInput on an
// unknown target id or vehicle id.
double tour_cost(const Instance& inst, VehicleId vehicle, std::span<const TargetId> order);

Tour make_tour(const Instance& inst, VehicleId vehicle, std::vector<TargetId> order);

struct Solution {
  std::vector<Tour> tours;  // tours[i].vehicle == i
  double objective = 0.0;

  void refresh_objective();
  // Vehicle attaining the objective; lowest index on ties.
  VehicleId maximal_vehicle() const;
  // allocation()[v] = targets of vehicle v in tour order
  std::vector<std::vector<TargetId>> allocation() const;
};

Solution make_solution(const Instance& inst, std::vector<std::vector<TargetId>> orders);

// Every target's vehicle in `sol`, kNoVehicle if uncovered.
std::vector<VehicleId> assignment_of(const Instance& inst, const Solution& sol);

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::string to_string() const;
};

// Never throws; every broken constraint becomes one violation line.
ValidationReport validate_solution(const Instance& inst, const Solution& sol);

bool nearly_equal(double a, double b, double rel_tol);

}  // namespace mmtsp
