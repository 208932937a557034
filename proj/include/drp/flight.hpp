#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "drp/energy.hpp"
#include "drp/instance.hpp"

namespace drp {

// Replacement leg data used by the shortest-path variant of the load check.
struct LegOverride {
  std::function<double(int, int)> time;
  std::function<double(int, int, double)> energy;  // (from, to, payload)
};

struct TripSchedule {
  bool feasible = false;
  std::string violation;
  double depart = 0;
  std::vector<double> arrival;  // per stop
  std::vector<double> service;  // per stop
  double return_time = 0;
  double energy = 0;
  double cost = 0;  // transport cost units, before objective weighting
  double weight = 0;
};

// Everything needed to fly trips on one instance.
class DeliveryContext {
 public:
  DeliveryContext(Instance inst, std::shared_ptr<const EnergyModel> model);
  DeliveryContext(Instance inst, TravelTables tables, std::shared_ptr<const EnergyModel> model);

  const Instance& instance() const { return inst_; }
  const TravelTables& tables() const { return tables_; }
  const EnergyModel& model() const { return *model_; }
  std::shared_ptr<const EnergyModel> model_ptr() const { return model_; }
  int n() const { return inst_.n(); }

  double leg_time(int i, int j, double payload) const {
    return inst_.flight.leg_time(tables_.time(i, j), payload);
  }
  double leg_energy(int i, int j, double payload) const {
    return model_->arc_energy(payload, leg_time(i, j, payload));
  }

  double trip_weight(const std::vector<int>& trip) const;
  double trip_energy(const std::vector<int>& trip) const;
  double trip_cost(const std::vector<int>& trip) const;

  // Earliest-start propagation from a ready time at the depot. Checks
  // capacity, windows, the depot close and the battery.
  TripSchedule simulate(const std::vector<int>& trip, double ready,
                        const LegOverride* legs = nullptr) const;

  // Objective contribution of a trip (transport + delta * energy).
  double trip_objective(const std::vector<int>& trip) const;

 private:
  Instance inst_;
  TravelTables tables_;
  std::shared_ptr<const EnergyModel> model_;
};

// Energy of an ordered trip flown depot -> r_1 -> ... -> r_k -> depot.
double trip_energy(const EnergyModel& model, const std::vector<int>& trip,
                   const Instance& inst, const TravelTables& tables);

bool approx_le(double a, double b, double tol = 1e-9);

}  // namespace drp
