#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "drp/flight.hpp"

namespace drp {

bool approx_le(double a, double b, double tol) {
  if (std::isinf(b) && b > 0) return true;
  return a <= b + tol * std::max(1.0, std::abs(b));
}

DeliveryContext::DeliveryContext(Instance inst, std::shared_ptr<const EnergyModel> model)
    : inst_(std::move(inst)), model_(std::move(model)) {
  tables_ = travel_tables(inst_);
}

DeliveryContext::DeliveryContext(Instance inst, TravelTables tables,
                                 std::shared_ptr<const EnergyModel> model)
    : inst_(std::move(inst)), tables_(std::move(tables)), model_(std::move(model)) {}

double DeliveryContext::trip_weight(const std::vector<int>& trip) const {
  double w = 0;
  for (int r : trip) w += inst_.request(r).q;
  return w;
}

double DeliveryContext::trip_energy(const std::vector<int>& trip) const {
  if (trip.empty()) return 0;
  return simulate(trip, -kInf).energy;
}

double DeliveryContext::trip_cost(const std::vector<int>& trip) const {
  double c = 0;
  int pos = 0;
  for (int r : trip) {
    c += tables_.cost(pos, r);
    pos = r;
  }
  if (!trip.empty()) c += tables_.cost(pos, n() + 1);
  return c;
}

double DeliveryContext::trip_objective(const std::vector<int>& trip) const {
  return inst_.transport_weight() * trip_cost(trip) + inst_.energy_weight() * trip_energy(trip);
}

TripSchedule DeliveryContext::simulate(const std::vector<int>& trip, double ready,
                                       const LegOverride* legs) const {
  TripSchedule s;
  const int k = static_cast<int>(trip.size());
  // Payload after each stop, summed from the tail to avoid drift.
  std::vector<double> carried(k + 1, 0.0);
  for (int i = k - 1; i >= 0; --i) carried[i] = carried[i + 1] + inst_.request(trip[i]).q;
  s.weight = carried[0];
  s.depart = std::max(ready, inst_.a_d);
  s.arrival.resize(k);
  s.service.resize(k);
  s.feasible = true;
  auto fail = [&](std::string why) {
    if (s.feasible) {
      s.feasible = false;
      s.violation = std::move(why);
    }
  };
  if (!approx_le(s.weight, inst_.capacity)) fail(fmt::format("capacity {} > {}", s.weight, inst_.capacity));

  auto time_of = [&](int i, int j, double w) {
    return legs && legs->time ? inst_.flight.leg_time(legs->time(i, j), w) : leg_time(i, j, w);
  };
  auto energy_of = [&](int i, int j, double w) {
    return legs && legs->energy ? legs->energy(i, j, w) : leg_energy(i, j, w);
  };

  double clock = s.depart;
  int pos = 0;
  for (int i = 0; i < k; ++i) {
    const int r = trip[i];
    const Request& req = inst_.request(r);
    clock += time_of(pos, r, carried[i]);
    s.energy += energy_of(pos, r, carried[i]);
    s.cost += tables_.cost(pos, r);
    s.arrival[i] = clock;
    clock = std::max(clock, req.a);
    s.service[i] = clock;
    if (!approx_le(clock, req.b)) fail(fmt::format("request {} served at {} after close {}", r, clock, req.b));
    pos = r;
  }
  if (k > 0) {
    clock += time_of(pos, n() + 1, 0.0);
    s.energy += energy_of(pos, n() + 1, 0.0);
    s.cost += tables_.cost(pos, n() + 1);
  }
  s.return_time = clock;
  if (!approx_le(clock, inst_.b_d)) fail(fmt::format("return at {} after depot close {}", clock, inst_.b_d));
  if (!approx_le(s.energy, inst_.battery)) fail(fmt::format("battery: energy {} > {}", s.energy, inst_.battery));
  return s;
}

double trip_energy(const EnergyModel& model, const std::vector<int>& trip, const Instance& inst,
                   const TravelTables& tables) {
  double e = 0, load = 0;
  for (int r : trip) load += inst.request(r).q;
  int pos = 0;
  for (int r : trip) {
    e += model.arc_energy(load, tables.time(pos, r));
    load = 0;
    for (auto it = std::find(trip.begin(), trip.end(), r) + 1; it != trip.end(); ++it)
      load += inst.request(*it).q;
    pos = r;
  }
  if (!trip.empty()) e += model.arc_energy(0.0, tables.time(pos, inst.n() + 1));
  return e;
}

}  // namespace drp
