#pragma once

#include "drp/flight.hpp"
#include "drp/solution.hpp"

namespace drp {

struct OracleOptions {
  bool hover = false;  // price waits with hover power
  int max_requests = 8;
};

struct OracleResult {
  bool feasible = false;
  double objective = 0;
  Solution solution;
  long trips = 0;   // ordered feasible trips enumerated
  long labels = 0;  // route labels kept
};

// Exhaustive optimum over ordered trips, trip sequences per drone and
// partitions onto at most N drones. Throws ConfigError above max_requests.
OracleResult brute_force_solve(const DeliveryContext& ctx, const OracleOptions& opt = {});

// Cheapest hover pricing of a fixed route; returns false if no schedule
// satisfies windows, depot close and battery. Fills service times.
bool price_route_hover(const DeliveryContext& ctx, const Route& route, double& hover_energy,
                       std::vector<double>* service = nullptr);

// Most requests any single feasible trip serves.
int max_requests_per_trip(const DeliveryContext& ctx);

}  // namespace drp
