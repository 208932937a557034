#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "drp/graphgen.hpp"
#include "drp/milp_model.hpp"

namespace drp {

using Trip = std::vector<int>;        // ordered request ids
using Route = std::vector<Trip>;      // trips flown by one drone, in order

struct Solution {
  std::vector<Route> routes;
  // Per cluster 0..n+1: service times and accumulated trip energy on arrival.
  std::vector<double> y, f;
  // Arrival time per request (hover model; equals y otherwise).
  std::vector<double> arrival;
  double objective = 0;
  double transport = 0, energy = 0, hover = 0;  // unweighted parts
  double gap = 0;

  int trip_count() const;
};

// Follows selected arcs from s to e, links trips through z, and
// recomputes y and f by earliest-start propagation. With model_schedule
// the model's y and r values are kept instead.
Solution extract_solution(const MilpModel& m, const std::vector<double>& x, const GeneratedGraph& g,
                          const DeliveryContext& ctx, bool model_schedule = false);

// Earliest-start service times and per-trip accumulated energy.
void propagate_schedule(Solution& sol, const DeliveryContext& ctx);

void write_solution(std::ostream& os, const Solution& sol);
Solution read_solution(std::istream& is);
std::string solution_to_string(const Solution& sol);

}  // namespace drp
