#pragma once

#include <string>
#include <vector>

#include "drp/flight.hpp"
#include "drp/solution.hpp"

namespace drp {

struct ValidationOptions {
  // Price waits with eh using the solution's service times instead of
  // re-deriving an earliest-start schedule.
  bool hover = false;
  double objective_tol = 1e-6;  // relative
  bool check_objective = true;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
  double objective = 0;
  double transport = 0, energy = 0, hover = 0;

  std::string summary() const;
};

// Model-independent re-check of a solution against the instance.
ValidationReport validate_solution(const Solution& sol, const DeliveryContext& ctx,
                                   const ValidationOptions& opt = {});

}  // namespace drp
