#pragma once

#include <memory>
#include <optional>
#include <string>

#include "drp/formulation.hpp"
#include "drp/milp_solver.hpp"
#include "drp/solution.hpp"
#include "drp/validator.hpp"

namespace drp {

struct SolveOptions {
  FormulationOptions form;
  MilpParams milp;
  GraphOptions graph;
  bool validate_incumbents = true;
};

struct SolveOutcome {
  GeneratedGraph graph;
  MilpModel model;
  MilpResult milp;
  std::optional<Solution> solution;
  ValidationReport report;
  UpmnrResult upmnr;
  SizeAnalysis size;
  double prep_seconds = 0;
  double solve_seconds = 0;
  // Set when some request has no feasible trip; no model is built.
  bool infeasible_instance = false;
};

DeliveryContext make_context(const Instance& inst);

// Generated graph, model, branch-and-bound with validated incumbents,
// extraction and a final independent validation.
SolveOutcome solve_instance(const DeliveryContext& ctx, const SolveOptions& opt = {});

}  // namespace drp
