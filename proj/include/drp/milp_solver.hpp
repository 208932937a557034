#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "drp/lp.hpp"
#include "drp/milp_model.hpp"

namespace drp {

enum class MilpStatus { Optimal, GapLimit, TimeLimit, Infeasible };
const char* milp_status_name(MilpStatus s);

struct MilpParams {
  double gap = 1e-4;
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
  int threads = 1;
  bool branch_nu = false;
  long node_limit = 0;  // 0: none
  double int_tol = 1e-6;
};

struct BoundSample {
  long node = 0;
  double lb = 0, up = 0;
};

struct MilpResult {
  MilpStatus status = MilpStatus::Infeasible;
  double up = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  double root_bound = -std::numeric_limits<double>::infinity();
  long nodes = 0;
  long lp_iterations = 0;
  double seconds = 0;
  bool has_solution = false;
  std::vector<double> x;
  long rejected_incumbents = 0;
  std::vector<BoundSample> trace;
};

// Returns false to reject an integral point (e.g. it fails validation).
using IncumbentCheck = std::function<bool(const std::vector<double>&)>;

MilpResult solve_milp(const MilpModel& model, const MilpParams& params = {},
                      const IncumbentCheck& check = {});

double relative_gap(double up, double lb);

}  // namespace drp
