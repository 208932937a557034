#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "drp/milp_model.hpp"

namespace drp {

class SimplexRun;

// Cutoff: the dual bound passed the caller's cutoff before optimality.
enum class LpStatus { Optimal, Infeasible, Unbounded, Cutoff };
const char* lp_status_name(LpStatus s);

struct LpOptions {
  double primal_tol = 1e-7;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  int refactor_interval = 64;
  long max_iterations = 0;  // 0: automatic
};

// Basis snapshot: basic variable per row and a status per variable
// (structurals first, then one logical per row).
struct LpBasis {
  std::vector<int> head;
  std::vector<signed char> status;
  bool empty() const { return head.empty(); }
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0;
  std::vector<double> x;
  std::vector<double> row_activity;
  long iterations = 0;
  LpBasis basis;
};

// Bounded dual simplex on min c'x, rl <= Ax <= ru, l <= x <= u.
// Integrality is ignored. solve() is const and may run concurrently.
class DualSimplex {
 public:
  explicit DualSimplex(const MilpModel& model, LpOptions opt = {});
  LpResult solve(const std::vector<double>& lb, const std::vector<double>& ub,
                 const LpBasis* warm = nullptr,
                 double cutoff = std::numeric_limits<double>::infinity()) const;
  LpResult solve() const { return solve(col_lb_, col_ub_); }

  int rows() const { return m_; }
  int cols() const { return n_; }
  const std::vector<double>& col_lb() const { return col_lb_; }
  const std::vector<double>& col_ub() const { return col_ub_; }
  const LpOptions& options() const { return opt_; }

 private:
  friend class SimplexRun;
  int m_ = 0, n_ = 0;
  Eigen::SparseMatrix<double, Eigen::ColMajor> a_col_;
  Eigen::SparseMatrix<double, Eigen::RowMajor> a_row_;
  std::vector<double> cost_, col_lb_, col_ub_, row_lb_, row_ub_;
  double offset_ = 0;
  LpOptions opt_;
};

// A solve that can be resumed after tightening structural bounds, keeping
// the factorization between calls.
class LpSession {
 public:
  LpSession(const DualSimplex& lp, const std::vector<double>& lb, const std::vector<double>& ub,
            const LpBasis* warm = nullptr);
  ~LpSession();
  LpSession(const LpSession&) = delete;
  LpSession& operator=(const LpSession&) = delete;

  LpResult solve(double cutoff = std::numeric_limits<double>::infinity());
  void set_bounds(int j, double lb, double ub);

 private:
  std::unique_ptr<SimplexRun> run_;
  bool feasible_bounds_ = true;
};

LpResult solve_lp(const MilpModel& model, const LpOptions& opt = {});

}  // namespace drp
