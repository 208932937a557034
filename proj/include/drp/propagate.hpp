#pragma once

#include <vector>

#include "drp/milp_model.hpp"

namespace drp {

// Activity-based bound tightening over the rows of a model.
class BoundPropagator {
 public:
  explicit BoundPropagator(const MilpModel& m);

  // Tightens lb/ub in place. Only rows touching `seeds` are examined first
  // (all rows when seeds is null). Indices of tightened variables go to
  // `changed`. Returns false when some row cannot be satisfied.
  bool propagate(std::vector<double>& lb, std::vector<double>& ub, std::vector<int>* changed = nullptr,
                 const std::vector<int>* seeds = nullptr) const;

 private:
  int n_ = 0, m_ = 0;
  std::vector<int> row_start_, row_col_;
  std::vector<double> row_val_, row_lo_, row_hi_;
  std::vector<int> col_start_, col_row_;
  std::vector<char> integer_;
};

}  // namespace drp
