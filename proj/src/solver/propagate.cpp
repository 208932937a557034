#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "drp/propagate.hpp"

namespace drp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasTol = 1e-6;

}  // namespace

BoundPropagator::BoundPropagator(const MilpModel& m) : n_(m.num_vars()), m_(m.num_rows()) {
  row_start_.push_back(0);
  std::vector<int> count(n_, 0);
  for (const auto& r : m.rows) {
    for (const auto& [j, v] : r.terms) {
      row_col_.push_back(j);
      row_val_.push_back(v);
      ++count[j];
    }
    row_start_.push_back(static_cast<int>(row_col_.size()));
    row_lo_.push_back(r.sense == Sense::LE ? -kInf : r.rhs);
    row_hi_.push_back(r.sense == Sense::GE ? kInf : r.rhs);
  }
  col_start_.assign(n_ + 1, 0);
  for (int j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + count[j];
  col_row_.resize(row_col_.size());
  std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
  for (int i = 0; i < m_; ++i)
    for (int k = row_start_[i]; k < row_start_[i + 1]; ++k) col_row_[fill[row_col_[k]]++] = i;
  integer_.resize(n_);
  for (int j = 0; j < n_; ++j) integer_[j] = m.is_integer(j);
}

bool BoundPropagator::propagate(std::vector<double>& lb, std::vector<double>& ub, std::vector<int>* changed,
                                const std::vector<int>* seeds) const {
  std::vector<char> queued(m_, 0), touched(n_, 0);
  std::deque<int> queue;
  auto push_rows = [&](int j) {
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      const int i = col_row_[k];
      if (!queued[i]) {
        queued[i] = 1;
        queue.push_back(i);
      }
    }
  };
  if (seeds) {
    for (int j : *seeds) push_rows(j);
  } else {
    for (int i = 0; i < m_; ++i) {
      queued[i] = 1;
      queue.push_back(i);
    }
  }

  long budget = 20L * static_cast<long>(row_col_.size()) + 1000;
  while (!queue.empty() && budget > 0) {
    const int i = queue.front();
    queue.pop_front();
    queued[i] = 0;
    const int k0 = row_start_[i], k1 = row_start_[i + 1];
    budget -= 2L * (k1 - k0);

    // Activity range with separate counts of infinite contributions.
    double amin = 0, amax = 0;
    int inf_min = 0, inf_max = 0;
    for (int k = k0; k < k1; ++k) {
      const int j = row_col_[k];
      const double a = row_val_[k];
      const double lo = a > 0 ? lb[j] : ub[j], hi = a > 0 ? ub[j] : lb[j];
      if (std::isfinite(lo)) amin += a * lo; else ++inf_min;
      if (std::isfinite(hi)) amax += a * hi; else ++inf_max;
    }
    const double scale = std::max({1.0, std::abs(row_lo_[i]) * (std::isfinite(row_lo_[i]) ? 1 : 0),
                                   std::abs(row_hi_[i]) * (std::isfinite(row_hi_[i]) ? 1 : 0)});
    if (inf_min == 0 && amin > row_hi_[i] + kFeasTol * scale) return false;
    if (inf_max == 0 && amax < row_lo_[i] - kFeasTol * scale) return false;

    for (int k = k0; k < k1; ++k) {
      const int j = row_col_[k];
      const double a = row_val_[k];
      const double lo_j = a > 0 ? lb[j] : ub[j], hi_j = a > 0 ? ub[j] : lb[j];
      double new_lb = lb[j], new_ub = ub[j];
      // Others at their minimum: a x_j <= hi - rest_min.
      if (std::isfinite(row_hi_[i])) {
        const bool own_inf = !std::isfinite(lo_j);
        if (inf_min - (own_inf ? 1 : 0) == 0) {
          const double rest = own_inf ? amin : amin - a * lo_j;
          const double bound = (row_hi_[i] - rest) / a;
          if (a > 0) new_ub = std::min(new_ub, bound); else new_lb = std::max(new_lb, bound);
        }
      }
      // Others at their maximum: a x_j >= lo - rest_max.
      if (std::isfinite(row_lo_[i])) {
        const bool own_inf = !std::isfinite(hi_j);
        if (inf_max - (own_inf ? 1 : 0) == 0) {
          const double rest = own_inf ? amax : amax - a * hi_j;
          const double bound = (row_lo_[i] - rest) / a;
          if (a > 0) new_lb = std::max(new_lb, bound); else new_ub = std::min(new_ub, bound);
        }
      }
      bool moved = false;
      if (integer_[j]) {
        new_lb = std::ceil(new_lb - kFeasTol);
        new_ub = std::floor(new_ub + kFeasTol);
        if (new_lb > lb[j]) moved = true; else new_lb = lb[j];
        if (new_ub < ub[j]) moved = true; else new_ub = ub[j];
      } else {
        const double width = std::isfinite(ub[j] - lb[j]) ? ub[j] - lb[j] : kInf;
        const double step = std::max(1e-4, 1e-3 * (std::isfinite(width) ? width : 1.0));
        // Keep a hair of slack against roundoff.
        if (new_lb > lb[j] + step) {
          new_lb -= 1e-9 * std::max(1.0, std::abs(new_lb));
          moved = true;
        } else {
          new_lb = lb[j];
        }
        if (new_ub < ub[j] - step) {
          new_ub += 1e-9 * std::max(1.0, std::abs(new_ub));
          moved = true;
        } else {
          new_ub = ub[j];
        }
      }
      if (!moved) continue;
      if (new_lb > new_ub) {
        if (new_lb > new_ub + kFeasTol * std::max(1.0, std::abs(new_ub))) return false;
        if (integer_[j]) return false;
        new_lb = new_ub = std::min(std::max(new_lb, lb[j]), ub[j]);
      }
      lb[j] = new_lb;
      ub[j] = new_ub;
      if (!touched[j]) {
        touched[j] = 1;
        if (changed) changed->push_back(j);
      }
      push_rows(j);
      // This row's activity is stale now; it is back in the queue.
      break;
    }
  }
  return true;
}

}  // namespace drp
