#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/SparseLU>
#include <fmt/format.h>

#include "drp/error.hpp"
#include "drp/lp.hpp"

namespace drp {

const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::Cutoff: return "cutoff";
  }
  return "?";
}

DualSimplex::DualSimplex(const MilpModel& model, LpOptions opt) : opt_(opt) {
  m_ = model.num_rows();
  n_ = model.num_vars();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(model.nonzeros());
  row_lb_.resize(m_);
  row_ub_.resize(m_);
  for (int i = 0; i < m_; ++i) {
    const auto& r = model.rows[i];
    for (const auto& [j, v] : r.terms) trip.emplace_back(i, j, v);
    constexpr double inf = std::numeric_limits<double>::infinity();
    row_lb_[i] = r.sense == Sense::LE ? -inf : r.rhs;
    row_ub_[i] = r.sense == Sense::GE ? inf : r.rhs;
  }
  a_col_.resize(m_, n_);
  a_col_.setFromTriplets(trip.begin(), trip.end());
  a_col_.makeCompressed();
  a_row_ = a_col_;
  a_row_.makeCompressed();
  cost_ = model.obj;
  offset_ = model.obj_offset;
  col_lb_.resize(n_);
  col_ub_.resize(n_);
  for (int j = 0; j < n_; ++j) {
    col_lb_[j] = model.vars[j].lb;
    col_ub_[j] = model.vars[j].ub;
  }
}

namespace {

enum : signed char { kBasic = 0, kLower = 1, kUpper = 2, kZero = 3 };
constexpr double kBigBox = 1e9;
// Reduced-cost errors up to this size are absorbed by shifting costs.
constexpr double kShiftLimit = 1e-6;

}  // namespace

// Working state of one solve.
class SimplexRun {
 public:
  SimplexRun(const DualSimplex& lp, const std::vector<double>& lb, const std::vector<double>& ub)
      : lp_(lp), m_(lp.m_), n_(lp.n_), nt_(lp.n_ + lp.m_), opt_(lp.opt_) {
    lo_.resize(nt_);
    up_.resize(nt_);
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lb[j];
      up_[j] = ub[j];
    }
    for (int i = 0; i < m_; ++i) {
      lo_[n_ + i] = lp.row_lb_[i];
      up_[n_ + i] = lp.row_ub_[i];
    }
    // Open row sides get the activity range implied by the column bounds.
    std::vector<double> amin(m_, 0.0), amax(m_, 0.0);
    for (int j = 0; j < n_; ++j)
      for (Eigen::SparseMatrix<double>::InnerIterator it(lp.a_col_, j); it; ++it) {
        const double v = it.value();
        const int i = static_cast<int>(it.row());
        amin[i] += v > 0 ? v * lb[j] : v * ub[j];
        amax[i] += v > 0 ? v * ub[j] : v * lb[j];
      }
    for (int i = 0; i < m_; ++i) {
      if (!std::isfinite(lo_[n_ + i]) && std::isfinite(amin[i]))
        lo_[n_ + i] = amin[i] - 1e-6 * std::max(1.0, std::abs(amin[i]));
      if (!std::isfinite(up_[n_ + i]) && std::isfinite(amax[i]))
        up_[n_ + i] = amax[i] + 1e-6 * std::max(1.0, std::abs(amax[i]));
    }
    artificial_.assign(nt_, 0);
    skip_.assign(nt_, 0);
    x_.assign(nt_, 0.0);
    d_.assign(nt_, 0.0);
    cost_.assign(nt_, 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = lp.cost_[j];
    base_cost_ = cost_;
  }

  // False when some variable has crossing bounds.
  bool start(const LpBasis* warm) {
    for (int j = 0; j < nt_; ++j)
      if (lo_[j] > up_[j] + opt_.primal_tol) return false;
    bool ok = false;
    if (warm && load_basis(*warm)) ok = factor();
    if (!ok) {
      slack_basis();
      if (!factor()) throw StallError("slack basis factorization failed");
    }
    refresh();
    return true;
  }

  // Moves a structural bound. A nonbasic variable keeps its side, so the
  // basis stays dual feasible.
  bool set_bounds(int j, double lb, double ub) {
    lo_[j] = lb;
    up_[j] = ub;
    if (lb > ub + opt_.primal_tol) return false;
    if (st_[j] == kBasic) return true;
    if (lb == ub || (st_[j] == kUpper && !std::isfinite(ub))) st_[j] = kLower;
    if (st_[j] == kLower && !std::isfinite(lb)) st_[j] = std::isfinite(ub) ? kUpper : kZero;
    const double step = nonbasic_value(j) - x_[j];
    if (step != 0.0) {
      Eigen::VectorXd col(m_);
      column(j, col);
      ftran(col);
      for (int p = 0; p < m_; ++p)
        if (col[p] != 0.0) x_[head_[p]] -= step * col[p];
      x_[j] += step;
    }
    return true;
  }

  LpResult run(double cutoff) {
    LpResult res;
    iterations_ = 0;
    perturbed_ = false;
    allow_shift_ = true;

    const long cap = opt_.max_iterations > 0 ? opt_.max_iterations : 2000 + 60L * (nt_ + m_);
    const long perturb_after = 50;
    const long bland_after = perturb_after + 3L * (m_ + n_);
    long degenerate = 0;
    bool bland = false;
    int final_checks = 0;
    Eigen::VectorXd rho(m_), col(m_);
    std::vector<double> alpha(nt_, 0.0);
    std::vector<char> mark(nt_, 0);
    std::vector<int> touched;

    for (;;) {
      if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
        if (!factor()) {
          slack_basis();
          if (!factor()) throw StallError("refactorization failed");
        }
        refresh();
      }

      // Leaving row: most infeasible basic variable, or lowest index under Bland.
      int r = -1;
      double best = 0;
      for (int p = 0; p < m_; ++p) {
        const int j = head_[p];
        const double v = x_[j];
        double viol = 0;
        if (v < lo_[j] - tol(lo_[j]))
          viol = lo_[j] - v;
        else if (v > up_[j] + tol(up_[j]))
          viol = v - up_[j];
        if (viol <= 0 || skip_[j]) continue;
        if (bland) {
          if (r < 0 || j < head_[r]) r = p;
        } else if (viol > best) {
          best = viol;
          r = p;
        }
      }
      if (r < 0) {
        // Confirm on a fresh factorization before declaring optimality.
        if (!etas_.empty() && final_checks < 3) {
          ++final_checks;
          if (!factor()) {
            slack_basis();
            factor();
          }
          refresh();
          continue;
        }
        if (shifted_) {
          // Drop the cost shifts and clean up with the true costs.
          cost_ = base_cost_;
          shifted_ = false;
          allow_shift_ = false;
          final_checks = 0;
          refresh();
          continue;
        }
        return finish(res);
      }

      const int jl = head_[r];
      const bool to_lower = x_[jl] < lo_[jl];
      const double bound = to_lower ? lo_[jl] : up_[jl];
      const double delta = x_[jl] - bound;

      rho.setZero();
      rho[r] = 1.0;
      btran(rho);
      for (int j : touched) {
        alpha[j] = 0.0;
        mark[j] = 0;
      }
      touched.clear();
      for (int i = 0; i < m_; ++i) {
        const double ri = rho[i];
        if (std::abs(ri) < 1e-13) continue;
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(lp_.a_row_, i); it; ++it) {
          const int j = static_cast<int>(it.col());
          if (!mark[j]) {
            mark[j] = 1;
            touched.push_back(j);
          }
          alpha[j] += ri * it.value();
        }
        alpha[n_ + i] = -ri;
        mark[n_ + i] = 1;
        touched.push_back(n_ + i);
      }

      // Dual ratio test, Harris two-pass.
      const double ptol = opt_.pivot_tol;
      const double dtol = opt_.dual_tol;
      double theta_max = kInfinity();
      auto eligible = [&](int j, double& s) {
        if (st_[j] == kBasic || lo_[j] == up_[j]) return false;
        if (!banned_.empty() && std::find(banned_.begin(), banned_.end(), j) != banned_.end()) return false;
        s = to_lower ? -alpha[j] : alpha[j];
        if (st_[j] == kLower) return s > ptol;
        if (st_[j] == kUpper) return s < -ptol;
        return std::abs(s) > ptol;
      };
      for (int j : touched) {
        double s;
        if (!eligible(j, s)) continue;
        double ratio;
        if (st_[j] == kLower)
          ratio = (d_[j] + dtol) / s;
        else if (st_[j] == kUpper)
          ratio = (d_[j] - dtol) / s;
        else
          ratio = (std::abs(d_[j]) + dtol) / std::abs(s);
        theta_max = std::min(theta_max, ratio);
      }
      int q = -1;
      double qbest = -1;
      for (int j : touched) {
        double s;
        if (!eligible(j, s)) continue;
        const double ratio = st_[j] == kZero ? std::abs(d_[j]) / std::abs(s) : d_[j] / s;
        if (bland) {
          if (q < 0 || ratio < qbest - 1e-12 || (ratio <= qbest + 1e-12 && j < q)) {
            q = j;
            qbest = ratio;
          }
        } else if (ratio <= theta_max && std::abs(s) > qbest) {
          qbest = std::abs(s);
          q = j;
        }
      }
      if (q < 0) {
        if (!etas_.empty()) {
          if (!factor()) {
            slack_basis();
            factor();
          }
          refresh();
          continue;
        }
        if (farkas_margin(jl, to_lower, touched, alpha) > 1e-6 * std::max(1.0, std::abs(bound))) {
          res.status = LpStatus::Infeasible;
          res.iterations = iterations_;
          return res;
        }
        // Roundoff only: leave this row alone until the next factorization.
        skip_[jl] = 1;
        banned_.clear();
        continue;
      }

      column(q, col);
      ftran(col);
      const double pivot = col[r];
      if (std::abs(pivot) < ptol ||
          std::abs(pivot - alpha[q]) > 1e-6 * (1.0 + std::abs(pivot))) {
        if (etas_.empty()) {
          if (std::abs(pivot) < ptol) {
            banned_.push_back(q);
            continue;
          }
        } else {
          if (!factor()) {
            slack_basis();
            factor();
          }
          refresh();
          continue;
        }
      }

      // Dual update.
      const double theta_d = d_[q] / alpha[q];
      for (int j : touched)
        if (st_[j] != kBasic) d_[j] -= theta_d * alpha[j];
      d_[jl] = -theta_d;
      d_[q] = 0.0;

      // Primal update.
      const double theta_p = delta / pivot;
      for (int p = 0; p < m_; ++p) {
        const double a = col[p];
        if (a != 0.0) x_[head_[p]] -= theta_p * a;
      }
      x_[q] += theta_p;
      x_[jl] = bound;

      banned_.clear();
      head_[r] = q;
      st_[q] = kBasic;
      st_[jl] = to_lower ? kLower : kUpper;
      push_eta(r, col);

      repair_dual_signs(touched);

      final_checks = 0;
      ++iterations_;
      // Dual objective gain of this pivot.
      if (std::abs(theta_d * delta) <= 1e-10) {
        ++degenerate;
        if (degenerate == perturb_after && allow_shift_ && !perturbed_) perturb();
        if (degenerate > bland_after) bland = true;
      } else {
        degenerate = 0;
      }
      if (std::isfinite(cutoff) && !shifted_ && no_boxes() && dual_objective() > cutoff) {
        res.status = LpStatus::Cutoff;
        res.objective = dual_objective();
        res.iterations = iterations_;
        return res;
      }
      if (iterations_ > cap)
        throw StallError(fmt::format("dual simplex stalled after {} iterations (rows={}, cols={}, bland={})",
                                     iterations_, m_, n_, bland));
    }
  }

 private:
  static double kInfinity() { return std::numeric_limits<double>::infinity(); }
  double tol(double bound) const { return opt_.primal_tol * std::max(1.0, std::abs(bound)); }

  bool no_boxes() const {
    for (int j = 0; j < nt_; ++j)
      if (artificial_[j] && st_[j] != kBasic) return false;
    return true;
  }

  double dual_objective() const {
    double obj = lp_.offset_;
    for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
    return obj;
  }

  // How far row jl's reachable range misses its violated bound, using the
  // true bounds of the nonbasic variables.
  double farkas_margin(int jl, bool to_lower, const std::vector<int>& touched,
                       const std::vector<double>& alpha) const {
    double reach = x_[jl];
    for (int j : touched) {
      if (st_[j] == kBasic || alpha[j] == 0.0) continue;
      // x_jl moves by -alpha_j per unit of x_j.
      const double a = -alpha[j];
      const bool up_dir = to_lower ? a > 0 : a < 0;
      const double target = up_dir ? up_[j] : lo_[j];
      if (artificial_[j] || !std::isfinite(target)) return -kInfinity();
      reach += a * (target - x_[j]);
    }
    return to_lower ? lo_[jl] - reach : reach - up_[jl];
  }

  // Shifts costs so every nonbasic reduced cost moves strictly inside its
  // feasible side.
  void perturb() {
    perturbed_ = shifted_ = true;
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(1.0, 2.0);
    for (int j = 0; j < nt_; ++j) {
      if (st_[j] == kBasic || lo_[j] == up_[j]) continue;
      const double eps = 1e-7 * u(rng) * (1.0 + std::abs(cost_[j]));
      if (st_[j] == kLower) {
        cost_[j] += eps;
        d_[j] += eps;
      } else if (st_[j] == kUpper) {
        cost_[j] -= eps;
        d_[j] -= eps;
      }
    }
  }

  void column(int j, Eigen::VectorXd& out) const {
    out.setZero();
    if (j < n_) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(lp_.a_col_, j); it; ++it) out[it.row()] = it.value();
    } else {
      out[j - n_] = -1.0;
    }
  }

  double nonbasic_value(int j) const {
    switch (st_[j]) {
      case kLower: return lo_[j];
      case kUpper: return up_[j];
      default: return 0.0;
    }
  }

  // Places a nonbasic variable where its reduced cost is dual feasible,
  // boxing infinite sides when needed.
  void place(int j) {
    const double c = d_[j];
    const bool has_lo = std::isfinite(lo_[j]), has_up = std::isfinite(up_[j]);
    if (lo_[j] == up_[j]) {
      st_[j] = kLower;
    } else if (c > opt_.dual_tol) {
      if (!has_lo) box(j, true);
      st_[j] = kLower;
    } else if (c < -opt_.dual_tol) {
      if (!has_up) box(j, false);
      st_[j] = kUpper;
    } else if (has_lo) {
      st_[j] = kLower;
    } else if (has_up) {
      st_[j] = kUpper;
    } else {
      st_[j] = kZero;
    }
  }

  void box(int j, bool lower) {
    artificial_[j] = 1;
    if (lower)
      lo_[j] = std::min(-kBigBox, up_[j] - kBigBox);
    else
      up_[j] = std::max(kBigBox, lo_[j] + kBigBox);
  }

  void slack_basis() {
    head_.resize(m_);
    st_.assign(nt_, kLower);
    for (int p = 0; p < m_; ++p) {
      head_[p] = n_ + p;
      st_[n_ + p] = kBasic;
    }
    for (int j = 0; j < n_; ++j) {
      d_[j] = cost_[j];
      place(j);
    }
  }

  bool load_basis(const LpBasis& b) {
    if (static_cast<int>(b.head.size()) != m_ || static_cast<int>(b.status.size()) != nt_) return false;
    head_ = b.head;
    st_ = b.status;
    int basic = 0;
    for (int j = 0; j < nt_; ++j) {
      if (st_[j] == kBasic) {
        ++basic;
        continue;
      }
      if (st_[j] == kLower && !std::isfinite(lo_[j])) st_[j] = std::isfinite(up_[j]) ? kUpper : kZero;
      if (st_[j] == kUpper && !std::isfinite(up_[j])) st_[j] = std::isfinite(lo_[j]) ? kLower : kZero;
    }
    if (basic != m_) return false;
    for (int p = 0; p < m_; ++p)
      if (head_[p] < 0 || head_[p] >= nt_ || st_[head_[p]] != kBasic) return false;
    return true;
  }

  bool factor() {
    etas_.clear();
    std::fill(skip_.begin(), skip_.end(), 0);
    std::vector<Eigen::Triplet<double>> trip;
    for (int p = 0; p < m_; ++p) {
      const int j = head_[p];
      if (j < n_) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(lp_.a_col_, j); it; ++it)
          trip.emplace_back(static_cast<int>(it.row()), p, it.value());
      } else {
        trip.emplace_back(j - n_, p, -1.0);
      }
    }
    Eigen::SparseMatrix<double> b(m_, m_);
    b.setFromTriplets(trip.begin(), trip.end());
    b.makeCompressed();
    lu_.analyzePattern(b);
    lu_.factorize(b);
    return lu_.info() == Eigen::Success;
  }

  void ftran(Eigen::VectorXd& v) const {
    if (m_ == 0) return;
    v = lu_.solve(v).eval();
    for (const auto& e : etas_) {
      const double xr = v[e.r] / e.pivot;
      if (xr != 0.0)
        for (const auto& [i, a] : e.col) v[i] -= a * xr;
      v[e.r] = xr;
    }
  }

  void btran(Eigen::VectorXd& v) const {
    if (m_ == 0) return;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = v[it->r];
      for (const auto& [i, a] : it->col) s -= a * v[i];
      v[it->r] = s / it->pivot;
    }
    v = lu_.transpose().solve(v).eval();
  }

  void push_eta(int r, const Eigen::VectorXd& col) {
    Eta e;
    e.r = r;
    e.pivot = col[r];
    for (int i = 0; i < m_; ++i)
      if (i != r && std::abs(col[i]) > 1e-14) e.col.emplace_back(i, col[i]);
    etas_.push_back(std::move(e));
  }

  void compute_primal() {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (int j = 0; j < nt_; ++j) {
      if (st_[j] == kBasic) continue;
      x_[j] = nonbasic_value(j);
      if (x_[j] == 0.0) continue;
      if (j < n_) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(lp_.a_col_, j); it; ++it)
          rhs[it.row()] -= it.value() * x_[j];
      } else {
        rhs[j - n_] += x_[j];
      }
    }
    ftran(rhs);
    for (int p = 0; p < m_; ++p) x_[head_[p]] = rhs[p];
  }

  void compute_dual() {
    Eigen::VectorXd y(m_);
    for (int p = 0; p < m_; ++p) y[p] = cost_[head_[p]];
    btran(y);
    for (int j = 0; j < nt_; ++j) {
      if (st_[j] == kBasic) {
        d_[j] = 0.0;
        continue;
      }
      double dj = cost_[j];
      if (j < n_) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(lp_.a_col_, j); it; ++it)
          dj -= y[it.row()] * it.value();
      } else {
        dj += y[j - n_];
      }
      d_[j] = dj;
    }
  }

  // Recompute duals, restore dual feasibility by bound moves, then primals.
  void refresh() {
    compute_dual();
    for (int j = 0; j < nt_; ++j) {
      if (st_[j] == kBasic) continue;
      const double dj = d_[j];
      const bool wrong = (st_[j] == kLower && dj < -opt_.dual_tol) ||
                         (st_[j] == kUpper && dj > opt_.dual_tol) ||
                         (st_[j] == kZero && std::abs(dj) > opt_.dual_tol);
      if (!wrong) continue;
      if (allow_shift_ && std::abs(dj) <= kShiftLimit) {
        cost_[j] -= dj;
        d_[j] = 0.0;
        shifted_ = true;
      } else {
        place(j);
      }
    }
    compute_primal();
  }

  // After a Harris step a few reduced costs may carry a tiny wrong sign.
  void repair_dual_signs(const std::vector<int>& touched) {
    bool moved = false;
    for (int j : touched) {
      if (st_[j] == kBasic || lo_[j] == up_[j]) continue;
      const double dj = d_[j];
      if (st_[j] == kLower && dj < 0) {
        if (dj < -opt_.dual_tol && std::isfinite(up_[j])) {
          st_[j] = kUpper;
          moved = true;
        } else if (allow_shift_) {
          cost_[j] -= dj;
          d_[j] = 0.0;
          shifted_ = true;
        }
      } else if (st_[j] == kUpper && dj > 0) {
        if (dj > opt_.dual_tol && std::isfinite(lo_[j])) {
          st_[j] = kLower;
          moved = true;
        } else if (allow_shift_) {
          cost_[j] -= dj;
          d_[j] = 0.0;
          shifted_ = true;
        }
      }
    }
    if (moved) compute_primal();
  }

  LpResult finish(LpResult& res) {
    res.status = LpStatus::Optimal;
    for (int j = 0; j < n_; ++j)
      if (artificial_[j] && (x_[j] >= kBigBox * 0.999 || x_[j] <= -kBigBox * 0.999))
        res.status = LpStatus::Unbounded;
    res.x.assign(x_.begin(), x_.begin() + n_);
    res.row_activity.assign(x_.begin() + n_, x_.end());
    double obj = lp_.offset_;
    for (int j = 0; j < n_; ++j) obj += cost_[j] * x_[j];
    res.objective = obj;
    res.iterations = iterations_;
    res.basis.head = head_;
    res.basis.status = st_;
    return res;
  }

  struct Eta {
    int r = 0;
    double pivot = 1.0;
    std::vector<std::pair<int, double>> col;
  };

  const DualSimplex& lp_;
  int m_, n_, nt_;
  const LpOptions& opt_;
  std::vector<double> lo_, up_, x_, d_, cost_, base_cost_;
  bool perturbed_ = false, shifted_ = false, allow_shift_ = true;
  std::vector<char> artificial_, skip_;
  std::vector<int> banned_;
  std::vector<int> head_;
  std::vector<signed char> st_;
  std::vector<Eta> etas_;
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  long iterations_ = 0;
};

LpResult DualSimplex::solve(const std::vector<double>& lb, const std::vector<double>& ub,
                            const LpBasis* warm, double cutoff) const {
  LpSession session(*this, lb, ub, warm);
  return session.solve(cutoff);
}

LpSession::LpSession(const DualSimplex& lp, const std::vector<double>& lb, const std::vector<double>& ub,
                     const LpBasis* warm)
    : run_(std::make_unique<SimplexRun>(lp, lb, ub)) {
  feasible_bounds_ = run_->start(warm);
}

LpSession::~LpSession() = default;

LpResult LpSession::solve(double cutoff) {
  if (!feasible_bounds_) return LpResult{};
  return run_->run(cutoff);
}

void LpSession::set_bounds(int j, double lb, double ub) {
  if (!run_->set_bounds(j, lb, ub)) feasible_bounds_ = false;
}

LpResult solve_lp(const MilpModel& model, const LpOptions& opt) {
  DualSimplex lp(model, opt);
  return lp.solve();
}

}  // namespace drp
