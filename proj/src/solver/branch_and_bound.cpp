#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <queue>
#include <thread>

#include "drp/error.hpp"
#include "drp/milp_solver.hpp"
#include "drp/propagate.hpp"

namespace drp {

const char* milp_status_name(MilpStatus s) {
  switch (s) {
    case MilpStatus::Optimal: return "optimal";
    case MilpStatus::GapLimit: return "gap_limit";
    case MilpStatus::TimeLimit: return "time_limit";
    case MilpStatus::Infeasible: return "infeasible";
  }
  return "?";
}

double relative_gap(double up, double lb) {
  if (!std::isfinite(up) || !std::isfinite(lb)) return std::numeric_limits<double>::infinity();
  return std::max(0.0, up - lb) / std::max(1e-9, std::abs(up));
}

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct BoundChange {
  int var;
  double lb, ub;
};

struct Node {
  long id = 0;
  double bound = -kInfinity;
  std::vector<BoundChange> changes;
  std::shared_ptr<const LpBasis> warm;
};

// Lowest bound first, then lowest id.
struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

class Search {
 public:
  Search(const MilpModel& m, const MilpParams& p, const IncumbentCheck& check)
      : m_(m), p_(p), check_(check), lp_(m), prop_(m), start_(std::chrono::steady_clock::now()) {
    busy_.assign(std::max(1, p.threads), kInfinity);
  }

  MilpResult run() {
    open_.push(Node{next_id_++, -kInfinity, {}, nullptr});
    const int threads = std::max(1, p_.threads);
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back([this, t] { worker(t); });
      for (auto& th : pool) th.join();
    }
    if (error_) std::rethrow_exception(error_);
    return finish();
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  double tolerance() const { return p_.gap * std::max(1e-9, std::abs(up_)) + 1e-9; }

  // Caller holds mu_.
  bool prunable(double bound) const { return std::isfinite(up_) && bound >= up_ - tolerance(); }

  // Caller holds mu_.
  double global_bound() const {
    double lb = std::min(pruned_min_, up_);
    if (!open_.empty()) lb = std::min(lb, open_.top().bound);
    for (double b : busy_) lb = std::min(lb, b);
    return lb;
  }

  // Caller holds mu_.
  void sample() {
    trace_.push_back({nodes_, global_bound(), up_});
  }

  void worker(int slot) {
    for (;;) {
      Node node;
      {
        std::unique_lock lk(mu_);
        cv_.wait(lk, [&] { return stop_ || !open_.empty() || active_ == 0; });
        if (stop_ || open_.empty()) {
          cv_.notify_all();
          return;
        }
        node = open_.top();
        open_.pop();
        ++active_;
        busy_[slot] = node.bound;
      }
      try {
        dive(std::move(node), slot);
      } catch (...) {
        std::lock_guard lk(mu_);
        if (!error_) error_ = std::current_exception();
        stop_ = true;
      }
      {
        std::lock_guard lk(mu_);
        --active_;
        busy_[slot] = kInfinity;
      }
      cv_.notify_all();
    }
  }

  std::unique_ptr<LpSession> open_session(const Node& node, bool warm) const {
    std::vector<double> lb = lp_.col_lb(), ub = lp_.col_ub();
    for (const auto& c : node.changes) {
      lb[c.var] = c.lb;
      ub[c.var] = c.ub;
    }
    return std::make_unique<LpSession>(lp_, lb, ub, warm ? node.warm.get() : nullptr);
  }

  // Solves the node, reusing the dive's session when there is one.
  LpResult solve_node(const Node& node, std::unique_ptr<LpSession>& session, double cutoff) const {
    try {
      if (!session) session = open_session(node, true);
      return session->solve(cutoff);
    } catch (const StallError&) {
      session = open_session(node, false);
      return session->solve(cutoff);
    }
  }

  // Most fractional integer variable, nu first when requested; -1 if integral.
  int branch_variable(const std::vector<double>& x) const {
    auto frac = [&](int j) {
      const double f = x[j] - std::floor(x[j]);
      return std::min(f, 1.0 - f);
    };
    if (p_.branch_nu && m_.nu_var >= 0 && frac(m_.nu_var) > p_.int_tol) return m_.nu_var;
    int best = -1;
    double score = p_.int_tol;
    for (int j = 0; j < m_.num_vars(); ++j) {
      if (!m_.is_integer(j)) continue;
      const double f = frac(j);
      if (f > score) {
        score = f;
        best = j;
      }
    }
    return best;
  }

  void offer(std::vector<double> x) {
    for (int j = 0; j < m_.num_vars(); ++j)
      if (m_.is_integer(j)) x[j] = std::round(x[j]);
    double obj = m_.obj_offset;
    for (int j = 0; j < m_.num_vars(); ++j) obj += m_.obj[j] * x[j];
    {
      std::lock_guard lk(mu_);
      if (obj >= up_) return;
    }
    const bool ok = !check_ || check_(x);
    std::lock_guard lk(mu_);
    if (!ok) {
      ++rejected_;
      return;
    }
    if (obj < up_) {
      up_ = obj;
      best_ = std::move(x);
      sample();
    }
  }

  // Tightens the node's bounds by propagation, recording the changes on the
  // node and the session. False when the node is infeasible.
  bool tighten(Node& node, std::vector<double>& lb, std::vector<double>& ub, LpSession* session) const {
    std::vector<int> changed, seeds;
    if (!node.changes.empty()) seeds.push_back(node.changes.back().var);
    if (!prop_.propagate(lb, ub, &changed, node.changes.empty() ? nullptr : &seeds)) return false;
    for (int j : changed) {
      node.changes.push_back({j, lb[j], ub[j]});
      if (session) session->set_bounds(j, lb[j], ub[j]);
    }
    return true;
  }

  void dive(Node node, int slot) {
    std::unique_ptr<LpSession> session;
    std::vector<double> lb = lp_.col_lb(), ub = lp_.col_ub();
    for (const auto& c : node.changes) {
      lb[c.var] = c.lb;
      ub[c.var] = c.ub;
    }
    for (;;) {
      double cutoff;
      {
        std::lock_guard lk(mu_);
        if (stop_) {
          open_.push(std::move(node));
          return;
        }
        if (prunable(node.bound)) {
          pruned_min_ = std::min(pruned_min_, node.bound);
          return;
        }
        if (elapsed() > p_.time_limit || (p_.node_limit > 0 && nodes_ >= p_.node_limit)) {
          timed_out_ = elapsed() > p_.time_limit;
          stop_ = true;
          open_.push(std::move(node));
          return;
        }
        busy_[slot] = node.bound;
        cutoff = std::isfinite(up_) ? up_ - tolerance() : kInfinity;
      }
      if (!tighten(node, lb, ub, session.get())) {
        std::lock_guard lk(mu_);
        ++nodes_;
        return;
      }
      const LpResult r = solve_node(node, session, cutoff);
      double bound = -kInfinity;
      {
        std::lock_guard lk(mu_);
        ++nodes_;
        iterations_ += r.iterations;
        if (node.id == 0 && r.status == LpStatus::Optimal) root_bound_ = r.objective;
        if (r.status == LpStatus::Unbounded) throw Error("LP relaxation is unbounded");
        if (r.status == LpStatus::Infeasible) return;
        if (r.status == LpStatus::Cutoff) {
          pruned_min_ = std::min(pruned_min_, std::max(node.bound, r.objective));
          return;
        }
        bound = std::max(node.bound, r.objective);
        if (prunable(bound)) {
          pruned_min_ = std::min(pruned_min_, bound);
          return;
        }
        if (nodes_ % 64 == 0) sample();
      }
      const int j = branch_variable(r.x);
      if (j < 0) {
        offer(r.x);
        return;
      }
      auto basis = std::make_shared<const LpBasis>(r.basis);
      const double v = r.x[j];
      Node down{0, bound, node.changes, basis};
      Node up{0, bound, std::move(node.changes), basis};
      double dlb = lp_.col_lb()[j], dub = lp_.col_ub()[j];
      for (const auto& c : up.changes)
        if (c.var == j) dlb = c.lb, dub = c.ub;
      down.changes.push_back({j, dlb, std::floor(v)});
      up.changes.push_back({j, std::ceil(v), dub});
      const bool go_up = v - std::floor(v) >= 0.5;
      {
        std::lock_guard lk(mu_);
        down.id = next_id_++;
        up.id = next_id_++;
        open_.push(go_up ? std::move(down) : std::move(up));
      }
      cv_.notify_one();
      node = go_up ? std::move(up) : std::move(down);
      const BoundChange& c = node.changes.back();
      lb[c.var] = c.lb;
      ub[c.var] = c.ub;
      session->set_bounds(c.var, c.lb, c.ub);
    }
  }

  MilpResult finish() {
    MilpResult res;
    res.nodes = nodes_;
    res.lp_iterations = iterations_;
    res.rejected_incumbents = rejected_;
    res.root_bound = root_bound_;
    res.up = up_;
    res.has_solution = std::isfinite(up_);
    res.x = best_;
    res.lb = global_bound();
    if (!res.has_solution && open_.empty()) res.lb = kInfinity;
    res.gap = res.has_solution ? relative_gap(res.up, res.lb) : kInfinity;
    if (!open_.empty() && timed_out_)
      res.status = MilpStatus::TimeLimit;
    else if (!res.has_solution)
      res.status = open_.empty() ? MilpStatus::Infeasible : MilpStatus::GapLimit;
    else if (res.gap <= std::min(p_.gap, 1e-4) + 1e-12)
      res.status = MilpStatus::Optimal;
    else
      res.status = MilpStatus::GapLimit;
    trace_.push_back({nodes_, std::min(res.lb, up_), up_});
    res.trace = std::move(trace_);
    res.seconds = elapsed();
    return res;
  }

  const MilpModel& m_;
  MilpParams p_;
  const IncumbentCheck& check_;
  DualSimplex lp_;
  BoundPropagator prop_;
  std::chrono::steady_clock::time_point start_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::priority_queue<Node, std::vector<Node>, WorseNode> open_;
  std::vector<double> busy_;
  int active_ = 0;
  bool stop_ = false, timed_out_ = false;
  long next_id_ = 0, nodes_ = 0, iterations_ = 0, rejected_ = 0;
  double up_ = kInfinity, pruned_min_ = kInfinity, root_bound_ = -kInfinity;
  std::vector<double> best_;
  std::vector<BoundSample> trace_;
  std::exception_ptr error_;
};

}  // namespace

MilpResult solve_milp(const MilpModel& model, const MilpParams& params, const IncumbentCheck& check) {
  std::string why;
  if (!model.well_formed(&why)) throw BuildError("malformed model: " + why);
  Search search(model, params, check);
  return search.run();
}

}  // namespace drp
