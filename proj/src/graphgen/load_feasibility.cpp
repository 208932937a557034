#include <algorithm>
#include <unordered_set>

#include "drp/error.hpp"
#include "drp/graphgen.hpp"

namespace drp {

namespace {

class OrderSearch {
 public:
  OrderSearch(const std::vector<int>& members, const DeliveryContext& ctx, const LegOverride* legs)
      : m_(members), ctx_(ctx), inst_(ctx.instance()), legs_(legs) {
    full_ = (members.size() >= 32) ? ~0u : ((1u << members.size()) - 1);
  }

  bool run() {
    double carried = 0;
    for (int r : m_) carried += inst_.request(r).q;
    return dfs(0, inst_.a_d, 0.0, 0u);
  }

 private:
  double time(int i, int j, double w) const {
    if (legs_ && legs_->time) return inst_.flight.leg_time(legs_->time(i, j), w);
    return ctx_.leg_time(i, j, w);
  }
  double energy(int i, int j, double w) const {
    if (legs_ && legs_->energy) return legs_->energy(i, j, w);
    return ctx_.leg_energy(i, j, w);
  }
  double carried(unsigned used) const {
    double w = 0;
    for (size_t k = 0; k < m_.size(); ++k)
      if (!(used >> k & 1u)) w += inst_.request(m_[k]).q;
    return w;
  }

  bool dfs(int pos, double clock, double spent, unsigned used) {
    const int n = inst_.n();
    if (used == full_) {
      const double back = clock + time(pos, n + 1, 0.0);
      const double total = spent + energy(pos, n + 1, 0.0);
      return approx_le(back, inst_.b_d) && approx_le(total, inst_.battery);
    }
    const double w = carried(used);
    for (size_t k = 0; k < m_.size(); ++k) {
      if (used >> k & 1u) continue;
      const int r = m_[k];
      const Request& req = inst_.request(r);
      const double serve = std::max(clock + time(pos, r, w), req.a);
      if (!approx_le(serve, req.b)) continue;
      const double e = spent + energy(pos, r, w);
      if (!approx_le(e, inst_.battery)) continue;
      if (dfs(r, serve, e, used | (1u << k))) return true;
    }
    return false;
  }

  const std::vector<int>& m_;
  const DeliveryContext& ctx_;
  const Instance& inst_;
  const LegOverride* legs_;
  unsigned full_;
};

}  // namespace

bool is_load_possible(const LoadSet& load, const DeliveryContext& ctx, const LegOverride* legs) {
  if (load.empty()) return false;
  const auto members = load.members();
  if (members.size() > 31) return false;
  if (!approx_le(load_weight(load, ctx.instance()), ctx.instance().capacity)) return false;
  return OrderSearch(members, ctx, legs).run();
}

std::vector<LoadSet> find_feasible_loads(const DeliveryContext& ctx, const LegOverride* legs) {
  const int n = ctx.n();
  if (n > kMaxRequests) throw ConfigError("too many requests for the load bitmask");
  std::vector<LoadSet> out;
  std::unordered_set<LoadSet, LoadSetHash> feasible;
  std::vector<LoadSet> level;
  for (int r = 1; r <= n; ++r) {
    LoadSet s;
    s.insert(r);
    if (is_load_possible(s, ctx, legs)) level.push_back(s);
  }
  while (!level.empty()) {
    for (const auto& s : level) {
      feasible.insert(s);
      out.push_back(s);
    }
    std::vector<LoadSet> next;
    for (const auto& s : level) {
      const auto mem = s.members();
      for (int i = s.max_element() + 1; i <= n; ++i) {
        const LoadSet cand = s.with(i);
        // Superset pruning: every one-smaller subset must be feasible.
        bool ok = true;
        for (int j : mem) {
          if (!feasible.count(cand.without(j))) {
            ok = false;
            break;
          }
        }
        if (ok && is_load_possible(cand, ctx, legs)) next.push_back(cand);
      }
    }
    level = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LoadSet> exhaustive_feasible_loads(const DeliveryContext& ctx, const LegOverride* legs) {
  const int n = ctx.n();
  if (n > 20) throw ConfigError("exhaustive load enumeration limited to 20 requests");
  std::vector<LoadSet> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    LoadSet s;
    for (int r = 1; r <= n; ++r)
      if (mask >> (r - 1) & 1u) s.insert(r);
    if (is_load_possible(s, ctx, legs)) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace drp
