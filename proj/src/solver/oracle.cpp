#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "drp/error.hpp"
#include "drp/graphgen.hpp"
#include "drp/lp.hpp"
#include "drp/oracle.hpp"

namespace drp {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct OrderedTrip {
  unsigned mask = 0;
  Trip stops;
  double cost = 0;  // weighted, without hover
};

// Every ordered trip that is feasible when flown from the depot open time.
std::vector<OrderedTrip> enumerate_trips(const DeliveryContext& ctx) {
  const Instance& inst = ctx.instance();
  const int n = inst.n();
  // Prefix service times only grow when stops are appended unless heavier
  // payloads fly faster.
  const bool prune_windows = inst.flight.slowdown_per_kg >= 0;
  std::vector<OrderedTrip> out;
  Trip cur;
  double load = 0;
  auto dfs = [&](auto&& self, unsigned mask) -> void {
    for (int r = 1; r <= n; ++r) {
      if (mask & (1u << (r - 1))) continue;
      const double q = inst.request(r).q;
      if (!approx_le(load + q, inst.capacity)) continue;
      cur.push_back(r);
      load += q;
      const TripSchedule s = ctx.simulate(cur, inst.a_d);
      bool window_ok = true;
      for (size_t k = 0; k < cur.size(); ++k)
        if (!approx_le(s.service[k], inst.request(cur[k]).b)) window_ok = false;
      if (s.feasible) out.push_back({mask | (1u << (r - 1)), cur, ctx.trip_objective(cur)});
      if (window_ok || !prune_windows) self(self, mask | (1u << (r - 1)));
      load -= q;
      cur.pop_back();
    }
  };
  dfs(dfs, 0u);
  return out;
}

struct Label {
  double ready;
  double cost;
  int parent;  // label index in the parent mask, -1 at the root
  unsigned parent_mask;
  int trip;    // index into the trip list
};

// Best partition of `full` into at most k route masks, given per-mask costs.
double best_partition(const std::vector<double>& route_cost, unsigned full, int k,
                      std::vector<unsigned>& parts) {
  const size_t size = route_cost.size();
  // exact[j][m]: cheapest cover of m by exactly j routes.
  std::vector<std::vector<double>> exact(k + 1, std::vector<double>(size, kInfinity));
  std::vector<std::vector<unsigned>> choice(k + 1, std::vector<unsigned>(size, 0));
  exact[0][0] = 0;
  for (int j = 1; j <= k; ++j)
    for (unsigned m = 1; m < size; ++m) {
      if ((m & full) != m) continue;
      const unsigned low = m & (~m + 1);
      for (unsigned sub = m; sub; sub = (sub - 1) & m) {
        if (!(sub & low) || route_cost[sub] == kInfinity || exact[j - 1][m ^ sub] == kInfinity) continue;
        const double c = route_cost[sub] + exact[j - 1][m ^ sub];
        if (c < exact[j][m]) {
          exact[j][m] = c;
          choice[j][m] = sub;
        }
      }
    }
  int arg = -1;
  for (int j = 1; j <= k; ++j)
    if (exact[j][full] < kInfinity && (arg < 0 || exact[j][full] < exact[arg][full])) arg = j;
  parts.clear();
  if (arg < 0) return kInfinity;
  unsigned m = full;
  for (int j = arg; j >= 1; --j) {
    parts.push_back(choice[j][m]);
    m ^= choice[j][m];
  }
  return exact[arg][full];
}

}  // namespace

bool price_route_hover(const DeliveryContext& ctx, const Route& route, double& hover_energy,
                       std::vector<double>* service) {
  const Instance& inst = ctx.instance();
  const int n = inst.n();
  const double horizon = time_horizon(ctx);
  MilpModel m;
  std::vector<std::vector<int>> var(route.size());
  for (size_t t = 0; t < route.size(); ++t)
    for (int r : route[t]) {
      const Request& q = inst.request(r);
      var[t].push_back(m.add_var(fmt::format("s{}", r), VarType::Continuous, std::max(0.0, q.a),
                                 std::min(q.b, horizon)));
    }
  for (size_t t = 0; t < route.size(); ++t) {
    const Trip& trip = route[t];
    const int first = trip.front();
    if (t == 0) {
      m.add_row("d0", {{var[0][0], 1.0}}, Sense::GE, inst.a_d + ctx.leg_time(0, first, ctx.trip_weight(trip)));
    } else {
      const int last = route[t - 1].back();
      m.add_row(fmt::format("d{}", t), {{var[t][0], 1.0}, {var[t - 1].back(), -1.0}}, Sense::GE,
                ctx.leg_time(last, n + 1, 0.0) + ctx.leg_time(0, first, ctx.trip_weight(trip)));
    }
    double load = ctx.trip_weight(trip) - inst.request(first).q;
    std::vector<std::pair<int, double>> battery;
    double fixed = 0;
    for (size_t k = 1; k < trip.size(); ++k) {
      const double leg = ctx.leg_time(trip[k - 1], trip[k], load);
      m.add_row(fmt::format("l{}_{}", t, k), {{var[t][k], 1.0}, {var[t][k - 1], -1.0}}, Sense::GE, leg);
      const double eh = ctx.model().hover_power(load);
      m.obj[var[t][k]] += eh;
      m.obj[var[t][k - 1]] -= eh;
      m.obj_offset -= eh * leg;
      battery.push_back({var[t][k], eh});
      battery.push_back({var[t][k - 1], -eh});
      fixed += eh * leg;
      load -= inst.request(trip[k]).q;
    }
    m.add_row(fmt::format("r{}", t), {{var[t].back(), 1.0}}, Sense::LE,
              inst.b_d - ctx.leg_time(trip.back(), n + 1, 0.0));
    if (std::isfinite(inst.battery) && !battery.empty())
      m.add_row(fmt::format("b{}", t), battery, Sense::LE, inst.battery - ctx.trip_energy(trip) + fixed);
  }
  for (const auto& v : m.vars)
    if (v.lb > v.ub) return false;
  const LpResult r = solve_lp(m);
  if (r.status != LpStatus::Optimal) return false;
  hover_energy = std::max(0.0, r.objective);
  if (service) {
    service->assign(n + 2, 0.0);
    for (size_t t = 0; t < route.size(); ++t)
      for (size_t k = 0; k < route[t].size(); ++k) (*service)[route[t][k]] = r.x[var[t][k]];
  }
  return true;
}

int max_requests_per_trip(const DeliveryContext& ctx) {
  int best = 0;
  for (const auto& t : enumerate_trips(ctx)) best = std::max(best, static_cast<int>(t.stops.size()));
  return best;
}

OracleResult brute_force_solve(const DeliveryContext& ctx, const OracleOptions& opt) {
  const Instance& inst = ctx.instance();
  const int n = inst.n();
  if (n > opt.max_requests || n > 20)
    throw ConfigError(fmt::format("oracle limited to {} requests, instance has {}", opt.max_requests, n));
  OracleResult res;
  const auto trips = enumerate_trips(ctx);
  res.trips = static_cast<long>(trips.size());
  const unsigned full = (1u << n) - 1;
  const size_t masks = size_t{1} << n;
  std::vector<double> route_cost(masks, kInfinity);
  std::vector<Route> route_of(masks);
  route_cost[0] = 0;

  if (!opt.hover) {
    std::vector<std::vector<Label>> labels(masks);
    labels[0].push_back({inst.a_d, 0.0, -1, 0, -1});
    for (unsigned m = 0; m < masks; ++m) {
      auto& ls = labels[m];
      if (ls.empty()) continue;
      // Pareto filter on (ready, cost).
      std::vector<int> idx(ls.size());
      for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (ls[a].ready != ls[b].ready) return ls[a].ready < ls[b].ready;
        return ls[a].cost < ls[b].cost;
      });
      std::vector<Label> kept;
      double best_cost = kInfinity;
      for (int i : idx)
        if (ls[i].cost < best_cost - 1e-12) {
          kept.push_back(ls[i]);
          best_cost = ls[i].cost;
        }
      ls = std::move(kept);
      res.labels += static_cast<long>(ls.size());
      if (m != 0) {
        int arg = 0;
        for (size_t i = 1; i < ls.size(); ++i)
          if (ls[i].cost < ls[arg].cost) arg = static_cast<int>(i);
        route_cost[m] = ls[arg].cost;
        Route route;
        unsigned cm = m;
        for (int li = arg; cm && li >= 0;) {
          const Label& l = labels[cm][li];
          if (l.trip < 0) break;
          route.push_back(trips[l.trip].stops);
          li = l.parent;
          cm = l.parent_mask;
        }
        std::reverse(route.begin(), route.end());
        route_of[m] = std::move(route);
      }
      for (size_t li = 0; li < labels[m].size(); ++li) {
        const Label l = labels[m][li];
        for (size_t t = 0; t < trips.size(); ++t) {
          if (trips[t].mask & m) continue;
          const TripSchedule s = ctx.simulate(trips[t].stops, l.ready);
          if (!s.feasible) continue;
          labels[m | trips[t].mask].push_back(
              {s.return_time, l.cost + trips[t].cost, static_cast<int>(li), m, static_cast<int>(t)});
        }
      }
    }
  } else {
    const double ew = inst.energy_weight();
    Route cur;
    auto dfs = [&](auto&& self, unsigned mask, double ready, double fixed) -> void {
      for (size_t t = 0; t < trips.size(); ++t) {
        if (trips[t].mask & mask) continue;
        const TripSchedule s = ctx.simulate(trips[t].stops, ready);
        // Hover only adds energy, so the flight-only check is necessary.
        if (!s.feasible) continue;
        const unsigned nm = mask | trips[t].mask;
        const double nf = fixed + trips[t].cost;
        cur.push_back(trips[t].stops);
        if (nf < route_cost[nm]) {
          double h = 0;
          if (price_route_hover(ctx, cur, h) && nf + ew * h < route_cost[nm]) {
            route_cost[nm] = nf + ew * h;
            route_of[nm] = cur;
          }
        }
        ++res.labels;
        self(self, nm, s.return_time, nf);
        cur.pop_back();
      }
    };
    dfs(dfs, 0u, inst.a_d, 0.0);
  }

  std::vector<unsigned> parts;
  const int k = std::min(inst.drones, n);
  const double best = n == 0 ? 0.0 : best_partition(route_cost, full, k, parts);
  if (best == kInfinity) return res;
  res.feasible = true;
  res.objective = best;
  for (unsigned p : parts) res.solution.routes.push_back(route_of[p]);
  std::sort(res.solution.routes.begin(), res.solution.routes.end());
  if (opt.hover) {
    std::vector<double> y(n + 2, 0.0), sv;
    double hsum = 0;
    for (const auto& route : res.solution.routes) {
      double h = 0;
      price_route_hover(ctx, route, h, &sv);
      hsum += h;
      for (const auto& trip : route)
        for (int r : trip) y[r] = sv[r];
    }
    propagate_schedule(res.solution, ctx);
    for (int r = 1; r <= n; ++r) res.solution.y[r] = y[r];
    res.solution.hover = hsum;
  } else {
    propagate_schedule(res.solution, ctx);
  }
  for (const auto& route : res.solution.routes)
    for (const auto& trip : route) {
      res.solution.transport += ctx.trip_cost(trip);
      res.solution.energy += ctx.trip_energy(trip);
    }
  res.solution.objective = best;
  return res;
}

}  // namespace drp
