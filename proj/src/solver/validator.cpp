#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "drp/validator.hpp"

namespace drp {

std::string ValidationReport::summary() const {
  if (ok) return fmt::format("valid, objective {:.9g}", objective);
  std::string s = fmt::format("{} violation(s)", violations.size());
  for (const auto& v : violations) s += "\n  " + v;
  return s;
}

ValidationReport validate_solution(const Solution& sol, const DeliveryContext& ctx,
                                   const ValidationOptions& opt) {
  const Instance& inst = ctx.instance();
  const int n = inst.n();
  ValidationReport rep;
  auto bad = [&](std::string v) {
    rep.ok = false;
    rep.violations.push_back(std::move(v));
  };

  std::vector<int> seen(n + 1, 0);
  for (const auto& route : sol.routes)
    for (const auto& trip : route) {
      if (trip.empty()) bad("empty trip");
      for (int r : trip) {
        if (r < 1 || r > n) {
          bad(fmt::format("unknown request {}", r));
          continue;
        }
        ++seen[r];
      }
    }
  for (int r = 1; r <= n; ++r)
    if (seen[r] != 1) bad(fmt::format("covering: request {} delivered {} times", r, seen[r]));
  if (!rep.ok) return rep;

  int used = 0;
  for (const auto& route : sol.routes) used += !route.empty();
  if (used > inst.drones) bad(fmt::format("fleet: {} drones used, {} available", used, inst.drones));

  const bool hover = opt.hover && sol.y.size() == static_cast<size_t>(n + 2);
  for (size_t d = 0; d < sol.routes.size(); ++d) {
    double ready = inst.a_d;
    for (const auto& trip : sol.routes[d]) {
      const std::string tag = fmt::format("drone {} trip starting at {}", d, trip.front());
      const double w = ctx.trip_weight(trip);
      if (!approx_le(w, inst.capacity)) bad(fmt::format("capacity: {} carries {} > {}", tag, w, inst.capacity));
      double e = ctx.trip_energy(trip);
      rep.transport += ctx.trip_cost(trip);
      rep.energy += e;

      if (!hover) {
        const TripSchedule s = ctx.simulate(trip, ready);
        for (size_t k = 0; k < trip.size(); ++k) {
          const Request& q = inst.request(trip[k]);
          if (!approx_le(s.service[k], q.b, 1e-6))
            bad(fmt::format("window: request {} served at {} after {}", q.id, s.service[k], q.b));
        }
        if (!approx_le(s.return_time, inst.b_d, 1e-6))
          bad(fmt::format("depot: {} returns at {} after {}", tag, s.return_time, inst.b_d));
        if (!approx_le(e, inst.battery, 1e-6))
          bad(fmt::format("battery: {} needs {} > {}", tag, e, inst.battery));
        ready = s.return_time;
        continue;
      }

      // Service times as given; waits after the first stop are hovered.
      double load = w, trip_hover = 0;
      int prev = 0;
      double clock = 0;
      for (size_t k = 0; k < trip.size(); ++k) {
        const int r = trip[k];
        const Request& q = inst.request(r);
        const double t = ctx.leg_time(prev, r, load);
        const double y = sol.y[r];
        const double earliest = k == 0 ? std::max(ready, inst.a_d) + t : clock + t;
        if (y < earliest - 1e-6)
          bad(fmt::format("schedule: request {} served at {} before reachable {}", r, y, earliest));
        if (y < q.a - 1e-6 || !approx_le(y, q.b, 1e-6))
          bad(fmt::format("window: request {} served at {} outside [{}, {}]", r, y, q.a, q.b));
        if (k > 0) trip_hover += ctx.model().hover_power(load) * std::max(0.0, y - earliest);
        clock = y;
        load -= q.q;
        if (load < 0) load = 0;
        prev = r;
      }
      const double ret = clock + ctx.leg_time(prev, n + 1, 0.0);
      if (!approx_le(ret, inst.b_d, 1e-6))
        bad(fmt::format("depot: {} returns at {} after {}", tag, ret, inst.b_d));
      if (!approx_le(e + trip_hover, inst.battery, 1e-6))
        bad(fmt::format("battery: {} needs {} > {}", tag, e + trip_hover, inst.battery));
      rep.hover += trip_hover;
      ready = ret;
    }
  }
  rep.objective = inst.transport_weight() * rep.transport +
                  inst.energy_weight() * (rep.energy + rep.hover);
  if (opt.check_objective) {
    const double tol = opt.objective_tol * std::max(1.0, std::abs(rep.objective));
    if (std::abs(rep.objective - sol.objective) > tol)
      bad(fmt::format("objective: recomputed {:.9g}, reported {:.9g}", rep.objective, sol.objective));
  }
  return rep;
}

}  // namespace drp
