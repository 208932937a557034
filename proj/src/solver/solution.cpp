#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "drp/error.hpp"
#include "drp/solution.hpp"

namespace drp {

int Solution::trip_count() const {
  int k = 0;
  for (const auto& r : routes) k += static_cast<int>(r.size());
  return k;
}

namespace {

struct TripPath {
  std::vector<int> vertices;  // delivery vertices in order
  Trip requests;
};

}  // namespace

Solution extract_solution(const MilpModel& m, const std::vector<double>& x, const GeneratedGraph& g,
                          const DeliveryContext& ctx, bool model_schedule) {
  const Instance& inst = ctx.instance();
  const int n = g.n;
  auto on = [&](int arc) { return x[m.x_var[arc]] > 0.5; };

  int selected = 0;
  for (const auto& a : g.arcs) selected += on(a.id);
  if (selected == 0 && n > 0) throw ExtractionError("no arc selected");

  Solution sol;
  std::vector<TripPath> trips;
  int used = 0;
  for (int a0 : g.out[g.start()]) {
    if (!on(a0)) continue;
    ++used;
    TripPath tp;
    int v = g.arcs[a0].head;
    while (v != g.end()) {
      if (static_cast<int>(tp.vertices.size()) > n)
        throw ExtractionError("trip revisits a vertex");
      tp.vertices.push_back(v);
      tp.requests.push_back(g.vertices[v].r);
      int next = -1;
      for (int a : g.out[v]) {
        if (!on(a)) continue;
        if (next >= 0) throw ExtractionError(fmt::format("vertex {} has two selected out-arcs", v));
        next = a;
      }
      if (next < 0) throw ExtractionError(fmt::format("flow stops at vertex {}", v));
      ++used;
      v = g.arcs[next].head;
    }
    trips.push_back(std::move(tp));
  }
  if (used != selected) throw ExtractionError("selected arcs do not decompose into trips");

  // Link trips into routes.
  const int k = static_cast<int>(trips.size());
  std::vector<int> succ(k, -1), pred(k, -1);
  std::map<int, int> by_last, by_first;
  for (int t = 0; t < k; ++t) {
    const auto& tp = trips[t];
    by_last[m.vertex_links ? tp.vertices.back() : tp.requests.back()] = t;
    by_first[m.vertex_links ? tp.vertices.front() : tp.requests.front()] = t;
  }
  for (const auto& l : m.z_links) {
    if (x[l.var] <= 0.5) continue;
    auto a = by_last.find(l.from);
    auto b = by_first.find(l.to);
    if (a == by_last.end() || b == by_first.end())
      throw ExtractionError(fmt::format("route link {} has no matching trips", m.vars[l.var].name));
    if (succ[a->second] >= 0 || pred[b->second] >= 0 || a->second == b->second)
      throw ExtractionError("route links do not form chains");
    succ[a->second] = b->second;
    pred[b->second] = a->second;
  }
  int placed = 0;
  for (int t = 0; t < k; ++t) {
    if (pred[t] >= 0) continue;
    Route route;
    for (int u = t; u >= 0; u = succ[u]) {
      route.push_back(trips[u].requests);
      ++placed;
    }
    sol.routes.push_back(std::move(route));
  }
  if (placed != k) throw ExtractionError("route links form a cycle");

  for (const auto& a : g.arcs) {
    if (!on(a.id)) continue;
    sol.transport += a.c;
    sol.energy += a.ed;
  }
  if (!m.r_var.empty()) {
    for (const auto& tp : trips)
      for (int v : tp.vertices) {
        const double wait = x[m.y_var[g.cluster_of(v)]] - x[m.r_var[v]];
        sol.hover += g.vertices[v].eh * wait;
      }
  }
  sol.objective = inst.transport_weight() * sol.transport +
                  inst.energy_weight() * (sol.energy + sol.hover);

  if (model_schedule) {
    sol.y.assign(n + 2, 0.0);
    sol.f.assign(n + 2, 0.0);
    sol.arrival.assign(n + 2, 0.0);
    for (int i = 0; i <= n + 1; ++i) {
      sol.y[i] = x[m.y_var[i]];
      sol.f[i] = x[m.f_var[i]];
      sol.arrival[i] = sol.y[i];
    }
    if (!m.r_var.empty())
      for (const auto& tp : trips)
        for (int v : tp.vertices) sol.arrival[g.vertices[v].r] = x[m.r_var[v]];
  } else {
    propagate_schedule(sol, ctx);
  }
  return sol;
}

void propagate_schedule(Solution& sol, const DeliveryContext& ctx) {
  const Instance& inst = ctx.instance();
  const int n = inst.n();
  sol.y.assign(n + 2, 0.0);
  sol.f.assign(n + 2, 0.0);
  sol.arrival.assign(n + 2, 0.0);
  sol.y[0] = sol.arrival[0] = inst.a_d;
  sol.y[n + 1] = inst.a_d;
  for (const auto& route : sol.routes) {
    double ready = inst.a_d;
    for (const auto& trip : route) {
      const TripSchedule s = ctx.simulate(trip, ready);
      double w = ctx.trip_weight(trip), e = 0;
      int prev = 0;
      for (size_t k = 0; k < trip.size(); ++k) {
        const int r = trip[k];
        e += ctx.leg_energy(prev, r, w);
        if (k < s.service.size()) {
          sol.y[r] = s.service[k];
          sol.arrival[r] = s.arrival[k];
        }
        sol.f[r] = e;
        w -= inst.request(r).q;
        prev = r;
      }
      e += ctx.leg_energy(prev, n + 1, 0.0);
      sol.f[n + 1] = std::max(sol.f[n + 1], e);
      sol.y[n + 1] = std::max(sol.y[n + 1], s.return_time);
      ready = s.return_time;
    }
  }
}

void write_solution(std::ostream& os, const Solution& sol) {
  os << fmt::format("SOL {:.9f} {:.9g}\n", sol.objective, sol.gap);
  for (size_t d = 0; d < sol.routes.size(); ++d) {
    os << "ROUTE " << d << " :";
    for (const auto& trip : sol.routes[d]) {
      os << " trip(";
      for (int r : trip) os << ' ' << r;
      os << " )";
    }
    os << '\n';
  }
  for (size_t i = 0; i < sol.y.size(); ++i) os << fmt::format("Y {} {:.9f}\n", i, sol.y[i]);
  for (size_t i = 0; i < sol.f.size(); ++i) os << fmt::format("F {} {:.9f}\n", i, sol.f[i]);
}

std::string solution_to_string(const Solution& sol) {
  std::ostringstream os;
  write_solution(os, sol);
  return os.str();
}

Solution read_solution(std::istream& is) {
  Solution sol;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "SOL") {
      if (!(ls >> sol.objective >> sol.gap)) throw ParseError(lineno, "bad SOL header");
      header = true;
    } else if (tag == "ROUTE") {
      int d;
      std::string colon, tok;
      if (!(ls >> d >> colon) || colon != ":") throw ParseError(lineno, "bad ROUTE line");
      Route route;
      Trip* open = nullptr;
      while (ls >> tok) {
        if (tok == "trip(") {
          if (open) throw ParseError(lineno, "nested trip");
          route.emplace_back();
          open = &route.back();
        } else if (tok == ")") {
          if (!open) throw ParseError(lineno, "unbalanced ')'");
          open = nullptr;
        } else {
          if (!open) throw ParseError(lineno, "request outside a trip");
          try {
            open->push_back(std::stoi(tok));
          } catch (const std::exception&) {
            throw ParseError(lineno, "bad request id '" + tok + "'");
          }
        }
      }
      if (open) throw ParseError(lineno, "unterminated trip");
      sol.routes.push_back(std::move(route));
    } else if (tag == "Y" || tag == "F") {
      size_t i;
      double v;
      if (!(ls >> i >> v)) throw ParseError(lineno, "bad " + tag + " line");
      auto& vec = tag == "Y" ? sol.y : sol.f;
      if (vec.size() <= i) vec.resize(i + 1, 0.0);
      vec[i] = v;
    } else {
      throw ParseError(lineno, "unknown record '" + tag + "'");
    }
  }
  if (!header) throw ParseError(0, "missing SOL header");
  sol.arrival = sol.y;
  return sol;
}

}  // namespace drp
