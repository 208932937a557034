#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "drp/error.hpp"
#include "drp/formulation.hpp"

namespace drp {

double BigMSet::m9(int i, int j, double t_return, double t_depart) const {
  return std::max(0.0, close[i] - open[j] + t_return + t_depart);
}

BigMSet compute_big_m(const GeneratedGraph& g, const DeliveryContext& ctx, bool hover) {
  const Instance& inst = ctx.instance();
  const int n = g.n;
  BigMSet bm;
  bm.horizon = time_horizon(ctx);
  bm.open.resize(n + 2);
  bm.close.resize(n + 2);
  for (int i = 0; i <= n + 1; ++i) {
    bm.open[i] = inst.open(i);
    bm.close[i] = std::min(inst.close(i), bm.horizon);
  }

  // A trip leaves each cluster at most once.
  std::vector<double> max_ed(n + 2, 0.0), max_eh(n + 2, 0.0);
  double max_t = 0;
  for (const auto& a : g.arcs) {
    const int c = g.cluster_of(a.tail);
    max_ed[c] = std::max(max_ed[c], a.ed);
    max_t = std::max(max_t, a.t);
  }
  for (const auto& v : g.vertices) max_eh[v.cl] = std::max(max_eh[v.cl], v.eh);
  double cap = 1.0;
  for (int c = 0; c <= n + 1; ++c) cap += max_ed[c] + (hover ? max_eh[c] * bm.horizon : 0.0);
  bm.battery = std::min(inst.battery, cap);

  const auto& tt = ctx.tables();
  bm.m5.assign(n + 2, std::vector<double>(n + 2, 0.0));
  bm.m6 = bm.m5;
  for (int i = 0; i <= n + 1; ++i)
    for (int j = 0; j <= n + 1; ++j) {
      if (i == j) continue;
      bm.m5[i][j] = std::max(0.0, bm.close[i] - bm.open[j] + tt.time(i, j));
      bm.m6[i][j] = std::max(0.0, bm.close[i] - bm.open[j] + tt.time(i, n + 1) + tt.time(0, j));
    }
  const double max_close = *std::max_element(bm.close.begin(), bm.close.end());
  for (const auto& a : g.arcs) {
    bm.m4.push_back(bm.battery + a.ed);
    bm.m7.push_back(max_close + max_t);
    bm.m8.push_back(
        std::max(0.0, bm.close[g.cluster_of(a.tail)] - bm.open[g.cluster_of(a.head)] + a.t));
  }
  return bm;
}

MilpModel build_core_milp(const GeneratedGraph& g, const DeliveryContext& ctx,
                          const FormulationOptions& opt) {
  const Instance& inst = ctx.instance();
  const int n = g.n;
  if (g.arcs.empty() || n == 0) throw BuildError("generated graph is empty");
  if (!g.infeasible_requests.empty())
    throw BuildError(fmt::format("request {} cannot be served by any trip", g.infeasible_requests[0]));
  if (inst.flight.load_dependent() && !opt.load_dependent)
    throw BuildError("load-dependent flight times need the load-dependent extension");

  const BigMSet bm = compute_big_m(g, ctx, opt.hover);
  const auto& tt = ctx.tables();
  const double tw = inst.transport_weight();
  const double ew = inst.energy_weight();
  const int s = g.start(), e = g.end();

  MilpModel m;
  m.x_var.resize(g.arcs.size());
  for (const auto& a : g.arcs)
    m.x_var[a.id] = m.add_var(fmt::format("x{}", a.id), VarType::Binary, 0, 1,
                              tw * a.c + ew * a.ed, Role::X, a.id);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const int v = m.add_var(fmt::format("z{}_{}", i, j), VarType::Binary, 0, 1, 0, Role::Z, i, j);
      m.z_links.push_back({v, i, j});
    }
  m.y_var.resize(n + 2);
  m.f_var.resize(n + 2);
  for (int i = 0; i <= n + 1; ++i)
    m.y_var[i] = m.add_var(fmt::format("y{}", i), VarType::Continuous, std::max(0.0, bm.open[i]),
                           bm.close[i], 0, Role::Y, i);
  for (int i = 0; i <= n + 1; ++i)
    m.f_var[i] = m.add_var(fmt::format("f{}", i), VarType::Continuous, 0, i == 0 ? 0.0 : bm.battery,
                           0, Role::F, i);

  auto xa = [&](int arc) { return m.x_var[arc]; };
  auto cl = [&](int v) { return g.cluster_of(v); };

  // Covering.
  for (int r = 1; r <= n; ++r) {
    std::vector<std::pair<int, double>> t;
    if (opt.covering == Covering::PerCluster) {
      for (int v : g.clusters[r])
        for (int a : g.in[v]) t.push_back({xa(a), 1.0});
    } else {
      for (int a : g.out[s])
        if (g.vertices[g.arcs[a].head].load.contains(r)) t.push_back({xa(a), 1.0});
    }
    m.add_row(fmt::format("cover{}", r), t, Sense::EQ, 1.0, "cover");
  }
  for (int v = 1; v < e; ++v) {
    std::vector<std::pair<int, double>> t;
    for (int a : g.in[v]) t.push_back({xa(a), 1.0});
    for (int a : g.out[v]) t.push_back({xa(a), -1.0});
    m.add_row(fmt::format("flow{}", v), t, Sense::EQ, 0.0, "flow");
  }
  {
    std::vector<std::pair<int, double>> t;
    for (int a : g.out[s]) t.push_back({xa(a), 1.0});
    for (int a : g.in[e]) t.push_back({xa(a), -1.0});
    m.add_row("depot", t, Sense::EQ, 0.0, "depot");
  }
  for (const auto& a : g.arcs) {
    const double m4 = bm.m4[a.id];
    m.add_row(fmt::format("en{}", a.id),
              {{m.f_var[cl(a.head)], 1.0}, {m.f_var[cl(a.tail)], -1.0}, {xa(a.id), -m4}}, Sense::GE,
              a.ed - m4, "energy");
  }
  if (std::isfinite(inst.battery))
    m.add_row("battery", {{m.f_var[n + 1], 1.0}}, Sense::LE, inst.battery, "battery");
  m.add_row("fstart", {{m.f_var[0], 1.0}}, Sense::EQ, 0.0, "fstart");

  // Time chaining between clusters, including the return to the end depot.
  std::vector<std::vector<std::vector<int>>> pair_arcs(n + 2, std::vector<std::vector<int>>(n + 2));
  for (const auto& a : g.arcs) pair_arcs[cl(a.tail)][cl(a.head)].push_back(a.id);
  for (int i = 0; i <= n; ++i)
    for (int j = 1; j <= n + 1; ++j) {
      if (i == j || (i == 0 && j == n + 1)) continue;
      const auto& arcs = pair_arcs[i][j];
      if (arcs.empty() && !opt.all_pairs_time) continue;
      const double m5 = bm.m5[i][j];
      std::vector<std::pair<int, double>> t = {{m.y_var[i], 1.0}, {m.y_var[j], -1.0}};
      for (int a : arcs) t.push_back({xa(a), m5});
      m.add_row(fmt::format("t{}_{}", i, j), t, Sense::LE, m5 - tt.time(i, j), "time");
    }
  for (const auto& l : m.z_links) {
    const int i = l.from, j = l.to;
    const double m6 = bm.m6[i][j];
    m.add_row(fmt::format("c{}_{}", i, j), {{m.y_var[i], 1.0}, {m.y_var[j], -1.0}, {l.var, m6}},
              Sense::LE, m6 - tt.time(i, n + 1) - tt.time(0, j), "chain");
  }

  // Route linking and fleet size.
  std::vector<std::vector<std::pair<int, double>>> zin(n + 1), zout(n + 1);
  for (const auto& l : m.z_links) {
    zin[l.to].push_back({l.var, 1.0});
    zout[l.from].push_back({l.var, 1.0});
  }
  for (int a : g.out[s]) zin[cl(g.arcs[a].head)].push_back({xa(a), -1.0});
  for (int a : g.in[e]) zout[cl(g.arcs[a].tail)].push_back({xa(a), -1.0});
  for (int j = 1; j <= n; ++j) m.add_row(fmt::format("zi{}", j), zin[j], Sense::LE, 0.0, "zin");
  for (int i = 1; i <= n; ++i) m.add_row(fmt::format("zo{}", i), zout[i], Sense::LE, 0.0, "zout");
  {
    std::vector<std::pair<int, double>> fleet, trips;
    for (int a : g.out[s]) {
      fleet.push_back({xa(a), 1.0});
      trips.push_back({xa(a), 1.0});
    }
    for (const auto& l : m.z_links) fleet.push_back({l.var, -1.0});
    m.add_row("fleet", fleet, Sense::LE, inst.drones, "fleet");
    m.add_row("trips", trips, Sense::GE, inst.total_demand() / inst.capacity, "trips");
  }
  return m;
}

MilpModel build_model(const GeneratedGraph& g, const DeliveryContext& ctx,
                      const FormulationOptions& opt) {
  MilpModel m = build_core_milp(g, ctx, opt);
  if (opt.load_dependent) apply_load_dependent_extension(m, g, ctx);
  if (opt.hover) apply_hover_extension(m, g, ctx);
  if (opt.cuts) add_valid_inequalities(m, g, ctx, opt.load_dependent);
  return m;
}

}  // namespace drp
