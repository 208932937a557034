#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "drp/formulation.hpp"

namespace drp {

namespace {

// Least energy any flight path needs from each cluster back to the end
// depot, over the arcs of the generated graph.
std::vector<double> min_return_energy(const GeneratedGraph& g) {
  const int k = g.n + 2;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> w(static_cast<size_t>(k) * k, inf);
  for (const auto& a : g.arcs) {
    double& cell = w[static_cast<size_t>(g.cluster_of(a.tail)) * k + g.cluster_of(a.head)];
    cell = std::min(cell, a.ed);
  }
  std::vector<double> dist(k, inf);
  dist[k - 1] = 0;
  // Bellman-Ford towards the end depot; weights are nonnegative.
  for (int it = 0; it < k; ++it) {
    bool changed = false;
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const double c = w[static_cast<size_t>(i) * k + j];
        if (c < inf && dist[j] + c < dist[i]) {
          dist[i] = dist[j] + c;
          changed = true;
        }
      }
    if (!changed) break;
  }
  return dist;
}

}  // namespace

void add_valid_inequalities(MilpModel& m, const GeneratedGraph& g, const DeliveryContext& ctx,
                            bool load_dependent) {
  const int n = g.n;
  const auto& tt = ctx.tables();
  const BigMSet bm = compute_big_m(g, ctx, m.count(Role::R) > 0);
  auto cl = [&](int v) { return g.cluster_of(v); };

  // Service-time lower bounds from the last leg.
  std::vector<std::vector<std::pair<int, double>>> arrive(n + 1);
  for (const auto& a : g.arcs) {
    const int j = cl(a.head);
    if (j < 1 || j > n) continue;
    const double t = load_dependent ? a.t : tt.time(cl(a.tail), j);
    arrive[j].push_back({m.x_var[a.id], -t});
  }
  for (int j = 1; j <= n; ++j) {
    auto t = arrive[j];
    t.push_back({m.y_var[j], 1.0});
    m.add_row(fmt::format("h1_{}", j), t, Sense::GE, 0.0, "cut_time");
  }
  // From the previous trip's return.
  if (!load_dependent) {
    std::vector<std::vector<std::pair<int, double>>> chain(n + 1);
    for (const auto& l : m.z_links)
      chain[l.to].push_back({l.var, -(tt.time(l.from, n + 1) + tt.time(0, l.to))});
    for (int j = 1; j <= n; ++j) {
      if (chain[j].empty()) continue;
      auto t = chain[j];
      t.push_back({m.y_var[j], 1.0});
      m.add_row(fmt::format("h2_{}", j), t, Sense::GE, 0.0, "cut_chain");
    }
  }
  // Energy bounds.
  std::vector<std::vector<std::pair<int, double>>> used(n + 1);
  for (const auto& a : g.arcs) {
    const int j = cl(a.head);
    if (j >= 1 && j <= n) used[j].push_back({m.x_var[a.id], -a.ed});
  }
  const auto ret = min_return_energy(g);
  for (int j = 1; j <= n; ++j) {
    auto t = used[j];
    t.push_back({m.f_var[j], 1.0});
    m.add_row(fmt::format("h3_{}", j), t, Sense::GE, 0.0, "cut_energy");
    if (ret[j] < std::numeric_limits<double>::infinity())
      m.add_row(fmt::format("h4_{}", j), {{m.f_var[j], 1.0}}, Sense::LE, bm.battery - ret[j],
                "cut_return");
  }
  // Order variables within a trip.
  m.u_var.assign(n + 1, -1);
  for (int i = 1; i <= n; ++i)
    m.u_var[i] = m.add_var(fmt::format("u{}", i), VarType::Continuous, 0, n, 0, Role::U, i);
  std::vector<std::vector<std::vector<int>>> pair_arcs(n + 1, std::vector<std::vector<int>>(n + 1));
  for (const auto& a : g.arcs) {
    const int i = cl(a.tail), j = cl(a.head);
    if (i >= 1 && i <= n && j >= 1 && j <= n) pair_arcs[i][j].push_back(a.id);
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j || pair_arcs[i][j].empty()) continue;
      std::vector<std::pair<int, double>> t = {{m.u_var[j], 1.0}, {m.u_var[i], -1.0}};
      for (int a : pair_arcs[i][j]) t.push_back({m.x_var[a], -static_cast<double>(n)});
      m.add_row(fmt::format("h5_{}_{}", i, j), t, Sense::GE, 1.0 - n, "cut_mtz");
    }
  m.nu_var = m.add_var("nu", VarType::Integer, 0, n, 0, Role::Nu);
  std::vector<std::pair<int, double>> t = {{m.nu_var, 1.0}};
  for (int a : g.out[g.start()]) t.push_back({m.x_var[a], -1.0});
  m.add_row("h6", t, Sense::EQ, 0.0, "cut_trips");
}

}  // namespace drp
