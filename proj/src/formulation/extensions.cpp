#include <algorithm>

#include <fmt/format.h>

#include "drp/formulation.hpp"

namespace drp {

void apply_hover_extension(MilpModel& m, const GeneratedGraph& g, const DeliveryContext& ctx) {
  const Instance& inst = ctx.instance();
  const BigMSet bm = compute_big_m(g, ctx, true);
  const double ew = inst.energy_weight();
  const int s = g.start(), e = g.end();
  const double big = *std::max_element(bm.close.begin(), bm.close.end());

  m.r_var.assign(g.vertices.size(), -1);
  for (int v = 1; v < e; ++v) {
    const auto& gv = g.vertices[v];
    m.r_var[v] = m.add_var(fmt::format("r{}", v), VarType::Continuous, 0, bm.close[gv.cl],
                           -ew * gv.eh, Role::R, v);
    m.obj[m.y_var[gv.cl]] += ew * gv.eh;
  }

  m.remove_family("energy");
  for (const auto& a : g.arcs) {
    const int v = a.head, w = a.tail;
    const double m4 = bm.m4[a.id];
    std::vector<std::pair<int, double>> t = {
        {m.f_var[g.cluster_of(v)], 1.0}, {m.f_var[g.cluster_of(w)], -1.0}, {m.x_var[a.id], -m4}};
    const double eh = g.vertices[v].eh;
    if (v != e && eh != 0) {
      t.push_back({m.y_var[g.cluster_of(v)], -eh});
      t.push_back({m.r_var[v], eh});
    }
    m.add_row(fmt::format("eh{}", a.id), t, Sense::GE, a.ed - m4, "energy");
  }
  for (const auto& a : g.arcs) {
    if (a.tail == s || a.head == e) continue;
    const double m7 = bm.m7[a.id];
    m.add_row(fmt::format("ar{}", a.id),
              {{m.r_var[a.head], 1.0}, {m.y_var[g.cluster_of(a.tail)], -1.0}, {m.x_var[a.id], m7}},
              Sense::LE, a.t + m7, "arrival");
  }
  // Waiting is nonnegative and vanishes at unvisited vertices.
  for (int v = 1; v < e; ++v) {
    const int y = m.y_var[g.cluster_of(v)];
    m.add_row(fmt::format("rw{}", v), {{m.r_var[v], 1.0}, {y, -1.0}}, Sense::LE, 0.0, "wait");
    std::vector<std::pair<int, double>> t = {{m.r_var[v], 1.0}, {y, -1.0}};
    for (int a : g.in[v]) t.push_back({m.x_var[a], big});
    m.add_row(fmt::format("rv{}", v), t, Sense::GE, -big, "visit");
  }
}

void apply_load_dependent_extension(MilpModel& m, const GeneratedGraph& g,
                                    const DeliveryContext& ctx) {
  const Instance& inst = ctx.instance();
  const BigMSet bm = compute_big_m(g, ctx, m.count(Role::R) > 0);
  const int s = g.start(), e = g.end();
  for (const char* fam : {"time", "chain", "zin", "zout", "fleet"}) m.remove_family(fam);
  m.remove_role(Role::Z);

  auto cl = [&](int v) { return g.cluster_of(v); };
  for (const auto& a : g.arcs) {
    const double m8 = bm.m8[a.id];
    m.add_row(fmt::format("lt{}", a.id),
              {{m.y_var[cl(a.tail)], 1.0}, {m.y_var[cl(a.head)], -1.0}, {m.x_var[a.id], m8}},
              Sense::LE, m8 - a.t, "time");
  }

  // Arc from s into each vertex and from each singleton vertex into e.
  std::vector<int> from_s(g.vertices.size(), -1), to_e(g.vertices.size(), -1);
  for (int a : g.out[s]) from_s[g.arcs[a].head] = a;
  for (int a : g.in[e]) to_e[g.arcs[a].tail] = a;

  m.vertex_links = true;
  std::vector<std::vector<std::pair<int, double>>> zin(g.vertices.size()), zout(g.vertices.size());
  std::vector<std::pair<int, double>> fleet;
  for (int a : g.out[s]) fleet.push_back({m.x_var[a], 1.0});
  for (int v = 1; v < e; ++v) {
    if (to_e[v] < 0) continue;
    const double t_ret = g.arcs[to_e[v]].t;
    for (int w = 1; w < e; ++w) {
      if (cl(w) == cl(v) || from_s[w] < 0) continue;
      const double t_dep = g.arcs[from_s[w]].t;
      const int z = m.add_var(fmt::format("z{}_{}", v, w), VarType::Binary, 0, 1, 0, Role::Z, v, w);
      m.z_links.push_back({z, v, w});
      const double m9 = bm.m9(cl(v), cl(w), t_ret, t_dep);
      m.add_row(fmt::format("lc{}_{}", v, w),
                {{m.y_var[cl(v)], 1.0}, {m.y_var[cl(w)], -1.0}, {z, m9}}, Sense::LE,
                m9 - t_ret - t_dep, "chain");
      zin[w].push_back({z, 1.0});
      zout[v].push_back({z, 1.0});
      fleet.push_back({z, -1.0});
    }
  }
  for (int w = 1; w < e; ++w) {
    if (zin[w].empty()) continue;
    zin[w].push_back({m.x_var[from_s[w]], -1.0});
    m.add_row(fmt::format("zi{}", w), zin[w], Sense::LE, 0.0, "zin");
  }
  for (int v = 1; v < e; ++v) {
    if (zout[v].empty()) continue;
    zout[v].push_back({m.x_var[to_e[v]], -1.0});
    m.add_row(fmt::format("zo{}", v), zout[v], Sense::LE, 0.0, "zout");
  }
  m.add_row("fleet", fleet, Sense::LE, inst.drones, "fleet");
}

}  // namespace drp
