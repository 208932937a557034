#include <chrono>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "drp/graphgen.hpp"

namespace drp {

int GeneratedGraph::singleton(int r) const {
  for (int v : clusters[r])
    if (vertices[v].load.size() == 1) return v;
  return -1;
}

GeneratedGraph build_generated_graph(const DeliveryContext& ctx, const GraphOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance& inst = ctx.instance();
  const int n = inst.n();
  GeneratedGraph g;
  g.n = n;

  g.stats.conditions = check_conditions_AB(ctx);
  const bool shortest =
      opt.rule == PruneRule::ShortestPath ||
      (opt.rule == PruneRule::Auto && !(g.stats.conditions.metric && g.stats.conditions.monotone));
  g.stats.shortest_path_rule = shortest;
  std::unique_ptr<CorrectedTables> corrected;
  LegOverride legs;
  if (shortest) {
    corrected = std::make_unique<CorrectedTables>(ctx);
    legs = corrected->override();
  }
  g.loads = find_feasible_loads(ctx, shortest ? &legs : nullptr);

  GenVertex s;
  s.id = 0;
  s.kind = GenVertex::Kind::Start;
  s.cl = 0;
  g.vertices.push_back(s);
  // First vertex id of each load; its vertices follow in member order.
  std::unordered_map<LoadSet, int, LoadSetHash> first;
  for (const auto& load : g.loads) {
    first.emplace(load, static_cast<int>(g.vertices.size()));
    const double w = load_weight(load, inst);
    const double eh = ctx.model().hover_power(w);
    for (int r : load.members()) {
      GenVertex v;
      v.id = static_cast<int>(g.vertices.size());
      v.kind = GenVertex::Kind::Delivery;
      v.r = r;
      v.load = load;
      v.cl = r;
      v.eh = eh;
      v.weight = w;
      g.vertices.push_back(v);
    }
  }
  GenVertex e;
  e.id = static_cast<int>(g.vertices.size());
  e.kind = GenVertex::Kind::End;
  e.cl = n + 1;
  g.vertices.push_back(e);

  auto add_arc = [&](int tail, int head, int from, int to, double payload) {
    GenArc a;
    a.id = static_cast<int>(g.arcs.size());
    a.tail = tail;
    a.head = head;
    a.payload = payload;
    a.t = ctx.leg_time(from, to, payload);
    a.c = ctx.tables().cost(from, to);
    a.ed = ctx.model().arc_energy(payload, a.t);
    g.arcs.push_back(a);
  };

  for (int vid = 1; vid < e.id; ++vid) {
    const GenVertex& v = g.vertices[vid];
    add_arc(0, vid, 0, v.r, v.weight);
    if (v.load.size() == 1) {
      add_arc(vid, e.id, v.r, n + 1, 0.0);
      continue;
    }
    const LoadSet rest = v.load.without(v.r);
    auto it = first.find(rest);
    if (it == first.end()) continue;
    const double w = g.vertices[it->second].weight;
    int k = 0;
    for (int p : rest.members()) {
      add_arc(vid, it->second + k, v.r, p, w);
      ++k;
    }
  }

  const int nv = static_cast<int>(g.vertices.size());
  g.in.assign(nv, {});
  g.out.assign(nv, {});
  for (const auto& a : g.arcs) {
    g.out[a.tail].push_back(a.id);
    g.in[a.head].push_back(a.id);
  }
  g.clusters.assign(n + 2, {});
  for (const auto& v : g.vertices) g.clusters[v.cl].push_back(v.id);
  for (int r = 1; r <= n; ++r)
    if (g.singleton(r) < 0) g.infeasible_requests.push_back(r);

  g.stats.loads = static_cast<int>(g.loads.size());
  g.stats.vertices = nv;
  g.stats.arcs = static_cast<int>(g.arcs.size());
  g.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return g;
}

void write_graph_dump(std::ostream& os, const GeneratedGraph& g) {
  for (const auto& v : g.vertices) {
    const char* kind = v.kind == GenVertex::Kind::Start ? "start"
                       : v.kind == GenVertex::Kind::End ? "end"
                                                        : "delivery";
    os << fmt::format("VERT {} {} {} {} {} {:.9g}\n", v.id, kind, v.r, v.load.hex(), v.cl, v.eh);
  }
  for (const auto& a : g.arcs)
    os << fmt::format("ARC {} {} {} {:.9g} {:.9g} {:.9g} {:.9g}\n", a.id, a.tail, a.head, a.t, a.c, a.ed,
                      a.payload);
}

}  // namespace drp
