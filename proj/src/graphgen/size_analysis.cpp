#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "drp/graphgen.hpp"
#include "drp/lp.hpp"
#include "drp/milp_model.hpp"

namespace drp {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
constexpr u64 kSat = std::numeric_limits<u64>::max();

u64 sat_add(u64 a, u64 b) { return a > kSat - b ? kSat : a + b; }
u64 sat_mul(u64 a, u64 b) {
  const u128 p = static_cast<u128>(a) * b;
  return p > kSat ? kSat : static_cast<u64>(p);
}

// Sums of C(n-1, i) and C(n-1, i) * i for i < upmnr.
void binomial_sums(int n, int upmnr, u64& plain, u64& weighted) {
  plain = weighted = 0;
  u128 c = 1;
  bool saturated = false;
  for (int i = 0; i < upmnr && i <= n - 1; ++i) {
    const u64 ci = saturated || c > kSat ? kSat : static_cast<u64>(c);
    if (ci == kSat) saturated = true;
    plain = sat_add(plain, ci);
    weighted = sat_add(weighted, sat_mul(ci, static_cast<u64>(i)));
    if (!saturated) c = c * static_cast<u128>(n - 1 - i) / static_cast<u128>(i + 1);
  }
}

}  // namespace

u64 vertex_bound(int n, int upmnr) {
  u64 plain, weighted;
  binomial_sums(n, upmnr, plain, weighted);
  return sat_add(2, sat_mul(static_cast<u64>(n), plain));
}

u64 arc_bound(int n, int upmnr) {
  u64 plain, weighted;
  binomial_sums(n, upmnr, plain, weighted);
  const u64 nn = static_cast<u64>(n);
  return sat_add(sat_add(sat_mul(nn, plain), sat_mul(nn, weighted)), nn);
}

double time_horizon(const DeliveryContext& ctx) {
  const Instance& inst = ctx.instance();
  const int n = inst.n();
  const double w = inst.capacity;
  double start = std::isfinite(inst.a_d) ? inst.a_d : 0.0;
  for (const auto& r : inst.requests)
    if (std::isfinite(r.a)) start = std::max(start, r.a);
  double max_depart = 0;
  for (int r = 1; r <= n; ++r) max_depart = std::max(max_depart, ctx.leg_time(0, r, w));
  double travel = 0;
  for (int r = 1; r <= n; ++r) {
    double in = 0;
    for (int k = 0; k <= n; ++k)
      if (k != r) in = std::max(in, ctx.leg_time(k, r, w));
    travel += in + ctx.leg_time(r, n + 1, w) + max_depart;
  }
  return start + travel + 1.0;
}

UpmnrResult compute_upmnr(const DeliveryContext& ctx) {
  const Instance& inst = ctx.instance();
  const int n = inst.n();
  UpmnrResult res;
  if (n == 0) return res;
  double qmin = kInf;
  for (const auto& r : inst.requests) qmin = std::min(qmin, r.q);
  res.naive = std::min(n, static_cast<int>(std::floor(inst.capacity / qmin + 1e-9)));

  const double horizon = time_horizon(ctx);
  auto close = [&](int v) { return std::min(inst.close(v), horizon); };
  auto qof = [&](int v) { return v >= 1 && v <= n ? inst.request(v).q : 0.0; };

  struct Arc {
    int from, to;
    double t, e;
  };
  std::vector<Arc> arcs;
  auto add = [&](int from, int to) {
    const double w = qof(to);
    const double t = ctx.leg_time(from, to, w);
    arcs.push_back({from, to, t, ctx.model().arc_energy(w, t)});
  };
  for (int r = 1; r <= n; ++r) add(0, r);
  for (int r = 1; r <= n; ++r) add(r, n + 1);
  for (int r = 1; r <= n; ++r)
    for (int p = 1; p <= n; ++p)
      if (p != r) add(r, p);

  std::vector<double> max_out(n + 2, 0.0);
  for (const auto& a : arcs) max_out[a.from] = std::max(max_out[a.from], a.e);
  double emax = 0;
  for (double e : max_out) emax += e;
  const double battery = std::min(inst.battery, emax + 1.0);

  MilpModel m;
  std::vector<int> x(arcs.size());
  for (size_t k = 0; k < arcs.size(); ++k)
    x[k] = m.add_var(fmt::format("x{}_{}", arcs[k].from, arcs[k].to), VarType::Continuous, 0, 1, -1.0);
  m.obj_offset = 1.0;
  std::vector<int> y(n + 2), f(n + 2);
  for (int v = 0; v <= n + 1; ++v) {
    y[v] = m.add_var(fmt::format("y{}", v), VarType::Continuous, inst.open(v), close(v));
    f[v] = m.add_var(fmt::format("f{}", v), VarType::Continuous, 0, v == 0 ? 0.0 : battery);
  }
  std::vector<std::vector<std::pair<int, double>>> in(n + 2), out(n + 2);
  for (size_t k = 0; k < arcs.size(); ++k) {
    out[arcs[k].from].push_back({x[k], 1.0});
    in[arcs[k].to].push_back({x[k], 1.0});
  }
  for (int v = 1; v <= n; ++v) {
    m.add_row(fmt::format("indeg{}", v), in[v], Sense::LE, 1.0);
    auto flow = out[v];
    for (auto [j, c] : in[v]) flow.push_back({j, -c});
    m.add_row(fmt::format("flow{}", v), flow, Sense::EQ, 0.0);
  }
  m.add_row("start", out[0], Sense::EQ, 1.0);
  m.add_row("end", in[n + 1], Sense::EQ, 1.0);
  std::vector<std::pair<int, double>> cap;
  for (size_t k = 0; k < arcs.size(); ++k) {
    const auto& a = arcs[k];
    const double m2 = std::max(0.0, close(a.from) - inst.open(a.to) + a.t);
    m.add_row(fmt::format("time{}_{}", a.from, a.to), {{y[a.from], 1.0}, {y[a.to], -1.0}, {x[k], m2}},
              Sense::LE, m2 - a.t);
    const double m1 = battery + a.e;
    m.add_row(fmt::format("energy{}_{}", a.from, a.to), {{f[a.to], 1.0}, {f[a.from], -1.0}, {x[k], -m1}},
              Sense::GE, a.e - m1);
    if (qof(a.from) > 0) cap.push_back({x[k], qof(a.from)});
  }
  m.add_row("capacity", cap, Sense::LE, inst.capacity);

  const LpResult lp = solve_lp(m);
  if (lp.status != LpStatus::Optimal) {
    res.infeasible = lp.status == LpStatus::Infeasible;
    res.value = 0;
    return res;
  }
  res.lp_optimum = -lp.objective;
  int v = static_cast<int>(std::floor(res.lp_optimum + 1e-9));
  v = std::min(v, res.naive);
  res.value = std::max(v, 1);
  return res;
}

SizeAnalysis analyze_size(const GeneratedGraph& g, int upmnr) {
  SizeAnalysis s;
  s.n = g.n;
  s.upmnr = upmnr;
  s.actual_v = static_cast<int>(g.vertices.size());
  s.actual_a = static_cast<int>(g.arcs.size());
  if (upmnr >= 1) {
    s.bound_v = vertex_bound(g.n, upmnr);
    s.bound_a = arc_bound(g.n, upmnr);
    s.ratio_v = 100.0 * s.actual_v / static_cast<double>(s.bound_v);
    s.ratio_a = s.bound_a ? 100.0 * s.actual_a / static_cast<double>(s.bound_a) : 0.0;
  }
  return s;
}

std::string stats_line(const SizeAnalysis& s, double prep_seconds) {
  return fmt::format("STATS {} {} {} {} {} {} {:.6f}", s.n, s.upmnr, s.actual_v, s.actual_a, s.bound_v,
                     s.bound_a, prep_seconds);
}

}  // namespace drp
