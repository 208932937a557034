#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "drp/graphgen.hpp"
#include "support.hpp"

using namespace drp;

namespace {

// C(n, k) by Pascal's rule; independent of the library's closed sums.
std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<std::uint64_t> row(n + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j > 0; --j) row[j] += row[j - 1];
  return row[k];
}

std::uint64_t vertex_formula(int n, int u) {
  std::uint64_t s = 0;
  for (int i = 0; i < u; ++i) s += choose(n - 1, i);
  return 2 + n * s;
}

std::uint64_t arc_formula(int n, int u) {
  std::uint64_t a = 0, b = 0;
  for (int i = 0; i < u; ++i) {
    a += choose(n - 1, i);
    b += choose(n - 1, i) * i;
  }
  return n * a + n * b + n;
}

// Largest set served by one feasible trip, by permutation enumeration.
int brute_mnr(const DeliveryContext& ctx) {
  const int n = ctx.n();
  int best = 0;
  for (int mask = 1; mask < (1 << n); ++mask) {
    std::vector<int> trip;
    for (int r = 1; r <= n; ++r)
      if (mask >> (r - 1) & 1) trip.push_back(r);
    if (static_cast<int>(trip.size()) <= best) continue;
    do {
      if (ctx.simulate(trip, ctx.instance().a_d).feasible) {
        best = static_cast<int>(trip.size());
        break;
      }
    } while (std::next_permutation(trip.begin(), trip.end()));
  }
  return best;
}

Instance three_in_line() {
  Instance inst;
  inst.capacity = 10;
  for (int r = 1; r <= 3; ++r) inst.requests.push_back({r, 100.0 + r, 0, 1, 0, kInf});
  return inst;
}

}  // namespace

TEST_CASE("load feasibility on the capacity-limited instance") {
  const DeliveryContext ctx = make_context(test::data_instance("figure2.drp"));
  CHECK_FALSE(is_load_possible(LoadSet::of({1, 2}), ctx));
  CHECK(is_load_possible(LoadSet::of({1, 4}), ctx));
  CHECK(is_load_possible(LoadSet::of({3}), ctx));
  const auto loads = find_feasible_loads(ctx);
  const std::vector<LoadSet> expect{LoadSet::of({1}), LoadSet::of({2}), LoadSet::of({3}),
                                    LoadSet::of({4}), LoadSet::of({1, 4}), LoadSet::of({2, 4}), LoadSet::of({3, 4})};
  CHECK(loads.size() == 7);
  CHECK(std::set<LoadSet>(loads.begin(), loads.end()) == std::set<LoadSet>(expect.begin(), expect.end()));
  CHECK(std::is_sorted(loads.begin(), loads.end()));
}

TEST_CASE("battery limit rejects a distant pair in both orders") {
  Instance inst;
  inst.capacity = 10;
  inst.battery = 30;
  inst.requests.push_back({1, 5, 0, 1, 0, kInf});
  inst.requests.push_back({2, -5, 0, 1, 0, kInf});
  const DeliveryContext ctx = make_context(inst);
  CHECK(ctx.trip_energy({1, 2}) > 30);
  CHECK(ctx.trip_energy({2, 1}) > 30);
  CHECK(ctx.trip_energy({1}) <= 30);
  CHECK_FALSE(is_load_possible(LoadSet::of({1, 2}), ctx));
  CHECK(is_load_possible(LoadSet::of({1}), ctx));
}

TEST_CASE("supersets of an infeasible load are skipped") {
  Instance inst = test::data_instance("figure2.drp");
  inst.capacity = 1.0;  // {1,2} and {1,2,4} fit by weight; the windows break them
  inst.requests[0].b = 1.0;
  inst.requests[1].b = 1.0;
  const DeliveryContext ctx = make_context(inst);
  CHECK_FALSE(is_load_possible(LoadSet::of({1, 2}), ctx));
  const auto loads = find_feasible_loads(ctx);
  for (const auto& l : loads) CHECK_FALSE(LoadSet::of({1, 2}).subset_of(l));
}

TEST_CASE("no requests gives no loads") {
  Instance inst;
  const DeliveryContext ctx = make_context(inst);
  CHECK(find_feasible_loads(ctx).empty());
}

TEST_CASE("generated graph sizes on small instances") {
  {
    const GeneratedGraph g = build_generated_graph(make_context(test::data_instance("figure2.drp")));
    CHECK(g.loads.size() == 7);
    CHECK(g.vertices.size() == 12);
    CHECK(g.arcs.size() == 20);
    int from_s = 0, to_e = 0;
    for (const auto& a : g.arcs) {
      from_s += a.tail == g.start();
      to_e += a.head == g.end();
    }
    CHECK(from_s == 10);
    CHECK(to_e == 4);
  }
  {
    Instance one;
    one.requests.push_back({1, 1, 1, 0.2, 0, kInf});
    const GeneratedGraph g = build_generated_graph(make_context(one));
    CHECK(g.vertices.size() == 3);
    CHECK(g.arcs.size() == 2);
  }
  {
    const GeneratedGraph g = build_generated_graph(make_context(test::t2(ObjectiveSetting::RE)));
    CHECK(g.vertices.size() == 6);
    CHECK(g.arcs.size() == 8);
  }
}

TEST_CASE("graph structure invariants on random instances") {
  for (auto kind : {EnergySpec::Kind::Linear, EnergySpec::Kind::Convex}) {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      const DeliveryContext ctx = make_context(test::random_instance(7, seed, ObjectiveSetting::RE, kind));
      const GeneratedGraph g = build_generated_graph(ctx);
      if (!g.infeasible_requests.empty()) continue;
      const Instance& inst = ctx.instance();
      long law = 0;
      size_t clustered = 0;
      for (int c = 1; c <= g.n; ++c) clustered += g.clusters[c].size();
      CHECK(clustered + 2 == g.vertices.size());
      CHECK(g.vertices[g.start()].cl == 0);
      CHECK(g.vertices[g.end()].cl == g.n + 1);
      for (const auto& v : g.vertices) {
        if (v.kind != GenVertex::Kind::Delivery) continue;
        CHECK(v.load.contains(v.r));
        CHECK(v.cl == v.r);
        CHECK(v.weight <= inst.capacity + 1e-9);
        CHECK(v.eh == doctest::Approx(ctx.model().hover_power(v.weight)));
        CHECK(!g.in[v.id].empty());
        CHECK(!g.out[v.id].empty());
        law += v.load.size() - 1 + (v.load.size() == 1 ? 1 : 0) + 1;
      }
      CHECK(law == static_cast<long>(g.arcs.size()));
      for (const auto& a : g.arcs) {
        const GenVertex& t = g.vertices[a.tail];
        const GenVertex& h = g.vertices[a.head];
        if (t.kind == GenVertex::Kind::Start) {
          CHECK(a.payload == doctest::Approx(h.weight));
        } else {
          CHECK(a.payload == doctest::Approx(load_weight(t.load.without(t.r), inst)));
          if (h.kind == GenVertex::Kind::End) {
            CHECK(t.load.size() == 1);
          } else {
            CHECK(h.load == t.load.without(t.r));
          }
        }
        const double tt = ctx.tables().time(t.cl, h.cl);
        CHECK(a.t == doctest::Approx(tt));
        CHECK(a.ed == doctest::Approx(ctx.model().arc_energy(a.payload, tt)));
      }
    }
  }
}

TEST_CASE("pruned enumeration equals exhaustive enumeration on metric instances") {
  for (auto kind : {EnergySpec::Kind::Linear, EnergySpec::Kind::Convex}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const DeliveryContext ctx = make_context(test::random_instance(10, seed, ObjectiveSetting::RE, kind));
      const ConditionReport rep = check_conditions_AB(ctx);
      CHECK(rep.metric);
      CHECK(rep.monotone);
      CHECK(find_feasible_loads(ctx) == exhaustive_feasible_loads(ctx));
    }
  }
}

TEST_CASE("size bounds") {
  CHECK(vertex_bound(10, 4) == 1302);
  CHECK(vertex_bound(10, 5) == 2562);
  CHECK(arc_bound(10, 4) == 4640);
  CHECK(arc_bound(10, 5) == 10940);
  for (int n = 1; n <= 20; ++n) {
    CHECK(vertex_bound(n, 1) == static_cast<std::uint64_t>(n + 2));
    CHECK(arc_bound(n, 1) == static_cast<std::uint64_t>(2 * n));
    for (int u = 1; u <= n; ++u) {
      CHECK(vertex_bound(n, u) == vertex_formula(n, u));
      CHECK(arc_bound(n, u) == arc_formula(n, u));
    }
  }
  CHECK(vertex_bound(200, 200) == UINT64_MAX);
  CHECK(arc_bound(200, 200) == UINT64_MAX);
}

TEST_CASE("UPMNR bounds the brute-force MNR") {
  {
    Instance one;
    one.requests.push_back({1, 1, 1, 0.2, 0, kInf});
    CHECK(compute_upmnr(make_context(one)).value == 1);
  }
  {
    Instance inst = test::data_instance("figure2.drp");
    inst.capacity = 0.35;  // no pair fits
    CHECK(compute_upmnr(make_context(inst)).value == 1);
  }
  {
    const DeliveryContext ctx = make_context(test::t2(ObjectiveSetting::RE));
    CHECK(brute_mnr(ctx) == 2);
    CHECK(compute_upmnr(ctx).value >= 2);
  }
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const DeliveryContext ctx = make_context(test::random_instance(6, seed, ObjectiveSetting::RE));
    const UpmnrResult u = compute_upmnr(ctx);
    CHECK(u.value >= brute_mnr(ctx));
    CHECK(u.value <= u.naive);
    const GeneratedGraph g = build_generated_graph(ctx);
    const SizeAnalysis s = analyze_size(g, u.value);
    CHECK(static_cast<std::uint64_t>(s.actual_v) <= s.bound_v);
    CHECK(static_cast<std::uint64_t>(s.actual_a) <= s.bound_a);
  }
}

TEST_CASE("conditions A and B") {
  {
    const ConditionReport rep = check_conditions_AB(make_context(test::data_instance("figure2.drp")));
    CHECK(rep.metric);
    CHECK(rep.monotone);
  }
  Instance inst = three_in_line();
  for (auto [i, j, v] : {std::tuple{1, 3, 10.0}, {1, 2, 2.0}, {2, 3, 3.0}}) {
    inst.time_overrides.push_back({i, j, v});
    inst.time_overrides.push_back({j, i, v});
  }
  const DeliveryContext ctx = make_context(inst);
  const ConditionReport rep = check_conditions_AB(ctx);
  CHECK_FALSE(rep.metric);
  CHECK_FALSE(rep.counterexample.empty());
  const CorrectedTables fixed(ctx);
  CHECK(fixed.time(1, 3) == doctest::Approx(5));
  CHECK(fixed.time(1, 2) == doctest::Approx(2));

  const DeliveryContext metric = make_context(three_in_line());
  const CorrectedTables same(metric);
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j) {
      CHECK(same.time(i, j) == doctest::Approx(metric.tables().time(i, j)));
      CHECK(same.energy(i, j, 1.5) == doctest::Approx(metric.leg_energy(i, j, 1.5)));
    }
}

TEST_CASE("non-monotone energy is detected") {
  Instance inst = three_in_line();
  inst.energy.kind = EnergySpec::Kind::Tabulated;
  inst.energy.tabulated.knots = {{0, 10}, {3, 0.1}};  // heavier is cheaper
  const ConditionReport rep = check_conditions_AB(make_context(inst));
  CHECK(rep.metric);
  CHECK_FALSE(rep.monotone);
  CHECK_FALSE(rep.counterexample.empty());
}

TEST_CASE("graph dump and stats line") {
  const DeliveryContext ctx = make_context(test::data_instance("figure2.drp"));
  const GeneratedGraph g = build_generated_graph(ctx);
  std::ostringstream os;
  write_graph_dump(os, g);
  const std::string text = os.str();
  CHECK(std::count(text.begin(), text.end(), '\n') >= 32);
  CHECK(text.find("VERT 0 ") != std::string::npos);
  CHECK(text.find("ARC 0 ") != std::string::npos);
  const SizeAnalysis s = analyze_size(g, compute_upmnr(ctx).value);
  CHECK(stats_line(s, 0.5).rfind("STATS 4 ", 0) == 0);
}
