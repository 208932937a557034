#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "drp/error.hpp"
#include "drp/formulation.hpp"
#include "support.hpp"

using namespace drp;

namespace {

// Open windows and an unlimited depot close: every partition into
// feasible ordered trips is a solution, whatever the fleet size.
double open_window_optimum(const Instance& inst) {
  const int n = inst.n();
  const auto model = make_energy_model(inst.energy);
  auto px = [&](int i) { return i == 0 || i == n + 1 ? inst.depot_x : inst.request(i).x; };
  auto py = [&](int i) { return i == 0 || i == n + 1 ? inst.depot_y : inst.request(i).y; };
  auto dist = [&](int i, int j) { return std::hypot(px(i) - px(j), py(i) - py(j)); };
  // Cheapest order per subset.
  std::vector<double> best_trip(1u << n, kInf);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> order;
    double w = 0;
    for (int r = 1; r <= n; ++r)
      if (mask >> (r - 1) & 1) {
        order.push_back(r);
        w += inst.request(r).q;
      }
    if (w > inst.capacity + 1e-9) continue;
    do {
      double load = w, energy = 0, cost = 0;
      int pos = 0;
      for (int r : order) {
        energy += model->arc_energy(load, dist(pos, r) / inst.speed);
        cost += dist(pos, r) * inst.cost_per_distance;
        load -= inst.request(r).q;
        pos = r;
      }
      energy += model->arc_energy(0, dist(pos, n + 1) / inst.speed);
      cost += dist(pos, n + 1) * inst.cost_per_distance;
      if (energy > inst.battery + 1e-9) continue;
      const double obj = inst.transport_weight() * cost + inst.energy_weight() * energy;
      best_trip[mask] = std::min(best_trip[mask], obj);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  std::vector<double> best(1u << n, kInf);
  best[0] = 0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    const unsigned low = mask & (~mask + 1);
    for (unsigned sub = mask; sub; sub = (sub - 1) & mask)
      if ((sub & low) && std::isfinite(best_trip[sub]))
        best[mask] = std::min(best[mask], best[mask ^ sub] + best_trip[sub]);
  }
  return best[(1u << n) - 1];
}

Instance open_random(int n, std::uint64_t seed, ObjectiveSetting s, EnergySpec::Kind kind) {
  GeneratorConfig cfg;
  cfg.n = n;
  cfg.setting = s;
  cfg.energy.kind = kind;
  return generate_instance(cfg, seed);
}

}  // namespace

TEST_CASE("two-request optima from oracle and MILP") {
  const std::vector<std::pair<ObjectiveSetting, double>> cases{
      {ObjectiveSetting::R, 12}, {ObjectiveSetting::E, 21}, {ObjectiveSetting::RE, 35}};
  for (auto [s, expect] : cases) {
    const Instance inst = test::t2(s);
    CHECK(open_window_optimum(inst) == doctest::Approx(expect));
    const DeliveryContext ctx = make_context(inst);
    const OracleResult o = brute_force_solve(ctx);
    REQUIRE(o.feasible);
    CHECK(o.objective == doctest::Approx(expect));
    const SolveOutcome out = solve_instance(ctx);
    CHECK(out.milp.status == MilpStatus::Optimal);
    CHECK(out.milp.up == doctest::Approx(expect));
    REQUIRE(out.solution);
    CHECK(out.report.ok);
    CHECK(out.report.objective == doctest::Approx(expect));
  }
}

TEST_CASE("both optimal structures tie under the combined objective") {
  const DeliveryContext ctx = make_context(test::t2(ObjectiveSetting::RE));
  Solution one, two;
  one.routes = {{{1, 2}}};
  two.routes = {{{1}, {2}}};
  one.objective = two.objective = 35;
  CHECK(validate_solution(one, ctx).ok);
  CHECK(validate_solution(two, ctx).ok);
  CHECK(validate_solution(one, ctx).objective == doctest::Approx(35));
  CHECK(validate_solution(two, ctx).objective == doctest::Approx(35));
  Solution worse;
  worse.routes = {{{2, 1}}};
  CHECK(validate_solution(worse, ctx, {false, 1e-6, false}).objective == doctest::Approx(37));
}

TEST_CASE("nu counts depot departures at the optimum") {
  SolveOptions opt;
  opt.form.cuts = true;
  opt.milp.branch_nu = true;
  for (auto s : {ObjectiveSetting::R, ObjectiveSetting::E, ObjectiveSetting::RE}) {
    const SolveOutcome out = solve_instance(make_context(test::t2(s)), opt);
    REQUIRE(out.solution);
    const double nu = out.milp.x[out.model.nu_var];
    CHECK(nu == doctest::Approx(out.solution->trip_count()));
    if (s == ObjectiveSetting::RE) CHECK((nu == doctest::Approx(1) || nu == doctest::Approx(2)));
  }
}

TEST_CASE("open-window instances match an independent partition enumeration") {
  for (auto kind : {EnergySpec::Kind::Linear, EnergySpec::Kind::Convex})
    for (auto s : {ObjectiveSetting::R, ObjectiveSetting::E, ObjectiveSetting::RE})
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const Instance inst = open_random(5, seed, s, kind);
        const double expect = open_window_optimum(inst);
        const DeliveryContext ctx = make_context(inst);
        const OracleResult o = brute_force_solve(ctx);
        if (!std::isfinite(expect)) {
          CHECK_FALSE(o.feasible);
          continue;
        }
        REQUIRE(o.feasible);
        CHECK(test::rel_close(o.objective, expect, 1e-9));
        const SolveOutcome out = solve_instance(ctx, test::exact_options());
        CHECK(test::rel_close(out.milp.up, expect, 1e-6));
      }
}

TEST_CASE("oracle edge cases") {
  {
    Instance one;
    one.cost_per_distance = 2;
    one.setting = ObjectiveSetting::R;
    one.requests.push_back({1, 3, 4, 0.2, 0, kInf});
    const OracleResult o = brute_force_solve(make_context(one));
    REQUIRE(o.feasible);
    CHECK(o.objective == doctest::Approx(2 * 5 * 2));
  }
  {
    Instance far;
    far.battery = 5;
    far.requests.push_back({1, 30, 40, 0.2, 0, kInf});
    const DeliveryContext ctx = make_context(far);
    CHECK_FALSE(brute_force_solve(ctx).feasible);
    const SolveOutcome out = solve_instance(ctx);
    CHECK(out.infeasible_instance);
    CHECK(out.milp.status == MilpStatus::Infeasible);
    CHECK_FALSE(out.solution);
  }
  {
    const DeliveryContext ctx = make_context(test::random_instance(9, 1, ObjectiveSetting::RE));
    CHECK_THROWS_AS(brute_force_solve(ctx), ConfigError);
  }
}

TEST_CASE("single-thread solves are bit-reproducible") {
  const DeliveryContext ctx = make_context(test::random_instance(7, 4, ObjectiveSetting::RE));
  const SolveOutcome a = solve_instance(ctx);
  const SolveOutcome b = solve_instance(ctx);
  REQUIRE(a.milp.has_solution);
  CHECK(a.milp.up == b.milp.up);
  CHECK(a.milp.lb == b.milp.lb);
  CHECK(a.milp.nodes == b.milp.nodes);
  CHECK(a.milp.x == b.milp.x);
}

TEST_CASE("multi-thread solves agree within the gap") {
  const DeliveryContext ctx = make_context(test::random_instance(7, 5, ObjectiveSetting::RE));
  SolveOptions opt;
  const SolveOutcome one = solve_instance(ctx, opt);
  opt.milp.threads = 3;
  const SolveOutcome three = solve_instance(ctx, opt);
  REQUIRE(one.milp.has_solution);
  REQUIRE(three.milp.has_solution);
  CHECK(three.report.ok);
  CHECK(std::abs(one.milp.up - three.milp.up) <= 2e-4 * std::abs(one.milp.up));
}

TEST_CASE("bound trace is monotone and sandwiched") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const DeliveryContext ctx = make_context(test::random_instance(8, seed, ObjectiveSetting::RE));
    const SolveOutcome out = solve_instance(ctx, test::exact_options());
    if (!out.milp.has_solution) continue;
    const auto& tr = out.milp.trace;
    REQUIRE(!tr.empty());
    for (size_t k = 0; k < tr.size(); ++k) {
      CHECK(tr[k].lb <= tr[k].up + 1e-9);
      if (k > 0) {
        CHECK(tr[k].lb >= tr[k - 1].lb - 1e-9);
        CHECK(tr[k].up <= tr[k - 1].up);
      }
    }
    CHECK(out.milp.lb <= out.milp.up + 1e-9);
    if (out.milp.status == MilpStatus::Optimal) CHECK(out.milp.gap <= 1e-4);
  }
}

TEST_CASE("rejected incumbents are never returned") {
  const DeliveryContext ctx = make_context(test::t2(ObjectiveSetting::RE));
  const GeneratedGraph g = build_generated_graph(ctx);
  const MilpModel m = build_model(g, ctx);
  // A rejected integral node is dropped, so rejecting everything leaves nothing.
  const MilpResult none = solve_milp(m, {}, [](const std::vector<double>&) { return false; });
  CHECK_FALSE(none.has_solution);
  CHECK(none.rejected_incumbents >= 1);
  CHECK(none.status == MilpStatus::Infeasible);

  std::vector<std::vector<double>> seen;
  const MilpResult all = solve_milp(m, {}, [&](const std::vector<double>& x) {
    seen.push_back(x);
    return true;
  });
  REQUIRE(all.has_solution);
  CHECK(std::find(seen.begin(), seen.end(), all.x) != seen.end());
}

TEST_CASE("node limit without incumbent reports no solution") {
  const DeliveryContext ctx = make_context(test::random_instance(8, 2, ObjectiveSetting::RE));
  SolveOptions opt;
  opt.milp.node_limit = 1;
  const SolveOutcome out = solve_instance(ctx, opt);
  if (!out.milp.has_solution) {
    CHECK_FALSE(out.solution);
    CHECK(out.milp.status != MilpStatus::Optimal);
  } else {
    CHECK(out.report.ok);
  }
  CHECK(out.milp.nodes <= 2);
}
