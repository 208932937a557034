#include <doctest.h>

#include <sstream>

#include "drp/error.hpp"
#include "drp/formulation.hpp"
#include "support.hpp"

using namespace drp;

namespace {

bool has_violation(const ValidationReport& rep, const std::string& prefix) {
  for (const auto& v : rep.violations)
    if (v.rfind(prefix, 0) == 0) return true;
  return false;
}

}  // namespace

TEST_CASE("extraction on a single request") {
  Instance one;
  one.requests.push_back({1, 1, 2, 0.3, 0, kInf});
  const DeliveryContext ctx = make_context(one);
  const SolveOutcome out = solve_instance(ctx);
  REQUIRE(out.solution);
  REQUIRE(out.solution->routes.size() == 1);
  CHECK(out.solution->routes[0] == Route{{1}});

  const std::vector<double> zero(out.model.num_vars(), 0.0);
  CHECK_THROWS_AS(extract_solution(out.model, zero, out.graph, ctx), ExtractionError);
}

TEST_CASE("energy-only optimum uses two single-stop trips") {
  const DeliveryContext ctx = make_context(test::t2(ObjectiveSetting::E));
  const SolveOutcome out = solve_instance(ctx);
  REQUIRE(out.solution);
  const Solution& s = *out.solution;
  CHECK(s.trip_count() == 2);
  CHECK(s.routes.size() == 1);  // one drone
  CHECK(s.energy == doctest::Approx(21));
  CHECK(out.report.ok);
  // Second trip departs after the first returns.
  const int first = s.routes[0][0][0], second = s.routes[0][1][0];
  CHECK(s.y[second] >= s.y[first] + ctx.tables().time(first, 3) + ctx.tables().time(0, second) - 1e-9);
}

TEST_CASE("validator names violations") {
  Instance inst = test::t2(ObjectiveSetting::RE);
  {
    Instance heavy = inst;
    heavy.requests[0].q = 1.5;
    heavy.requests[1].q = 1.5;
    heavy.capacity = 2;
    Solution s;
    s.routes = {{{1, 2}}};
    const ValidationReport rep = validate_solution(s, make_context(heavy), {false, 1e-6, false});
    CHECK_FALSE(rep.ok);
    CHECK(has_violation(rep, "capacity"));
  }
  {
    Instance weak = inst;
    weak.battery = 20;
    Solution s;
    s.routes = {{{1, 2}}};
    const ValidationReport rep = validate_solution(s, make_context(weak), {false, 1e-6, false});
    CHECK_FALSE(rep.ok);
    CHECK(has_violation(rep, "battery"));
  }
  {
    Solution s;
    s.routes = {{{1}}};
    const ValidationReport rep = validate_solution(s, make_context(inst), {false, 1e-6, false});
    CHECK(has_violation(rep, "covering"));
  }
  {
    Solution s;
    s.routes = {{{1}}, {{2}}};
    const ValidationReport rep = validate_solution(s, make_context(inst), {false, 1e-6, false});
    CHECK(has_violation(rep, "fleet"));
  }
  {
    Solution s;
    s.routes = {{{1, 2}}};
    s.objective = 30;
    const ValidationReport rep = validate_solution(s, make_context(inst));
    CHECK(has_violation(rep, "objective"));
  }
  {
    Instance late = inst;
    late.requests[1].b = 5;  // reached at 8 via request 1
    Solution s;
    s.routes = {{{1, 2}}};
    const ValidationReport rep = validate_solution(s, make_context(late), {false, 1e-6, false});
    CHECK(has_violation(rep, "window"));
  }
}

TEST_CASE("solution file round trip") {
  const DeliveryContext ctx = make_context(test::t2(ObjectiveSetting::E));
  const SolveOutcome out = solve_instance(ctx);
  REQUIRE(out.solution);
  const std::string text = solution_to_string(*out.solution);
  CHECK(text.rfind("SOL ", 0) == 0);
  CHECK(text.find("ROUTE 0 : trip(") != std::string::npos);
  std::istringstream in(text);
  const Solution back = read_solution(in);
  CHECK(back.routes == out.solution->routes);
  CHECK(back.objective == doctest::Approx(out.solution->objective));
  CHECK(validate_solution(back, ctx).ok);
  std::istringstream bad("SOL 1 0\nROUTE 0 : trip( 1 2\n");
  CHECK_THROWS_AS(read_solution(bad), ParseError);
}

TEST_CASE("solver solutions keep big-M rows honest") {
  // Validated optimum reproduced by earliest-start propagation.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const DeliveryContext ctx = make_context(test::random_instance(6, seed, ObjectiveSetting::RE));
    const SolveOutcome out = solve_instance(ctx, test::exact_options());
    if (!out.solution) continue;
    CHECK_MESSAGE(out.report.ok, out.report.summary());
    Solution copy = *out.solution;
    propagate_schedule(copy, ctx);
    CHECK(validate_solution(copy, ctx).ok);
  }
}
