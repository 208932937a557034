#include <doctest.h>

#include "drp/formulation.hpp"
#include "support.hpp"

using namespace drp;

namespace {

struct Built {
  DeliveryContext ctx;
  GeneratedGraph g;
};

Built build(const Instance& inst) {
  DeliveryContext ctx = make_context(inst);
  GeneratedGraph g = build_generated_graph(ctx);
  return {std::move(ctx), std::move(g)};
}

Instance window_pair(double b1, double a2) {
  Instance inst;
  inst.capacity = 5;
  // Far from the depot so the time horizon stays above the window closes.
  inst.requests.push_back({1, 0, 30, 1, 0, b1});
  inst.requests.push_back({2, 0, 34, 1, a2, 200});
  inst.time_overrides.push_back({1, 2, 5});
  return inst;
}

}  // namespace

TEST_CASE("core model variable counts") {
  const Built b = build(test::data_instance("figure2.drp"));
  const MilpModel m = build_core_milp(b.g, b.ctx);
  CHECK(m.num_vars() == 44);
  CHECK(m.count(Role::X) == 20);
  CHECK(m.count(Role::Z) == 12);
  CHECK(m.count(Role::Y) == 6);
  CHECK(m.count(Role::F) == 6);
  CHECK(m.count(VarType::Binary) == 32);
  CHECK(m.count_family("cover") == 4);
  CHECK(m.count_family("energy") == 20);
  std::string why;
  CHECK_MESSAGE(m.well_formed(&why), why);
}

TEST_CASE("objective coefficients follow the setting") {
  Instance inst = test::data_instance("figure2.drp");
  inst.energy_cost = 2;
  for (auto s : {ObjectiveSetting::R, ObjectiveSetting::E, ObjectiveSetting::RE}) {
    inst.setting = s;
    const Built b = build(inst);
    const MilpModel m = build_core_milp(b.g, b.ctx);
    for (const auto& a : b.g.arcs) {
      double expect = 0;
      if (s != ObjectiveSetting::E) expect += a.c;
      if (s != ObjectiveSetting::R) expect += 2 * a.ed;
      CHECK(m.obj[m.x_var[a.id]] == doctest::Approx(expect));
    }
    for (int j = 0; j < m.num_vars(); ++j)
      if (m.vars[j].role != Role::X) CHECK(m.obj[j] == 0);
  }
}

TEST_CASE("big-M values") {
  {
    Instance inst = test::t2(ObjectiveSetting::RE);
    inst.battery = 15;
    const Built b = build(inst);
    const BigMSet bm = compute_big_m(b.g, b.ctx);
    CHECK(bm.battery == 15);
    for (const auto& a : b.g.arcs) CHECK(bm.m4[a.id] == doctest::Approx(15 + a.ed));
  }
  {
    const Built b = build(window_pair(50, 10));
    const BigMSet bm = compute_big_m(b.g, b.ctx);
    REQUIRE(bm.horizon > 50);
    CHECK(bm.close[1] == 50);
    CHECK(bm.m5[1][2] == doctest::Approx(45));
    const auto& t = b.ctx.tables();
    CHECK(bm.m6[1][2] == doctest::Approx(50 - 10 + t.time(1, 3) + t.time(0, 2)));
  }
  {
    const Built b = build(window_pair(10, 50));
    const BigMSet bm = compute_big_m(b.g, b.ctx);
    CHECK(bm.m5[1][2] == 0);
    for (const auto& row : bm.m5)
      for (double v : row) CHECK(v >= 0);
  }
}

TEST_CASE("depot clusters use the depot window") {
  Instance inst = test::t2(ObjectiveSetting::RE);
  inst.a_d = 3;
  inst.b_d = 20;
  const Built b = build(inst);
  const BigMSet bm = compute_big_m(b.g, b.ctx);
  REQUIRE(bm.horizon > 20);
  CHECK(bm.open[0] == 3);
  CHECK(bm.open[3] == 3);
  CHECK(bm.close[0] == 20);
  CHECK(bm.close[3] == 20);
  CHECK(bm.m5[0][1] == doctest::Approx(20 - inst.requests[0].a + b.ctx.tables().time(0, 1)));
  CHECK(bm.m5[2][3] == doctest::Approx(std::max(0.0, bm.close[2] - 3 + b.ctx.tables().time(2, 3))));
}

TEST_CASE("time chaining is restricted to arc-connected pairs unless asked") {
  Instance inst = test::data_instance("figure2.drp");
  const Built b = build(inst);
  const MilpModel sparse = build_core_milp(b.g, b.ctx);
  FormulationOptions all;
  all.all_pairs_time = true;
  const MilpModel dense = build_core_milp(b.g, b.ctx, all);
  // Pairs among 1..3 have no arcs in this graph.
  CHECK(dense.count_family("time") == sparse.count_family("time") + 6);
}

TEST_CASE("extensions add the documented variables") {
  const Built b = build(test::data_instance("figure2.drp"));
  const int n = b.g.n;
  const MilpModel core = build_core_milp(b.g, b.ctx);

  MilpModel hover = core;
  apply_hover_extension(hover, b.g, b.ctx);
  CHECK(hover.count(Role::R) == b.g.delivery_count());
  CHECK(hover.num_vars() == core.num_vars() + b.g.delivery_count());

  MilpModel cuts = core;
  add_valid_inequalities(cuts, b.g, b.ctx);
  CHECK(cuts.num_vars() == core.num_vars() + n + 1);
  CHECK(cuts.count(Role::U) == n);
  CHECK(cuts.nu_var >= 0);
  CHECK(cuts.vars[cuts.nu_var].type == VarType::Integer);

  MilpModel ld = core;
  apply_load_dependent_extension(ld, b.g, b.ctx);
  long expect = 0;
  for (const auto& v : b.g.vertices)
    if (v.kind == GenVertex::Kind::Delivery && v.load.size() == 1)
      for (const auto& w : b.g.vertices)
        if (w.kind == GenVertex::Kind::Delivery && w.cl != v.cl) ++expect;
  CHECK(expect == 30);
  CHECK(ld.count(Role::Z) == expect);
  CHECK(ld.vertex_links);
  for (const MilpModel* m : {&hover, &cuts, &ld}) {
    std::string why;
    CHECK_MESSAGE(m->well_formed(&why), why);
  }
}

TEST_CASE("superset covering builds one row per request") {
  const Built b = build(test::data_instance("figure2.drp"));
  FormulationOptions opt;
  opt.covering = Covering::Superset;
  const MilpModel m = build_core_milp(b.g, b.ctx, opt);
  CHECK(m.count_family("cover") == 4);
  // Request 4 rides on every depot arc into {4}, {1,4}, {2,4} or {3,4}.
  for (const auto& row : m.rows)
    if (row.name == "cover4") CHECK(row.terms.size() == 7);
}

TEST_CASE("model editing helpers") {
  MilpModel m;
  const int a = m.add_var("a", VarType::Binary, 0, 1, 1, Role::X);
  const int b = m.add_var("b", VarType::Continuous, 0, 5, 2, Role::Z);
  m.add_row("r", {{a, 1}, {b, 0}, {a, 2}}, Sense::LE, 3, "fam");
  CHECK(m.rows[0].terms.size() == 1);
  CHECK(m.rows[0].terms[0].second == 3);
  m.add_row("s", {{b, 1}}, Sense::GE, 1, "other");
  m.remove_family("fam");
  CHECK(m.num_rows() == 1);
  m.remove_role(Role::X);
  CHECK(m.num_vars() == 1);
  CHECK(m.rows[0].terms[0].first == 0);
  CHECK(m.obj[0] == 2);
  m.rows[0].terms.push_back({7, 1.0});
  CHECK_FALSE(m.well_formed());
}
