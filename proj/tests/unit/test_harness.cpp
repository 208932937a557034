#include <doctest.h>

#include <sstream>

#include "drp/error.hpp"
#include "drp/harness.hpp"
#include "support.hpp"

using namespace drp;

TEST_CASE("empty suite yields a header-only table") {
  BenchConfig cfg;
  const auto rows = run_benchmark(cfg);
  CHECK(rows.empty());
  std::ostringstream os;
  write_bench_csv(os, rows);
  CHECK(os.str() == std::string(kBenchCsvHeader) + "\n");
}

TEST_CASE("two-request suite reports the known optima") {
  BenchConfig cfg;
  for (auto s : {ObjectiveSetting::R, ObjectiveSetting::E, ObjectiveSetting::RE})
    cfg.instances.push_back({std::string("t2_") + setting_name(s), test::t2(s)});
  const auto rows = run_benchmark(cfg);
  REQUIRE(rows.size() == 3);
  // Sorted by name: t2_E, t2_R, t2_RE.
  CHECK(rows[0].UP == doctest::Approx(21));
  CHECK(rows[1].UP == doctest::Approx(12));
  CHECK(rows[2].UP == doctest::Approx(35));
  for (const auto& r : rows) {
    CHECK(r.status == "optimal");
    CHECK(r.ratioV <= 100);
    CHECK(r.ratioA <= 100);
    CHECK(r.gap_pct == doctest::Approx(100 * (r.UP - r.LB) / r.UP));
  }
}

TEST_CASE("capacity-limited suite row carries graph sizes") {
  BenchConfig cfg;
  Instance inst = test::data_instance("figure2.drp");
  inst.setting = ObjectiveSetting::R;
  cfg.instances.push_back({"fig2", inst});
  const auto rows = run_benchmark(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].V == 12);
  CHECK(rows[0].A == 20);
  CHECK(rows[0].ratioV == doctest::Approx(100.0 * 12 / rows[0].boundV));
  CHECK(rows[0].ratioA == doctest::Approx(100.0 * 20 / rows[0].boundA));
}

TEST_CASE("generated suite rows are sorted and valid") {
  BenchConfig cfg;
  cfg.sizes = {4, 5};
  cfg.seeds = {2, 1};
  cfg.generator.windows = GeneratorConfig::Windows::Random;
  cfg.workers = 2;
  const auto rows = run_benchmark(cfg);
  CHECK(rows.size() == 12);
  for (size_t k = 1; k < rows.size(); ++k) CHECK(rows[k - 1].name < rows[k].name);
  for (const auto& r : rows) CHECK(r.status != "invalid");
  CHECK(bench_summary(rows).find("ratio") != std::string::npos);
  CHECK_FALSE(format_bench_table(rows).empty());
}

TEST_CASE("CSV round trip") {
  BenchConfig cfg;
  cfg.sizes = {4};
  cfg.seeds = {3};
  const auto rows = run_benchmark(cfg);
  std::stringstream ss;
  write_bench_csv(ss, rows);
  CHECK(read_bench_csv(ss) == rows);
  std::istringstream bad(std::string(kBenchCsvHeader) + "\nx,1,2\n");
  CHECK_THROWS_AS(read_bench_csv(bad), ParseError);
}

TEST_CASE("graph stats block") {
  SizeAnalysis s;
  const std::string text = report_graph_stats(make_context(test::data_instance("figure2.drp")), &s);
  CHECK(text.rfind("STATS 4 ", 0) == 0);
  CHECK(s.actual_v == 12);
  CHECK(s.actual_a == 20);
  CHECK(s.ratio_v == doctest::Approx(100.0 * 12 / s.bound_v));

  Instance single = test::data_instance("figure2.drp");
  single.capacity = 0.35;
  SizeAnalysis u;
  report_graph_stats(make_context(single), &u);
  CHECK(u.upmnr == 1);
  CHECK(u.bound_a == 8);
  CHECK(u.actual_a == 8);
  CHECK(u.ratio_a == doctest::Approx(100));

  GeneratorConfig cfg;
  cfg.n = 10;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    SizeAnalysis t;
    report_graph_stats(make_context(generate_instance(cfg, seed)), &t);
    if (t.upmnr == 4) {
      CHECK(t.bound_v == 1302);
      break;
    }
  }
}
