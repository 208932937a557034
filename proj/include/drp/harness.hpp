#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "drp/drp_solve.hpp"
#include "drp/instance.hpp"

namespace drp {

inline constexpr const char* kBenchCsvHeader =
    "name,n,upmnr,V,A,boundV,boundA,ratioV,ratioA,prep_s,solve_s,UP,LB,gap_pct,status";

struct BenchRow {
  std::string name;
  int n = 0;
  int upmnr = 0;
  int V = 0, A = 0;
  std::uint64_t boundV = 0, boundA = 0;
  double ratioV = 0, ratioA = 0;  // percent
  double prep_s = 0, solve_s = 0;
  double UP = 0, LB = 0, gap_pct = 0;
  std::string status;
  bool operator==(const BenchRow&) const = default;
};

struct NamedInstance {
  std::string name;
  Instance instance;
};

struct BenchConfig {
  std::vector<int> sizes;
  std::vector<std::uint64_t> seeds;
  std::vector<ObjectiveSetting> settings{ObjectiveSetting::R, ObjectiveSetting::E,
                                         ObjectiveSetting::RE};
  GeneratorConfig generator;
  std::vector<NamedInstance> instances;  // solved in addition to generated ones
  SolveOptions solve;
  int workers = 1;  // instances solved concurrently
};

// One row per (instance, setting), in sorted name order.
std::vector<BenchRow> run_benchmark(const BenchConfig& cfg);

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);
std::vector<BenchRow> read_bench_csv(std::istream& is);
std::string format_bench_table(const std::vector<BenchRow>& rows);
// Mean times and ratio quartiles.
std::string bench_summary(const std::vector<BenchRow>& rows);

// STATS line plus ratios and the bound formulas used.
std::string report_graph_stats(const DeliveryContext& ctx, SizeAnalysis* out = nullptr);

}  // namespace drp
