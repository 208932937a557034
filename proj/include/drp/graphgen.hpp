#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "drp/flight.hpp"
#include "drp/load_set.hpp"

namespace drp {

double load_weight(const LoadSet& load, const Instance& inst);

struct ConditionReport {
  bool metric = true;
  bool monotone = true;
  bool monotone_by_structure = false;  // deduced from a time-proportional model
  std::string counterexample;
};

ConditionReport check_conditions_AB(const DeliveryContext& ctx);

// Shortest-path corrected times and payload-specific energies.
class CorrectedTables {
 public:
  explicit CorrectedTables(const DeliveryContext& ctx);
  double time(int i, int j) const { return time_[static_cast<size_t>(i) * size_ + j]; }
  double energy(int i, int j, double payload) const;
  LegOverride override() const;

 private:
  const DeliveryContext* ctx_;
  int size_;
  std::vector<double> time_;
  mutable std::mutex mu_;
  mutable std::map<double, std::vector<double>> energy_;
};

enum class PruneRule { Auto, Direct, ShortestPath };

// Capacity check, then a search over visiting orders with early abandonment.
bool is_load_possible(const LoadSet& load, const DeliveryContext& ctx,
                      const LegOverride* legs = nullptr);

// Level-by-level enumeration: a candidate is tested only when all of its
// one-smaller subsets are feasible. Sorted by bitmask.
std::vector<LoadSet> find_feasible_loads(const DeliveryContext& ctx,
                                         const LegOverride* legs = nullptr);

// Unpruned reference: every nonempty subset tested (n <= 20).
std::vector<LoadSet> exhaustive_feasible_loads(const DeliveryContext& ctx,
                                               const LegOverride* legs = nullptr);

struct GenVertex {
  enum class Kind { Start, End, Delivery };
  int id = 0;
  Kind kind = Kind::Delivery;
  int r = 0;
  LoadSet load;
  int cl = 0;
  double eh = 0;
  double weight = 0;  // weight of load
};

struct GenArc {
  int id = 0;
  int tail = 0, head = 0;
  double t = 0, c = 0, ed = 0;
  double payload = 0;
};

struct BuildStats {
  int loads = 0;
  int vertices = 0, arcs = 0;
  double seconds = 0;
  bool shortest_path_rule = false;
  ConditionReport conditions;
};

struct GeneratedGraph {
  int n = 0;
  std::vector<GenVertex> vertices;  // id 0 is s, the last id is e
  std::vector<GenArc> arcs;
  std::vector<std::vector<int>> clusters;  // 0..n+1
  std::vector<std::vector<int>> in, out;   // arc ids per vertex
  std::vector<LoadSet> loads;
  std::vector<int> infeasible_requests;
  BuildStats stats;

  int start() const { return 0; }
  int end() const { return static_cast<int>(vertices.size()) - 1; }
  int delivery_count() const { return static_cast<int>(vertices.size()) - 2; }
  int cluster_of(int v) const { return vertices[v].cl; }
  // Vertex (r, {r}) or -1.
  int singleton(int r) const;
};

struct GraphOptions {
  PruneRule rule = PruneRule::Auto;
};

GeneratedGraph build_generated_graph(const DeliveryContext& ctx, const GraphOptions& opt = {});

void write_graph_dump(std::ostream& os, const GeneratedGraph& g);

// Latest time any earliest-start schedule can reach; stands in for
// infinite window closes.
double time_horizon(const DeliveryContext& ctx);

// Size pre-analysis. Saturates at UINT64_MAX.
std::uint64_t vertex_bound(int n, int upmnr);
std::uint64_t arc_bound(int n, int upmnr);

struct UpmnrResult {
  int value = 0;
  double lp_optimum = 0;
  int naive = 0;
  bool infeasible = false;
};

UpmnrResult compute_upmnr(const DeliveryContext& ctx);

struct SizeAnalysis {
  int n = 0;
  int upmnr = 0;
  std::uint64_t bound_v = 0, bound_a = 0;
  int actual_v = 0, actual_a = 0;
  double ratio_v = 0, ratio_a = 0;  // percent
};

SizeAnalysis analyze_size(const GeneratedGraph& g, int upmnr);
std::string stats_line(const SizeAnalysis& s, double prep_seconds);

}  // namespace drp
