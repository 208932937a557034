#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "drp/energy_spec.hpp"

namespace drp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ObjectiveSetting { R, E, RE };

const char* setting_name(ObjectiveSetting s);
ObjectiveSetting parse_setting(const std::string& s);

struct Request {
  int id = 0;
  double x = 0, y = 0;
  double q = 0;
  double a = 0, b = kInf;
  bool operator==(const Request&) const = default;
};

// Explicit table entry overriding the Euclidean default.
struct TableEntry {
  int i = 0, j = 0;
  double value = 0;
  bool operator==(const TableEntry&) const = default;
};

struct Instance {
  std::vector<Request> requests;
  double depot_x = 0, depot_y = 0;
  double a_d = 0, b_d = kInf;
  int drones = 1;
  double capacity = 1;
  double battery = kInf;
  double speed = 1;
  double cost_per_distance = 1;
  double energy_cost = 1;  // delta
  ObjectiveSetting setting = ObjectiveSetting::RE;
  EnergySpec energy;
  FlightPolicy flight;
  std::vector<TableEntry> time_overrides;
  std::vector<TableEntry> cost_overrides;

  int n() const { return static_cast<int>(requests.size()); }
  const Request& request(int id) const { return requests[id - 1]; }
  // Window of cluster i in 0..n+1; depot clusters use [a_d, b_d].
  double open(int i) const;
  double close(int i) const;
  double transport_weight() const { return setting == ObjectiveSetting::E ? 0.0 : 1.0; }
  double energy_weight() const { return setting == ObjectiveSetting::R ? 0.0 : energy_cost; }
  double total_demand() const;
  // Throws ConfigError on a violated invariant.
  void validate() const;
  bool operator==(const Instance&) const = default;
};

struct TravelTables {
  int size = 0;  // n + 2
  std::vector<double> t, c;
  double time(int i, int j) const { return t[static_cast<size_t>(i) * size + j]; }
  double cost(int i, int j) const { return c[static_cast<size_t>(i) * size + j]; }
  double& time(int i, int j) { return t[static_cast<size_t>(i) * size + j]; }
  double& cost(int i, int j) { return c[static_cast<size_t>(i) * size + j]; }
};

TravelTables travel_tables(const Instance& inst);

// Codec. Decimal values are written with 6 fractional digits.
void write_instance(std::ostream& os, const Instance& inst);
std::string instance_to_string(const Instance& inst);
Instance read_instance(std::istream& is, const std::string& base_dir = ".");
Instance instance_from_string(const std::string& text);
Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& inst);

// Rounds every decimal field to 6 fractional digits.
double quantize6(double v);

struct GeneratorConfig {
  int n = 10;
  double area_size = 10;
  enum class Depot { Corner, Center } depot = Depot::Corner;
  enum class Windows { Open, Random } windows = Windows::Open;
  double horizon = 100;  // latest window opening for Random windows
  double min_width = 10, max_width = 40;
  double demand_lo = 0.1, demand_hi = 0.5;
  int drones = 2;
  double capacity = 1.0;
  double battery = 40;
  double speed = 1;
  double cost_per_distance = 1;
  double energy_cost = 1;
  ObjectiveSetting setting = ObjectiveSetting::RE;
  EnergySpec energy;
};

Instance generate_instance(const GeneratorConfig& cfg, std::uint64_t seed);

}  // namespace drp
