#include <cmath>
#include <random>

#include "drp/error.hpp"
#include "drp/instance.hpp"

namespace drp {

namespace {

// Portable uniform draw in [0, 1); std distributions differ across libraries.
double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit(rng);
}

}  // namespace

Instance generate_instance(const GeneratorConfig& cfg, std::uint64_t seed) {
  if (cfg.n < 1) throw ConfigError("n must be at least 1");
  if (!(cfg.area_size > 0)) throw ConfigError("area size must be positive");
  if (!(cfg.demand_lo > 0) || !(cfg.demand_hi >= cfg.demand_lo))
    throw ConfigError("empty demand range");
  if (cfg.windows == GeneratorConfig::Windows::Random &&
      (cfg.horizon < 0 || cfg.min_width < 0 || cfg.max_width < cfg.min_width))
    throw ConfigError("bad window parameters");

  std::mt19937_64 rng(seed);
  Instance inst;
  inst.drones = cfg.drones;
  inst.capacity = quantize6(cfg.capacity);
  inst.battery = quantize6(cfg.battery);
  inst.speed = quantize6(cfg.speed);
  inst.cost_per_distance = quantize6(cfg.cost_per_distance);
  inst.energy_cost = quantize6(cfg.energy_cost);
  inst.setting = cfg.setting;
  inst.energy = cfg.energy;
  if (cfg.depot == GeneratorConfig::Depot::Center) {
    inst.depot_x = inst.depot_y = quantize6(cfg.area_size / 2);
  }
  inst.a_d = 0;
  const double diag = std::sqrt(2.0) * cfg.area_size / cfg.speed;
  inst.b_d = cfg.windows == GeneratorConfig::Windows::Open
                 ? kInf
                 : quantize6(cfg.horizon + cfg.max_width + 2 * diag);

  for (int i = 1; i <= cfg.n; ++i) {
    Request r;
    r.id = i;
    r.x = quantize6(uniform(rng, 0, cfg.area_size));
    r.y = quantize6(uniform(rng, 0, cfg.area_size));
    r.q = quantize6(uniform(rng, cfg.demand_lo, cfg.demand_hi));
    if (cfg.windows == GeneratorConfig::Windows::Random) {
      const double reach = std::hypot(r.x - inst.depot_x, r.y - inst.depot_y) / cfg.speed;
      const double open = uniform(rng, 0, cfg.horizon);
      const double width = uniform(rng, cfg.min_width, cfg.max_width);
      double close = open + width;
      if (close < reach + cfg.min_width) close = reach + cfg.min_width;
      r.a = quantize6(open);
      r.b = quantize6(close);
    }
    inst.requests.push_back(r);
  }
  inst.validate();
  return inst;
}

}  // namespace drp
