#include "drp/instance.hpp"

#include <cmath>

#include <fmt/format.h>

#include "drp/error.hpp"

namespace drp {

const char* setting_name(ObjectiveSetting s) {
  switch (s) {
    case ObjectiveSetting::R: return "R";
    case ObjectiveSetting::E: return "E";
    case ObjectiveSetting::RE: return "RE";
  }
  return "?";
}

ObjectiveSetting parse_setting(const std::string& s) {
  if (s == "R") return ObjectiveSetting::R;
  if (s == "E") return ObjectiveSetting::E;
  if (s == "RE" || s == "R+E") return ObjectiveSetting::RE;
  throw ConfigError("unknown objective setting '" + s + "'");
}

const char* kind_name(EnergySpec::Kind k) {
  switch (k) {
    case EnergySpec::Kind::Linear: return "linear";
    case EnergySpec::Kind::Convex: return "convex";
    case EnergySpec::Kind::Phase: return "phase";
    case EnergySpec::Kind::Tabulated: return "tabulated";
  }
  return "?";
}

double Instance::open(int i) const {
  if (i == 0 || i == n() + 1) return a_d;
  return requests[i - 1].a;
}

double Instance::close(int i) const {
  if (i == 0 || i == n() + 1) return b_d;
  return requests[i - 1].b;
}

double Instance::total_demand() const {
  double s = 0;
  for (const auto& r : requests) s += r.q;
  return s;
}

void Instance::validate() const {
  if (drones < 1) throw ConfigError("drone count must be at least 1");
  if (!(capacity > 0)) throw ConfigError("capacity must be positive");
  if (!(battery > 0)) throw ConfigError("battery must be positive");
  if (!(speed > 0)) throw ConfigError("speed must be positive");
  if (cost_per_distance < 0) throw ConfigError("cost per distance must be nonnegative");
  if (energy_cost < 0) throw ConfigError("energy cost must be nonnegative");
  if (!(a_d <= b_d)) throw ConfigError("depot window open after close");
  for (size_t k = 0; k < requests.size(); ++k) {
    const auto& r = requests[k];
    if (r.id != static_cast<int>(k) + 1) throw ConfigError("request ids must be 1..n in order");
    if (!(r.q > 0)) throw ConfigError(fmt::format("request {} demand must be positive", r.id));
    if (!(r.a <= r.b)) throw ConfigError(fmt::format("request {} window open after close", r.id));
  }
  const int last = n() + 1;
  for (const auto* v : {&time_overrides, &cost_overrides}) {
    for (const auto& e : *v) {
      if (e.i < 0 || e.i > last || e.j < 0 || e.j > last)
        throw ConfigError(fmt::format("table entry ({},{}) out of range", e.i, e.j));
      if (e.value < 0) throw ConfigError("table entries must be nonnegative");
    }
  }
}

TravelTables travel_tables(const Instance& inst) {
  const int n = inst.n();
  TravelTables tt;
  tt.size = n + 2;
  tt.t.assign(static_cast<size_t>(tt.size) * tt.size, 0.0);
  tt.c.assign(tt.t.size(), 0.0);
  auto loc = [&](int i, double& x, double& y) {
    if (i == 0 || i == n + 1) {
      x = inst.depot_x;
      y = inst.depot_y;
    } else {
      x = inst.requests[i - 1].x;
      y = inst.requests[i - 1].y;
    }
  };
  for (int i = 0; i < tt.size; ++i) {
    double xi, yi;
    loc(i, xi, yi);
    for (int j = 0; j < tt.size; ++j) {
      double xj, yj;
      loc(j, xj, yj);
      const double d = std::hypot(xi - xj, yi - yj);
      tt.time(i, j) = d / inst.speed;
      tt.cost(i, j) = d * inst.cost_per_distance;
    }
  }
  for (const auto& e : inst.time_overrides) tt.time(e.i, e.j) = e.value;
  for (const auto& e : inst.cost_overrides) tt.cost(e.i, e.j) = e.value;
  return tt;
}

}  // namespace drp
