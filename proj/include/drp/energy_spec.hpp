#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace drp {

struct LinearParams {
  double slope = 1.0;  // energy per (kg * minute)
  double base = 1.0;   // energy per minute, empty drone
  bool operator==(const LinearParams&) const = default;
};

struct ConvexParams {
  double alpha = 1.0;
  double beta = 1.0;  // frame plus battery weight, kg
  bool operator==(const ConvexParams&) const = default;
};

using PhaseCoefficients = std::array<double, 14>;  // alpha_1 .. alpha_14

enum class Phase { Takeoff = 0, Level = 1, Hover = 2, Landing = 3 };

// Splits a leg time into the four phase durations.
struct PhaseTimePolicy {
  enum class Kind { Split, Single };
  Kind kind = Kind::Split;
  double altitude = 0.0;       // distance units
  double climb_speed = 1.0;    // vertical, distance units per minute
  double descent_speed = 1.0;  // vertical, distance units per minute
  int single_phase = 1;        // used by Kind::Single
  std::array<double, 4> split(double leg_time) const;
  bool operator==(const PhaseTimePolicy&) const = default;
};

struct PhaseParams {
  std::array<PhaseCoefficients, 4> alpha{};
  double beta = 1.0;
  PhaseTimePolicy policy;
  bool operator==(const PhaseParams&) const = default;
};

// Piecewise-linear energy rate theta(w); energy = t * theta(w).
struct TabulatedParams {
  std::vector<std::pair<double, double>> knots;  // (weight, rate), weight ascending
  bool operator==(const TabulatedParams&) const = default;
};

struct EnergySpec {
  enum class Kind { Linear, Convex, Phase, Tabulated };
  Kind kind = Kind::Linear;
  LinearParams linear;
  ConvexParams convex;
  PhaseParams phase;
  std::string phase_source;  // "builtin" or a coefficient-table path
  TabulatedParams tabulated;
  bool operator==(const EnergySpec&) const = default;
};

// Load-dependent flight policy: flight time grows with payload.
struct FlightPolicy {
  double slowdown_per_kg = 0.0;
  double leg_time(double base_time, double payload) const {
    return base_time * (1.0 + slowdown_per_kg * payload);
  }
  bool load_dependent() const { return slowdown_per_kg != 0.0; }
  bool operator==(const FlightPolicy&) const = default;
};

const char* kind_name(EnergySpec::Kind k);

}  // namespace drp
