#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <string>

#include "drp/energy_spec.hpp"

namespace drp {

// Energy contract. Weights in kg, times in minutes.
class EnergyModel {
 public:
  virtual ~EnergyModel() = default;
  virtual double arc_energy(double payload, double time) const = 0;
  virtual double hover_power(double payload) const = 0;
  virtual bool supports_per_phase() const { return false; }
  // True when energy = time * rate(payload) with rate nondecreasing.
  virtual bool time_proportional() const { return false; }
  virtual std::string describe() const = 0;
};

double linear_energy(const LinearParams& p, double w, double t);
double convex_energy(const ConvexParams& p, double w, double t);

class LinearEnergy final : public EnergyModel {
 public:
  explicit LinearEnergy(LinearParams p) : p_(p) {}
  double arc_energy(double w, double t) const override { return linear_energy(p_, w, t); }
  double hover_power(double w) const override { return linear_energy(p_, w, 1.0); }
  bool time_proportional() const override { return p_.slope >= 0; }
  std::string describe() const override;

 private:
  LinearParams p_;
};

class ConvexEnergy final : public EnergyModel {
 public:
  explicit ConvexEnergy(ConvexParams p) : p_(p) {}
  double arc_energy(double w, double t) const override { return convex_energy(p_, w, t); }
  double hover_power(double w) const override { return convex_energy(p_, w, 1.0); }
  bool time_proportional() const override { return p_.alpha >= 0; }
  std::string describe() const override;

 private:
  ConvexParams p_;
};

class TabulatedEnergy final : public EnergyModel {
 public:
  explicit TabulatedEnergy(TabulatedParams p);
  double rate(double w) const;
  double arc_energy(double w, double t) const override { return t * rate(w); }
  double hover_power(double w) const override { return rate(w); }
  bool time_proportional() const override { return monotone_; }
  std::string describe() const override;

 private:
  TabulatedParams p_;
  bool monotone_ = true;
};

struct RootResult {
  double x = 0;
  double lhs = 0;
  double residual = 0;  // |lhs - rhs| at x
  int expansions = 0;
  bool multiple_sign_changes = false;
};

// Positive root X of the induced-velocity equation for one phase.
// Throws RootError when no sign change is found.
RootResult solve_induced_velocity(const PhaseCoefficients& a, double beta, double w);

// Per-minute power of one phase: G(w, phase).
double phase_power(const PhaseCoefficients& a, double beta, double w);
double phase_energy(const PhaseParams& p, double w, const std::array<double, 4>& times);
double phase_energy(const PhaseParams& p, double w, double leg_time);

class PhaseEnergy final : public EnergyModel {
 public:
  explicit PhaseEnergy(PhaseParams p) : p_(std::move(p)) {}
  double arc_energy(double w, double t) const override { return phase_energy(p_, w, t); }
  double hover_power(double w) const override {
    return phase_power(p_.alpha[static_cast<int>(Phase::Hover)], p_.beta, w);
  }
  bool supports_per_phase() const override { return true; }
  std::string describe() const override;
  const PhaseParams& params() const { return p_; }

 private:
  PhaseParams p_;
};

// Physical drone and flight parameters (SI units).
struct PhysicalParams {
  double rho = 1.225;         // air density
  double v = 0;               // airspeed
  double area = 0.1;          // frontal area
  double c_air = 1.0;         // drag coefficient
  double p_internal = 0;      // avionics power
  double kappa = 1.15;        // induced power factor
  double p_climb = 0;
  double g = 9.81;
  double c_blade_drag = 0.01;
  double chord = 0.03;        // rotor mean chord
  double n_rotor = 4;
  double n_blade = 2;
  double rotor_radius = 0.2;
  double c_lift = 0.6;        // mean blade lift coefficient
  double gamma = 0;           // flight angle, radians
};

PhaseCoefficients coefficients_from_physical(const PhysicalParams& p);

// Shipped default: a quadcopter with a 4-phase split policy.
PhaseParams builtin_phase_params();

PhaseParams read_phase_table(std::istream& is);
PhaseParams load_phase_table(const std::string& path);
void write_phase_table(std::ostream& os, const PhaseParams& p);

std::shared_ptr<const EnergyModel> make_energy_model(const EnergySpec& spec);

}  // namespace drp
