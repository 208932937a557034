#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "drp/energy.hpp"
#include "drp/error.hpp"

namespace drp {

std::array<double, 4> PhaseTimePolicy::split(double leg_time) const {
  std::array<double, 4> t{0, 0, 0, 0};
  if (leg_time <= 0) return t;
  if (kind == Kind::Single) {
    t[single_phase] = leg_time;
    return t;
  }
  double up = climb_speed > 0 ? altitude / climb_speed : 0;
  double down = descent_speed > 0 ? altitude / descent_speed : 0;
  if (up + down > leg_time) {
    const double s = leg_time / (up + down);
    up *= s;
    down *= s;
  }
  t[0] = up;
  t[3] = down;
  t[1] = std::max(0.0, leg_time - up - down);
  return t;
}

namespace {

struct Equation {
  double lhs = 0;
  double a9 = 0, k = 0;
  double rhs(double x) const { return x * std::sqrt(std::max(0.0, a9 + x * x + x * k)); }
  double h(double x) const { return rhs(x) - lhs; }
};

Equation make_equation(const PhaseCoefficients& a, double beta, double w) {
  const double W = beta + w;
  Equation e;
  e.lhs = a[7] * std::sqrt(std::max(0.0, a[2] + a[3] * W * W));
  e.a9 = a[8];
  const double den = a[11] * W * W + a[12] + a[13] * W;
  e.k = den > 0 ? (a[9] + a[10] * W) / std::sqrt(den) : 0.0;
  return e;
}

}  // namespace

RootResult solve_induced_velocity(const PhaseCoefficients& a, double beta, double w) {
  const Equation eq = make_equation(a, beta, w);
  RootResult res;
  res.lhs = eq.lhs;
  if (eq.lhs == 0) return res;

  double lo = 0, hi = std::max(1.0, std::sqrt(eq.lhs));
  while (eq.h(hi) <= 0) {
    if (++res.expansions > 60)
      throw RootError(fmt::format("induced velocity root not bracketed (lhs={})", eq.lhs));
    lo = hi;
    hi *= 2;
  }

  // Coarse scan of the bracket for extra sign changes.
  constexpr int kScan = 128;
  int changes = 0;
  double prev = eq.h(0);
  for (int i = 1; i <= kScan; ++i) {
    const double cur = eq.h(hi * i / kScan);
    if ((prev <= 0) != (cur <= 0)) ++changes;
    prev = cur;
  }
  res.multiple_sign_changes = changes > 1;

  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (eq.h(mid) <= 0)
      lo = mid;
    else
      hi = mid;
  }
  const double hl = std::abs(eq.h(lo)), hh = std::abs(eq.h(hi));
  res.x = hl <= hh ? lo : hi;
  res.residual = std::min(hl, hh);
  return res;
}

double phase_power(const PhaseCoefficients& a, double beta, double w) {
  const double W = beta + w;
  double g = a[0] + a[4] * std::pow(W, 1.5) + a[5] * std::sqrt(W) + a[6] * W;
  if (a[1] != 0) {
    const double x = solve_induced_velocity(a, beta, w).x;
    g += a[1] * x * std::sqrt(std::max(0.0, a[2] + a[3] * W * W));
  }
  return g;
}

double phase_energy(const PhaseParams& p, double w, const std::array<double, 4>& times) {
  double e = 0;
  for (int i = 0; i < 4; ++i)
    if (times[i] > 0) e += times[i] * phase_power(p.alpha[i], p.beta, w);
  return e;
}

double phase_energy(const PhaseParams& p, double w, double leg_time) {
  return phase_energy(p, w, p.policy.split(leg_time));
}

std::string PhaseEnergy::describe() const {
  return fmt::format("phase(beta={})", p_.beta);
}

PhaseCoefficients coefficients_from_physical(const PhysicalParams& p) {
  const double rho = p.rho, v = p.v, A = p.area, c = p.c_air, g = p.g;
  const double cg = std::cos(p.gamma), tg = std::tan(p.gamma);
  const double nr = p.n_rotor, nb = p.n_blade, r = p.rotor_radius;
  const double chord = p.chord, cl = p.c_lift;
  PhaseCoefficients a{};
  a[0] = 0.5 * rho * v * v * v * A * c + p.p_internal;
  a[1] = p.kappa;
  a[2] = 0.25 * rho * rho * std::pow(v, 4) * A * A * c * c + rho * v * v * A * c * p.p_climb;
  a[3] = g * g;
  a[4] = 27 * p.c_blade_drag * std::sqrt(g * g * g) /
         std::sqrt(chord * nr * nb * rho * r * cl * cl * cl);
  a[5] = v * v * p.c_blade_drag * std::sqrt(6 * g * rho * r * nr * nb * chord) /
         (4 * std::sqrt(cl));
  a[6] = g * v * std::sin(p.gamma);
  a[7] = 1.0 / (2 * rho * r * r * M_PI * nr);
  a[8] = v * v;
  a[9] = -rho * v * v * v * A * c / (g * cg);
  a[10] = -2 * v * tg;
  a[11] = 1 + tg * tg;
  const double t13 = 0.5 * rho * v * v * A * c / (g * cg);
  a[12] = t13 * t13;
  a[13] = rho * v * v * A * c * tg;
  return a;
}

PhaseParams builtin_phase_params() {
  PhysicalParams base;
  base.area = 0.05;
  base.p_internal = 10;
  PhaseParams p;
  PhysicalParams takeoff = base;
  takeoff.v = 4;
  takeoff.gamma = 0.06;
  takeoff.p_climb = 20;
  PhysicalParams level = base;
  level.v = 15;
  PhysicalParams hover = base;
  hover.v = 0;
  PhysicalParams landing = base;
  landing.v = 4;
  landing.gamma = -0.06;
  p.alpha[0] = coefficients_from_physical(takeoff);
  p.alpha[1] = coefficients_from_physical(level);
  p.alpha[2] = coefficients_from_physical(hover);
  p.alpha[3] = coefficients_from_physical(landing);
  p.beta = 2.0;
  p.policy.kind = PhaseTimePolicy::Kind::Split;
  p.policy.altitude = 0.1;
  p.policy.climb_speed = 0.2;
  p.policy.descent_speed = 0.25;
  return p;
}

PhaseParams read_phase_table(std::istream& is) {
  PhaseParams p;
  std::array<bool, 4> seen{};
  bool have_beta = false;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ss(line);
    std::string key;
    if (!(ss >> key)) continue;
    if (key == "ALPHA") {
      int i = 0;
      if (!(ss >> i) || i < 1 || i > 4) throw ParseError(lineno, "ALPHA needs a phase 1..4");
      for (int j = 0; j < 14; ++j)
        if (!(ss >> p.alpha[i - 1][j])) throw ParseError(lineno, "ALPHA needs 14 coefficients");
      seen[i - 1] = true;
    } else if (key == "BETA") {
      if (!(ss >> p.beta) || !(p.beta > 0)) throw ParseError(lineno, "bad BETA");
      have_beta = true;
    } else if (key == "POLICY") {
      std::string kind;
      ss >> kind;
      if (kind == "split") {
        p.policy.kind = PhaseTimePolicy::Kind::Split;
        if (!(ss >> p.policy.altitude >> p.policy.climb_speed >> p.policy.descent_speed))
          throw ParseError(lineno, "POLICY split needs altitude climb descent");
      } else if (kind == "single") {
        p.policy.kind = PhaseTimePolicy::Kind::Single;
        if (!(ss >> p.policy.single_phase) || p.policy.single_phase < 1 ||
            p.policy.single_phase > 4)
          throw ParseError(lineno, "POLICY single needs a phase 1..4");
        p.policy.single_phase -= 1;
      } else {
        throw ParseError(lineno, "unknown POLICY '" + kind + "'");
      }
    } else {
      throw ParseError(lineno, "unknown record '" + key + "'");
    }
  }
  for (int i = 0; i < 4; ++i)
    if (!seen[i]) throw ParseError(0, fmt::format("missing ALPHA {}", i + 1));
  if (!have_beta) throw ParseError(0, "missing BETA");
  return p;
}

PhaseParams load_phase_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return read_phase_table(in);
}

void write_phase_table(std::ostream& os, const PhaseParams& p) {
  for (int i = 0; i < 4; ++i) {
    os << "ALPHA " << i + 1;
    for (double v : p.alpha[i]) os << fmt::format(" {:.17g}", v);
    os << "\n";
  }
  os << fmt::format("BETA {:.17g}\n", p.beta);
  if (p.policy.kind == PhaseTimePolicy::Kind::Single)
    os << "POLICY single " << p.policy.single_phase + 1 << "\n";
  else
    os << fmt::format("POLICY split {:.17g} {:.17g} {:.17g}\n", p.policy.altitude,
                      p.policy.climb_speed, p.policy.descent_speed);
}

}  // namespace drp
