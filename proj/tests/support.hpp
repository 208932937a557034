#pragma once

#include <string>

#include "drp/drp_solve.hpp"
#include "drp/instance.hpp"
#include "drp/oracle.hpp"

namespace drp::test {

inline std::string data_path(const std::string& name) { return std::string(DRP_TEST_DATA) + "/" + name; }

inline Instance data_instance(const std::string& name) { return load_instance(data_path(name)); }

inline Instance t2(ObjectiveSetting s) {
  Instance inst = data_instance("t2.drp");
  inst.setting = s;
  return inst;
}

// Random-window instance of the kind the oracle suite uses.
inline Instance random_instance(int n, std::uint64_t seed, ObjectiveSetting s,
                                EnergySpec::Kind kind = EnergySpec::Kind::Linear) {
  GeneratorConfig cfg;
  cfg.n = n;
  cfg.windows = GeneratorConfig::Windows::Random;
  cfg.setting = s;
  cfg.energy.kind = kind;
  return generate_instance(cfg, seed);
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

// Tight gap so objective comparisons against the oracle are exact.
inline SolveOptions exact_options() {
  SolveOptions o;
  o.milp.gap = 1e-9;
  return o;
}

}  // namespace drp::test
