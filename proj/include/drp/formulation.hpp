#pragma once

#include <vector>

#include "drp/graphgen.hpp"
#include "drp/milp_model.hpp"

namespace drp {

enum class Covering { PerCluster, Superset };

struct FormulationOptions {
  Covering covering = Covering::PerCluster;
  bool hover = false;
  bool load_dependent = false;
  bool cuts = false;
  // Time chaining over every cluster pair instead of arc-connected pairs only.
  bool all_pairs_time = false;
};

struct BigMSet {
  std::vector<double> m4;  // per arc
  std::vector<std::vector<double>> m5, m6;  // clusters 0..n+1
  std::vector<double> m7, m8;  // per arc
  double horizon = 0;       // replaces infinite closes
  double battery = 0;       // finite stand-in for M
  double m9(int i, int j, double t_return, double t_depart) const;
  std::vector<double> close;  // effective close per cluster
  std::vector<double> open;
};

BigMSet compute_big_m(const GeneratedGraph& g, const DeliveryContext& ctx, bool hover = false);

MilpModel build_core_milp(const GeneratedGraph& g, const DeliveryContext& ctx,
                          const FormulationOptions& opt = {});
void apply_hover_extension(MilpModel& m, const GeneratedGraph& g, const DeliveryContext& ctx);
void apply_load_dependent_extension(MilpModel& m, const GeneratedGraph& g,
                                    const DeliveryContext& ctx);
void add_valid_inequalities(MilpModel& m, const GeneratedGraph& g, const DeliveryContext& ctx,
                            bool load_dependent = false);

// Core model plus whatever the options switch on.
MilpModel build_model(const GeneratedGraph& g, const DeliveryContext& ctx,
                      const FormulationOptions& opt = {});

}  // namespace drp
