// Command-line front end: gen, prep, solve, oracle, validate, export, bench.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "drp/drp_solve.hpp"
#include "drp/energy.hpp"
#include "drp/error.hpp"
#include "drp/harness.hpp"
#include "drp/model_io.hpp"
#include "drp/oracle.hpp"

using namespace drp;
using json = nlohmann::json;

namespace {

struct Settings {
  std::string instance;
  std::uint64_t seed = 1;
  int n = 10;
  std::string depot = "corner";
  std::string energy = "linear";
  std::string objective;  // empty: keep the instance's setting
  bool hover = false;
  bool load_dependent = false;
  bool cuts = false;
  double gap = 1e-4;
  double time_limit = 3600;
  int threads = 1;
  std::string export_format = "mps";
  std::string out;
  std::string solution;
  std::string config;
  std::vector<int> sizes;
  std::vector<std::uint64_t> seeds;
  bool windows = false;
};

// Values from --config fill options that were not given on the command line.
void apply_config(CLI::App& app, Settings& s) {
  if (s.config.empty()) return;
  std::ifstream in(s.config);
  if (!in) throw ConfigError("cannot open config " + s.config);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  auto take = [&](const char* key, const char* flag, auto& var) {
    if (!j.contains(key)) return;
    const CLI::Option* opt = nullptr;
    try {
      opt = app.get_option(flag);
    } catch (const CLI::OptionNotFound&) {
      opt = nullptr;
    }
    if (opt && opt->count() > 0) return;
    try {
      j.at(key).get_to(var);
    } catch (const json::exception& e) {
      throw ConfigError(fmt::format("config key '{}': {}", key, e.what()));
    }
  };
  take("instance", "--instance", s.instance);
  take("seed", "--seed", s.seed);
  take("n", "--n", s.n);
  take("depot", "--depot", s.depot);
  take("energy", "--energy", s.energy);
  take("objective", "--objective", s.objective);
  take("hover", "--hover", s.hover);
  take("load_dependent", "--load-dependent", s.load_dependent);
  take("cuts", "--cuts", s.cuts);
  take("gap", "--gap", s.gap);
  take("time_limit", "--time-limit", s.time_limit);
  take("threads", "--threads", s.threads);
  take("export", "--export", s.export_format);
  take("out", "--out", s.out);
  take("sizes", "--sizes", s.sizes);
  take("seeds", "--seeds", s.seeds);
  take("windows", "--windows", s.windows);
}

Instance load_with_overrides(const Settings& s) {
  if (s.instance.empty()) throw ConfigError("--instance is required");
  Instance inst = load_instance(s.instance);
  if (!s.objective.empty()) inst.setting = parse_setting(s.objective);
  return inst;
}

SolveOptions solve_options(const Settings& s) {
  SolveOptions o;
  o.form.hover = s.hover;
  o.form.load_dependent = s.load_dependent;
  o.form.cuts = s.cuts;
  o.milp.gap = s.gap;
  o.milp.time_limit = s.time_limit;
  o.milp.threads = s.threads;
  o.milp.branch_nu = s.cuts;
  return o;
}

GeneratorConfig generator_config(const Settings& s) {
  GeneratorConfig g;
  g.n = s.n;
  if (s.depot == "corner")
    g.depot = GeneratorConfig::Depot::Corner;
  else if (s.depot == "center")
    g.depot = GeneratorConfig::Depot::Center;
  else
    throw ConfigError("--depot must be corner or center");
  if (s.energy == "linear") {
    g.energy.kind = EnergySpec::Kind::Linear;
  } else if (s.energy == "convex") {
    g.energy.kind = EnergySpec::Kind::Convex;
  } else if (s.energy == "phase") {
    g.energy.kind = EnergySpec::Kind::Phase;
    g.energy.phase = builtin_phase_params();
    g.energy.phase_source = "builtin";
  } else {
    throw ConfigError("--energy must be linear, convex or phase");
  }
  if (!s.objective.empty()) g.setting = parse_setting(s.objective);
  g.windows = s.windows ? GeneratorConfig::Windows::Random : GeneratorConfig::Windows::Open;
  return g;
}

void emit(const Settings& s, const std::string& text) {
  if (s.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(s.out);
  if (!f) throw ConfigError("cannot write " + s.out);
  f << text;
}

int cmd_gen(const Settings& s) {
  const Instance inst = generate_instance(generator_config(s), s.seed);
  emit(s, instance_to_string(inst));
  return 0;
}

int cmd_prep(const Settings& s) {
  const DeliveryContext ctx = make_context(load_with_overrides(s));
  std::cout << report_graph_stats(ctx);
  if (!s.out.empty()) {
    std::ostringstream os;
    write_graph_dump(os, build_generated_graph(ctx));
    emit(s, os.str());
  }
  return 0;
}

int cmd_solve(const Settings& s) {
  const DeliveryContext ctx = make_context(load_with_overrides(s));
  const SolveOutcome out = solve_instance(ctx, solve_options(s));
  std::cout << stats_line(out.size, out.prep_seconds) << '\n';
  if (out.infeasible_instance) {
    std::cout << "status infeasible: no feasible trip for request " << out.graph.infeasible_requests[0]
              << '\n';
    return 2;
  }
  std::cout << fmt::format("status {} UP {:.9g} LB {:.9g} gap {:.3g} nodes {} solve_s {:.3f}\n",
                           milp_status_name(out.milp.status), out.milp.up, out.milp.lb, out.milp.gap,
                           out.milp.nodes, out.solve_seconds);
  if (!out.solution) return 2;
  std::cout << "validation " << out.report.summary() << '\n';
  if (s.out.empty())
    write_solution(std::cout, *out.solution);
  else
    emit(s, solution_to_string(*out.solution));
  return out.report.ok ? 0 : 1;
}

int cmd_oracle(const Settings& s) {
  const DeliveryContext ctx = make_context(load_with_overrides(s));
  OracleOptions opt;
  opt.hover = s.hover;
  const OracleResult r = brute_force_solve(ctx, opt);
  if (!r.feasible) {
    std::cout << "status infeasible\n";
    return 2;
  }
  std::cout << fmt::format("oracle objective {:.9g} trips {} labels {}\n", r.objective, r.trips, r.labels);
  emit(s, solution_to_string(r.solution));
  return 0;
}

int cmd_validate(const Settings& s) {
  const DeliveryContext ctx = make_context(load_with_overrides(s));
  if (s.solution.empty()) throw ConfigError("--solution is required");
  std::ifstream in(s.solution);
  if (!in) throw ConfigError("cannot open " + s.solution);
  const Solution sol = read_solution(in);
  ValidationOptions vo;
  vo.hover = s.hover;
  const ValidationReport rep = validate_solution(sol, ctx, vo);
  std::cout << rep.summary() << '\n';
  return rep.ok ? 0 : 1;
}

int cmd_export(const Settings& s) {
  const DeliveryContext ctx = make_context(load_with_overrides(s));
  const GeneratedGraph g = build_generated_graph(ctx);
  const MilpModel m = build_model(g, ctx, solve_options(s).form);
  emit(s, export_model(m, parse_model_format(s.export_format)));
  return 0;
}

int cmd_bench(const Settings& s) {
  BenchConfig cfg;
  cfg.generator = generator_config(s);
  cfg.sizes = s.sizes.empty() ? std::vector<int>{s.n} : s.sizes;
  cfg.seeds = s.seeds.empty() ? std::vector<std::uint64_t>{s.seed} : s.seeds;
  if (!s.objective.empty()) cfg.settings = {parse_setting(s.objective)};
  if (!s.instance.empty()) {
    const Instance inst = load_instance(s.instance);
    for (auto st : cfg.settings) {
      Instance copy = inst;
      copy.setting = st;
      cfg.instances.push_back({fmt::format("{}_{}", s.instance, setting_name(st)), copy});
    }
    cfg.sizes.clear();
  }
  cfg.solve = solve_options(s);
  cfg.solve.milp.threads = 1;
  cfg.workers = s.threads;
  const auto rows = run_benchmark(cfg);
  std::cout << format_bench_table(rows) << bench_summary(rows);
  std::ostringstream csv;
  write_bench_csv(csv, rows);
  if (!s.out.empty()) emit(s, csv.str());
  for (const auto& r : rows)
    if (r.status == "invalid") return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drone routing on load-indexed generated graphs"};
  app.require_subcommand(1);
  Settings s;

  auto common = [&](CLI::App* c) {
    c->add_option("--config", s.config, "JSON file with option defaults");
    c->add_option("--out", s.out, "Output file (default stdout)");
  };
  auto instance_opt = [&](CLI::App* c) {
    c->add_option("--instance", s.instance, "Instance file");
    c->add_option("--objective", s.objective, "Objective setting: R, E or RE");
  };
  auto gen_opts = [&](CLI::App* c) {
    c->add_option("--seed", s.seed, "Random seed");
    c->add_option("--n", s.n, "Number of requests");
    c->add_option("--depot", s.depot, "corner or center");
    c->add_option("--energy", s.energy, "linear, convex or phase");
    c->add_flag("--windows", s.windows, "Random time windows");
  };
  auto model_opts = [&](CLI::App* c) {
    c->add_flag("--hover", s.hover, "Price hovering while early");
    c->add_flag("--load-dependent", s.load_dependent, "Per-arc flight times");
    c->add_flag("--cuts", s.cuts, "Add valid inequalities");
  };
  auto solver_opts = [&](CLI::App* c) {
    c->add_option("--gap", s.gap, "Relative optimality gap");
    c->add_option("--time-limit", s.time_limit, "Seconds");
    c->add_option("--threads", s.threads, "Worker threads");
  };

  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  common(gen);
  gen_opts(gen);
  gen->add_option("--objective", s.objective, "Objective setting: R, E or RE");

  auto* prep = app.add_subcommand("prep", "Build the generated graph and report its size");
  common(prep);
  instance_opt(prep);

  auto* solve = app.add_subcommand("solve", "Solve an instance and validate the result");
  common(solve);
  instance_opt(solve);
  model_opts(solve);
  solver_opts(solve);

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum for small instances");
  common(oracle);
  instance_opt(oracle);
  oracle->add_flag("--hover", s.hover, "Price hovering while early");

  auto* validate = app.add_subcommand("validate", "Check a solution file");
  common(validate);
  instance_opt(validate);
  validate->add_option("--solution", s.solution, "Solution file");
  validate->add_flag("--hover", s.hover, "Price hovering with the given service times");

  auto* exp = app.add_subcommand("export", "Write the model as MPS or LP");
  common(exp);
  instance_opt(exp);
  model_opts(exp);
  exp->add_option("--export", s.export_format, "mps or lp");

  auto* bench = app.add_subcommand("bench", "Generate, solve and tabulate a suite");
  common(bench);
  gen_opts(bench);
  model_opts(bench);
  solver_opts(bench);
  bench->add_option("--instance", s.instance, "Extra instance file");
  bench->add_option("--objective", s.objective, "Objective setting: R, E or RE");
  bench->add_option("--sizes", s.sizes, "Request counts");
  bench->add_option("--seeds", s.seeds, "Seeds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_config(*sub, s);
    const std::string name = sub->get_name();
    if (name == "gen") return cmd_gen(s);
    if (name == "prep") return cmd_prep(s);
    if (name == "solve") return cmd_solve(s);
    if (name == "oracle") return cmd_oracle(s);
    if (name == "validate") return cmd_validate(s);
    if (name == "export") return cmd_export(s);
    if (name == "bench") return cmd_bench(s);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
