#include <chrono>

#include "drp/drp_solve.hpp"
#include "drp/error.hpp"

namespace drp {

namespace {

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

DeliveryContext make_context(const Instance& inst) {
  inst.validate();
  return DeliveryContext(inst, make_energy_model(inst.energy));
}

SolveOutcome solve_instance(const DeliveryContext& ctx, const SolveOptions& opt) {
  SolveOutcome out;
  auto t0 = std::chrono::steady_clock::now();
  out.graph = build_generated_graph(ctx, opt.graph);
  out.upmnr = compute_upmnr(ctx);
  out.size = analyze_size(out.graph, out.upmnr.value);
  if (!out.graph.infeasible_requests.empty()) {
    out.infeasible_instance = true;
    out.prep_seconds = since(t0);
    out.milp.status = MilpStatus::Infeasible;
    return out;
  }
  out.model = build_model(out.graph, ctx, opt.form);
  out.prep_seconds = since(t0);

  ValidationOptions vopt;
  vopt.hover = opt.form.hover;
  const bool model_schedule = opt.form.hover;
  IncumbentCheck check;
  if (opt.validate_incumbents) {
    check = [&](const std::vector<double>& x) {
      try {
        const Solution s = extract_solution(out.model, x, out.graph, ctx, model_schedule);
        return validate_solution(s, ctx, vopt).ok;
      } catch (const ExtractionError&) {
        return false;
      }
    };
  }
  t0 = std::chrono::steady_clock::now();
  out.milp = solve_milp(out.model, opt.milp, check);
  out.solve_seconds = since(t0);
  if (out.milp.has_solution) {
    Solution s = extract_solution(out.model, out.milp.x, out.graph, ctx, model_schedule);
    s.gap = out.milp.gap;
    out.report = validate_solution(s, ctx, vopt);
    out.solution = std::move(s);
  }
  return out;
}

}  // namespace drp
