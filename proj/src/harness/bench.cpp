#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "drp/error.hpp"
#include "drp/harness.hpp"

namespace drp {

namespace {

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

BenchRow run_one(const NamedInstance& job, const SolveOptions& opt) {
  BenchRow row;
  row.name = job.name;
  row.n = job.instance.n();
  row.UP = std::numeric_limits<double>::infinity();
  row.LB = -std::numeric_limits<double>::infinity();
  row.gap_pct = std::numeric_limits<double>::infinity();
  try {
    const DeliveryContext ctx = make_context(job.instance);
    const SolveOutcome out = solve_instance(ctx, opt);
    row.upmnr = out.size.upmnr;
    row.V = out.size.actual_v;
    row.A = out.size.actual_a;
    row.boundV = out.size.bound_v;
    row.boundA = out.size.bound_a;
    row.ratioV = out.size.ratio_v;
    row.ratioA = out.size.ratio_a;
    row.prep_s = out.prep_seconds;
    row.solve_s = out.solve_seconds;
    if (out.infeasible_instance) {
      row.status = "infeasible";
      return row;
    }
    row.UP = out.milp.up;
    row.LB = out.milp.lb;
    if (out.milp.has_solution) row.gap_pct = 100.0 * relative_gap(out.milp.up, out.milp.lb);
    row.status = milp_status_name(out.milp.status);
    if (out.solution && !out.report.ok) row.status = "invalid";
  } catch (const std::exception& e) {
    row.status = csv_safe(std::string("error: ") + e.what());
  }
  return row;
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const double pos = q * (v.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - lo) * (v[hi] - v[lo]);
}

}  // namespace

std::vector<BenchRow> run_benchmark(const BenchConfig& cfg) {
  std::vector<NamedInstance> jobs;
  for (int n : cfg.sizes)
    for (auto seed : cfg.seeds) {
      GeneratorConfig g = cfg.generator;
      g.n = n;
      const Instance base = generate_instance(g, seed);
      for (auto s : cfg.settings) {
        Instance inst = base;
        inst.setting = s;
        jobs.push_back({fmt::format("n{:03d}_s{}_{}", n, seed, setting_name(s)), inst});
      }
    }
  for (const auto& ni : cfg.instances) jobs.push_back(ni);
  std::sort(jobs.begin(), jobs.end(), [](const auto& a, const auto& b) { return a.name < b.name; });

  std::vector<BenchRow> rows(jobs.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) rows[i] = run_one(jobs[i], cfg.solve);
  };
  const int workers = std::max(1, cfg.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << kBenchCsvHeader << '\n';
  for (const auto& r : rows)
    os << fmt::format("{},{},{},{},{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{}\n",
                      csv_safe(r.name), r.n, r.upmnr, r.V, r.A, r.boundV, r.boundA, r.ratioV, r.ratioA,
                      r.prep_s, r.solve_s, r.UP, r.LB, r.gap_pct, csv_safe(r.status));
}

std::vector<BenchRow> read_bench_csv(std::istream& is) {
  std::vector<BenchRow> rows;
  std::string line;
  int lineno = 0;
  if (!std::getline(is, line) || line != kBenchCsvHeader) throw ParseError(1, "unexpected CSV header");
  ++lineno;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 15) throw ParseError(lineno, fmt::format("expected 15 fields, got {}", f.size()));
    try {
      BenchRow r;
      r.name = f[0];
      r.n = std::stoi(f[1]);
      r.upmnr = std::stoi(f[2]);
      r.V = std::stoi(f[3]);
      r.A = std::stoi(f[4]);
      r.boundV = std::stoull(f[5]);
      r.boundA = std::stoull(f[6]);
      r.ratioV = std::stod(f[7]);
      r.ratioA = std::stod(f[8]);
      r.prep_s = std::stod(f[9]);
      r.solve_s = std::stod(f[10]);
      r.UP = std::stod(f[11]);
      r.LB = std::stod(f[12]);
      r.gap_pct = std::stod(f[13]);
      r.status = f[14];
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParseError(lineno, "bad numeric field");
    }
  }
  return rows;
}

std::string format_bench_table(const std::vector<BenchRow>& rows) {
  std::string s = fmt::format("{:<20} {:>3} {:>5} {:>6} {:>7} {:>12} {:>14} {:>7} {:>7} {:>8} {:>8} {:>12} {:>12} {:>7} {}\n",
                              "name", "n", "UPMNR", "|V|", "|A|", "boundV", "boundA", "rV%", "rA%", "prep_s",
                              "solve_s", "UP", "LB", "gap%", "status");
  for (const auto& r : rows)
    s += fmt::format("{:<20} {:>3} {:>5} {:>6} {:>7} {:>12} {:>14} {:>7.2f} {:>7.2f} {:>8.3f} {:>8.3f} {:>12.4f} {:>12.4f} {:>7.4f} {}\n",
                     r.name, r.n, r.upmnr, r.V, r.A, r.boundV, r.boundA, r.ratioV, r.ratioA, r.prep_s,
                     r.solve_s, r.UP, r.LB, r.gap_pct, r.status);
  return s;
}

std::string bench_summary(const std::vector<BenchRow>& rows) {
  if (rows.empty()) return "rows 0\n";
  std::vector<double> rv, ra;
  double prep = 0, solve = 0;
  for (const auto& r : rows) {
    rv.push_back(r.ratioV);
    ra.push_back(r.ratioA);
    prep += r.prep_s;
    solve += r.solve_s;
  }
  const double k = static_cast<double>(rows.size());
  return fmt::format(
      "rows {}\nmean prep_s {:.4f}\nmean solve_s {:.4f}\n"
      "ratioV% quartiles {:.3f} {:.3f} {:.3f}\nratioA% quartiles {:.3f} {:.3f} {:.3f}\n",
      rows.size(), prep / k, solve / k, quantile(rv, 0.25), quantile(rv, 0.5), quantile(rv, 0.75),
      quantile(ra, 0.25), quantile(ra, 0.5), quantile(ra, 0.75));
}

std::string report_graph_stats(const DeliveryContext& ctx, SizeAnalysis* out) {
  const auto t0 = std::chrono::steady_clock::now();
  const GeneratedGraph g = build_generated_graph(ctx);
  const UpmnrResult u = compute_upmnr(ctx);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const SizeAnalysis s = analyze_size(g, u.value);
  if (out) *out = s;
  std::string text = stats_line(s, secs) + "\n";
  text += fmt::format("ratio_V {:.3f}% ratio_A {:.3f}%\n", s.ratio_v, s.ratio_a);
  text += fmt::format("UPMNR LP optimum {:.6f} capacity cap {}{}\n", u.lp_optimum, u.naive,
                      u.infeasible ? " (relaxation infeasible)" : "");
  text += "arc bound: n*sum_{i<U} C(n-1,i)*(1+i) + n\n";
  return text;
}

}  // namespace drp
