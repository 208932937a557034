#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "drp/energy.hpp"
#include "drp/error.hpp"
#include "drp/instance.hpp"

namespace drp {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

double to_double(const std::string& tok, int line, const char* what) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0' || errno == ERANGE || std::isnan(v))
    throw ParseError(line, fmt::format("bad {} '{}'", what, tok));
  return v;
}

int to_int(const std::string& tok, int line, const char* what) {
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (end == tok.c_str() || *end != '\0') throw ParseError(line, fmt::format("bad {} '{}'", what, tok));
  return static_cast<int>(v);
}

std::string num(double v) { return fmt::format("{:.6f}", v); }

constexpr const char* kParamNames[] = {
    "request count", "drone count",       "capacity",          "battery",
    "speed",         "cost per distance", "energy cost",       "depot window open",
    "depot window close", "objective"};

}  // namespace

double quantize6(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(num(v).c_str(), nullptr);
}

void write_instance(std::ostream& os, const Instance& inst) {
  os << "DRP 1\n";
  os << fmt::format("PARAMS {} {} {} {} {} {} {} {} {} obj={}\n", inst.n(), inst.drones,
                    num(inst.capacity), num(inst.battery), num(inst.speed),
                    num(inst.cost_per_distance), num(inst.energy_cost), num(inst.a_d),
                    num(inst.b_d), setting_name(inst.setting));
  os << fmt::format("DEPOT {} {}\n", num(inst.depot_x), num(inst.depot_y));
  const auto& e = inst.energy;
  switch (e.kind) {
    case EnergySpec::Kind::Linear:
      os << fmt::format("ENERGY linear {} {}\n", num(e.linear.slope), num(e.linear.base));
      break;
    case EnergySpec::Kind::Convex:
      os << fmt::format("ENERGY convex {} {}\n", num(e.convex.alpha), num(e.convex.beta));
      break;
    case EnergySpec::Kind::Phase:
      os << "ENERGY phase " << (e.phase_source.empty() ? "builtin" : e.phase_source) << "\n";
      break;
    case EnergySpec::Kind::Tabulated:
      os << "ENERGY tabulated " << e.tabulated.knots.size();
      for (const auto& [w, r] : e.tabulated.knots) os << ' ' << num(w) << ' ' << num(r);
      os << "\n";
      break;
  }
  if (inst.flight.slowdown_per_kg != 0.0)
    os << fmt::format("FLIGHT {}\n", num(inst.flight.slowdown_per_kg));
  for (const auto& r : inst.requests)
    os << fmt::format("REQ {} {} {} {} {} {}\n", r.id, num(r.x), num(r.y), num(r.q), num(r.a),
                      num(r.b));
  for (const auto& t : inst.time_overrides)
    os << fmt::format("TIME {} {} {}\n", t.i, t.j, num(t.value));
  for (const auto& c : inst.cost_overrides)
    os << fmt::format("COST {} {} {}\n", c.i, c.j, num(c.value));
}

std::string instance_to_string(const Instance& inst) {
  std::ostringstream os;
  write_instance(os, inst);
  return os.str();
}

Instance read_instance(std::istream& is, const std::string& base_dir) {
  Instance inst;
  std::string line;
  int lineno = 0;
  bool have_header = false, have_params = false, have_depot = false;
  int expected_n = -1;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    if (!have_header) {
      if (key != "DRP") throw ParseError(lineno, "missing DRP header");
      if (tok.size() != 2 || tok[1] != "1") throw ParseError(lineno, "unsupported format version");
      have_header = true;
      continue;
    }
    if (key == "PARAMS") {
      if (have_params) throw ParseError(lineno, "duplicate PARAMS");
      const size_t got = tok.size() - 1;
      if (got < 10) throw ParseError(lineno, std::string("missing ") + kParamNames[got]);
      if (got > 10) throw ParseError(lineno, "too many PARAMS fields");
      expected_n = to_int(tok[1], lineno, "request count");
      if (expected_n < 0) throw ParseError(lineno, "negative request count");
      inst.drones = to_int(tok[2], lineno, "drone count");
      inst.capacity = to_double(tok[3], lineno, "capacity");
      inst.battery = to_double(tok[4], lineno, "battery");
      inst.speed = to_double(tok[5], lineno, "speed");
      inst.cost_per_distance = to_double(tok[6], lineno, "cost per distance");
      inst.energy_cost = to_double(tok[7], lineno, "energy cost");
      inst.a_d = to_double(tok[8], lineno, "depot window open");
      inst.b_d = to_double(tok[9], lineno, "depot window close");
      if (tok[10].rfind("obj=", 0) != 0) throw ParseError(lineno, "missing objective");
      try {
        inst.setting = parse_setting(tok[10].substr(4));
      } catch (const ConfigError& e) {
        throw ParseError(lineno, e.what());
      }
      if (inst.drones < 1) throw ParseError(lineno, "drone count must be at least 1");
      if (!(inst.capacity > 0)) throw ParseError(lineno, "nonpositive capacity");
      if (!(inst.battery > 0)) throw ParseError(lineno, "nonpositive battery");
      if (!(inst.speed > 0)) throw ParseError(lineno, "nonpositive speed");
      if (!(inst.a_d <= inst.b_d)) throw ParseError(lineno, "depot window open after close");
      have_params = true;
    } else if (!have_params) {
      throw ParseError(lineno, "PARAMS must follow the header");
    } else if (key == "DEPOT") {
      if (tok.size() != 3) throw ParseError(lineno, "DEPOT needs x y");
      inst.depot_x = to_double(tok[1], lineno, "depot x");
      inst.depot_y = to_double(tok[2], lineno, "depot y");
      have_depot = true;
    } else if (key == "REQ") {
      if (tok.size() != 7) throw ParseError(lineno, "REQ needs id x y q a b");
      Request r;
      r.id = to_int(tok[1], lineno, "request id");
      r.x = to_double(tok[2], lineno, "x");
      r.y = to_double(tok[3], lineno, "y");
      r.q = to_double(tok[4], lineno, "demand");
      r.a = to_double(tok[5], lineno, "window open");
      r.b = to_double(tok[6], lineno, "window close");
      if (r.q < 0) throw ParseError(lineno, "negative demand");
      if (r.q == 0) throw ParseError(lineno, "zero demand");
      if (!(r.a <= r.b)) throw ParseError(lineno, "window open after close");
      if (r.id != inst.n() + 1) throw ParseError(lineno, "request ids must be 1..n in order");
      inst.requests.push_back(r);
    } else if (key == "ENERGY") {
      if (tok.size() < 2) throw ParseError(lineno, "ENERGY needs a model kind");
      auto& e = inst.energy;
      const std::string& kind = tok[1];
      if (kind == "linear") {
        if (tok.size() != 4) throw ParseError(lineno, "ENERGY linear needs slope base");
        e.kind = EnergySpec::Kind::Linear;
        e.linear.slope = to_double(tok[2], lineno, "slope");
        e.linear.base = to_double(tok[3], lineno, "base rate");
        if (e.linear.slope < 0 || !(e.linear.base > 0))
          throw ParseError(lineno, "linear energy needs slope >= 0 and base > 0");
      } else if (kind == "convex") {
        if (tok.size() != 4) throw ParseError(lineno, "ENERGY convex needs alpha beta");
        e.kind = EnergySpec::Kind::Convex;
        e.convex.alpha = to_double(tok[2], lineno, "alpha");
        e.convex.beta = to_double(tok[3], lineno, "beta");
        if (!(e.convex.alpha > 0) || !(e.convex.beta > 0))
          throw ParseError(lineno, "convex energy needs alpha > 0 and beta > 0");
      } else if (kind == "phase") {
        if (tok.size() != 3) throw ParseError(lineno, "ENERGY phase needs a table path");
        e.kind = EnergySpec::Kind::Phase;
        e.phase_source = tok[2];
        if (tok[2] == "builtin") {
          e.phase = builtin_phase_params();
        } else {
          std::filesystem::path p(tok[2]);
          if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
          try {
            e.phase = load_phase_table(p.string());
          } catch (const ParseError& err) {
            throw ParseError(lineno, fmt::format("phase table {}: {}", p.string(), err.what()));
          }
        }
      } else if (kind == "tabulated") {
        if (tok.size() < 3) throw ParseError(lineno, "ENERGY tabulated needs a knot count");
        const int k = to_int(tok[2], lineno, "knot count");
        if (k < 1 || tok.size() != static_cast<size_t>(3 + 2 * k))
          throw ParseError(lineno, "ENERGY tabulated knot count mismatch");
        e.kind = EnergySpec::Kind::Tabulated;
        e.tabulated.knots.clear();
        for (int i = 0; i < k; ++i)
          e.tabulated.knots.emplace_back(to_double(tok[3 + 2 * i], lineno, "knot weight"),
                                         to_double(tok[4 + 2 * i], lineno, "knot rate"));
        for (int i = 1; i < k; ++i)
          if (!(e.tabulated.knots[i].first > e.tabulated.knots[i - 1].first))
            throw ParseError(lineno, "knot weights must increase");
      } else {
        throw ParseError(lineno, "unknown energy model '" + kind + "'");
      }
    } else if (key == "FLIGHT") {
      if (tok.size() != 2) throw ParseError(lineno, "FLIGHT needs a slowdown factor");
      inst.flight.slowdown_per_kg = to_double(tok[1], lineno, "slowdown");
      if (inst.flight.slowdown_per_kg < 0) throw ParseError(lineno, "negative slowdown");
    } else if (key == "TIME" || key == "COST") {
      if (tok.size() != 4) throw ParseError(lineno, key + " needs i j value");
      TableEntry t{to_int(tok[1], lineno, "index"), to_int(tok[2], lineno, "index"),
                   to_double(tok[3], lineno, "value")};
      if (t.value < 0) throw ParseError(lineno, "negative table entry");
      if (t.i < 0 || t.j < 0 || t.i > expected_n + 1 || t.j > expected_n + 1)
        throw ParseError(lineno, "table index out of range");
      (key == "TIME" ? inst.time_overrides : inst.cost_overrides).push_back(t);
    } else {
      throw ParseError(lineno, "unknown record '" + key + "'");
    }
  }
  if (!have_header) throw ParseError(0, "empty instance file");
  if (!have_params) throw ParseError(0, "missing PARAMS");
  if (!have_depot) throw ParseError(0, "missing DEPOT");
  if (inst.n() != expected_n)
    throw ParseError(0, fmt::format("expected {} requests, found {}", expected_n, inst.n()));
  return inst;
}

Instance instance_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_instance(is);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file " + path);
  auto dir = std::filesystem::path(path).parent_path().string();
  return read_instance(in, dir.empty() ? "." : dir);
}

void save_instance(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_instance(out, inst);
}

}  // namespace drp
