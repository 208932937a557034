#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "drp/milp_model.hpp"

namespace drp {

int MilpModel::add_var(std::string name, VarType type, double lb, double ub, double cost,
                       Role role, int a, int b) {
  Variable v;
  v.name = std::move(name);
  v.type = type;
  v.lb = lb;
  v.ub = ub;
  v.role = role;
  v.a = a;
  v.b = b;
  vars.push_back(std::move(v));
  obj.push_back(cost);
  return num_vars() - 1;
}

int MilpModel::add_row(std::string name, std::vector<std::pair<int, double>> terms, Sense sense,
                       double rhs, std::string family) {
  std::sort(terms.begin(), terms.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<std::pair<int, double>> merged;
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().first == t.first)
      merged.back().second += t.second;
    else
      merged.push_back(t);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const auto& t) { return t.second == 0.0; }),
               merged.end());
  Constraint c;
  c.name = std::move(name);
  c.terms = std::move(merged);
  c.sense = sense;
  c.rhs = rhs;
  c.family = std::move(family);
  rows.push_back(std::move(c));
  return num_rows() - 1;
}

void MilpModel::remove_family(const std::string& family) {
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [&](const Constraint& c) { return c.family == family; }),
             rows.end());
}

void MilpModel::remove_role(Role role) {
  std::vector<int> remap(vars.size(), -1);
  std::vector<Variable> kept;
  std::vector<double> kept_obj;
  for (size_t j = 0; j < vars.size(); ++j) {
    if (vars[j].role == role) continue;
    remap[j] = static_cast<int>(kept.size());
    kept.push_back(std::move(vars[j]));
    kept_obj.push_back(obj[j]);
  }
  vars = std::move(kept);
  obj = std::move(kept_obj);
  for (auto& r : rows) {
    std::vector<std::pair<int, double>> terms;
    for (const auto& [j, v] : r.terms)
      if (remap[j] >= 0) terms.push_back({remap[j], v});
    r.terms = std::move(terms);
  }
  auto fix = [&](std::vector<int>& idx) {
    for (int& j : idx)
      if (j >= 0) j = remap[j];
  };
  fix(x_var);
  fix(y_var);
  fix(f_var);
  fix(r_var);
  fix(u_var);
  if (nu_var >= 0) nu_var = remap[nu_var];
  std::vector<Link> links;
  for (auto l : z_links)
    if (remap[l.var] >= 0) links.push_back({remap[l.var], l.from, l.to});
  z_links = std::move(links);
}

int MilpModel::count(VarType t) const {
  return static_cast<int>(
      std::count_if(vars.begin(), vars.end(), [&](const Variable& v) { return v.type == t; }));
}

int MilpModel::count(Role r) const {
  return static_cast<int>(
      std::count_if(vars.begin(), vars.end(), [&](const Variable& v) { return v.role == r; }));
}

int MilpModel::count_family(const std::string& family) const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(),
                                        [&](const Constraint& c) { return c.family == family; }));
}

std::size_t MilpModel::nonzeros() const {
  std::size_t nz = 0;
  for (const auto& r : rows) nz += r.terms.size();
  return nz;
}

bool MilpModel::well_formed(std::string* why) const {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (obj.size() != vars.size()) return fail("objective length mismatch");
  for (int j = 0; j < num_vars(); ++j) {
    if (!std::isfinite(obj[j])) return fail(fmt::format("objective of {} not finite", vars[j].name));
    if (std::isnan(vars[j].lb) || std::isnan(vars[j].ub) || vars[j].lb > vars[j].ub)
      return fail(fmt::format("bad bounds on {}", vars[j].name));
  }
  for (const auto& r : rows) {
    if (!std::isfinite(r.rhs)) return fail(fmt::format("row {} rhs not finite", r.name));
    for (const auto& [j, v] : r.terms) {
      if (j < 0 || j >= num_vars()) return fail(fmt::format("row {} references unknown variable", r.name));
      if (!std::isfinite(v)) return fail(fmt::format("row {} coefficient not finite", r.name));
    }
  }
  return true;
}

}  // namespace drp
