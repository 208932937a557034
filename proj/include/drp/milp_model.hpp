#pragma once

#include <string>
#include <utility>
#include <vector>

namespace drp {

enum class VarType { Continuous, Binary, Integer };
enum class Sense { LE, GE, EQ };
enum class Role { Other, X, Z, Y, F, R, U, Nu };

struct Variable {
  std::string name;
  VarType type = VarType::Continuous;
  double lb = 0, ub = 0;
  Role role = Role::Other;
  int a = -1, b = -1;  // graph entity: arc, cluster pair, vertex pair, ...
};

struct Constraint {
  std::string name;
  std::vector<std::pair<int, double>> terms;
  Sense sense = Sense::LE;
  double rhs = 0;
  std::string family;
};

// Solver-agnostic minimization model.
class MilpModel {
 public:
  int add_var(std::string name, VarType type, double lb, double ub, double cost = 0,
              Role role = Role::Other, int a = -1, int b = -1);
  // Merges duplicate variables and drops zero coefficients.
  int add_row(std::string name, std::vector<std::pair<int, double>> terms, Sense sense,
              double rhs, std::string family = {});
  void remove_family(const std::string& family);
  // Drops every variable with this role and its terms; remaps indices.
  void remove_role(Role role);

  int num_vars() const { return static_cast<int>(vars.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
  int count(VarType t) const;
  int count(Role r) const;
  int count_family(const std::string& family) const;
  std::size_t nonzeros() const;
  bool is_integer(int j) const { return vars[j].type != VarType::Continuous; }
  // Every term references a declared variable and every number is finite.
  bool well_formed(std::string* why = nullptr) const;

  std::vector<Variable> vars;
  std::vector<Constraint> rows;
  std::vector<double> obj;
  double obj_offset = 0;

  // Role indices into vars (-1 when absent).
  std::vector<int> x_var;  // by arc id
  std::vector<int> y_var, f_var;  // by cluster 0..n+1
  std::vector<int> r_var;  // by vertex id
  std::vector<int> u_var;  // by cluster 1..n (index 0 unused)
  int nu_var = -1;
  // z variables: (var, from, to). Cluster ids, or vertex ids when
  // vertex_links is set.
  struct Link {
    int var;
    int from, to;
  };
  std::vector<Link> z_links;
  bool vertex_links = false;
};

}  // namespace drp
