#include <doctest.h>

#include <sstream>

#include "drp/formulation.hpp"
#include "drp/model_io.hpp"
#include "support.hpp"

using namespace drp;

namespace {

MilpModel t2_model(bool cuts, bool hover = false) {
  const DeliveryContext ctx = make_context(test::t2(ObjectiveSetting::RE));
  const GeneratedGraph g = build_generated_graph(ctx);
  FormulationOptions opt;
  opt.cuts = cuts;
  opt.hover = hover;
  return build_model(g, ctx, opt);
}

}  // namespace

TEST_CASE("MPS and LP exports re-import to an equivalent model") {
  for (bool cuts : {false, true})
    for (auto f : {ModelFormat::Mps, ModelFormat::Lp}) {
      const MilpModel m = t2_model(cuts, !cuts);
      const MilpModel back = import_model(export_model(m, f), f);
      std::string why;
      CHECK_MESSAGE(models_equivalent(m, back, &why), why);
      const MilpResult a = solve_milp(m), b = solve_milp(back);
      CHECK(a.up == doctest::Approx(b.up).epsilon(1e-9));
    }
}

TEST_CASE("MPS marks integers and bounds binaries") {
  const MilpModel m = t2_model(false);
  const std::string text = export_model(m, ModelFormat::Mps);
  CHECK(text.find("'INTORG'") != std::string::npos);
  CHECK(text.find("'INTEND'") != std::string::npos);
  // Explicit 0/1 bounds on every binary column.
  for (const auto& v : m.vars) {
    if (v.type != VarType::Binary) continue;
    CHECK(text.find(" LO  BND       " + v.name + " ") != std::string::npos);
    CHECK(text.find(" UP  BND       " + v.name + " ") != std::string::npos);
  }
  // Fixed columns: field 1 at position 2, field 2 at 5.
  std::istringstream in(text);
  std::string line;
  bool in_rows = false;
  while (std::getline(in, line)) {
    if (line == "ROWS") {
      in_rows = true;
      continue;
    }
    if (line == "COLUMNS") break;
    if (in_rows) {
      CHECK(line[0] == ' ');
      CHECK(line[1] != ' ');
      CHECK(line.substr(4, 1) != " ");
    }
  }
}

TEST_CASE("long and clashing names are renamed and restored") {
  MilpModel m;
  const int a = m.add_var("a_very_long_variable_name", VarType::Binary, 0, 1, 1);
  const int b = m.add_var("a_very_long_variable_other", VarType::Continuous, 0, 3.5, -1);
  m.add_row("a_very_long_row_name", {{a, 1}, {b, 2}}, Sense::LE, 4);
  m.add_row("a_very_long_row_other", {{a, 1}, {b, -1}}, Sense::GE, -2);
  const std::string text = export_model(m, ModelFormat::Mps);
  CHECK(text.find("* RENAME") != std::string::npos);
  const MilpModel back = import_model(text, ModelFormat::Mps);
  CHECK(back.vars[0].name == "a_very_long_variable_name");
  std::string why;
  CHECK_MESSAGE(models_equivalent(m, back, &why), why);
}

TEST_CASE("equivalence check notices differences") {
  const MilpModel m = t2_model(false);
  MilpModel other = m;
  other.rows[0].rhs += 1;
  CHECK_FALSE(models_equivalent(m, other));
  other = m;
  other.obj[0] += 0.5;
  CHECK_FALSE(models_equivalent(m, other));
  CHECK(parse_model_format("lp") == ModelFormat::Lp);
}
