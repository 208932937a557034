#pragma once

#include <iosfwd>
#include <string>

#include "drp/milp_model.hpp"

namespace drp {

enum class ModelFormat { Mps, Lp };
ModelFormat parse_model_format(const std::string& s);

// Fixed-format MPS. Names longer than 8 characters (or clashing) are
// replaced and the originals recorded in "* RENAME new old" comments.
void write_mps(std::ostream& os, const MilpModel& m, const std::string& name = "DRP");
MilpModel read_mps(std::istream& is);

// CPLEX LP text.
void write_lp(std::ostream& os, const MilpModel& m);
MilpModel read_lp(std::istream& is);

std::string export_model(const MilpModel& m, ModelFormat f);
MilpModel import_model(const std::string& text, ModelFormat f);

// Same variables, rows, bounds and objective up to ordering. Binary and
// integer [0,1] variables compare equal.
bool models_equivalent(const MilpModel& a, const MilpModel& b, std::string* why = nullptr,
                       double tol = 1e-9);

}  // namespace drp
