#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <fmt/format.h>

#include "drp/error.hpp"
#include "drp/model_io.hpp"

namespace drp {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Shortest %g rendering that fits a 12-character MPS field.
std::string fit12(double v) {
  if (v == 0) return "0";
  for (int prec = 15; prec >= 1; --prec) {
    std::string s = fmt::format("{:.{}g}", v, prec);
    if (s.size() <= 12) return s;
  }
  return fmt::format("{:.1e}", v);
}

std::string pad(const std::string& s, size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

// Fields start at columns 2, 5, 15, 25, 40 and 50.
std::string mps_line(const std::string& f1, const std::string& f2, const std::string& f3 = {},
                     const std::string& f4 = {}, const std::string& f5 = {},
                     const std::string& f6 = {}) {
  std::string s = " " + pad(f1, 2) + " " + pad(f2, 10) + pad(f3, 10) + pad(f4, 15) + pad(f5, 10) + f6;
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

// Unique names, shortened for fixed MPS when max_len > 0. Returns
// (new name, original) pairs for every change.
std::vector<std::string> assign_names(const std::vector<std::string>& names, size_t max_len,
                                      char prefix, std::vector<std::pair<std::string, std::string>>& renames) {
  std::vector<std::string> out(names.size());
  std::set<std::string> taken;
  for (size_t i = 0; i < names.size(); ++i) {
    const auto& nm = names[i];
    const bool ok = !nm.empty() && (max_len == 0 || nm.size() <= max_len) &&
                    nm.find(' ') == std::string::npos && !taken.count(nm);
    if (ok) {
      out[i] = nm;
      taken.insert(nm);
    }
  }
  size_t counter = 0;
  for (size_t i = 0; i < names.size(); ++i) {
    if (!out[i].empty()) continue;
    std::string cand;
    do {
      cand = max_len > 0 ? fmt::format("{}{:07d}", prefix, counter++)
                         : fmt::format("{}_{}", names[i].empty() ? std::string(1, prefix) : names[i], counter++);
    } while (taken.count(cand) || std::count(names.begin(), names.end(), cand));
    out[i] = cand;
    taken.insert(cand);
    renames.push_back({cand, names[i]});
  }
  return out;
}

double parse_number(const std::string& tok, int line) {
  std::string t = tok;
  std::transform(t.begin(), t.end(), t.begin(), ::tolower);
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity") return kInfinity;
  if (t == "-inf" || t == "-infinity") return -kInfinity;
  try {
    size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad number '" + tok + "'");
  }
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

void apply_renames(MilpModel& m, const std::map<std::string, std::string>& back) {
  if (back.empty()) return;
  for (auto& v : m.vars) {
    auto it = back.find(v.name);
    if (it != back.end()) v.name = it->second;
  }
  for (auto& r : m.rows) {
    auto it = back.find(r.name);
    if (it != back.end()) r.name = it->second;
  }
}

// Marks 0/1 integer columns as binary.
void settle_types(MilpModel& m, const std::vector<bool>& integer) {
  for (size_t j = 0; j < m.vars.size(); ++j) {
    if (!integer[j]) continue;
    m.vars[j].type = (m.vars[j].lb == 0 && m.vars[j].ub == 1) ? VarType::Binary : VarType::Integer;
  }
}

}  // namespace

ModelFormat parse_model_format(const std::string& s) {
  if (s == "mps" || s == "MPS") return ModelFormat::Mps;
  if (s == "lp" || s == "LP") return ModelFormat::Lp;
  throw ConfigError("unknown model format '" + s + "' (expected mps or lp)");
}

void write_mps(std::ostream& os, const MilpModel& m, const std::string& name) {
  std::vector<std::pair<std::string, std::string>> renames;
  std::vector<std::string> vn, rn;
  for (const auto& v : m.vars) vn.push_back(v.name);
  for (const auto& r : m.rows) rn.push_back(r.name);
  rn.push_back("OBJ");
  const auto cols = assign_names(vn, 8, 'C', renames);
  auto rows = assign_names(rn, 8, 'R', renames);
  const std::string obj = rows.back();

  os << "NAME          " << name << '\n';
  for (const auto& [n, o] : renames) os << "* RENAME " << n << ' ' << o << '\n';
  os << "ROWS\n" << mps_line("N", obj) << '\n';
  for (size_t i = 0; i < m.rows.size(); ++i) {
    const char* s = m.rows[i].sense == Sense::LE ? "L" : m.rows[i].sense == Sense::GE ? "G" : "E";
    os << mps_line(s, rows[i]) << '\n';
  }

  std::vector<std::vector<std::pair<int, double>>> by_col(m.vars.size());
  for (size_t i = 0; i < m.rows.size(); ++i)
    for (const auto& [j, v] : m.rows[i].terms) by_col[j].push_back({static_cast<int>(i), v});

  os << "COLUMNS\n";
  bool in_int = false;
  int markers = 0;
  for (size_t j = 0; j < m.vars.size(); ++j) {
    const bool integer = m.is_integer(static_cast<int>(j));
    if (integer != in_int) {
      os << mps_line("", fmt::format("M{:07d}", markers++), "'MARKER'", "", integer ? "'INTORG'" : "'INTEND'")
         << '\n';
      in_int = integer;
    }
    std::vector<std::pair<std::string, double>> entries;
    if (m.obj[j] != 0 || by_col[j].empty()) entries.push_back({obj, m.obj[j]});
    for (const auto& [i, v] : by_col[j]) entries.push_back({rows[i], v});
    for (size_t k = 0; k < entries.size(); k += 2) {
      if (k + 1 < entries.size())
        os << mps_line("", cols[j], entries[k].first, fit12(entries[k].second), entries[k + 1].first,
                       fit12(entries[k + 1].second))
           << '\n';
      else
        os << mps_line("", cols[j], entries[k].first, fit12(entries[k].second)) << '\n';
    }
  }
  if (in_int) os << mps_line("", fmt::format("M{:07d}", markers++), "'MARKER'", "", "'INTEND'") << '\n';

  os << "RHS\n";
  if (m.obj_offset != 0) os << mps_line("", "RHS", obj, fit12(-m.obj_offset)) << '\n';
  for (size_t i = 0; i < m.rows.size(); ++i)
    if (m.rows[i].rhs != 0) os << mps_line("", "RHS", rows[i], fit12(m.rows[i].rhs)) << '\n';

  os << "BOUNDS\n";
  for (size_t j = 0; j < m.vars.size(); ++j) {
    const auto& v = m.vars[j];
    if (v.lb == -kInfinity && v.ub == kInfinity) {
      os << mps_line("FR", "BND", cols[j]) << '\n';
      continue;
    }
    if (v.lb == -kInfinity)
      os << mps_line("MI", "BND", cols[j]) << '\n';
    else
      os << mps_line("LO", "BND", cols[j], fit12(v.lb)) << '\n';
    if (v.ub == kInfinity)
      os << mps_line("PL", "BND", cols[j]) << '\n';
    else
      os << mps_line("UP", "BND", cols[j], fit12(v.ub)) << '\n';
  }
  os << "ENDATA\n";
}

MilpModel read_mps(std::istream& is) {
  MilpModel m;
  std::map<std::string, std::string> back;
  std::unordered_map<std::string, int> row_of, col_of;
  std::string obj_row;
  std::vector<bool> integer;
  std::vector<bool> lb_set;
  enum class Sec { None, Rows, Columns, Rhs, Bounds, Done } sec = Sec::None;
  bool in_int = false;
  std::string line;
  int lineno = 0;
  auto row_index = [&](const std::string& r, int ln) -> int {
    if (r == obj_row) return -1;
    auto it = row_of.find(r);
    if (it == row_of.end()) throw ParseError(ln, "unknown row '" + r + "'");
    return it->second;
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '*') {
      auto t = split(line);
      if (t.size() == 4 && t[1] == "RENAME") back[t[2]] = t[3];
      continue;
    }
    const auto t = split(line);
    if (t.empty()) continue;
    if (line[0] != ' ' && line[0] != '\t') {
      if (t[0] == "NAME") sec = Sec::None;
      else if (t[0] == "ROWS") sec = Sec::Rows;
      else if (t[0] == "COLUMNS") sec = Sec::Columns;
      else if (t[0] == "RHS") sec = Sec::Rhs;
      else if (t[0] == "BOUNDS") sec = Sec::Bounds;
      else if (t[0] == "ENDATA") sec = Sec::Done;
      else throw ParseError(lineno, "unsupported MPS section '" + t[0] + "'");
      continue;
    }
    switch (sec) {
      case Sec::Rows: {
        if (t.size() != 2) throw ParseError(lineno, "bad ROWS entry");
        if (t[0] == "N") {
          if (obj_row.empty()) obj_row = t[1];
          continue;
        }
        Sense s = t[0] == "L" ? Sense::LE : t[0] == "G" ? Sense::GE : Sense::EQ;
        if (t[0] != "L" && t[0] != "G" && t[0] != "E") throw ParseError(lineno, "bad row type " + t[0]);
        row_of[t[1]] = m.add_row(t[1], {}, s, 0.0);
        break;
      }
      case Sec::Columns: {
        if (t.size() >= 3 && t[1] == "'MARKER'") {
          in_int = t.back() == "'INTORG'";
          continue;
        }
        if (t.size() < 3 || t.size() % 2 == 0) throw ParseError(lineno, "bad COLUMNS entry");
        auto it = col_of.find(t[0]);
        int j;
        if (it == col_of.end()) {
          j = m.add_var(t[0], VarType::Continuous, 0, kInfinity);
          col_of[t[0]] = j;
          integer.push_back(in_int);
          lb_set.push_back(false);
        } else {
          j = it->second;
        }
        for (size_t k = 1; k + 1 < t.size(); k += 2) {
          const double v = parse_number(t[k + 1], lineno);
          const int r = row_index(t[k], lineno);
          if (r < 0)
            m.obj[j] += v;
          else
            m.rows[r].terms.push_back({j, v});
        }
        break;
      }
      case Sec::Rhs: {
        if (t.size() < 3) throw ParseError(lineno, "bad RHS entry");
        for (size_t k = 1; k + 1 < t.size(); k += 2) {
          const double v = parse_number(t[k + 1], lineno);
          const int r = row_index(t[k], lineno);
          if (r < 0)
            m.obj_offset = -v;
          else
            m.rows[r].rhs = v;
        }
        break;
      }
      case Sec::Bounds: {
        if (t.size() < 3) throw ParseError(lineno, "bad BOUNDS entry");
        auto it = col_of.find(t[2]);
        if (it == col_of.end()) throw ParseError(lineno, "unknown column '" + t[2] + "'");
        auto& v = m.vars[it->second];
        const std::string& ty = t[0];
        const double val = t.size() > 3 ? parse_number(t[3], lineno) : 0.0;
        if (ty == "UP") {
          v.ub = val;
          if (val < 0 && !lb_set[it->second]) v.lb = -kInfinity;
        } else if (ty == "LO") {
          v.lb = val;
          lb_set[it->second] = true;
        } else if (ty == "FX") {
          v.lb = v.ub = val;
        } else if (ty == "FR") {
          v.lb = -kInfinity;
          v.ub = kInfinity;
        } else if (ty == "MI") {
          v.lb = -kInfinity;
        } else if (ty == "PL") {
          v.ub = kInfinity;
        } else if (ty == "BV") {
          v.lb = 0;
          v.ub = 1;
          integer[it->second] = true;
        } else if (ty == "LI" || ty == "UI") {
          (ty == "LI" ? v.lb : v.ub) = val;
          integer[it->second] = true;
        } else {
          throw ParseError(lineno, "unknown bound type " + ty);
        }
        break;
      }
      default:
        throw ParseError(lineno, "data outside a section");
    }
  }
  if (sec != Sec::Done) throw ParseError(lineno, "missing ENDATA");
  for (auto& r : m.rows) {
    auto terms = std::move(r.terms);
    r.terms.clear();
    std::sort(terms.begin(), terms.end());
    for (const auto& tm : terms) r.terms.push_back(tm);
  }
  settle_types(m, integer);
  apply_renames(m, back);
  return m;
}

namespace {

void write_terms(std::ostream& os, const std::vector<std::pair<int, double>>& terms,
                 const std::vector<std::string>& names, size_t& width) {
  for (const auto& [j, v] : terms) {
    std::string t = fmt::format(" {} {:.17g} {}", v < 0 ? '-' : '+', std::abs(v), names[j]);
    if (width + t.size() > 200) {
      os << "\n   ";
      width = 3;
    }
    os << t;
    width += t.size();
  }
}

std::string lp_number(double v) {
  if (v == kInfinity) return "+inf";
  if (v == -kInfinity) return "-inf";
  return fmt::format("{:.17g}", v);
}

}  // namespace

void write_lp(std::ostream& os, const MilpModel& m) {
  std::vector<std::pair<std::string, std::string>> renames;
  std::vector<std::string> vn, rn;
  for (const auto& v : m.vars) vn.push_back(v.name);
  for (const auto& r : m.rows) rn.push_back(r.name);
  const auto cols = assign_names(vn, 0, 'C', renames);
  const auto rows = assign_names(rn, 0, 'R', renames);
  os << "\\ DRP model\n";
  for (const auto& [n, o] : renames) os << "\\ RENAME " << n << ' ' << o << '\n';
  os << "Minimize\n obj:";
  size_t width = 5;
  std::vector<std::pair<int, double>> obj;
  for (int j = 0; j < m.num_vars(); ++j)
    if (m.obj[j] != 0) obj.push_back({j, m.obj[j]});
  write_terms(os, obj, cols, width);
  if (m.obj_offset != 0)
    os << fmt::format(" {} {:.17g}", m.obj_offset < 0 ? '-' : '+', std::abs(m.obj_offset));
  else if (obj.empty())
    os << " 0";
  os << "\nSubject To\n";
  for (size_t i = 0; i < m.rows.size(); ++i) {
    const auto& r = m.rows[i];
    os << ' ' << rows[i] << ':';
    width = rows[i].size() + 2;
    write_terms(os, r.terms, cols, width);
    if (r.terms.empty() && !cols.empty()) os << " 0 " << cols[0];
    const char* s = r.sense == Sense::LE ? "<=" : r.sense == Sense::GE ? ">=" : "=";
    os << ' ' << s << ' ' << lp_number(r.rhs) << '\n';
  }
  os << "Bounds\n";
  for (int j = 0; j < m.num_vars(); ++j) {
    const auto& v = m.vars[j];
    if (v.lb == -kInfinity && v.ub == kInfinity)
      os << ' ' << cols[j] << " free\n";
    else
      os << ' ' << lp_number(v.lb) << " <= " << cols[j] << " <= " << lp_number(v.ub) << '\n';
  }
  std::vector<int> gen, bin;
  for (int j = 0; j < m.num_vars(); ++j) {
    if (m.vars[j].type == VarType::Binary) bin.push_back(j);
    if (m.vars[j].type == VarType::Integer) gen.push_back(j);
  }
  if (!gen.empty()) {
    os << "Generals\n";
    for (int j : gen) os << ' ' << cols[j] << '\n';
  }
  if (!bin.empty()) {
    os << "Binaries\n";
    for (int j : bin) os << ' ' << cols[j] << '\n';
  }
  os << "End\n";
}

MilpModel read_lp(std::istream& is) {
  MilpModel m;
  std::map<std::string, std::string> back;
  std::unordered_map<std::string, int> col_of;
  std::vector<bool> integer;
  std::vector<std::pair<std::string, int>> tokens;  // token, line
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto cut = line.find('\\');
    if (cut != std::string::npos) {
      auto t = split(line.substr(cut + 1));
      if (t.size() == 3 && t[0] == "RENAME") back[t[1]] = t[2];
      line = line.substr(0, cut);
    }
    for (auto& t : split(line)) tokens.push_back({t, lineno});
  }

  auto col = [&](const std::string& name) {
    auto it = col_of.find(name);
    if (it != col_of.end()) return it->second;
    const int j = m.add_var(name, VarType::Continuous, 0, kInfinity);
    col_of[name] = j;
    integer.push_back(false);
    return j;
  };
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), ::tolower);
    return s;
  };
  auto is_number = [](const std::string& s) {
    if (s.empty()) return false;
    const std::string l = [&] {
      std::string c = s;
      std::transform(c.begin(), c.end(), c.begin(), ::tolower);
      return c;
    }();
    if (l == "inf" || l == "+inf" || l == "-inf" || l == "infinity") return true;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    return end && *end == '\0';
  };

  size_t p = 0;
  auto at_end = [&] { return p >= tokens.size(); };
  auto section_word = [&](size_t k) {
    if (k >= tokens.size()) return std::string("end");
    const std::string w = lower(tokens[k].first);
    if (w == "subject" || w == "bounds" || w == "generals" || w == "general" || w == "binaries" ||
        w == "binary" || w == "end" || w == "st" || w == "s.t.")
      return w;
    return std::string();
  };
  // Linear expression up to a sense token or section keyword.
  auto read_expr = [&](std::vector<std::pair<int, double>>& terms, double& constant) {
    double sign = 1;
    while (!at_end()) {
      const std::string& t = tokens[p].first;
      if (t == "<=" || t == ">=" || t == "=" || t == "=<" || t == "=>" || !section_word(p).empty()) return;
      if (t == "+") { sign = 1; ++p; continue; }
      if (t == "-") { sign = -1; ++p; continue; }
      if (is_number(t)) {
        const double v = parse_number(t, tokens[p].second);
        ++p;
        if (!at_end() && !is_number(tokens[p].first) && tokens[p].first != "+" && tokens[p].first != "-" &&
            tokens[p].first != "<=" && tokens[p].first != ">=" && tokens[p].first != "=" &&
            section_word(p).empty() && tokens[p].first.back() != ':') {
          terms.push_back({col(tokens[p].first), sign * v});
          ++p;
        } else {
          constant += sign * v;
        }
      } else if (t.back() == ':') {
        return;
      } else {
        terms.push_back({col(t), sign});
        ++p;
      }
      sign = 1;
    }
  };

  if (at_end() || (lower(tokens[p].first) != "minimize" && lower(tokens[p].first) != "min"))
    throw ParseError(at_end() ? lineno : tokens[p].second, "expected Minimize");
  ++p;
  if (!at_end() && tokens[p].first.back() == ':') ++p;
  {
    std::vector<std::pair<int, double>> terms;
    double c = 0;
    read_expr(terms, c);
    for (const auto& [j, v] : terms) m.obj[j] += v;
    m.obj_offset = c;
  }
  std::string sec = section_word(p);
  if (sec == "subject") {
    p += 2;
  } else if (sec == "st" || sec == "s.t.") {
    ++p;
  }
  int auto_row = 0;
  while (!at_end() && section_word(p).empty()) {
    std::string name;
    if (tokens[p].first.back() == ':') {
      name = tokens[p].first.substr(0, tokens[p].first.size() - 1);
      ++p;
    } else {
      name = fmt::format("R{}", auto_row++);
    }
    std::vector<std::pair<int, double>> terms;
    double c = 0;
    read_expr(terms, c);
    if (at_end()) throw ParseError(lineno, "constraint " + name + " has no sense");
    const std::string s = tokens[p].first;
    const int ln = tokens[p].second;
    Sense sense;
    if (s == "<=" || s == "=<") sense = Sense::LE;
    else if (s == ">=" || s == "=>") sense = Sense::GE;
    else if (s == "=") sense = Sense::EQ;
    else throw ParseError(ln, "expected a sense in constraint " + name);
    ++p;
    if (at_end()) throw ParseError(ln, "missing right-hand side");
    double rhs = 0;
    if (tokens[p].first == "-" || tokens[p].first == "+") {
      const double sg = tokens[p].first == "-" ? -1 : 1;
      ++p;
      rhs = sg * parse_number(tokens[p].first, tokens[p].second);
    } else {
      rhs = parse_number(tokens[p].first, tokens[p].second);
    }
    ++p;
    m.add_row(name, terms, sense, rhs - c);
  }
  while (!at_end()) {
    sec = section_word(p);
    if (sec == "end") break;
    if (sec.empty()) throw ParseError(tokens[p].second, "unexpected '" + tokens[p].first + "'");
    ++p;
    if (sec == "bounds") {
      while (!at_end() && section_word(p).empty()) {
        const int ln = tokens[p].second;
        // name free | lb <= name <= ub | name <= ub | name >= lb | name = v
        if (p + 1 < tokens.size() && lower(tokens[p + 1].first) == "free") {
          auto& v = m.vars[col(tokens[p].first)];
          v.lb = -kInfinity;
          v.ub = kInfinity;
          p += 2;
          continue;
        }
        if (is_number(tokens[p].first)) {
          const double lb = parse_number(tokens[p].first, ln);
          if (p + 2 >= tokens.size()) throw ParseError(ln, "truncated bound");
          const int j = col(tokens[p + 2].first);
          m.vars[j].lb = lb;
          p += 3;
          if (!at_end() && tokens[p].first == "<=") {
            m.vars[j].ub = parse_number(tokens[p + 1].first, ln);
            p += 2;
          }
          continue;
        }
        const int j = col(tokens[p].first);
        const std::string op = p + 1 < tokens.size() ? tokens[p + 1].first : "";
        if (p + 2 >= tokens.size()) throw ParseError(ln, "truncated bound");
        const double v = parse_number(tokens[p + 2].first, ln);
        if (op == "<=") m.vars[j].ub = v;
        else if (op == ">=") m.vars[j].lb = v;
        else if (op == "=") m.vars[j].lb = m.vars[j].ub = v;
        else throw ParseError(ln, "bad bound");
        p += 3;
      }
    } else if (sec == "generals" || sec == "general") {
      while (!at_end() && section_word(p).empty()) integer[col(tokens[p++].first)] = true;
    } else if (sec == "binaries" || sec == "binary") {
      while (!at_end() && section_word(p).empty()) {
        const int j = col(tokens[p++].first);
        integer[j] = true;
        m.vars[j].lb = std::max(m.vars[j].lb, 0.0);
        m.vars[j].ub = std::min(m.vars[j].ub, 1.0);
      }
    }
  }
  settle_types(m, integer);
  apply_renames(m, back);
  return m;
}

std::string export_model(const MilpModel& m, ModelFormat f) {
  std::ostringstream os;
  if (f == ModelFormat::Mps)
    write_mps(os, m);
  else
    write_lp(os, m);
  return os.str();
}

MilpModel import_model(const std::string& text, ModelFormat f) {
  std::istringstream is(text);
  return f == ModelFormat::Mps ? read_mps(is) : read_lp(is);
}

bool models_equivalent(const MilpModel& a, const MilpModel& b, std::string* why, double tol) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  auto close = [&](double x, double y) {
    if (x == y) return true;
    if (!std::isfinite(x) || !std::isfinite(y)) return false;
    return std::abs(x - y) <= tol * std::max(1.0, std::abs(x));
  };
  if (a.num_vars() != b.num_vars())
    return fail(fmt::format("variable count {} vs {}", a.num_vars(), b.num_vars()));
  if (a.num_rows() != b.num_rows()) return fail(fmt::format("row count {} vs {}", a.num_rows(), b.num_rows()));
  std::unordered_map<std::string, int> bcol, brow;
  for (int j = 0; j < b.num_vars(); ++j)
    if (!bcol.emplace(b.vars[j].name, j).second) return fail("duplicate variable " + b.vars[j].name);
  for (int i = 0; i < b.num_rows(); ++i)
    if (!brow.emplace(b.rows[i].name, i).second) return fail("duplicate row " + b.rows[i].name);
  std::vector<int> map(a.num_vars());
  auto kind = [](const Variable& v) {
    if (v.type == VarType::Continuous) return 0;
    return (v.type == VarType::Binary || (v.lb == 0 && v.ub == 1)) ? 1 : 2;
  };
  for (int j = 0; j < a.num_vars(); ++j) {
    auto it = bcol.find(a.vars[j].name);
    if (it == bcol.end()) return fail("missing variable " + a.vars[j].name);
    map[j] = it->second;
    const auto& u = a.vars[j];
    const auto& v = b.vars[it->second];
    if (kind(u) != kind(v)) return fail("type differs on " + u.name);
    if (!close(u.lb, v.lb) || !close(u.ub, v.ub)) return fail("bounds differ on " + u.name);
    if (!close(a.obj[j], b.obj[it->second])) return fail("objective differs on " + u.name);
  }
  if (!close(a.obj_offset, b.obj_offset)) return fail("objective offset differs");
  for (const auto& r : a.rows) {
    auto it = brow.find(r.name);
    if (it == brow.end()) return fail("missing row " + r.name);
    const auto& s = b.rows[it->second];
    if (r.sense != s.sense) return fail("sense differs on " + r.name);
    if (!close(r.rhs, s.rhs)) return fail("rhs differs on " + r.name);
    std::map<int, double> lhs, rhs;
    for (const auto& [j, v] : r.terms) lhs[map[j]] += v;
    for (const auto& [j, v] : s.terms) rhs[j] += v;
    if (lhs.size() != rhs.size()) return fail("term count differs on " + r.name);
    for (const auto& [j, v] : lhs) {
      auto f = rhs.find(j);
      if (f == rhs.end() || !close(v, f->second)) return fail("coefficient differs on " + r.name);
    }
  }
  return true;
}

}  // namespace drp
