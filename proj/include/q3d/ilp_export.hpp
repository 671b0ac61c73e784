#pragma once

// The domination ILP  min 1'x  s.t. (A+I)x >= 1, x binary  as an LP-format
// text model, and the way back from a solver's variable assignment.
//
// Output is byte-stable: rows in lex cell order, terms in lex variable
// order, LF line endings, no coefficient folding.

#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "q3d/board.hpp"
#include "q3d/symmetry.hpp"

namespace q3d::ilp {

struct ExportOptions {
  bool symmetry = false;      // x_c <= sum of lex-earlier x, for every c outside F(n)
  std::optional<int> budget;  // sum x <= budget
};

inline std::string cell_suffix(const BoardSpec& spec, const Cell& c) {
  std::string s = std::to_string(c.x) + "_" + std::to_string(c.y);
  if (spec.dim() == 3) s += "_" + std::to_string(c.z);
  return s;
}

inline std::string variable_name(const BoardSpec& spec, const Cell& c) { return "x_" + cell_suffix(spec, c); }

inline std::string export_lp(const BoardSpec& spec, const ExportOptions& opt = {}) {
  if (opt.budget && *opt.budget < 0) throw InvalidArgument("budget must be >= 0");
  if (opt.symmetry && spec.dim() != 3) throw InvalidArgument("symmetry rows need a 3D board");
  const int cells = static_cast<int>(spec.cell_count());
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(cells));
  for (int i = 0; i < cells; ++i) names.push_back(variable_name(spec, spec.cell(i)));

  auto sum_all = [&](std::ostringstream& os) {
    for (int i = 0; i < cells; ++i) os << (i ? " + " : "") << names[static_cast<std::size_t>(i)];
  };

  std::ostringstream os;
  os << "\\ Minimum dominating set of the " << spec.n() << "^" << spec.dim() << " queen graph\n";
  os << "Minimize\n obj: ";
  sum_all(os);
  os << "\nSubject To\n";
  for (int v = 0; v < cells; ++v) {
    const Cell c = spec.cell(v);
    os << " cover_" << cell_suffix(spec, c) << ":";
    bool first = true;
    closed_neighbourhood(spec, c).for_each([&](std::size_t w) {
      os << (first ? " " : " + ") << names[w];
      first = false;
    });
    os << " >= 1\n";
  }
  if (opt.symmetry) {
    for (int v = 0; v < cells; ++v) {
      const Cell c = spec.cell(v);
      if (sym::in_fundamental_domain(spec, c)) continue;
      os << " sym_" << cell_suffix(spec, c) << ":";
      for (int w = 0; w < v; ++w) os << " - " << names[static_cast<std::size_t>(w)];
      os << " + " << names[static_cast<std::size_t>(v)] << " <= 0\n";
    }
  }
  if (opt.budget) {
    os << " budget: ";
    sum_all(os);
    os << " <= " << *opt.budget << "\n";
  }
  os << "Binary\n";
  for (const auto& nm : names) os << " " << nm << "\n";
  os << "End\n";
  return os.str();
}

// Parses x_<i>_<j>[_<k>] against the board; nullopt if malformed or off-board.
inline std::optional<Cell> parse_variable(const BoardSpec& spec, std::string_view name) {
  if (name.size() < 2 || name.substr(0, 2) != "x_") return std::nullopt;
  name.remove_prefix(2);
  std::array<int, 3> coords{0, 0, 0};
  for (int k = 0; k < spec.dim(); ++k) {
    if (name.empty() || name.front() < '0' || name.front() > '9') return std::nullopt;
    int v = 0;
    std::size_t used = 0;
    while (used < name.size() && name[used] >= '0' && name[used] <= '9') {
      v = v * 10 + (name[used] - '0');
      if (v > 1'000'000) return std::nullopt;
      ++used;
    }
    coords[static_cast<std::size_t>(k)] = v;
    name.remove_prefix(used);
    if (k + 1 < spec.dim()) {
      if (name.empty() || name.front() != '_') return std::nullopt;
      name.remove_prefix(1);
    }
  }
  if (!name.empty()) return std::nullopt;
  const Cell c{coords[0], coords[1], coords[2]};
  if (!spec.contains(c)) return std::nullopt;
  return c;
}

// Reads a binary value with a 1e-6 tolerance; anything else is an error.
inline int parse_binary(std::string_view where, std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) throw ParseError(std::string(where), "'" + s + "' is not a number");
  if (std::abs(v) <= 1e-6) return 0;
  if (std::abs(v - 1.0) <= 1e-6) return 1;
  throw ParseError(std::string(where), "value " + s + " is not binary");
}

using Assignment = std::map<std::string, int>;

// `name value` pairs, one per line; blank lines and '#' comments ignored.
inline Assignment parse_assignment_text(std::string_view text) {
  Assignment out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string name, value, extra;
    if (!(ls >> name)) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (!(ls >> value)) throw ParseError(where, "missing value for " + name);
    if (ls >> extra) throw ParseError(where, "trailing text '" + extra + "'");
    if (out.contains(name)) throw ParseError(where, "duplicate variable " + name);
    out[name] = parse_binary(where, value);
  }
  return out;
}

inline Placement import_solution(const BoardSpec& spec, const Assignment& assignment) {
  std::vector<Cell> cells;
  for (const auto& [name, value] : assignment) {
    const auto c = parse_variable(spec, name);
    if (!c) throw ParseError(name, "unknown variable or coordinate out of range");
    if (value != 0 && value != 1) throw ParseError(name, "value is not binary");
    if (value == 1) cells.push_back(*c);
  }
  return Placement(std::move(cells));
}

}  // namespace q3d::ilp
