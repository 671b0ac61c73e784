#pragma once

// Reads an LP-format model back from text and solves it exactly, knowing
// nothing about boards. Used to replay exported models without an external
// MILP solver.
//
// Supported models: all variables binary, objective a sum of +1 terms,
// ">=" rows with +1 coefficients and right-hand side 1 (covering rows), and
// "<=" rows with +-1 coefficients (side constraints such as symmetry and
// budget rows).

#include <algorithm>
#include <cctype>
#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "q3d/error.hpp"

namespace q3d::ilp {

enum class Sense { LessEqual, GreaterEqual, Equal };

struct LinearRow {
  std::string name;
  std::vector<std::pair<double, int>> terms;  // (coefficient, variable id)
  Sense sense = Sense::GreaterEqual;
  double rhs = 0;
};

struct LinearModel {
  std::vector<std::string> variables;  // id -> name, in first-seen order
  std::map<std::string, int> ids;
  std::string objective_name;
  std::vector<std::pair<double, int>> objective;
  bool minimize = true;
  std::vector<LinearRow> rows;
  std::vector<int> binaries;

  int id(const std::string& name) {
    auto [it, inserted] = ids.try_emplace(name, static_cast<int>(variables.size()));
    if (inserted) variables.push_back(name);
    return it->second;
  }
};

namespace detail {

inline std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

inline bool is_number(const std::string& t) {
  if (t.empty()) return false;
  char* end = nullptr;
  std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

// Coefficients must be separated from variable names by whitespace.
inline std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else if (ch == '+' || ch == '-') {
      // sign of an exponent stays inside the number
      if (!cur.empty() && (cur.back() == 'e' || cur.back() == 'E') && is_number(cur.substr(0, cur.size() - 1))) {
        cur += ch;
      } else {
        flush();
        out.emplace_back(1, ch);
      }
    } else if (ch == '<' || ch == '>' || ch == '=') {
      flush();
      std::string op(1, ch);
      while (i + 1 < line.size() && (line[i + 1] == '=' || line[i + 1] == '<' || line[i + 1] == '>')) op += line[++i];
      out.push_back(op);
    } else if (ch == ':') {
      cur += ch;
      flush();
    } else {
      cur += ch;
    }
  }
  flush();
  return out;
}

}  // namespace detail

inline LinearModel parse_lp(std::string_view text) {
  enum class Section { None, Objective, Constraints, Binary, End };
  LinearModel model;
  Section section = Section::None;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;

  // Tokens of the row being assembled (rows may span lines).
  std::vector<std::string> pending;
  int pending_line = 0;

  auto where = [](int ln) { return "line " + std::to_string(ln); };

  auto parse_terms = [&](std::vector<std::string>::const_iterator it, std::vector<std::string>::const_iterator end,
                         int ln) {
    std::vector<std::pair<double, int>> terms;
    double sign = 1;
    double coef = 1;
    bool have_coef = false;
    for (; it != end; ++it) {
      const auto& t = *it;
      if (t == "+") continue;
      if (t == "-") {
        sign = -sign;
      } else if (detail::is_number(t)) {
        if (have_coef) throw ParseError(where(ln), "two coefficients in a row");
        coef = std::strtod(t.c_str(), nullptr);
        have_coef = true;
      } else {
        terms.emplace_back(sign * coef, model.id(t));
        sign = 1;
        coef = 1;
        have_coef = false;
      }
    }
    if (have_coef) throw ParseError(where(ln), "dangling constant in expression");
    return terms;
  };

  auto finish_constraint = [&] {
    if (pending.empty()) return;
    LinearRow row;
    auto it = pending.cbegin();
    if (it->back() == ':') {
      row.name = it->substr(0, it->size() - 1);
      ++it;
    } else {
      row.name = "R" + std::to_string(model.rows.size() + 1);
    }
    auto op = std::find_if(it, pending.cend(), [](const std::string& t) {
      return t == "<=" || t == ">=" || t == "=" || t == "=<" || t == "=>" || t == "<" || t == ">";
    });
    if (op == pending.cend()) throw ParseError(where(pending_line), "constraint without a sense");
    row.terms = parse_terms(it, op, pending_line);
    const std::string& s = *op;
    row.sense = (s == "<=" || s == "=<" || s == "<") ? Sense::LessEqual
                : (s == "=") ? Sense::Equal
                             : Sense::GreaterEqual;
    auto rhs_it = std::next(op);
    double sign = 1;
    if (rhs_it != pending.cend() && (*rhs_it == "-" || *rhs_it == "+")) {
      if (*rhs_it == "-") sign = -1;
      ++rhs_it;
    }
    if (rhs_it == pending.cend() || !detail::is_number(*rhs_it) || std::next(rhs_it) != pending.cend())
      throw ParseError(where(pending_line), "right-hand side must be a single number");
    row.rhs = sign * std::strtod(rhs_it->c_str(), nullptr);
    model.rows.push_back(std::move(row));
    pending.clear();
  };

  auto row_complete = [&] {
    // A constraint is complete once a sense operator is followed by a number.
    for (std::size_t i = 0; i + 1 < pending.size(); ++i) {
      const auto& t = pending[i];
      if (t == "<=" || t == ">=" || t == "=" || t == "=<" || t == "=>" || t == "<" || t == ">") {
        std::size_t j = i + 1;
        if (pending[j] == "-" || pending[j] == "+") ++j;
        return j < pending.size() && detail::is_number(pending[j]);
      }
    }
    return false;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto bs = line.find('\\'); bs != std::string::npos) line.erase(bs);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto toks = detail::tokens_of(line);
    if (toks.empty()) continue;

    const std::string head = detail::lower(toks[0]);
    const std::string head2 = toks.size() > 1 ? detail::lower(toks[1]) : "";
    std::optional<Section> next;
    std::size_t consumed = 1;
    if (head == "minimize" || head == "minimise" || head == "min") next = Section::Objective;
    else if (head == "maximize" || head == "maximise" || head == "max") {
      next = Section::Objective;
      model.minimize = false;
    } else if (head == "subject" && head2 == "to") {
      next = Section::Constraints;
      consumed = 2;
    } else if (head == "st" || head == "s.t." || head == "such") {
      next = Section::Constraints;
      if (head == "such") consumed = 2;
    } else if (head == "binary" || head == "binaries" || head == "bin") next = Section::Binary;
    else if (head == "end") next = Section::End;
    else if (head == "bounds" || head == "general" || head == "generals")
      throw ParseError(where(lineno), "section '" + toks[0] + "' is not supported");

    std::vector<std::string> rest(toks.begin() + static_cast<std::ptrdiff_t>(next ? consumed : 0), toks.end());
    if (next) {
      if (section == Section::Constraints) {
        if (!pending.empty()) throw ParseError(where(pending_line), "unterminated constraint");
      }
      section = *next;
      if (rest.empty()) continue;
    }

    switch (section) {
      case Section::None:
        throw ParseError(where(lineno), "text before the objective section");
      case Section::Objective: {
        auto it = rest.cbegin();
        if (it != rest.cend() && it->back() == ':') {
          model.objective_name = it->substr(0, it->size() - 1);
          ++it;
        }
        auto terms = parse_terms(it, rest.cend(), lineno);
        model.objective.insert(model.objective.end(), terms.begin(), terms.end());
        break;
      }
      case Section::Constraints:
        if (pending.empty()) pending_line = lineno;
        pending.insert(pending.end(), rest.begin(), rest.end());
        if (row_complete()) finish_constraint();
        break;
      case Section::Binary:
        for (const auto& t : rest) model.binaries.push_back(model.id(t));
        break;
      case Section::End:
        throw ParseError(where(lineno), "text after End");
    }
  }
  if (!pending.empty()) throw ParseError(where(pending_line), "unterminated constraint");
  if (section != Section::End) throw ParseError(where(lineno), "missing End");
  return model;
}

struct ReplayResult {
  bool feasible = false;
  int objective = 0;
  std::map<std::string, int> assignment;  // every variable, 0 or 1
  std::uint64_t nodes = 0;
};

namespace detail {

class ReplaySolver {
 public:
  explicit ReplaySolver(const LinearModel& m) : model_(m) {
    const int nv = static_cast<int>(m.variables.size());
    std::vector<bool> binary(static_cast<std::size_t>(nv), false);
    for (int b : m.binaries) binary[static_cast<std::size_t>(b)] = true;
    for (int v = 0; v < nv; ++v)
      if (!binary[static_cast<std::size_t>(v)]) throw InvalidArgument("variable " + m.variables[static_cast<std::size_t>(v)] + " is not binary");
    if (!m.minimize) throw InvalidArgument("only minimisation models are supported");
    std::vector<int> in_objective(static_cast<std::size_t>(nv), 0);
    for (auto [c, v] : m.objective) {
      if (c != 1.0) throw InvalidArgument("objective coefficients must be 1");
      ++in_objective[static_cast<std::size_t>(v)];
    }
    for (int v = 0; v < nv; ++v)
      if (in_objective[static_cast<std::size_t>(v)] != 1) throw InvalidArgument("every variable must appear once in the objective");

    var_cover_.resize(static_cast<std::size_t>(nv));
    var_side_.resize(static_cast<std::size_t>(nv));
    for (const auto& r : m.rows) {
      if (r.sense == Sense::GreaterEqual) {
        if (r.rhs != 1.0 || !std::all_of(r.terms.begin(), r.terms.end(), [](auto t) { return t.first == 1.0; }))
          throw InvalidArgument("row " + r.name + ": only sum(x) >= 1 covering rows are supported");
        const int id = static_cast<int>(cover_.size());
        std::vector<int> vars;
        for (auto [c, v] : r.terms) vars.push_back(v);
        for (int v : vars) var_cover_[static_cast<std::size_t>(v)].push_back(id);
        cover_.push_back(std::move(vars));
      } else if (r.sense == Sense::LessEqual) {
        SideRow s;
        s.rhs = r.rhs;
        for (auto [c, v] : r.terms) {
          if (c != 1.0 && c != -1.0) throw InvalidArgument("row " + r.name + ": coefficients must be +-1");
          s.terms.emplace_back(static_cast<int>(c), v);
        }
        const int id = static_cast<int>(side_.size());
        for (auto [c, v] : s.terms) var_side_[static_cast<std::size_t>(v)].push_back({id, c});
        side_.push_back(std::move(s));
      } else {
        throw InvalidArgument("row " + r.name + ": equality rows are not supported");
      }
    }
    state_.assign(static_cast<std::size_t>(nv), 0);
    hits_.assign(cover_.size(), 0);
    lhs_.assign(side_.size(), 0);
  }

  ReplayResult solve() {
    best_ = static_cast<int>(model_.variables.size()) + 1;
    dfs(0);
    ReplayResult r;
    r.nodes = nodes_;
    if (best_ <= static_cast<int>(model_.variables.size())) {
      r.feasible = true;
      r.objective = best_;
      for (std::size_t v = 0; v < model_.variables.size(); ++v) r.assignment[model_.variables[v]] = best_sel_[v];
    }
    return r;
  }

 private:
  struct SideRow {
    std::vector<std::pair<int, int>> terms;  // (+-1, var)
    double rhs = 0;
  };

  // 0 free, 1 selected, -1 fixed to zero
  void select(int v) {
    state_[static_cast<std::size_t>(v)] = 1;
    for (int r : var_cover_[static_cast<std::size_t>(v)]) ++hits_[static_cast<std::size_t>(r)];
    for (auto [r, c] : var_side_[static_cast<std::size_t>(v)]) lhs_[static_cast<std::size_t>(r)] += c;
  }
  void unselect(int v) {
    state_[static_cast<std::size_t>(v)] = 0;
    for (int r : var_cover_[static_cast<std::size_t>(v)]) --hits_[static_cast<std::size_t>(r)];
    for (auto [r, c] : var_side_[static_cast<std::size_t>(v)]) lhs_[static_cast<std::size_t>(r)] -= c;
  }

  // Sum of the `left` largest counts of unsatisfied covering rows hit by a free variable.
  bool bound_allows(int left, int unsatisfied) const {
    std::vector<int> gains;
    for (std::size_t v = 0; v < state_.size(); ++v) {
      if (state_[v] != 0) continue;
      int g = 0;
      for (int r : var_cover_[v]) g += hits_[static_cast<std::size_t>(r)] == 0;
      if (g > 0) gains.push_back(g);
    }
    const auto k = std::min<std::size_t>(static_cast<std::size_t>(left), gains.size());
    std::partial_sort(gains.begin(), gains.begin() + static_cast<std::ptrdiff_t>(k), gains.end(), std::greater<>());
    int sum = 0;
    for (std::size_t i = 0; i < k; ++i) sum += gains[i];
    return sum >= unsatisfied;
  }

  void branch(const std::vector<int>& candidates, int selected) {
    std::vector<int> excluded;
    for (int v : candidates) {
      select(v);
      dfs(selected + 1);
      unselect(v);
      state_[static_cast<std::size_t>(v)] = -1;
      excluded.push_back(v);
    }
    for (int v : excluded) state_[static_cast<std::size_t>(v)] = 0;
  }

  void dfs(int selected) {
    ++nodes_;
    if (selected >= best_) return;
    // A side row whose positive part alone exceeds rhs can never recover.
    int violated = -1;
    for (std::size_t r = 0; r < side_.size(); ++r) {
      if (lhs_[r] <= side_[r].rhs) continue;
      bool repairable = false;
      for (auto [c, v] : side_[r].terms)
        if (c < 0 && state_[static_cast<std::size_t>(v)] == 0) repairable = true;
      if (!repairable) return;
      if (violated < 0) violated = static_cast<int>(r);
    }

    int unsatisfied = 0;
    int pivot = -1;
    int fewest = INT_MAX;
    for (std::size_t r = 0; r < cover_.size(); ++r) {
      if (hits_[r] > 0) continue;
      ++unsatisfied;
      int free = 0;
      for (int v : cover_[r]) free += state_[static_cast<std::size_t>(v)] == 0;
      if (free < fewest) {
        fewest = free;
        pivot = static_cast<int>(r);
      }
    }
    if (unsatisfied == 0 && violated < 0) {
      best_ = selected;
      best_sel_.assign(state_.size(), 0);
      for (std::size_t v = 0; v < state_.size(); ++v) best_sel_[v] = state_[v] == 1;
      return;
    }
    if (selected + 1 >= best_) return;
    if (unsatisfied > 0) {
      if (fewest == 0) return;
      if (!bound_allows(best_ - 1 - selected, unsatisfied)) return;
      std::vector<int> cand;
      for (int v : cover_[static_cast<std::size_t>(pivot)])
        if (state_[static_cast<std::size_t>(v)] == 0) cand.push_back(v);
      branch(cand, selected);
    } else {
      std::vector<int> cand;
      for (auto [c, v] : side_[static_cast<std::size_t>(violated)].terms)
        if (c < 0 && state_[static_cast<std::size_t>(v)] == 0) cand.push_back(v);
      branch(cand, selected);
    }
  }

  const LinearModel& model_;
  std::vector<std::vector<int>> cover_;
  std::vector<SideRow> side_;
  std::vector<std::vector<int>> var_cover_;
  std::vector<std::vector<std::pair<int, int>>> var_side_;
  std::vector<int> state_;
  std::vector<int> hits_;
  std::vector<int> lhs_;
  std::vector<int> best_sel_;
  int best_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

// Exact optimum of a parsed covering model; infeasible models report feasible=false.
inline ReplayResult replay(const LinearModel& model) { return detail::ReplaySolver(model).solve(); }

}  // namespace q3d::ilp
