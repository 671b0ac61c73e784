#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "q3d/board.hpp"

namespace q3d {

enum class SubproblemStatus { Infeasible, Feasible, Limit, Skipped };

inline std::string to_string(SubproblemStatus s) {
  switch (s) {
    case SubproblemStatus::Infeasible: return "infeasible";
    case SubproblemStatus::Feasible: return "feasible";
    case SubproblemStatus::Limit: return "limit";
    case SubproblemStatus::Skipped: return "skipped";
  }
  return "?";
}

// One branch of the first-queen partition: placements whose lex-smallest
// queen is `first_queen`.
struct Subproblem {
  Cell first_queen;
  SubproblemStatus status = SubproblemStatus::Skipped;
  std::uint64_t nodes = 0;
};

// A k-queen witness plus the record that every first-queen subproblem with
// budget k-1 was exhausted without finding a dominating set.
struct OptimalityCertificate {
  int dim = 3;
  int n = 0;
  int k = 0;
  Placement witness;
  int budget = -1;
  bool symmetry_used = false;
  std::vector<Subproblem> subproblems;  // ascending by first_queen
};

}  // namespace q3d
