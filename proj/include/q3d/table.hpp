#pragma once

// Published reference values of gamma(Q^3_n) with example placements, and
// the budgeted n = 7 attempt.

#include <algorithm>
#include <optional>
#include <vector>

#include "q3d/board.hpp"
#include "q3d/bounds.hpp"
#include "q3d/solver.hpp"
#include "q3d/verifier.hpp"

namespace q3d::table {

struct KnownRow {
  int n = 0;
  int lower = 0;  // equal to upper when the value is exact
  int upper = 0;
  Placement example;

  bool exact() const noexcept { return lower == upper; }
};

inline const std::vector<KnownRow>& known_values() {
  static const std::vector<KnownRow> rows{
      {1, 1, 1, Placement{{0, 0, 0}}},
      {2, 1, 1, Placement{{1, 0, 0}}},
      {3, 1, 1, Placement{{1, 1, 1}}},
      {4, 4, 4, Placement{{1, 0, 3}, {1, 1, 0}, {1, 2, 0}, {1, 3, 3}}},
      {5, 6, 6, Placement{{1, 0, 3}, {1, 1, 0}, {1, 3, 4}, {1, 4, 1}, {2, 2, 2}, {3, 2, 2}}},
      {6, 8, 8,
       Placement{{2, 2, 2}, {2, 2, 3}, {2, 3, 2}, {2, 3, 3}, {3, 2, 2}, {3, 2, 3}, {3, 3, 2}, {3, 3, 3}}},
      {7, 10, 12,
       Placement{{0, 4, 3}, {0, 6, 6}, {1, 1, 5}, {2, 3, 0}, {2, 4, 0}, {3, 0, 2}, {3, 6, 4}, {4, 3, 6}, {4, 6, 4},
                 {5, 0, 1}, {6, 2, 3}, {6, 5, 1}}},
  };
  return rows;
}

inline std::optional<KnownRow> known(int n) {
  for (const auto& r : known_values())
    if (r.n == n) return r;
  return std::nullopt;
}

// Budgeted search on the 7-board seeded with the published 12-queen
// placement. Expected to stop at the limit; the interval it reports is
// [max(volume bound, counting bound), best placement size].
inline solver::SolveResult attempt_n7(const solver::Limits& limits) {
  const auto spec = BoardSpec::cube(7);
  const auto seed = known(7)->example;
  if (!verify::is_dominating(spec, seed).ok) throw InvalidArgument("published n=7 placement does not dominate");
  auto res = solver::solve_exact(spec, limits, {.use_symmetry = true, .initial_incumbent = seed});
  res.lower_bound = std::max<int>(res.lower_bound, static_cast<int>(bounds::volume_lower_bound(7)));
  return res;
}

}  // namespace q3d::table
