#pragma once

// How many inner-core cells a single queen dominates, by position type.
//
// The inner core is C = {1..n-2}^3 with m = n-2. kappa(q) = |N[q] ∩ C|.
// Closed forms: corner m, edge 2m-1, face 5m-4-f(a,c) with
// f(a,c) = |a-c| + |a+c-M|, M = m-1. Interior cells only have the bound
// 13m-12 (attained at the centre when m is odd), so for them the exact
// count always comes from enumeration.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "q3d/board.hpp"

namespace q3d::coverage {

enum class PositionType { Corner, Edge, Face, Interior };

inline std::string to_string(PositionType t) {
  switch (t) {
    case PositionType::Corner: return "corner";
    case PositionType::Edge: return "edge";
    case PositionType::Face: return "face";
    case PositionType::Interior: return "interior";
  }
  return "?";
}

inline constexpr std::array<PositionType, 4> kAllTypes{PositionType::Corner, PositionType::Edge,
                                                       PositionType::Face, PositionType::Interior};

inline void require_stratified(const BoardSpec& spec) {
  if (spec.dim() != 3) throw InvalidArgument("coverage stratification is defined for 3D boards");
  if (spec.n() < 4) throw UnsupportedBoard("coverage stratification needs n >= 4 (got n=" +
                                           std::to_string(spec.n()) + ")");
}

struct CoreGeometry {
  int n = 0;
  int m = 0;
  int eps_m = 0;  // (m-1) mod 2
  CellSet core;

  explicit CoreGeometry(const BoardSpec& spec)
      : n(spec.n()), m(spec.n() - 2), eps_m((spec.n() - 3) % 2), core(static_cast<std::size_t>(spec.cell_count())) {
    require_stratified(spec);
    for (int x = 1; x <= m; ++x)
      for (int y = 1; y <= m; ++y)
        for (int z = 1; z <= m; ++z) core.set(static_cast<std::size_t>(spec.index({x, y, z})));
  }

  bool contains(const Cell& c) const noexcept {
    auto in = [this](int t) { return t >= 1 && t <= m; };
    return in(c.x) && in(c.y) && in(c.z);
  }
};

// f(a,c) = |a-c| + |a+c-M|. Always congruent to M mod 2.
inline int parity_f(int M, int a, int c) {
  if (M < 1) throw InvalidArgument("M must be >= 1");
  if (a < 0 || a > M || c < 0 || c > M) throw InvalidArgument("a and c must lie in [0, M]");
  return std::abs(a - c) + std::abs(a + c - M);
}

// Pairs (a,c) attaining f = M mod 2, ascending.
inline std::vector<std::pair<int, int>> parity_minimizers(int M) {
  if (M < 1) throw InvalidArgument("M must be >= 1");
  if (M % 2 == 0) return {{M / 2, M / 2}};
  const int lo = (M - 1) / 2;
  const int hi = (M + 1) / 2;
  return {{lo, lo}, {lo, hi}, {hi, lo}, {hi, hi}};
}

inline int boundary_count(const BoardSpec& spec, const Cell& q) {
  const int last = spec.n() - 1;
  return (q.x == 0 || q.x == last) + (q.y == 0 || q.y == last) + (q.z == 0 || q.z == last);
}

inline PositionType classify(const BoardSpec& spec, const Cell& q) {
  if (spec.dim() != 3) throw InvalidArgument("position types are defined for 3D boards");
  spec.require(q);
  switch (boundary_count(spec, q)) {
    case 3: return PositionType::Corner;
    case 2: return PositionType::Edge;
    case 1: return PositionType::Face;
    default: return PositionType::Interior;
  }
}

struct CoverageReport {
  Cell queen;
  PositionType ptype = PositionType::Interior;
  int kappa = 0;
  // Core cells on each canonical line through the queen, the queen excluded.
  std::vector<std::pair<Direction, int>> per_direction;
};

inline CoverageReport kappa_exact(const BoardSpec& spec, const Cell& q) {
  require_stratified(spec);
  spec.require(q);
  const int m = spec.n() - 2;
  auto in_core = [m](const Cell& c) {
    return c.x >= 1 && c.x <= m && c.y >= 1 && c.y <= m && c.z >= 1 && c.z <= m;
  };
  CoverageReport r;
  r.queen = q;
  r.ptype = classify(spec, q);
  r.kappa = in_core(q) ? 1 : 0;
  for (const auto& u : canonical_directions(spec)) {
    int count = 0;
    for (int sign : {1, -1}) {
      for (int t = 1;; ++t) {
        const Cell c{q.x + sign * t * u.delta[0], q.y + sign * t * u.delta[1], q.z + sign * t * u.delta[2]};
        if (!spec.contains(c)) break;
        if (in_core(c)) ++count;
      }
    }
    r.per_direction.emplace_back(u, count);
    r.kappa += count;
  }
  return r;
}

struct FaceOffsets {
  int a = 0, b = 0, c = 0, d = 0;
  int M = 0;
};

// For a face cell: reflect onto the 0-face of its boundary axis, then take
// the two free coordinates (y, z) in increasing axis order.
inline FaceOffsets face_offsets(const BoardSpec& spec, const Cell& q) {
  if (classify(spec, q) != PositionType::Face) throw InvalidArgument("not a face cell");
  const int m = spec.n() - 2;
  const int last = spec.n() - 1;
  const std::array<int, 3> coords{q.x, q.y, q.z};
  std::array<int, 2> free{};
  int k = 0;
  for (int v : coords)
    if (v != 0 && v != last) free[static_cast<std::size_t>(k++)] = v;
  FaceOffsets f;
  f.M = m - 1;
  f.a = free[0] - 1;
  f.b = m - free[0];
  f.c = free[1] - 1;
  f.d = m - free[1];
  return f;
}

struct KappaFormula {
  PositionType ptype = PositionType::Interior;
  int value = 0;           // exact value, or the upper bound when is_bound
  bool is_bound = false;   // true for interior cells
  int exact = 0;           // always the enumerated value
};

inline KappaFormula kappa_formula(const BoardSpec& spec, const Cell& q) {
  require_stratified(spec);
  const int m = spec.n() - 2;
  KappaFormula k;
  k.ptype = classify(spec, q);
  switch (k.ptype) {
    case PositionType::Corner:
      k.value = m;
      break;
    case PositionType::Edge:
      k.value = 2 * m - 1;
      break;
    case PositionType::Face: {
      const auto f = face_offsets(spec, q);
      k.value = 5 * m - 4 - parity_f(f.M, f.a, f.c);
      break;
    }
    case PositionType::Interior:
      k.value = 13 * m - 12;
      k.is_bound = true;
      break;
  }
  k.exact = k.is_bound ? kappa_exact(spec, q).kappa : k.value;
  return k;
}

struct StratumMax {
  PositionType ptype = PositionType::Corner;
  int max_kappa = -1;
  std::vector<Cell> argmax;  // ascending
};

struct StrataSummary {
  int n = 0;
  int m = 0;
  int eps_m = 0;
  std::array<StratumMax, 4> strata;  // indexed by PositionType
  // m < 2m-1 <= 5m-5 <= 5m-4-eps < 13m-18 <= interior max
  bool chain_holds = false;
  // every boundary max strictly below the interior max
  bool separation_holds = false;

  const StratumMax& of(PositionType t) const { return strata[static_cast<std::size_t>(t)]; }
};

inline StrataSummary strata_summary(const BoardSpec& spec) {
  require_stratified(spec);
  StrataSummary s;
  s.n = spec.n();
  s.m = spec.n() - 2;
  s.eps_m = (s.m - 1) % 2;
  for (auto t : kAllTypes) s.strata[static_cast<std::size_t>(t)].ptype = t;
  const auto cells = spec.cell_count();
  for (int i = 0; i < cells; ++i) {
    const Cell q = spec.cell(i);
    const auto r = kappa_exact(spec, q);
    auto& st = s.strata[static_cast<std::size_t>(r.ptype)];
    if (r.kappa > st.max_kappa) {
      st.max_kappa = r.kappa;
      st.argmax.clear();
    }
    if (r.kappa == st.max_kappa) st.argmax.push_back(q);
  }
  const int m = s.m;
  const int interior = s.of(PositionType::Interior).max_kappa;
  s.chain_holds = m >= 2 && m < 2 * m - 1 && 2 * m - 1 <= 5 * m - 5 && 5 * m - 5 <= 5 * m - 4 - s.eps_m &&
                  5 * m - 4 - s.eps_m < 13 * m - 18 && 13 * m - 18 <= interior;
  const int boundary = std::max({s.of(PositionType::Corner).max_kappa, s.of(PositionType::Edge).max_kappa,
                                 s.of(PositionType::Face).max_kappa});
  s.separation_holds = boundary < interior;
  return s;
}

}  // namespace q3d::coverage
