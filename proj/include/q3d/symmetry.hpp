#pragma once

// The octahedral group O_h (axis permutations x coordinate reflections)
// acting on [n]^3, and the fundamental domain used for symmetry breaking.

#include <algorithm>
#include <array>
#include <vector>

#include "q3d/board.hpp"

namespace q3d::sym {

// out[i] = c[perm[i]], then out[i] -> n-1-out[i] where flips[i] is set.
struct SymmetryElement {
  std::array<int, 3> perm{0, 1, 2};
  std::array<bool, 3> flips{false, false, false};

  bool is_identity() const noexcept {
    return perm == std::array<int, 3>{0, 1, 2} && flips == std::array<bool, 3>{false, false, false};
  }

  friend auto operator<=>(const SymmetryElement&, const SymmetryElement&) = default;
};

inline void require_cube(const BoardSpec& spec) {
  if (spec.dim() != 3) throw InvalidArgument("symmetry group is defined for 3D boards");
}

// 6 permutations (lex) x 8 flip patterns.
inline const std::vector<SymmetryElement>& all_elements() {
  static const std::vector<SymmetryElement> elems = [] {
    std::vector<SymmetryElement> out;
    std::array<int, 3> p{0, 1, 2};
    do {
      for (int mask = 0; mask < 8; ++mask)
        out.push_back({p, {(mask & 4) != 0, (mask & 2) != 0, (mask & 1) != 0}});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
  }();
  return elems;
}

inline Cell apply(const SymmetryElement& s, const BoardSpec& spec, const Cell& c) {
  const std::array<int, 3> in{c.x, c.y, c.z};
  std::array<int, 3> out{};
  for (int i = 0; i < 3; ++i) {
    out[i] = in[s.perm[i]];
    if (s.flips[i]) out[i] = spec.n() - 1 - out[i];
  }
  return {out[0], out[1], out[2]};
}

// (a o b)(c) = a(b(c)), expressed as a single element.
inline SymmetryElement compose(const SymmetryElement& a, const SymmetryElement& b) {
  SymmetryElement r;
  for (int i = 0; i < 3; ++i) {
    r.perm[i] = b.perm[a.perm[i]];
    r.flips[i] = a.flips[i] != b.flips[a.perm[i]];
  }
  return r;
}

inline std::vector<Cell> cell_orbit(const BoardSpec& spec, const Cell& c) {
  require_cube(spec);
  spec.require(c);
  std::vector<Cell> out;
  for (const auto& s : all_elements()) out.push_back(apply(s, spec, c));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// 0 <= x <= y <= z <= floor((n-1)/2)
inline bool in_fundamental_domain(const BoardSpec& spec, const Cell& c) {
  require_cube(spec);
  const int cap = (spec.n() - 1) / 2;
  return 0 <= c.x && c.x <= c.y && c.y <= c.z && c.z <= cap;
}

inline std::vector<Cell> fundamental_domain(const BoardSpec& spec) {
  require_cube(spec);
  std::vector<Cell> out;
  const int cap = (spec.n() - 1) / 2;
  for (int x = 0; x <= cap; ++x)
    for (int y = x; y <= cap; ++y)
      for (int z = y; z <= cap; ++z) out.push_back({x, y, z});
  return out;
}

inline Placement apply(const SymmetryElement& s, const BoardSpec& spec, const Placement& p) {
  std::vector<Cell> cells;
  cells.reserve(p.size());
  for (const auto& c : p) cells.push_back(apply(s, spec, c));
  return Placement(std::move(cells));
}

// Lexicographically smallest sorted image of S over the 48 group elements.
inline Placement canonical_placement(const BoardSpec& spec, const Placement& s) {
  require_cube(spec);
  if (s.empty()) throw InvalidArgument("cannot canonicalise an empty placement");
  s.require_on(spec);
  Placement best = s;
  for (const auto& g : all_elements()) {
    auto img = apply(g, spec, s);
    if (img < best) best = std::move(img);
  }
  return best;
}

}  // namespace q3d::sym
