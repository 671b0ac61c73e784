#pragma once

// Independent checks. Nothing here touches Adjacency, canonical_directions or
// line_through: queen moves are recognised directly from coordinate
// differences, so a bug in the adjacency builder cannot hide here.

#include <cstdint>
#include <cstdlib>
#include <optional>

#include "q3d/board.hpp"
#include "q3d/certificate.hpp"

namespace q3d::verify {

struct VerificationOutcome {
  bool ok = false;
  std::optional<Cell> first_uncovered;
  std::int64_t checked_cells = 0;  // cells confirmed dominated before the scan stopped
};

// True iff `d` is a nonzero queen displacement: its nonzero components all
// share one absolute value. Every support pattern is one of the line families.
inline bool is_queen_offset(int dx, int dy, int dz) noexcept {
  int step = 0;
  for (int v : {dx, dy, dz}) {
    if (v == 0) continue;
    const int a = std::abs(v);
    if (step == 0) step = a;
    else if (a != step) return false;
  }
  return step != 0;
}

inline bool attacks(const Cell& q, const Cell& v) noexcept {
  return is_queen_offset(q.x - v.x, q.y - v.y, q.z - v.z);
}

inline VerificationOutcome is_dominating(const BoardSpec& spec, const Placement& s) {
  s.require_on(spec);
  VerificationOutcome out;
  const int n = spec.n();
  const int zmax = spec.dim() == 3 ? n : 1;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < zmax; ++z) {
        const Cell v{x, y, z};
        bool hit = false;
        for (const auto& q : s)
          if (q == v || attacks(q, v)) {
            hit = true;
            break;
          }
        if (!hit) {
          out.first_uncovered = v;
          return out;
        }
        ++out.checked_cells;
      }
  out.ok = true;
  return out;
}

// Counts inner-core cells (coordinates in 1..n-2) dominated by q.
inline std::int64_t recount_kappa(const BoardSpec& spec, const Cell& q) {
  if (spec.dim() != 3) throw InvalidArgument("kappa is defined on the 3D board");
  if (spec.n() < 4) throw UnsupportedBoard("core coverage needs n >= 4");
  spec.require(q);
  std::int64_t count = 0;
  const int n = spec.n();
  for (int x = 1; x <= n - 2; ++x)
    for (int y = 1; y <= n - 2; ++y)
      for (int z = 1; z <= n - 2; ++z) {
        const Cell w{x, y, z};
        if (w == q || attacks(q, w)) ++count;
      }
  return count;
}

inline bool check_kappa(const BoardSpec& spec, const Cell& q, std::int64_t claimed) {
  return recount_kappa(spec, q) == claimed;
}

// Cells a first queen may occupy: 0 <= x <= y <= z <= floor((n-1)/2) in 3D
// with symmetry; every cell otherwise.
inline std::vector<Cell> expected_first_queens(const BoardSpec& spec, bool symmetry) {
  std::vector<Cell> out;
  const int n = spec.n();
  const int zmax = spec.dim() == 3 ? n : 1;
  const int cap = (n - 1) / 2;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < zmax; ++z) {
        if (symmetry && spec.dim() == 3 && !(x <= y && y <= z && z <= cap)) continue;
        out.push_back({x, y, z});
      }
  return out;
}

struct CertificateCheck {
  bool ok = false;
  std::string reason;  // empty when ok
};

// Checks structure only; subproblem "infeasible" entries are trusted, not
// re-searched.
inline CertificateCheck explain_certificate(const OptimalityCertificate& cert, const BoardSpec& spec) {
  auto fail = [](std::string why) { return CertificateCheck{false, std::move(why)}; };
  if (cert.n != spec.n() || cert.dim != spec.dim()) return fail("certificate is for a different board");
  if (cert.k < 1) return fail("k must be >= 1");
  if (cert.budget != cert.k - 1) return fail("budget must equal k-1");
  if (static_cast<int>(cert.witness.size()) != cert.k) return fail("witness size differs from k");
  for (const auto& c : cert.witness)
    if (!spec.contains(c)) return fail("witness cell " + to_string(c, spec.dim()) + " is off the board");
  const auto dom = is_dominating(spec, cert.witness);
  if (!dom.ok) return fail("witness leaves " + to_string(*dom.first_uncovered, spec.dim()) + " undominated");
  if (cert.symmetry_used && spec.dim() != 3) return fail("symmetry reduction applies to 3D boards only");
  const auto expected = expected_first_queens(spec, cert.symmetry_used);
  if (cert.subproblems.size() != expected.size())
    return fail("expected " + std::to_string(expected.size()) + " subproblems, found " +
                std::to_string(cert.subproblems.size()));
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& sp = cert.subproblems[i];
    if (sp.first_queen != expected[i])
      return fail("subproblem " + std::to_string(i) + " has first queen " + to_string(sp.first_queen, spec.dim()) +
                  ", expected " + to_string(expected[i], spec.dim()));
    if (sp.status != SubproblemStatus::Infeasible)
      return fail("subproblem " + to_string(sp.first_queen, spec.dim()) + " is " + to_string(sp.status));
  }
  return {true, {}};
}

inline bool check_certificate(const OptimalityCertificate& cert, const BoardSpec& spec) {
  return explain_certificate(cert, spec).ok;
}

}  // namespace q3d::verify
