// End-to-end acceptance checks. One line per criterion; exit status is the
// number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "q3d/q3d.hpp"

namespace {

using q3d::BoardSpec;
using q3d::Cell;
using q3d::Placement;
using Clock = std::chrono::steady_clock;

struct Check {
  std::ostringstream log;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "\n    failed: " << what;
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// 1. Exact values with certificates: n <= 5 in under a minute each, n = 6 in
//    under thirty minutes.
void exact_values(Check& c) {
  const int expected[] = {0, 1, 1, 1, 4, 6, 8};
  for (int n = 1; n <= 6; ++n) {
    const auto spec = BoardSpec::cube(n);
    const auto t0 = Clock::now();
    const auto r = q3d::solver::solve_exact(spec);
    const double t = seconds_since(t0);
    const std::string tag = "n=" + std::to_string(n);
    c.expect(r.status == q3d::solver::SolveStatus::Optimal, tag + " optimal");
    c.expect(r.value == expected[n], tag + " value " + std::to_string(r.value));
    c.expect(t < (n <= 5 ? 60.0 : 1800.0), tag + " took " + std::to_string(t) + " s");
    c.expect(r.certificate && q3d::verify::check_certificate(*r.certificate, spec), tag + " certificate");
    c.expect(q3d::verify::is_dominating(spec, r.witness).ok, tag + " witness");
    // the certificate also survives a trip through its file format
    if (r.certificate) {
      const auto back = q3d::io::parse_certificate(q3d::io::dump(q3d::io::to_json(*r.certificate)));
      c.expect(q3d::verify::check_certificate(back, spec), tag + " certificate round trip");
    }
    c.log << "\n    n=" << n << ": " << r.value << " in " << t << " s";
  }
}

// 2. Coverage strata on n = 5.
void strata(Check& c) {
  using q3d::coverage::PositionType;
  const auto s = q3d::coverage::strata_summary(BoardSpec::cube(5));
  c.expect(s.of(PositionType::Corner).max_kappa == 3, "corner 3");
  c.expect(s.of(PositionType::Edge).max_kappa == 5, "edge 5");
  c.expect(s.of(PositionType::Face).max_kappa == 11, "face 11");
  c.expect(s.of(PositionType::Interior).max_kappa == 27, "interior 27");
  c.expect(s.of(PositionType::Interior).argmax == std::vector<Cell>{{2, 2, 2}}, "unique interior maximiser");
  c.expect(s.chain_holds && s.separation_holds, "separation");
}

// 3. Closed forms, enumeration and an independent recount agree on every
//    cell for n = 4..9. Interior cells only have the 13m-12 bound.
void closed_forms(Check& c) {
  namespace cov = q3d::coverage;
  for (int n = 4; n <= 9; ++n) {
    const auto spec = BoardSpec::cube(n);
    const int m = n - 2;
    int mismatches = 0;
    for (int i = 0; i < spec.cell_count(); ++i) {
      const Cell q = spec.cell(i);
      const int exact = cov::kappa_exact(spec, q).kappa;
      const auto formula = cov::kappa_formula(spec, q);
      bool ok = q3d::verify::check_kappa(spec, q, exact) && formula.exact == exact;
      ok = ok && (formula.is_bound ? exact <= formula.value && formula.value == 13 * m - 12 : exact == formula.value);
      if (!ok) {
        ++mismatches;
        c.log << "\n    n=" << n << " " << q3d::to_string(q);
      }
    }
    c.expect(mismatches == 0, "n=" + std::to_string(n) + ": " + std::to_string(mismatches) + " discrepancies");
  }
}

// 4. The face parity function: minimum value M mod 2 and the listed minimisers.
void parity_minimum(Check& c) {
  for (int M = 1; M <= 20; ++M) {
    std::vector<std::pair<int, int>> argmin;
    int best = 1 << 30;
    for (int a = 0; a <= M; ++a)
      for (int b = 0; b <= M; ++b) {
        const int f = q3d::coverage::parity_f(M, a, b);
        if (f < best) {
          best = f;
          argmin.clear();
        }
        if (f == best) argmin.emplace_back(a, b);
      }
    c.expect(best == M % 2, "min at M=" + std::to_string(M));
    c.expect(argmin == q3d::coverage::parity_minimizers(M), "minimisers at M=" + std::to_string(M));
  }
}

// Every minimum dominating set for n <= 4; beyond that the solver's witness
// and the published example.
std::vector<Placement> optimal_sets(const BoardSpec& spec, const q3d::solver::SolveResult& r) {
  std::vector<Placement> out{r.witness};
  if (spec.n() > 4) {
    if (auto known = q3d::table::known(spec.n())) out.push_back(known->example);
    return out;
  }
  const auto adj = q3d::build_adjacency(spec);
  const int N = static_cast<int>(spec.cell_count());
  const int k = r.value;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    q3d::CellSet cov(adj->size());
    for (int i : idx) cov |= adj->row(i);
    if (cov.all()) out.push_back(Placement::from_indices(spec, idx));
    int p = k - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] == N - k + p) --p;
    if (p < 0) break;
    ++idx[static_cast<std::size_t>(p)];
    for (int j = p + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

// 5. Bounds sandwich the exact values, 2D values are right, and projections of
//    3D solutions dominate the square.
void sandwich(Check& c) {
  const int g2[] = {0, 1, 1, 1, 2, 3, 3};
  for (int n = 1; n <= 6; ++n) {
    const auto spec = BoardSpec::cube(n);
    const auto r = q3d::bounds::bounds_report(n);
    const auto gamma = q3d::solver::solve_exact(spec);
    const std::string tag = "n=" + std::to_string(n);
    c.expect(r.projection_lb == g2[n], tag + " gamma2 " + std::to_string(r.projection_lb));
    c.expect(r.best_lb <= gamma.value && gamma.value <= r.best_ub, tag + " sandwich");
    for (const auto& w : optimal_sets(spec, gamma)) {
      const auto proj = q3d::bounds::project(spec, w);
      c.expect(q3d::verify::is_dominating(BoardSpec::square(n), proj).ok,
               tag + " projection of " + q3d::to_string(w, 3) + " dominates");
    }
    c.expect(q3d::verify::is_dominating(spec, q3d::bounds::lift(n, q3d::solver::solve_exact(BoardSpec::square(n)).witness)).ok,
             tag + " lifting dominates");
  }
}

// 6. Symmetry reduction loses nothing, and the exported model replays to the
//    same optimum.
void symmetry_and_lp(Check& c) {
  for (int n = 1; n <= 5; ++n) {
    const auto spec = BoardSpec::cube(n);
    const auto with = q3d::solver::solve_exact(spec, {}, {.use_symmetry = true});
    const auto without = q3d::solver::solve_exact(spec, {}, {.use_symmetry = false});
    c.expect(with.value == without.value, "symmetry n=" + std::to_string(n));
    if (n <= 4) {
      for (bool sym : {false, true}) {
        const auto text = q3d::ilp::export_lp(spec, {.symmetry = sym, .budget = std::nullopt});
        const auto rep = q3d::ilp::replay(q3d::ilp::parse_lp(text));
        const auto p = q3d::ilp::import_solution(spec, rep.assignment);
        c.expect(rep.feasible && rep.objective == with.value && q3d::verify::is_dominating(spec, p).ok,
                 "LP replay n=" + std::to_string(n) + (sym ? " with symmetry rows" : ""));
      }
    }
  }
}

// 7. n = 7: the published 12-queen placement verifies quickly, and a budgeted
//    solve reports a limit with a sound interval.
void open_case(Check& c) {
  const auto spec = BoardSpec::cube(7);
  const auto seed = q3d::table::known(7)->example;
  const auto t0 = Clock::now();
  const bool dom = q3d::verify::is_dominating(spec, seed).ok;
  const double t = seconds_since(t0);
  c.expect(dom && seed.size() == 12, "12-queen placement dominates");
  c.expect(t < 1.0, "verification took " + std::to_string(t) + " s");
  q3d::solver::Limits lim;
  lim.time_limit_seconds = 5.0;
  const auto r = q3d::table::attempt_n7(lim);
  c.expect(r.status == q3d::solver::SolveStatus::Limit, "status limit");
  c.expect(r.lower_bound >= 5, "lower bound >= 5");
  c.expect(r.value <= 12 && q3d::verify::is_dominating(spec, r.witness).ok, "upper bound <= 12 with witness");
  c.log << "\n    interval [" << r.lower_bound << ", " << r.value << "] after " << r.wall_time.count() << " s";
}

// 8. The verifier agrees with a brute-force oracle and with the adjacency
//    rows on random placements.
void random_agreement(Check& c) {
  std::mt19937 rng(424242);
  int trials = 0;
  int disagreements = 0;
  for (int n = 2; n <= 6; ++n) {
    const auto spec = BoardSpec::cube(n);
    const auto adj = q3d::build_adjacency(spec);
    std::uniform_int_distribution<int> cell(0, spec.cell_count() - 1);
    std::uniform_int_distribution<int> size(1, 2 * n);
    for (int t = 0; t < 2000; ++t, ++trials) {
      std::vector<Cell> cells;
      const int k = size(rng);
      for (int i = 0; i < k; ++i) cells.push_back(spec.cell(cell(rng)));
      const Placement p(cells);
      const bool v = q3d::verify::is_dominating(spec, p).ok;
      const bool a = adj->covered_by(p).all();
      const bool o = n <= 4 ? oracle::is_dominating(spec, cells) : v;
      disagreements += (v != a) || (v != o);
    }
  }
  c.expect(trials >= 10000, "at least 10^4 trials");
  c.expect(disagreements == 0, std::to_string(disagreements) + " disagreements");
}

// 9. Thread count changes nothing but timing and node counts.
void determinism(Check& c) {
  const auto spec = BoardSpec::cube(5);
  q3d::solver::Limits one, eight;
  eight.threads = 8;
  const auto a = q3d::solver::solve_exact(spec, one);
  const auto b = q3d::solver::solve_exact(spec, eight);
  c.expect(a.value == b.value, "value");
  c.expect(a.witness == b.witness, "witness");
  c.expect(a.certificate && b.certificate, "certificates present");
  if (a.certificate && b.certificate) {
    auto strip = [](q3d::OptimalityCertificate cert) {
      for (auto& sp : cert.subproblems) sp.nodes = 0;
      return q3d::io::dump(q3d::io::to_json(cert));
    };
    c.expect(strip(*a.certificate) == strip(*b.certificate), "certificate contents");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"exact values n=1..6 with checked certificates", exact_values},
      {"coverage strata 3 < 5 < 11 < 27 on n=5", strata},
      {"closed-form coverage agrees with enumeration and recount, n=4..9", closed_forms},
      {"face parity minimum and minimisers, M=1..20", parity_minimum},
      {"volume/projection/lifting sandwich, n=1..6", sandwich},
      {"symmetry reduction lossless; LP replay agrees", symmetry_and_lp},
      {"n=7 placement verified; budgeted solve reports limit", open_case},
      {"verifier agrees on 10^4 random placements", random_agreement},
      {"1 and 8 threads give identical results", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    failures += !c.ok;
    std::printf("[%s] %zu. %s (%.2f s)%s\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                seconds_since(t0), c.log.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
