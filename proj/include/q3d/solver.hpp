#pragma once

// Exact minimum dominating sets of the queen graph.
//
// The search is a set-cover branch-and-bound: pick the uncovered cell with
// the fewest remaining coverers (lex-min on ties), branch on each coverer in
// lex order, and exclude already-tried siblings from later branches. A node
// is pruned when the best `left` candidate gains cannot reach the number of
// uncovered cells.
//
// Infeasibility of a budget is proved by splitting on the lex-first queen:
// subproblem c fixes a queen at c and forbids every cell before c. With
// symmetry on (3D only) only cells of the fundamental domain are tried,
// because the lex-least image of any placement starts there.

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <climits>
#include <cstdint>
#include <memory>
#include <optional>
#include <thread>
#include <vector>

#include "q3d/board.hpp"
#include "q3d/certificate.hpp"
#include "q3d/symmetry.hpp"

namespace q3d::solver {

struct Limits {
  std::optional<double> time_limit_seconds{};  // wall clock for the whole call
  std::optional<std::uint64_t> node_limit{};  // summed over all subproblems
  int threads = 1;
};

enum class SolveStatus { Optimal, Feasible, Infeasible, Limit };

inline std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Limit: return "limit";
  }
  return "?";
}

struct SolveOptions {
  bool use_symmetry = true;
  // Used instead of the greedy incumbent when it dominates and is smaller.
  std::optional<Placement> initial_incumbent{};
};

struct SolveResult {
  SolveStatus status = SolveStatus::Limit;
  int value = 0;        // size of the best dominating set found
  int lower_bound = 0;  // proved lower bound (== value when optimal)
  Placement witness;
  std::uint64_t nodes_explored = 0;
  std::chrono::duration<double> wall_time{0};
  std::optional<OptimalityCertificate> certificate;
  std::vector<int> incumbent_trace;  // every incumbent size, in discovery order
};

namespace detail {

using Clock = std::chrono::steady_clock;

// Shared stop state for one solver call.
class Budget {
 public:
  explicit Budget(const Limits& limits) : node_limit_(limits.node_limit) {
    if (limits.time_limit_seconds)
      deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(*limits.time_limit_seconds));
  }

  bool exhausted() const noexcept { return stopped_.load(std::memory_order_relaxed); }

  // Called every few thousand nodes with the nodes done since the last call.
  bool charge(std::uint64_t nodes) noexcept {
    const auto total = nodes_.fetch_add(nodes, std::memory_order_relaxed) + nodes;
    if ((node_limit_ && total > *node_limit_) || (deadline_ && Clock::now() >= *deadline_))
      stopped_.store(true, std::memory_order_relaxed);
    return !exhausted();
  }

 private:
  std::optional<std::uint64_t> node_limit_;
  std::optional<Clock::time_point> deadline_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stopped_{false};
};

// Sequential search for one subproblem. Owns all mutable state.
class CoverSearch {
 public:
  using word = std::uint64_t;

  explicit CoverSearch(const Adjacency& adj)
      : cells_(static_cast<int>(adj.size())), words_(static_cast<int>((adj.size() + 63) / 64)) {
    rows_.resize(static_cast<std::size_t>(cells_) * words_);
    for (int v = 0; v < cells_; ++v) {
      auto src = adj.row(v).words();
      std::copy(src.begin(), src.end(), rows_.begin() + static_cast<std::ptrdiff_t>(v) * words_);
    }
    mask_.assign(static_cast<std::size_t>(words_), ~word{0});
    if (cells_ % 64 != 0) mask_.back() = (word{1} << (cells_ % 64)) - 1;
    max_gain_ = static_cast<int>(adj.max_row_size());
    hist_.assign(static_cast<std::size_t>(max_gain_) + 1, 0);
  }

  struct Outcome {
    SubproblemStatus status = SubproblemStatus::Infeasible;
    std::vector<int> witness;  // ascending indices when feasible
    std::uint64_t nodes = 0;
  };

  // Extends `fixed` to a dominating set with at most `extra` further cells,
  // each drawn from `allowed`. `abandon` is polled alongside the budget.
  template <class Abandon>
  Outcome run(const std::vector<int>& fixed, const CellSet& allowed, int extra, Budget& budget, Abandon&& abandon) {
    Outcome out;
    const auto depth = static_cast<std::size_t>(std::max(extra, 0) + 1);
    covered_.assign(depth * static_cast<std::size_t>(words_), 0);
    allowed_.assign(depth * static_cast<std::size_t>(words_), 0);
    for (int v : fixed) or_row(covered_.data(), v);
    auto aw = allowed.words();
    std::copy(aw.begin(), aw.end(), allowed_.begin());
    chosen_ = fixed;
    nodes_ = 0;
    pending_ = 0;
    interrupted_ = false;
    const bool found = dfs(0, extra, budget, abandon);
    budget.charge(pending_);
    out.nodes = nodes_;
    if (found) {
      out.status = SubproblemStatus::Feasible;
      out.witness = chosen_;
      std::sort(out.witness.begin(), out.witness.end());
    } else if (interrupted_) {
      out.status = budget.exhausted() ? SubproblemStatus::Limit : SubproblemStatus::Skipped;
    }
    return out;
  }

 private:
  const word* row(int v) const noexcept { return rows_.data() + static_cast<std::ptrdiff_t>(v) * words_; }

  void or_row(word* dst, int v) const noexcept {
    const word* r = row(v);
    for (int k = 0; k < words_; ++k) dst[k] |= r[k];
  }

  int and_count(const word* a, const word* b) const noexcept {
    int c = 0;
    for (int k = 0; k < words_; ++k) c += std::popcount(a[k] & b[k]);
    return c;
  }

  template <class Abandon>
  bool dfs(int d, int left, Budget& budget, Abandon& abandon) {
    ++nodes_;
    if (++pending_ >= 4096) {
      const bool ok = budget.charge(pending_);
      pending_ = 0;
      if (!ok || abandon()) interrupted_ = true;
    }
    if (interrupted_) return false;

    const std::size_t off = static_cast<std::size_t>(d) * words_;
    const word* cov = covered_.data() + off;
    const word* al = allowed_.data() + off;

    word unc[kMaxWordsOnStack];
    std::vector<word> unc_heap;
    word* u = unc;
    if (words_ > kMaxWordsOnStack) {
      unc_heap.resize(static_cast<std::size_t>(words_));
      u = unc_heap.data();
    }
    int uncovered = 0;
    for (int k = 0; k < words_; ++k) {
      u[k] = ~cov[k] & mask_[static_cast<std::size_t>(k)];
      uncovered += std::popcount(u[k]);
    }
    if (uncovered == 0) return true;
    if (left <= 0) return false;

    // Counting bound: the `left` largest gains must reach `uncovered`.
    std::fill(hist_.begin(), hist_.end(), 0);
    for (int k = 0; k < words_; ++k) {
      word w = al[k];
      while (w != 0) {
        const int v = k * 64 + std::countr_zero(w);
        w &= w - 1;
        ++hist_[static_cast<std::size_t>(and_count(row(v), u))];
      }
    }
    {
      int need = uncovered;
      int take = left;
      for (int g = max_gain_; g > 0 && take > 0 && need > 0; --g) {
        const int t = std::min(take, hist_[static_cast<std::size_t>(g)]);
        need -= t * g;
        take -= t;
      }
      if (need > 0) return false;
    }

    // Branch on the uncovered cell with the fewest allowed coverers.
    int pivot = -1;
    int best = INT_MAX;
    for (int k = 0; k < words_ && best > 1; ++k) {
      word w = u[k];
      while (w != 0) {
        const int v = k * 64 + std::countr_zero(w);
        w &= w - 1;
        const int c = and_count(row(v), al);
        if (c < best) {
          best = c;
          pivot = v;
          if (c <= 1) break;
        }
      }
    }
    if (best == 0) return false;

    const std::size_t next = off + static_cast<std::size_t>(words_);
    word* ncov = covered_.data() + next;
    word* nal = allowed_.data() + next;
    std::copy(al, al + words_, nal);
    // Coverers of the pivot, ascending. Adjacency is symmetric, so row(pivot)
    // is exactly the set of cells that cover it.
    const word* pr = row(pivot);
    for (int k = 0; k < words_; ++k) {
      word w = pr[k] & al[k];
      while (w != 0) {
        const int c = k * 64 + std::countr_zero(w);
        w &= w - 1;
        nal[c / 64] &= ~(word{1} << (c % 64));  // c and all earlier siblings leave the pool
        std::copy(cov, cov + words_, ncov);
        or_row(ncov, c);
        chosen_.push_back(c);
        if (dfs(d + 1, left - 1, budget, abandon)) return true;
        chosen_.pop_back();
        if (interrupted_) return false;
      }
    }
    return false;
  }

  static constexpr int kMaxWordsOnStack = 64;

  int cells_;
  int words_;
  int max_gain_ = 0;
  std::vector<word> rows_;
  std::vector<word> mask_;
  std::vector<word> covered_;
  std::vector<word> allowed_;
  std::vector<int> hist_;
  std::vector<int> chosen_;
  std::uint64_t nodes_ = 0;
  std::uint64_t pending_ = 0;
  bool interrupted_ = false;
};

}  // namespace detail

// Repeatedly takes the cell covering the most uncovered cells (lex-min on ties).
inline Placement greedy_upper_bound(const Adjacency& adj) {
  const auto& spec = adj.spec();
  CellSet covered(adj.size());
  std::vector<int> picked;
  while (!covered.all()) {
    const CellSet uncovered = ~covered;
    int best = -1;
    std::size_t best_gain = 0;
    for (int v = 0; v < static_cast<int>(adj.size()); ++v) {
      const auto g = adj.row(v).intersection_count(uncovered);
      if (g > best_gain) {
        best_gain = g;
        best = v;
      }
    }
    picked.push_back(best);
    covered |= adj.row(best);
  }
  return Placement::from_indices(spec, picked);
}

inline Placement greedy_upper_bound(const BoardSpec& spec) { return greedy_upper_bound(*build_adjacency(spec)); }

// First-queen cells of the decomposition, ascending.
inline std::vector<Cell> admissible_first_queens(const BoardSpec& spec, bool use_symmetry) {
  if (use_symmetry && spec.dim() == 3) return sym::fundamental_domain(spec);
  std::vector<Cell> out;
  for (int i = 0; i < spec.cell_count(); ++i) out.push_back(spec.cell(i));
  return out;
}

enum class CertifyStatus { Infeasible, Feasible, Limit };

struct CertifyOutcome {
  CertifyStatus status = CertifyStatus::Limit;
  int budget = 0;
  bool symmetry_used = false;
  std::vector<Subproblem> subproblems;  // ascending by first queen
  std::optional<Placement> witness;     // dominating set of size <= budget when Feasible
  std::uint64_t nodes = 0;

  // A complete infeasibility record; Limit outcomes are partial and unusable.
  bool usable() const noexcept { return status == CertifyStatus::Infeasible; }
};

namespace detail {

inline CertifyOutcome certify_with(const Adjacency& adj, int budget, bool use_symmetry, Budget& stop,
                                   int threads) {
  if (budget < 0) throw InvalidArgument("budget must be >= 0");
  const auto& spec = adj.spec();
  CertifyOutcome out;
  out.budget = budget;
  out.symmetry_used = use_symmetry && spec.dim() == 3;
  const auto firsts = admissible_first_queens(spec, out.symmetry_used);
  const int count = static_cast<int>(firsts.size());
  out.subproblems.resize(firsts.size());
  std::vector<std::vector<int>> witnesses(firsts.size());
  for (int i = 0; i < count; ++i) out.subproblems[static_cast<std::size_t>(i)].first_queen = firsts[static_cast<std::size_t>(i)];

  // Subproblems are taken from the last first-queen cell backwards: later
  // first queens leave fewer allowed cells, so those searches are smaller.
  // `cutoff` is the lowest rank (position in that order) known to be
  // feasible. Higher ranks are abandoned; lower ranks always run to
  // completion, which keeps the reported witness independent of scheduling.
  std::atomic<int> cutoff{INT_MAX};
  std::atomic<int> next{0};

  auto worker = [&] {
    CoverSearch search(adj);
    for (;;) {
      const int rank = next.fetch_add(1);
      if (rank >= count) return;
      const int i = count - 1 - rank;
      auto& sp = out.subproblems[static_cast<std::size_t>(i)];
      if (rank > cutoff.load()) {
        sp.status = SubproblemStatus::Skipped;
        continue;
      }
      if (stop.exhausted()) {
        sp.status = SubproblemStatus::Limit;
        continue;
      }
      if (budget < 1) {
        sp.status = SubproblemStatus::Infeasible;
        continue;
      }
      const int first = spec.index(sp.first_queen);
      CellSet allowed(adj.size());
      for (int v = first + 1; v < static_cast<int>(adj.size()); ++v) allowed.set(static_cast<std::size_t>(v));
      auto res = search.run({first}, allowed, budget - 1, stop,
                            [&] { return rank > cutoff.load(std::memory_order_relaxed); });
      sp.status = res.status;
      sp.nodes = res.nodes;
      if (res.status == SubproblemStatus::Feasible) {
        witnesses[static_cast<std::size_t>(i)] = std::move(res.witness);
        int cur = cutoff.load();
        while (rank < cur && !cutoff.compare_exchange_weak(cur, rank)) {
        }
      }
    }
  };

  const int nthreads = std::max(1, std::min(threads, count));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }

  for (const auto& sp : out.subproblems) out.nodes += sp.nodes;
  const int hit = cutoff.load();
  if (hit != INT_MAX) {
    out.status = CertifyStatus::Feasible;
    out.witness = Placement::from_indices(spec, witnesses[static_cast<std::size_t>(count - 1 - hit)]);
    return out;
  }
  const bool all_infeasible = std::all_of(out.subproblems.begin(), out.subproblems.end(), [](const Subproblem& s) {
    return s.status == SubproblemStatus::Infeasible;
  });
  out.status = all_infeasible ? CertifyStatus::Infeasible : CertifyStatus::Limit;
  return out;
}

}  // namespace detail

// Decides whether `budget` queens can dominate the board, split by first queen.
inline CertifyOutcome certify_infeasible(const Adjacency& adj, int budget, const Limits& limits = {},
                                         bool use_symmetry = true) {
  detail::Budget stop(limits);
  return detail::certify_with(adj, budget, use_symmetry, stop, limits.threads);
}

inline CertifyOutcome certify_infeasible(const BoardSpec& spec, int budget, const Limits& limits = {},
                                         bool use_symmetry = true) {
  return certify_infeasible(*build_adjacency(spec), budget, limits, use_symmetry);
}

// max(ceil(n^d / max|N[v]|), smallest t whose t largest neighbourhoods reach n^d)
inline int counting_lower_bound(const Adjacency& adj) {
  std::vector<std::size_t> sizes;
  for (std::size_t v = 0; v < adj.size(); ++v) sizes.push_back(adj.row(static_cast<int>(v)).count());
  std::sort(sizes.rbegin(), sizes.rend());
  std::size_t sum = 0;
  int t = 0;
  while (sum < adj.size()) sum += sizes[static_cast<std::size_t>(t++)];
  return t;
}

// Lowers the incumbent one budget at a time until a budget is proved
// infeasible; the final infeasibility record becomes the certificate.
inline SolveResult solve_exact(const Adjacency& adj, const Limits& limits = {}, const SolveOptions& options = {}) {
  const auto t0 = detail::Clock::now();
  const auto& spec = adj.spec();
  detail::Budget stop(limits);
  SolveResult res;
  const bool use_sym = options.use_symmetry && spec.dim() == 3;

  Placement incumbent = greedy_upper_bound(adj);
  if (options.initial_incumbent && options.initial_incumbent->size() < incumbent.size()) {
    options.initial_incumbent->require_on(spec);
    if (adj.covered_by(*options.initial_incumbent).all()) incumbent = *options.initial_incumbent;
  }
  res.incumbent_trace.push_back(static_cast<int>(incumbent.size()));
  res.lower_bound = counting_lower_bound(adj);

  for (;;) {
    const int budget = static_cast<int>(incumbent.size()) - 1;
    auto out = detail::certify_with(adj, budget, use_sym, stop, limits.threads);
    res.nodes_explored += out.nodes;
    if (out.status == CertifyStatus::Feasible) {
      incumbent = *out.witness;
      res.incumbent_trace.push_back(static_cast<int>(incumbent.size()));
      continue;
    }
    res.witness = incumbent;
    res.value = static_cast<int>(incumbent.size());
    if (out.status == CertifyStatus::Infeasible) {
      res.status = SolveStatus::Optimal;
      res.lower_bound = res.value;
      OptimalityCertificate cert;
      cert.dim = spec.dim();
      cert.n = spec.n();
      cert.k = res.value;
      cert.witness = incumbent;
      cert.budget = budget;
      cert.symmetry_used = out.symmetry_used;
      cert.subproblems = std::move(out.subproblems);
      res.certificate = std::move(cert);
    } else {
      res.status = SolveStatus::Limit;
      res.lower_bound = std::min(res.lower_bound, res.value);
    }
    break;
  }
  res.wall_time = detail::Clock::now() - t0;
  return res;
}

inline SolveResult solve_exact(const BoardSpec& spec, const Limits& limits = {}, const SolveOptions& options = {}) {
  return solve_exact(*build_adjacency(spec), limits, options);
}

}  // namespace q3d::solver
