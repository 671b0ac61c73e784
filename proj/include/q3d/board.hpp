#pragma once

// Geometry of the d-dimensional queen graph (d = 2 or 3) on [n]^d.
//
// Cells are indexed x*n^2 + y*n + z (or x*n + y in 2D), so lexicographic
// order on coordinates coincides with integer order on indices. Every
// "lex-first" rule in the library relies on that.

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "q3d/error.hpp"

namespace q3d {

struct Cell {
  int x = 0;
  int y = 0;
  int z = 0;  // always 0 on 2D boards

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline std::string to_string(const Cell& c, int dim = 3) {
  std::string s = "(" + std::to_string(c.x) + "," + std::to_string(c.y);
  if (dim == 3) s += "," + std::to_string(c.z);
  return s + ")";
}

inline std::ostream& operator<<(std::ostream& os, const Cell& c) {
  return os << to_string(c);
}

class BoardSpec {
 public:
  BoardSpec(int dim, int n) : dim_(dim), n_(n) {
    if (dim != 2 && dim != 3) throw InvalidArgument("board dimension must be 2 or 3");
    if (n < 1) throw InvalidArgument("board side must be >= 1");
  }

  static BoardSpec cube(int n) { return BoardSpec(3, n); }
  static BoardSpec square(int n) { return BoardSpec(2, n); }

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return n_; }

  std::int64_t cell_count() const noexcept {
    std::int64_t c = 1;
    for (int i = 0; i < dim_; ++i) c *= n_;
    return c;
  }

  bool contains(const Cell& c) const noexcept {
    auto in = [this](int t) { return t >= 0 && t < n_; };
    return in(c.x) && in(c.y) && (dim_ == 2 ? c.z == 0 : in(c.z));
  }

  int index(const Cell& c) const noexcept {
    return dim_ == 3 ? (c.x * n_ + c.y) * n_ + c.z : c.x * n_ + c.y;
  }

  Cell cell(int idx) const noexcept {
    if (dim_ == 3) return {idx / (n_ * n_), (idx / n_) % n_, idx % n_};
    return {idx / n_, idx % n_, 0};
  }

  void require(const Cell& c) const {
    if (!contains(c)) throw InvalidArgument("cell " + to_string(c, dim_) + " is off the board");
  }

  friend bool operator==(const BoardSpec&, const BoardSpec&) = default;

 private:
  int dim_;
  int n_;
};

// Canonical undirected line direction: entries in {-1,0,1}, first nonzero +1.
struct Direction {
  std::array<int, 3> delta{};

  int nonzeros() const noexcept {
    return (delta[0] != 0) + (delta[1] != 0) + (delta[2] != 0);
  }

  friend auto operator<=>(const Direction&, const Direction&) = default;
};

inline std::string to_string(const Direction& d, int dim = 3) {
  return to_string(Cell{d.delta[0], d.delta[1], d.delta[2]}, dim);
}

// Axis directions first, then face diagonals, then space diagonals; lex
// order inside each group. 13 directions in 3D, 4 in 2D.
inline std::vector<Direction> canonical_directions(const BoardSpec& spec) {
  std::vector<Direction> out;
  const int dim = spec.dim();
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy)
      for (int dz = -1; dz <= 1; ++dz) {
        if (dim == 2 && dz != 0) continue;
        Direction d{{dx, dy, dz}};
        const int first = dx != 0 ? dx : (dy != 0 ? dy : dz);
        if (first == 1) out.push_back(d);
      }
  std::stable_sort(out.begin(), out.end(), [](const Direction& a, const Direction& b) {
    if (a.nonzeros() != b.nonzeros()) return a.nonzeros() < b.nonzeros();
    return a < b;
  });
  return out;
}

inline bool is_canonical(const BoardSpec& spec, const Direction& u) {
  const auto dirs = canonical_directions(spec);
  return std::find(dirs.begin(), dirs.end(), u) != dirs.end();
}

// All board cells c + t*u, in increasing t; always includes c.
inline std::vector<Cell> line_through(const BoardSpec& spec, const Cell& c, const Direction& u) {
  spec.require(c);
  if (!is_canonical(spec, u)) throw InvalidArgument("direction " + to_string(u) + " is not canonical");
  auto at = [&](int t) { return Cell{c.x + t * u.delta[0], c.y + t * u.delta[1], c.z + t * u.delta[2]}; };
  int lo = 0;
  while (spec.contains(at(lo - 1))) --lo;
  std::vector<Cell> out;
  for (int t = lo; spec.contains(at(t)); ++t) out.push_back(at(t));
  return out;
}

// Dense bitset over the n^dim cells of one board.
class CellSet {
 public:
  using word_type = std::uint64_t;
  static constexpr int kWordBits = 64;

  CellSet() = default;
  explicit CellSet(std::size_t size) : size_(size), words_((size + kWordBits - 1) / kWordBits, 0) {}

  static CellSet full(std::size_t size) {
    CellSet s(size);
    s.set_all();
    return s;
  }

  std::size_t size() const noexcept { return size_; }
  std::span<const word_type> words() const noexcept { return words_; }
  std::span<word_type> words() noexcept { return words_; }

  bool test(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i) noexcept { words_[i / kWordBits] |= word_type{1} << (i % kWordBits); }
  void reset(std::size_t i) noexcept { words_[i / kWordBits] &= ~(word_type{1} << (i % kWordBits)); }

  void set_all() noexcept {
    std::fill(words_.begin(), words_.end(), ~word_type{0});
    trim();
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool all() const noexcept { return count() == size_; }
  bool none() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
  }

  // Smallest member index, or size() when empty.
  std::size_t first() const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return size_;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      word_type w = words_[k];
      while (w != 0) {
        f(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for_each([&](std::size_t i) { out.push_back(static_cast<int>(i)); });
    return out;
  }

  CellSet& operator|=(const CellSet& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  CellSet& operator&=(const CellSet& o) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  CellSet operator~() const {
    CellSet r = *this;
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }
  friend CellSet operator|(CellSet a, const CellSet& b) { return a |= b; }
  friend CellSet operator&(CellSet a, const CellSet& b) { return a &= b; }
  friend bool operator==(const CellSet&, const CellSet&) = default;

  std::size_t intersection_count(const CellSet& o) const noexcept {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k)
      c += static_cast<std::size_t>(std::popcount(words_[k] & o.words_[k]));
    return c;
  }

 private:
  void trim() noexcept {
    if (size_ % kWordBits != 0 && !words_.empty())
      words_.back() &= (word_type{1} << (size_ % kWordBits)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<word_type> words_;
};

// Sorted, duplicate-free set of cells (a candidate dominating set).
class Placement {
 public:
  Placement() = default;
  Placement(std::initializer_list<Cell> cells) : cells_(cells) { normalize(); }
  explicit Placement(std::vector<Cell> cells) : cells_(std::move(cells)) { normalize(); }

  static Placement from_indices(const BoardSpec& spec, std::span<const int> idx) {
    std::vector<Cell> cells;
    cells.reserve(idx.size());
    for (int i : idx) cells.push_back(spec.cell(i));
    return Placement(std::move(cells));
  }

  const std::vector<Cell>& cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }
  bool empty() const noexcept { return cells_.empty(); }
  auto begin() const noexcept { return cells_.begin(); }
  auto end() const noexcept { return cells_.end(); }
  const Cell& operator[](std::size_t i) const { return cells_[i]; }

  bool contains(const Cell& c) const { return std::binary_search(cells_.begin(), cells_.end(), c); }

  void require_on(const BoardSpec& spec) const {
    for (const auto& c : cells_) spec.require(c);
  }

  friend auto operator<=>(const Placement&, const Placement&) = default;

 private:
  void normalize() {
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  }

  std::vector<Cell> cells_;
};

inline std::string to_string(const Placement& p, int dim = 3) {
  std::string s = "{";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i], dim);
  return s + "}";
}

inline CellSet closed_neighbourhood(const BoardSpec& spec, const Cell& c) {
  spec.require(c);
  CellSet s(static_cast<std::size_t>(spec.cell_count()));
  for (const auto& u : canonical_directions(spec))
    for (const auto& w : line_through(spec, c, u)) s.set(static_cast<std::size_t>(spec.index(w)));
  return s;
}

// Default cap on n^dim for adjacency construction (n <= 32 in 3D).
inline constexpr std::int64_t kDefaultMaxCells = 32 * 32 * 32;

// Row v holds N[v]. Built once per board, shared read-only afterwards.
class Adjacency {
 public:
  const BoardSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return rows_.size(); }
  const CellSet& row(int idx) const { return rows_[static_cast<std::size_t>(idx)]; }
  const CellSet& row(const Cell& c) const { return row(spec_.index(c)); }

  std::size_t max_row_size() const {
    std::size_t best = 0;
    for (const auto& r : rows_) best = std::max(best, r.count());
    return best;
  }

  // Union of N[q] over the placement.
  CellSet covered_by(const Placement& p) const {
    CellSet s(rows_.size());
    for (const auto& q : p) s |= row(q);
    return s;
  }

 private:
  friend std::shared_ptr<const Adjacency> build_adjacency(const BoardSpec&, std::int64_t);
  explicit Adjacency(const BoardSpec& spec) : spec_(spec) {}

  BoardSpec spec_;
  std::vector<CellSet> rows_;
};

// Walks the lines through every cell (O(n^{dim+1}) work).
inline std::shared_ptr<const Adjacency> build_adjacency(const BoardSpec& spec,
                                                        std::int64_t max_cells = kDefaultMaxCells) {
  const std::int64_t cells = spec.cell_count();
  if (cells > max_cells)
    throw ResourceLimit("board has " + std::to_string(cells) + " cells; adjacency cap is " +
                        std::to_string(max_cells));
  std::shared_ptr<Adjacency> adj(new Adjacency(spec));
  adj->rows_.reserve(static_cast<std::size_t>(cells));
  for (int v = 0; v < cells; ++v) adj->rows_.push_back(closed_neighbourhood(spec, spec.cell(v)));
  return adj;
}

}  // namespace q3d
