#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "q3d/board.hpp"

using q3d::BoardSpec;
using q3d::Cell;
using q3d::Direction;

TEST(BoardSpec, RejectsBadShapes) {
  EXPECT_THROW(BoardSpec(4, 3), q3d::InvalidArgument);
  EXPECT_THROW(BoardSpec(3, 0), q3d::InvalidArgument);
  EXPECT_EQ(BoardSpec::cube(5).cell_count(), 125);
  EXPECT_EQ(BoardSpec::square(5).cell_count(), 25);
}

TEST(BoardSpec, IndexOrderIsLexOrder) {
  for (int dim : {2, 3}) {
    const BoardSpec spec(dim, 4);
    for (int i = 0; i + 1 < spec.cell_count(); ++i) {
      EXPECT_LT(spec.cell(i), spec.cell(i + 1));
      EXPECT_EQ(spec.index(spec.cell(i)), i);
    }
  }
}

TEST(Directions, ThirteenInThreeDimensions) {
  const auto dirs = q3d::canonical_directions(BoardSpec::cube(3));
  ASSERT_EQ(dirs.size(), 13u);
  const std::vector<std::array<int, 3>> expected{
      {0, 0, 1},  {0, 1, 0},  {1, 0, 0},                                            // axes
      {0, 1, -1}, {0, 1, 1},  {1, -1, 0}, {1, 0, -1}, {1, 0, 1}, {1, 1, 0},         // face diagonals
      {1, -1, -1}, {1, -1, 1}, {1, 1, -1}, {1, 1, 1}};                              // space diagonals
  for (std::size_t i = 0; i < dirs.size(); ++i) EXPECT_EQ(dirs[i].delta, expected[i]) << i;
  int by_support[4] = {0, 0, 0, 0};
  for (const auto& d : dirs) ++by_support[d.nonzeros()];
  EXPECT_EQ(by_support[1], 3);
  EXPECT_EQ(by_support[2], 6);
  EXPECT_EQ(by_support[3], 4);
  EXPECT_NE(std::find(dirs.begin(), dirs.end(), Direction{{1, 1, -1}}), dirs.end());
  EXPECT_EQ(std::find(dirs.begin(), dirs.end(), Direction{{-1, -1, 1}}), dirs.end());
}

TEST(Directions, FourInTwoDimensions) {
  EXPECT_EQ(q3d::canonical_directions(BoardSpec::square(5)).size(), 4u);
}

TEST(LineThrough, Examples) {
  const auto spec4 = BoardSpec::cube(4);
  EXPECT_EQ(q3d::line_through(spec4, {0, 0, 0}, {{1, 1, 1}}),
            (std::vector<Cell>{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {3, 3, 3}}));
  const auto spec5 = BoardSpec::cube(5);
  EXPECT_EQ(q3d::line_through(spec5, {0, 0, 2}, {{1, 1, 0}}),
            (std::vector<Cell>{{0, 0, 2}, {1, 1, 2}, {2, 2, 2}, {3, 3, 2}, {4, 4, 2}}));
  const auto spec1 = BoardSpec::cube(1);
  for (const auto& u : q3d::canonical_directions(spec1))
    EXPECT_EQ(q3d::line_through(spec1, {0, 0, 0}, u), (std::vector<Cell>{{0, 0, 0}}));
}

TEST(LineThrough, RejectsNonCanonicalDirection) {
  EXPECT_THROW(q3d::line_through(BoardSpec::cube(4), {0, 0, 0}, {{-1, 0, 0}}), q3d::InvalidArgument);
  EXPECT_THROW(q3d::line_through(BoardSpec::square(4), {0, 0, 0}, {{1, 1, 1}}), q3d::InvalidArgument);
  EXPECT_THROW(q3d::line_through(BoardSpec::cube(4), {4, 0, 0}, {{1, 0, 0}}), q3d::InvalidArgument);
}

TEST(LineThrough, LinesMeetOnlyAtTheirCommonCell) {
  for (int n = 1; n <= 6; ++n) {
    const auto spec = BoardSpec::cube(n);
    const auto dirs = q3d::canonical_directions(spec);
    for (const auto& c : oracle::all_cells(spec)) {
      std::vector<std::vector<Cell>> lines;
      for (const auto& u : dirs) {
        auto line = q3d::line_through(spec, c, u);
        EXPECT_TRUE(std::is_sorted(line.begin(), line.end()) ||
                    std::is_sorted(line.rbegin(), line.rend()));
        EXPECT_NE(std::find(line.begin(), line.end(), c), line.end());
        lines.push_back(std::move(line));
      }
      for (std::size_t i = 0; i < lines.size(); ++i)
        for (std::size_t j = i + 1; j < lines.size(); ++j)
          for (const auto& w : lines[i])
            if (w != c) {
              EXPECT_EQ(std::find(lines[j].begin(), lines[j].end(), w), lines[j].end());
            }
    }
  }
}

TEST(ClosedNeighbourhood, Examples) {
  EXPECT_EQ(q3d::closed_neighbourhood(BoardSpec::cube(5), {2, 2, 2}).count(), 53u);
  EXPECT_EQ(q3d::closed_neighbourhood(BoardSpec::cube(4), {0, 0, 0}).count(), 22u);
  const auto spec2 = BoardSpec::cube(2);
  for (const auto& c : oracle::all_cells(spec2)) EXPECT_EQ(q3d::closed_neighbourhood(spec2, c).count(), 8u);
}

// 13n-12 is attained only when some cell sits on 13 full-length lines, i.e.
// at the centre of an odd board. On even boards the central cells reach 13n-18.
TEST(ClosedNeighbourhood, MaximumSizeByParity) {
  for (int n = 2; n <= 8; ++n) {
    const auto spec = BoardSpec::cube(n);
    const auto adj = q3d::build_adjacency(spec);
    const auto expected = static_cast<std::size_t>(n % 2 == 1 ? 13 * n - 12 : 13 * n - 18);
    EXPECT_EQ(adj->max_row_size(), expected) << "n=" << n;
    EXPECT_LE(adj->max_row_size(), static_cast<std::size_t>(13 * n - 12));
    const int lo = (n - 1) / 2;
    const int hi = n / 2;
    for (int x : {lo, hi})
      for (int y : {lo, hi})
        for (int z : {lo, hi}) EXPECT_EQ(adj->row(Cell{x, y, z}).count(), expected) << "n=" << n;
  }
}

TEST(Adjacency, Examples) {
  const auto adj3 = q3d::build_adjacency(BoardSpec::cube(3));
  EXPECT_EQ(adj3->row(Cell{1, 1, 1}).count(), 27u);
  const auto adj4 = q3d::build_adjacency(BoardSpec::cube(4));
  const auto& spec4 = adj4->spec();
  EXPECT_TRUE(adj4->row(Cell{0, 0, 0}).test(spec4.index({2, 2, 2})));
  EXPECT_FALSE(adj4->row(Cell{0, 0, 0}).test(spec4.index({1, 2, 0})));
}

TEST(Adjacency, ReflexiveSymmetricAndMatchesBruteForce) {
  for (int dim : {2, 3})
    for (int n = 1; n <= 6; ++n) {
      const BoardSpec spec(dim, n);
      const auto adj = q3d::build_adjacency(spec);
      const auto cells = oracle::all_cells(spec);
      for (std::size_t v = 0; v < cells.size(); ++v) {
        const auto& row = adj->row(static_cast<int>(v));
        EXPECT_TRUE(row.test(v));
        for (std::size_t w = 0; w < cells.size(); ++w) {
          EXPECT_EQ(row.test(w), adj->row(static_cast<int>(w)).test(v));
          EXPECT_EQ(row.test(w), oracle::dominates(spec, cells[v], cells[w]));
        }
      }
    }
}

TEST(Adjacency, RowsEqualClosedNeighbourhoods) {
  const auto spec = BoardSpec::cube(5);
  const auto adj = q3d::build_adjacency(spec);
  for (int v = 0; v < spec.cell_count(); ++v) EXPECT_EQ(adj->row(v), q3d::closed_neighbourhood(spec, spec.cell(v)));
}

TEST(Adjacency, EnforcesCellCap) {
  EXPECT_THROW(q3d::build_adjacency(BoardSpec::cube(33)), q3d::ResourceLimit);
  EXPECT_THROW(q3d::build_adjacency(BoardSpec::cube(5), 100), q3d::ResourceLimit);
  EXPECT_NO_THROW(q3d::build_adjacency(BoardSpec::cube(5), 125));
}

TEST(CellSet, BasicOperations) {
  q3d::CellSet a(70);
  a.set(0);
  a.set(65);
  EXPECT_EQ(a.count(), 2u);
  EXPECT_EQ(a.first(), 0u);
  const auto na = ~a;
  EXPECT_EQ(na.count(), 68u);  // complement stays inside the 70 cells
  EXPECT_EQ((a | na).count(), 70u);
  EXPECT_TRUE((a & na).none());
  EXPECT_TRUE(q3d::CellSet::full(70).all());
  EXPECT_EQ(a.members(), (std::vector<int>{0, 65}));
  a.reset(0);
  EXPECT_EQ(a.first(), 65u);
  EXPECT_EQ(q3d::CellSet(10).first(), 10u);
}

TEST(Placement, SortedAndDuplicateFree) {
  const q3d::Placement p{{2, 2, 0}, {0, 1, 0}, {2, 2, 0}};
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], (Cell{0, 1, 0}));
  EXPECT_TRUE(p.contains({2, 2, 0}));
}
