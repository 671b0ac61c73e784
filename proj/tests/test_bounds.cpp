#include <gtest/gtest.h>

#include <filesystem>

#include "q3d/bounds.hpp"
#include "q3d/table.hpp"
#include "q3d/verifier.hpp"

using q3d::BoardSpec;
using q3d::Cell;
using q3d::Placement;
namespace bounds = q3d::bounds;

TEST(VolumeBound, Examples) {
  EXPECT_EQ(bounds::volume_lower_bound(1), 1);
  EXPECT_EQ(bounds::volume_lower_bound(2), 1);
  EXPECT_EQ(bounds::volume_lower_bound(4), 2);
  EXPECT_EQ(bounds::volume_lower_bound(5), 3);
  EXPECT_EQ(bounds::volume_lower_bound(6), 4);
  EXPECT_EQ(bounds::volume_lower_bound(7), 5);
  EXPECT_EQ(bounds::volume_lower_bound(100), 777);
  EXPECT_THROW(bounds::volume_lower_bound(0), q3d::InvalidArgument);
}

TEST(Gamma2, SmallBoards) {
  const int expected[] = {0, 1, 1, 1, 2, 3, 3};
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(bounds::gamma2(n), expected[n]) << "n=" << n;
  EXPECT_THROW(bounds::gamma2(0), q3d::InvalidArgument);
}

TEST(Gamma2, CacheRoundTrip) {
  bounds::Gamma2Cache cache;
  EXPECT_EQ(bounds::gamma2(5, {}, &cache), 3);
  EXPECT_EQ(cache.get(5), 3);
  EXPECT_EQ(cache.to_json().dump(), R"({"format":"q2d-cache-v1","values":{"5":3}})");

  const auto path = std::filesystem::temp_directory_path() / "q3d-test-cache.json";
  cache.put(8, 5);
  cache.save(path);
  const auto back = bounds::Gamma2Cache::load(path);
  EXPECT_EQ(back.values(), cache.values());
  std::filesystem::remove(path);
  EXPECT_TRUE(bounds::Gamma2Cache::load(path).values().empty());
}

TEST(Gamma2, MalformedCache) {
  using nlohmann::json;
  EXPECT_THROW(bounds::Gamma2Cache::from_json(json::parse(R"({"values":{}})")), q3d::ParseError);
  EXPECT_THROW(bounds::Gamma2Cache::from_json(json::parse(R"({"format":"q2d-cache-v1"})")), q3d::ParseError);
  EXPECT_THROW(bounds::Gamma2Cache::from_json(json::parse(R"({"format":"q2d-cache-v1","values":{"x":1}})")),
               q3d::ParseError);
  EXPECT_THROW(bounds::Gamma2Cache::from_json(json::parse(R"({"format":"q2d-cache-v1","values":{"4":0}})")),
               q3d::ParseError);
  try {
    bounds::Gamma2Cache::from_json(json::parse(R"({"format":"q2d-cache-v1","values":{"4":"two"}})"));
    FAIL();
  } catch (const q3d::ParseError& e) {
    EXPECT_EQ(e.where(), "$.values.4");
  }
}

TEST(Projection, Examples) {
  const auto spec = BoardSpec::cube(4);
  EXPECT_EQ(bounds::project(spec, Placement{{1, 0, 3}, {1, 1, 0}, {1, 2, 0}, {1, 3, 3}}),
            (Placement{{1, 0, 0}, {1, 1, 0}, {1, 2, 0}, {1, 3, 0}}));
  EXPECT_EQ(bounds::project(spec, Placement{{2, 2, 0}, {2, 2, 3}}), (Placement{{2, 2, 0}}));
  EXPECT_THROW(bounds::project(BoardSpec::square(4), Placement{{0, 0, 0}}), q3d::InvalidArgument);
}

// A dominating set of the cube projects to a dominating set of the square.
TEST(Projection, PreservesDomination) {
  for (int n = 1; n <= 6; ++n) {
    const auto spec = BoardSpec::cube(n);
    const auto example = q3d::table::known(n)->example;
    ASSERT_TRUE(q3d::verify::is_dominating(spec, example).ok);
    EXPECT_TRUE(q3d::verify::is_dominating(BoardSpec::square(n), bounds::project(spec, example)).ok) << "n=" << n;
  }
}

TEST(Lifting, StacksLayers) {
  EXPECT_EQ(bounds::lift(2, Placement{{0, 1, 0}}), (Placement{{0, 1, 0}, {0, 1, 1}}));
  for (int n = 1; n <= 6; ++n) {
    const auto layer = q3d::solver::solve_exact(BoardSpec::square(n)).witness;
    const auto lifted = bounds::lift(n, layer);
    EXPECT_EQ(lifted.size(), layer.size() * static_cast<std::size_t>(n));
    EXPECT_TRUE(q3d::verify::is_dominating(BoardSpec::cube(n), lifted).ok) << "n=" << n;
  }
  EXPECT_THROW(bounds::lift(3, Placement{{0, 0, 1}}), q3d::InvalidArgument);
}

TEST(Report, Examples) {
  const auto r5 = bounds::bounds_report(5);
  EXPECT_EQ(r5.volume_lb, 3);
  EXPECT_EQ(r5.projection_lb, 3);
  EXPECT_EQ(r5.lifting_ub, 15);
  EXPECT_EQ(r5.best_lb, 3);
  EXPECT_EQ(r5.best_ub, 15);
  EXPECT_EQ(r5.gamma2_source, bounds::Gamma2Source::Solved);

  const auto r1 = bounds::bounds_report(1);
  EXPECT_EQ(r1.best_lb, 1);
  EXPECT_EQ(r1.best_ub, 1);

  const auto r6 = bounds::bounds_report(6);
  EXPECT_EQ(r6.volume_lb, 4);
  EXPECT_EQ(r6.projection_lb, 3);
  EXPECT_EQ(r6.best_lb, 4);
  EXPECT_EQ(r6.best_ub, 18);
}

TEST(Report, SuppliedValueIsReported) {
  bounds::Gamma2Cache cache;
  cache.put(9, 5);
  const auto r = bounds::bounds_report(9, {}, &cache);
  EXPECT_EQ(r.gamma2_source, bounds::Gamma2Source::Supplied);
  EXPECT_EQ(r.projection_lb, 5);
  EXPECT_EQ(r.lifting_ub, 45);
  EXPECT_EQ(r.best_lb, std::max<std::int64_t>(5, bounds::volume_lower_bound(9)));
}

TEST(Report, UnresolvedFallsBack) {
  q3d::solver::Limits lim;
  lim.node_limit = 1;
  const auto r = bounds::bounds_report(8, lim);
  EXPECT_EQ(r.gamma2_source, bounds::Gamma2Source::Unresolved);
  EXPECT_GE(r.best_lb, r.volume_lb);
  EXPECT_EQ(r.lifting_ub % 8, 0);
  EXPECT_LE(r.best_lb, r.best_ub);
  EXPECT_THROW(bounds::gamma2(8, lim), q3d::ResourceLimit);
}

TEST(Report, SandwichesKnownValues) {
  for (const auto& row : q3d::table::known_values()) {
    if (row.n > 6) continue;
    const auto r = bounds::bounds_report(row.n);
    EXPECT_LE(r.best_lb, row.lower) << "n=" << row.n;
    EXPECT_GE(r.best_ub, row.upper) << "n=" << row.n;
  }
}
