#include "sandpile/errors.hpp"
#include "sandpile/graphs.hpp"
#include "sandpile/json.hpp"
#include "sandpile/smith.hpp"

#include <gtest/gtest.h>

using namespace sandpile;

namespace {

Digraph db(std::int64_t n, std::int64_t d) { return build_graph({Family::DeBruijn, n, d}); }
Digraph kautz(std::int64_t n, std::int64_t d) { return build_graph({Family::Kautz, n, d}); }

}  // namespace

TEST(BuildGraph, DeBruijnThreeTwo) {
  const Digraph g = db(3, 2);
  // 0 -> {0,1}, 1 -> {2,0}, 2 -> {1,2}
  const std::vector<std::uint64_t> expected{1, 1, 0, 1, 0, 1, 0, 1, 1};
  EXPECT_EQ(g.adjacency(), expected);
}

TEST(BuildGraph, DegreeOneIsLoops) {
  const Digraph g = db(5, 1);
  for (std::size_t v = 0; v < 5; ++v)
    for (std::size_t w = 0; w < 5; ++w) EXPECT_EQ(g.edges(v, w), v == w ? 1u : 0u);
}

TEST(BuildGraph, KautzThreeTwo) {
  const Digraph g = kautz(3, 2);
  for (std::size_t v = 0; v < 3; ++v) {
    EXPECT_EQ(g.edges(v, v), 0u);
    EXPECT_EQ(g.edges(v, (v + 1) % 3), 1u);
    EXPECT_EQ(g.edges(v, (v + 2) % 3), 1u);
  }
}

TEST(BuildGraph, MultiplicitiesWhenDegreeExceedsSize) {
  EXPECT_EQ(db(1, 4).edges(0, 0), 4u);
  const Digraph g = db(2, 5);
  EXPECT_EQ(g.out_degree(0), 5u);
  EXPECT_EQ(g.edges(0, 0) + g.edges(0, 1), 5u);
}

TEST(Laplacian, Examples) {
  EXPECT_EQ(laplacian(db(3, 2)), (IntegerMatrix{{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}}));
  Digraph loop(1);
  loop.add_edge(0, 0);
  EXPECT_EQ(laplacian(loop), (IntegerMatrix{{0}}));
  EXPECT_EQ(laplacian(kautz(3, 2)), (IntegerMatrix{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
}

TEST(ReducedLaplacian, Examples) {
  EXPECT_EQ(reduced_laplacian(db(3, 2), 0), (IntegerMatrix{{2, -1}, {-1, 1}}));
  EXPECT_EQ(reduced_laplacian(kautz(3, 2), 0), (IntegerMatrix{{2, -1}, {-1, 2}}));
  EXPECT_EQ(reduced_laplacian(db(4, 3), 0), (IntegerMatrix{{2, 0, -1}, {0, 2, -1}, {-1, -1, 2}}));
  EXPECT_THROW(reduced_laplacian(db(1, 2), 0), EmptyMatrixError);
  EXPECT_THROW(reduced_laplacian(db(3, 2), 3), std::out_of_range);
}

TEST(SpanningTrees, Examples) {
  EXPECT_EQ(spanning_tree_count(db(3, 2), 0), 1);
  EXPECT_EQ(spanning_tree_count(kautz(3, 2), 0), 3);
  EXPECT_EQ(spanning_tree_count(db(4, 3), 0), 4);
  // Classical DB(8,2): 2^(2^3 - 3 - 1) = 16 trees.
  EXPECT_EQ(spanning_tree_count(db(8, 2), 0), 16);
  EXPECT_THROW(spanning_tree_count(db(1, 3), 0), EmptyMatrixError);
}

TEST(SandpileSnf, Examples) {
  EXPECT_EQ(sandpile_group_snf(db(4, 3), 0), canonicalize({4}));
  EXPECT_EQ(sandpile_group_snf(db(3, 2), 0), AbelianGroup::trivial());
  EXPECT_EQ(sandpile_group_snf(db(4, 2), 0), canonicalize({2}));
}

TEST(CriticalSnf, Examples) {
  EXPECT_EQ(critical_group_snf(db(4, 3)), canonicalize({4}));
  EXPECT_EQ(critical_group_snf(db(2, 2)), AbelianGroup::trivial());
  EXPECT_EQ(critical_group_snf(kautz(3, 2)), canonicalize({3}));
}

TEST(Eulerian, Examples) {
  EXPECT_TRUE(is_eulerian(db(7, 3)));
  Digraph g(2);
  g.add_edge(0, 1);
  g.add_edge(1, 1);
  EXPECT_FALSE(is_eulerian(g));
  EXPECT_TRUE(is_eulerian(kautz(5, 2)));
}

TEST(GraphProperties, RegularEulerianAndRootIndependent) {
  for (auto family : {Family::DeBruijn, Family::Kautz})
    for (std::int64_t n = 2; n <= 20; ++n)
      for (std::int64_t d = 2; d <= 5; ++d) {
        const Digraph g = build_graph({family, n, d});
        ASSERT_TRUE(is_eulerian(g));
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
          EXPECT_EQ(g.out_degree(v), static_cast<std::uint64_t>(d));
          EXPECT_EQ(g.in_degree(v), static_cast<std::uint64_t>(d));
        }
        const AbelianGroup base = sandpile_group_snf(g, 0);
        EXPECT_EQ(critical_group_snf(g), base) << to_string(family) << "(" << n << "," << d << ")";
        for (std::size_t r = 0; r < g.vertex_count(); ++r) {
          EXPECT_EQ(sandpile_group_snf(g, r), base);
          EXPECT_EQ(spanning_tree_count(g, r), order(base));
        }
      }
}

TEST(GraphJson, ExportsAdjacency) {
  const GraphSpec spec{Family::DeBruijn, 3, 2};
  const auto j = digraph_to_json(spec, build_graph(spec));
  EXPECT_EQ(j["family"], "db");
  EXPECT_EQ(j["adjacency"][1], (nlohmann::json{1, 0, 1}));
}

TEST(Family, Parsing) {
  EXPECT_EQ(parse_family("DB"), Family::DeBruijn);
  EXPECT_EQ(parse_family("kautz"), Family::Kautz);
  EXPECT_THROW(parse_family("petersen"), std::invalid_argument);
}
