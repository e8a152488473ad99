#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "repising/graph.hpp"

using namespace repising;

TEST(Graph, BuilderCounts) {
  EXPECT_EQ(build_path(5).edge_count(), 4u);
  EXPECT_EQ(build_grid(3, 4).edge_count(), 17u);
  EXPECT_EQ(build_complete(9).edge_count(), 36u);
  const Graph ladder = build_ladder(13);
  EXPECT_EQ(ladder.vertex_count(), 26u);
  EXPECT_EQ(ladder.edge_count(), 37u);
  EXPECT_EQ(build_path(1).edge_count(), 0u);
}

TEST(Graph, LadderIndexing) {
  const Graph g = build_ladder(4);
  EXPECT_TRUE(g.has_edge(0, 1)); // rung 0
  EXPECT_TRUE(g.has_edge(0, 2)); // top chain
  EXPECT_TRUE(g.has_edge(1, 3)); // bottom chain
  EXPECT_FALSE(g.has_edge(0, 3));
  EXPECT_EQ(g.max_degree(), 3u);
  EXPECT_EQ(g.min_degree(), 2u);
}

TEST(Graph, RejectsBadEdges) {
  EXPECT_THROW(Graph(3, {Edge(0, 0)}), std::invalid_argument);
  EXPECT_THROW(Graph(3, {Edge(0, 1), Edge(1, 0)}), std::invalid_argument);
  EXPECT_THROW(Graph(3, {Edge(0, 3)}), std::invalid_argument);
}

TEST(Graph, EdgeRankIsSortedPosition) {
  const Graph g(4, {Edge(2, 3), Edge(0, 1), Edge(1, 2)});
  EXPECT_EQ(g.edge_rank(0, 1), 0u);
  EXPECT_EQ(g.edge_rank(2, 1), 1u);
  EXPECT_EQ(g.edge_rank(3, 2), 2u);
  EXPECT_FALSE(g.edge_rank(0, 3).has_value());
}

TEST(Product, TwoPathsMakeASquare) {
  const Graph sq = cartesian_product(build_path(2), build_path(2));
  EXPECT_EQ(sq.vertex_count(), 4u);
  EXPECT_EQ(sq.edge_count(), 4u);
  for (Vertex v = 0; v < 4; ++v)
    EXPECT_EQ(sq.degree(v), 2u);
  EXPECT_TRUE(sq.is_connected());
}

TEST(Product, LadderTimesGridEdgeCount) {
  // |E| = |V_G||E_F| + |E_G||V_F| = 26·12 + 37·9
  const Graph p = cartesian_product(build_ladder(13), build_grid(3, 3));
  EXPECT_EQ(p.vertex_count(), 234u);
  EXPECT_EQ(p.edge_count(), 645u);
}

// A(G □ F) = A_G ⊗ I + I ⊗ A_F with index i·|F| + k.
TEST(Product, KroneckerOracle) {
  const std::vector<std::pair<Graph, Graph>> cases{
      {build_ladder(3), build_grid(2, 2)},
      {build_complete(4), build_path(3)},
      {build_path(1), build_complete(3)},
      {build_grid(2, 3), build_path(2)}};
  for (const auto &[g, f] : cases) {
    const std::size_t n = g.vertex_count(), k = f.vertex_count();
    const auto ag = adjacency_matrix(g), af = adjacency_matrix(f);
    const auto ap = adjacency_matrix(cartesian_product(g, f));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t b = 0; b < k; ++b) {
            const int expect = (ag[i * n + j] && a == b) +
                               (i == j && af[a * k + b]);
            EXPECT_EQ(ap[(i * k + a) * n * k + j * k + b], expect);
          }
  }
}

TEST(Product, CommutesUpToRelabeling) {
  const Graph g = build_ladder(3), f = build_grid(2, 2);
  const Graph gf = cartesian_product(g, f), fg = cartesian_product(f, g);
  const std::size_t n = g.vertex_count(), k = f.vertex_count();
  ASSERT_EQ(gf.edge_count(), fg.edge_count());
  for (const Edge &e : gf.edges()) {
    auto swap_index = [&](Vertex v) { return (v % k) * n + v / k; };
    EXPECT_TRUE(fg.has_edge(swap_index(e.u), swap_index(e.v)));
  }
  EXPECT_EQ(degree_sequence(gf), degree_sequence(fg));
}

TEST(Product, DegreeSumRule) {
  std::mt19937_64 rng(7);
  const std::vector<Graph> pool{build_path(4), build_grid(2, 3),
                                build_complete(5), build_ladder(4)};
  for (const Graph &g : pool)
    for (const Graph &f : pool) {
      const Graph p = cartesian_product(g, f);
      const std::size_t k = f.vertex_count();
      for (Vertex v = 0; v < p.vertex_count(); ++v)
        EXPECT_EQ(p.degree(v), g.degree(v / k) + f.degree(v % k));
      const auto ds = degree_sequence(p);
      EXPECT_EQ(std::accumulate(ds.begin(), ds.end(), std::size_t{0}),
                2 * p.edge_count());
    }
}
