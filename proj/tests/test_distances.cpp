#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dcc/distances.hpp"
#include "oracle.hpp"

using namespace dcc;

namespace {

const oracle::SimpleGraph kPath4(4, {{0, 1}, {1, 2}, {2, 3}});

Clustering from(const Graph& g, std::vector<std::uint64_t> l) { return Clustering::from_labels(g, l); }

// Editing set as explicit pairs, built from the adjacency matrix.
std::set<oracle::Edge> editing_pairs(const oracle::SimpleGraph& g, const std::vector<std::uint64_t>& l) {
  std::set<oracle::Edge> out;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v)
      if ((l[u] == l[v]) != static_cast<bool>(g.adj[u][v])) out.emplace(u, v);
  return out;
}

double esd_oracle(const oracle::SimpleGraph& g, const std::vector<std::uint64_t>& a,
                  const std::vector<std::uint64_t>& b) {
  const auto fa = editing_pairs(g, a), fb = editing_pairs(g, b);
  std::size_t common = 0;
  for (const auto& p : fa) common += fb.count(p);
  const std::size_t united = fa.size() + fb.size() - common;
  return united == 0 ? 0.0 : 1.0 - static_cast<double>(common) / static_cast<double>(united);
}

double rand_oracle(const oracle::SimpleGraph& g, const std::vector<std::uint64_t>& a,
                   const std::vector<std::uint64_t>& b) {
  int agree = 0;
  for (auto [u, v] : g.edges) agree += (a[u] == a[v]) == (b[u] == b[v]);
  return 1.0 - static_cast<double>(agree) / static_cast<double>(g.edges.size());
}

}  // namespace

TEST(RandIndex, PathExamples) {
  const Graph g = kPath4.to_graph();
  const auto a = from(g, {0, 0, 1, 1});
  const auto b = from(g, {0, 0, 0, 1});
  EXPECT_DOUBLE_EQ(rand_index_graph(g, a, a), 0.0);
  EXPECT_NEAR(rand_index_graph(g, a, b), 2.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(rand_index_graph(g, from(g, {0, 0, 0, 0}), Clustering::singletons(g)), 1.0);
}

TEST(RandIndex, ErrorsAndIsolatedVertices) {
  const Graph empty = Graph::from_edges(3, {});
  EXPECT_THROW(rand_index_graph(empty, Clustering::singletons(empty), Clustering::singletons(empty)),
               std::invalid_argument);
  // vertex 4 is isolated; where it sits does not change the edge classification
  const std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {2, 3}};
  const Graph g = Graph::from_edges(5, e);
  EXPECT_DOUBLE_EQ(rand_index_graph(g, from(g, {0, 0, 1, 1, 0}), from(g, {0, 0, 1, 1, 2})), 0.0);
}

TEST(EditingSet, PathExamples) {
  const Graph g = kPath4.to_graph();
  const auto a = editing_set(g, from(g, {0, 0, 1, 1}));
  EXPECT_EQ(a.removals, (std::vector<std::pair<Vertex, Vertex>>{{1, 2}}));
  EXPECT_TRUE(a.insertions.empty());
  const auto b = editing_set(g, from(g, {0, 0, 0, 1}));
  EXPECT_EQ(b.removals, (std::vector<std::pair<Vertex, Vertex>>{{2, 3}}));
  EXPECT_EQ(b.insertions, (std::vector<std::pair<Vertex, Vertex>>{{0, 2}}));
  EXPECT_THROW(editing_set(g, from(g, {0, 0, 0, 0}), 2), std::length_error);
}

TEST(EditingSet, CliquesNeedNoEdits) {
  const oracle::SimpleGraph sg(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}});
  const Graph g = sg.to_graph();
  const auto c = from(g, {0, 0, 0, 1, 1, 2});
  EXPECT_EQ(editing_set(g, c).size(), 0u);
  EXPECT_EQ(editing_set_size(g, c), 0u);
}

TEST(Esd, PathExamples) {
  const Graph g = kPath4.to_graph();
  const auto a = from(g, {0, 0, 1, 1});
  const auto b = from(g, {0, 0, 0, 1});
  EXPECT_DOUBLE_EQ(esd(g, a, a), 0.0);
  EXPECT_DOUBLE_EQ(esd(g, a, b), 1.0);

  const oracle::SimpleGraph cliques(5, {{0, 1}, {2, 3}, {2, 4}, {3, 4}});
  const Graph h = cliques.to_graph();
  EXPECT_DOUBLE_EQ(esd(h, from(h, {0, 0, 1, 1, 1}), from(h, {0, 0, 1, 1, 1})), 0.0);
}

TEST(Distances, MatchOraclesAndAreSymmetric) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 10);
    const auto sg = oracle::random_graph(n, 0.35, rng);
    if (sg.edges.empty()) continue;
    const Graph g = sg.to_graph();
    std::vector<std::uint64_t> la(n), lb(n);
    for (auto& x : la) x = rng() % 4;
    for (auto& x : lb) x = rng() % 3;
    const auto a = Clustering::from_labels(g, la), b = Clustering::from_labels(g, lb);
    const double r = rand_index_graph(g, a, b);
    const double d = esd(g, a, b);
    EXPECT_NEAR(r, rand_oracle(sg, la, lb), 1e-15);
    EXPECT_NEAR(d, esd_oracle(sg, la, lb), 1e-15);
    EXPECT_DOUBLE_EQ(r, rand_index_graph(g, b, a));
    EXPECT_DOUBLE_EQ(d, esd(g, b, a));
    EXPECT_GE(r, 0.0);
    EXPECT_LE(r, 1.0);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, 1.0);
    EXPECT_EQ(editing_set(g, a).size(), editing_pairs(sg, la).size());
  }
}
