#include <gtest/gtest.h>

#include <numeric>

#include "dcc/generators.hpp"
#include "dcc/measures.hpp"

using namespace dcc;

TEST(ClusterSizes, UniformSkewedAndForced) {
  EXPECT_EQ(cluster_sizes(100, 10, 1.0), std::vector<std::size_t>(10, 10));
  EXPECT_EQ(cluster_sizes(100, 4, 2.0), (std::vector<std::size_t>{6, 19, 31, 44}));
  EXPECT_EQ(cluster_sizes(10, 10, 0.3), std::vector<std::size_t>(10, 1));
  EXPECT_EQ(cluster_sizes(10, 10, 3.0), std::vector<std::size_t>(10, 1));
  EXPECT_THROW(cluster_sizes(5, 6, 1.0), std::invalid_argument);
  EXPECT_THROW(cluster_sizes(5, 2, 0.0), std::invalid_argument);
}

TEST(ClusterSizes, AlwaysPositiveAndSumToN) {
  for (std::size_t n : {7u, 50u, 333u, 1000u}) {
    for (std::size_t k : {1u, 3u, 7u}) {
      for (double beta : {0.3, 1.0, 2.0, 5.0}) {
        const auto s = cluster_sizes(n, k, beta);
        ASSERT_EQ(s.size(), k);
        EXPECT_EQ(std::accumulate(s.begin(), s.end(), std::size_t{0}), n);
        for (auto x : s) EXPECT_GE(x, 1u);
        if (beta == 1.0) {
          const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
          EXPECT_LE(*hi - *lo, 1u);
        }
      }
    }
  }
}

TEST(Probabilities, ClosedForm) {
  const auto p = derive_probabilities(std::vector<std::size_t>(10, 100), 5.0, 3.0);
  EXPECT_NEAR(p.p_in, 5.0 / 99.0, 1e-15);
  EXPECT_NEAR(p.p_out, 1.0 / 300.0, 1e-15);
  EXPECT_THROW(derive_probabilities(std::vector<std::size_t>(5, 1), 1.0, 1.0), std::invalid_argument);
  EXPECT_EQ(derive_probabilities(std::vector<std::size_t>(5, 1), 0.0, 1.0).p_in, 0.0);
  EXPECT_THROW(derive_probabilities({2, 2}, 5.0, 0.0), std::invalid_argument);
}

TEST(Probabilities, ExpectedDegreesByPairCounting) {
  const std::vector<std::size_t> sizes{2, 3, 5};
  const auto p = derive_probabilities(sizes, 1.5, 2.0);
  // expected degree sum over all vertices divided by n, counting every pair
  double intra = 0.0, inter = 0.0;
  const std::size_t n = 10;
  std::vector<int> block;
  for (std::size_t b = 0; b < sizes.size(); ++b) block.insert(block.end(), sizes[b], static_cast<int>(b));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v) (block[u] == block[v] ? intra : inter) += (block[u] == block[v] ? p.p_in : p.p_out);
  EXPECT_NEAR(intra / n, 1.5, 1e-12);
  EXPECT_NEAR(inter / n, 2.0, 1e-12);
}

TEST(Generate, ExtremeProbabilities) {
  const std::vector<std::size_t> sizes{3, 4};
  const auto cliques = generate(sizes, EdgeProbabilities{1.0, 0.0}, 1);
  EXPECT_EQ(cliques.graph.total_edge_weight(), 3 + 6);
  const auto ref = reference_clustering(cliques);
  EXPECT_DOUBLE_EQ(eval(Measure::gid, cliques.graph, ref), 1.0);
  EXPECT_DOUBLE_EQ(eval(Measure::nxe, cliques.graph, ref), 0.0);

  const auto empty = generate(sizes, EdgeProbabilities{0.0, 0.0}, 1);
  EXPECT_EQ(empty.graph.total_edge_weight(), 0);
  const auto full = generate(sizes, EdgeProbabilities{1.0, 1.0}, 1);
  EXPECT_EQ(full.graph.total_edge_weight(), 21);
}

TEST(Generate, DeterministicPerSeed) {
  PlantedConfig cfg;
  cfg.n = 300;
  cfg.k = 5;
  cfg.seed = 9;
  EXPECT_EQ(generate(cfg).graph.edge_list(), generate(cfg).graph.edge_list());
  cfg.seed = 10;
  const auto other = generate(cfg);
  cfg.seed = 9;
  EXPECT_NE(other.graph.edge_list(), generate(cfg).graph.edge_list());
}

TEST(Generate, RealizedDegreesAndDensityCalibrated) {
  PlantedConfig cfg;  // n = 1000, k = 10, beta = 1, degrees 5 / 3
  double intra_sum = 0.0, inter_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    cfg.seed = seed;
    const auto pg = generate(cfg);
    const auto ref = reference_clustering(pg);
    const double nxe = eval(Measure::nxe, pg.graph, ref);
    const double m = static_cast<double>(pg.graph.total_edge_weight());
    intra_sum += 2.0 * (m - nxe) / 1000.0;
    inter_sum += 2.0 * nxe / 1000.0;
    EXPECT_NEAR(eval(Measure::gid, pg.graph, ref), pg.probabilities.p_in, 0.1 * pg.probabilities.p_in);
  }
  EXPECT_NEAR(intra_sum / 10.0, 5.0, 0.5);
  EXPECT_NEAR(inter_sum / 10.0, 3.0, 0.5);
}

TEST(Generate, PairsUniformlyCovered) {
  // with p = 1/2 every pair of a small block should appear in roughly half the seeds
  const std::vector<std::size_t> sizes{6, 5};
  std::vector<int> hits(11 * 11, 0);
  const int runs = 2000;
  for (int seed = 0; seed < runs; ++seed) {
    const auto pg = generate(sizes, EdgeProbabilities{0.5, 0.5}, static_cast<std::uint64_t>(seed));
    for (auto [u, v] : pg.graph.edge_list()) ++hits[u * 11 + v];
  }
  for (int u = 0; u < 11; ++u)
    for (int v = u + 1; v < 11; ++v) EXPECT_NEAR(hits[u * 11 + v] / double(runs), 0.5, 0.06) << u << "," << v;
}
