#pragma once

#include <cstdint>
#include <vector>

#include "dcc/clustering.hpp"
#include "dcc/graph.hpp"

namespace dcc {

/// Parameters of a planted-partition graph.
struct PlantedConfig {
  std::size_t n = 1000;
  std::size_t k = 10;
  double beta = 1.0;       // cluster-size skew, 1 gives uniform sizes
  double intra_deg = 5.0;  // expected intracluster degree
  double inter_deg = 3.0;  // expected intercluster degree
  std::uint64_t seed = 0;
};

struct ReferencePartition {
  std::vector<std::size_t> sizes;
  std::vector<std::uint32_t> assignment;  // vertex -> block, blocks are contiguous id ranges
};

struct EdgeProbabilities {
  double p_in = 0.0;
  double p_out = 0.0;
};

struct PlantedGraph {
  Graph graph;
  ReferencePartition reference;
  EdgeProbabilities probabilities;
};

/// Block sizes from the boundaries b_i = round(n (i/k)^beta). Empty blocks
/// borrow one vertex from the largest block. Throws std::invalid_argument
/// unless 1 <= k <= n and beta > 0.
std::vector<std::size_t> cluster_sizes(std::size_t n, std::size_t k, double beta);

/// p_in and p_out such that the expected intra- and intercluster degree,
/// averaged over all vertices, equal the requested values. Throws
/// std::invalid_argument if a probability would exceed 1 or a positive degree
/// cannot be realized.
EdgeProbabilities derive_probabilities(const std::vector<std::size_t>& sizes, double intra_deg,
                                       double inter_deg);

/// Samples every intracluster pair with p_in and every intercluster pair with
/// p_out, independently, by geometric skipping.
PlantedGraph generate(const PlantedConfig& cfg);

/// Same with explicit probabilities, bypassing the degree calibration.
PlantedGraph generate(const std::vector<std::size_t>& sizes, EdgeProbabilities p, std::uint64_t seed);

Clustering reference_clustering(const PlantedGraph& planted);

}  // namespace dcc
