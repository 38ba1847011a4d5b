#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dcc/clustering.hpp"
#include "dcc/graph.hpp"

namespace dcc {

/// Edits that turn every cluster into a clique and remove all edges between
/// clusters. Pairs are stored with u < v, sorted.
struct EditingSet {
  std::vector<std::pair<Vertex, Vertex>> removals;   // existing intercluster edges
  std::vector<std::pair<Vertex, Vertex>> insertions;  // missing intracluster pairs

  std::size_t size() const { return removals.size() + insertions.size(); }
};

/// |F_C| = nxe + sum over clusters of (C(n_C, 2) - m_C), without materializing.
std::uint64_t editing_set_size(const Graph& g, const Clustering& c);

/// Materializes the editing set. Throws std::length_error if it would hold
/// more than `limit` pairs.
EditingSet editing_set(const Graph& g, const Clustering& c, std::size_t limit = 50'000'000);

/// Graph-based Rand index 1 - (e11 + e00) / m, where e11 (e00) counts edges
/// that are intracluster (intercluster) in both clusterings. Throws
/// std::invalid_argument for m = 0 and for clusterings of other graphs.
double rand_index_graph(const Graph& g, const Clustering& a, const Clustering& b);

/// Editing set difference 1 - |F_a n F_b| / |F_a u F_b|, computed from
/// counts in O(n + m); 0 if both editing sets are empty.
double esd(const Graph& g, const Clustering& a, const Clustering& b);

}  // namespace dcc
