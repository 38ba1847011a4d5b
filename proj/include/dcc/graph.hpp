#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace dcc {

using Vertex = std::uint32_t;
using Weight = std::int64_t;

struct Neighbor {
  Vertex target;
  Weight weight;
};

/// Undirected graph with integer vertex, edge and self-loop weights.
///
/// An input graph has unit weights everywhere and no self-loops. A contracted
/// graph uses vertex weights for the number of original vertices a
/// super-vertex stands for, and self-loop weights for the original edges that
/// were collapsed into it, so that every count refers to the original graph.
///
/// Adjacency is stored in compressed form, sorted by target, with no parallel
/// entries and no self-edges. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Builds an unweighted simple graph. Throws std::invalid_argument on
  /// self-edges, duplicate edges (in either orientation) or out-of-range ids.
  static Graph from_edges(std::size_t vertex_count,
                          std::span<const std::pair<Vertex, Vertex>> edges);

  /// Builds a weighted graph from per-vertex adjacency lists. Every edge must
  /// appear in both endpoint lists with the same weight.
  static Graph from_adjacency(std::vector<Weight> vertex_weights,
                              std::vector<Weight> self_loops,
                              std::vector<std::vector<Neighbor>> adjacency);

  std::size_t vertex_count() const { return vertex_weight_.size(); }

  /// Number of adjacency entries of v (its neighbors at this level).
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  /// Sum of incident edge weights with the self-loop counted twice.
  Weight weighted_degree(Vertex v) const { return weighted_degree_[v]; }

  Weight vertex_weight(Vertex v) const { return vertex_weight_[v]; }
  Weight self_loop(Vertex v) const { return self_loop_[v]; }

  std::span<const Neighbor> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  /// Edge weight over the original graph: all edges plus all self-loops.
  Weight total_edge_weight() const { return total_edge_weight_; }

  /// Sum of vertex weights, i.e. the vertex count of the original graph.
  Weight total_vertex_weight() const { return total_vertex_weight_; }

  /// True for unit vertex/edge weights and no self-loops.
  bool is_simple_input() const;

  /// Each undirected edge once with u < v.
  std::vector<std::pair<Vertex, Vertex>> edge_list() const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<Weight> vertex_weight_;
  std::vector<Weight> self_loop_;
  std::vector<Weight> weighted_degree_;
  Weight total_edge_weight_ = 0;
  Weight total_vertex_weight_ = 0;
};

}  // namespace dcc
