#include "dcc/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dcc {

Graph Graph::from_edges(std::size_t vertex_count,
                        std::span<const std::pair<Vertex, Vertex>> edges) {
  std::vector<std::vector<Neighbor>> adjacency(vertex_count);
  for (const auto& [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                  ") references a vertex outside [0, " +
                                  std::to_string(vertex_count) + ")");
    }
    if (u == v) {
      throw std::invalid_argument("self-edge at vertex " + std::to_string(u));
    }
    adjacency[u].push_back({v, 1});
    adjacency[v].push_back({u, 1});
  }
  for (Vertex v = 0; v < vertex_count; ++v) {
    auto& list = adjacency[v];
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.target < b.target; });
    auto dup = std::adjacent_find(list.begin(), list.end(), [](const Neighbor& a, const Neighbor& b) {
      return a.target == b.target;
    });
    if (dup != list.end()) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(v) + ", " +
                                  std::to_string(dup->target) + ")");
    }
  }
  return from_adjacency(std::vector<Weight>(vertex_count, 1), std::vector<Weight>(vertex_count, 0),
                        std::move(adjacency));
}

Graph Graph::from_adjacency(std::vector<Weight> vertex_weights, std::vector<Weight> self_loops,
                            std::vector<std::vector<Neighbor>> adjacency) {
  const std::size_t n = vertex_weights.size();
  if (self_loops.size() != n || adjacency.size() != n) {
    throw std::invalid_argument("vertex weight, self-loop and adjacency sizes differ");
  }
  Graph g;
  g.vertex_weight_ = std::move(vertex_weights);
  g.self_loop_ = std::move(self_loops);
  g.weighted_degree_.assign(n, 0);
  g.offsets_.assign(n + 1, 0);

  Weight twice_edges = 0;
  for (Vertex v = 0; v < n; ++v) {
    auto& list = adjacency[v];
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.target < b.target; });
    if (g.vertex_weight_[v] < 1 || g.self_loop_[v] < 0) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " has an invalid weight");
    }
    Weight deg = 2 * g.self_loop_[v];
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& nb = list[i];
      if (nb.target >= n || nb.target == v || nb.weight < 1 ||
          (i > 0 && list[i - 1].target == nb.target)) {
        throw std::invalid_argument("invalid adjacency entry at vertex " + std::to_string(v));
      }
      deg += nb.weight;
    }
    g.weighted_degree_[v] = deg;
    twice_edges += deg - 2 * g.self_loop_[v];
    g.offsets_[v + 1] = g.offsets_[v] + list.size();
  }

  g.adjacency_.reserve(g.offsets_[n]);
  for (auto& list : adjacency) {
    g.adjacency_.insert(g.adjacency_.end(), list.begin(), list.end());
  }

  // symmetry: every (u, v, w) has a matching (v, u, w)
  for (Vertex u = 0; u < n; ++u) {
    for (const auto& nb : g.neighbors(u)) {
      auto back = g.neighbors(nb.target);
      auto it = std::lower_bound(back.begin(), back.end(), u,
                                 [](const Neighbor& a, Vertex x) { return a.target < x; });
      if (it == back.end() || it->target != u || it->weight != nb.weight) {
        throw std::invalid_argument("adjacency is not symmetric at edge (" + std::to_string(u) +
                                    ", " + std::to_string(nb.target) + ")");
      }
    }
  }

  g.total_edge_weight_ = twice_edges / 2;
  for (Vertex v = 0; v < n; ++v) {
    g.total_edge_weight_ += g.self_loop_[v];
    g.total_vertex_weight_ += g.vertex_weight_[v];
  }
  return g;
}

bool Graph::is_simple_input() const {
  for (Vertex v = 0; v < vertex_count(); ++v) {
    if (vertex_weight_[v] != 1 || self_loop_[v] != 0) return false;
    for (const auto& nb : neighbors(v)) {
      if (nb.weight != 1) return false;
    }
  }
  return true;
}

std::vector<std::pair<Vertex, Vertex>> Graph::edge_list() const {
  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(adjacency_.size() / 2);
  for (Vertex u = 0; u < vertex_count(); ++u) {
    for (const auto& nb : neighbors(u)) {
      if (u < nb.target) edges.emplace_back(u, nb.target);
    }
  }
  return edges;
}

}  // namespace dcc
