#include "dcc/distances.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace dcc {
namespace {

void require_same_graph(const Graph& g, const Clustering& a, const Clustering& b) {
  if (a.vertex_count() != g.vertex_count() || b.vertex_count() != g.vertex_count()) {
    throw std::invalid_argument("clusterings do not belong to this graph");
  }
  if (!g.is_simple_input()) {
    throw std::invalid_argument("clustering distances are defined on unweighted simple graphs");
  }
}

struct EdgeAgreement {
  std::uint64_t both_intra = 0;  // e11
  std::uint64_t both_inter = 0;  // e00
};

EdgeAgreement classify_edges(const Graph& g, const Clustering& a, const Clustering& b) {
  EdgeAgreement out;
  for (const auto& [u, v] : g.edge_list()) {
    const bool in_a = a.cluster_of(u) == a.cluster_of(v);
    const bool in_b = b.cluster_of(u) == b.cluster_of(v);
    if (in_a && in_b) ++out.both_intra;
    if (!in_a && !in_b) ++out.both_inter;
  }
  return out;
}

}  // namespace

std::uint64_t editing_set_size(const Graph& g, const Clustering& c) {
  std::uint64_t size = static_cast<std::uint64_t>(c.intercluster_edges());
  for (ClusterId id : c.cluster_ids()) {
    const auto& s = c.stats(id);
    size += static_cast<std::uint64_t>(pair_count(s.size) - s.intra);
  }
  (void)g;
  return size;
}

EditingSet editing_set(const Graph& g, const Clustering& c, std::size_t limit) {
  if (!g.is_simple_input()) {
    throw std::invalid_argument("editing sets are defined on unweighted simple graphs");
  }
  if (editing_set_size(g, c) > limit) {
    throw std::length_error("editing set exceeds " + std::to_string(limit) + " pairs");
  }
  EditingSet out;
  for (const auto& [u, v] : g.edge_list()) {
    if (c.cluster_of(u) != c.cluster_of(v)) out.removals.emplace_back(u, v);
  }
  std::vector<std::vector<Vertex>> members(c.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) members[c.cluster_of(v)].push_back(v);
  for (const auto& group : members) {
    for (std::size_t i = 0; i < group.size(); ++i) {
      const auto nbs = g.neighbors(group[i]);
      auto nb = nbs.begin();
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        const Vertex w = group[j];
        while (nb != nbs.end() && nb->target < w) ++nb;
        if (nb == nbs.end() || nb->target != w) out.insertions.emplace_back(group[i], w);
      }
    }
  }
  std::sort(out.insertions.begin(), out.insertions.end());
  return out;
}

double rand_index_graph(const Graph& g, const Clustering& a, const Clustering& b) {
  require_same_graph(g, a, b);
  const Weight m = g.total_edge_weight();
  if (m == 0) throw std::invalid_argument("graph-based Rand index is undefined for m = 0");
  const auto agree = classify_edges(g, a, b);
  return 1.0 - static_cast<double>(agree.both_intra + agree.both_inter) / static_cast<double>(m);
}

double esd(const Graph& g, const Clustering& a, const Clustering& b) {
  require_same_graph(g, a, b);
  const auto agree = classify_edges(g, a, b);

  // vertex pairs inside the same cluster in both clusterings
  std::unordered_map<std::uint64_t, std::uint64_t> joint;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    ++joint[(static_cast<std::uint64_t>(a.cluster_of(v)) << 32) | b.cluster_of(v)];
  }
  std::uint64_t joint_pairs = 0;
  for (const auto& [key, count] : joint) joint_pairs += count * (count - 1) / 2;

  const std::uint64_t common = agree.both_inter + (joint_pairs - agree.both_intra);
  const std::uint64_t size_a = editing_set_size(g, a);
  const std::uint64_t size_b = editing_set_size(g, b);
  const std::uint64_t united = size_a + size_b - common;
  if (united == 0) return 0.0;
  return 1.0 - static_cast<double>(common) / static_cast<double>(united);
}

}  // namespace dcc
