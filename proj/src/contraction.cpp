#include "dcc/contraction.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcc {

Contraction contract(const Graph& g, const Clustering& c) {
  const std::size_t n = g.vertex_count();
  const auto ids = c.cluster_ids();

  std::vector<Vertex> super_of_cluster(n, 0);
  for (std::size_t i = 0; i < ids.size(); ++i) super_of_cluster[ids[i]] = static_cast<Vertex>(i);

  Contraction out;
  out.mapping.resize(n);
  for (Vertex v = 0; v < n; ++v) out.mapping[v] = super_of_cluster[c.cluster_of(v)];

  // bucket vertices by super-vertex
  std::vector<std::size_t> start(ids.size() + 1, 0);
  for (Vertex v = 0; v < n; ++v) ++start[out.mapping[v] + 1];
  for (std::size_t i = 0; i < ids.size(); ++i) start[i + 1] += start[i];
  std::vector<Vertex> members(n);
  {
    auto fill = start;
    for (Vertex v = 0; v < n; ++v) members[fill[out.mapping[v]]++] = v;
  }

  const std::size_t k = ids.size();
  std::vector<Weight> vertex_weights(k), self_loops(k);
  std::vector<std::vector<Neighbor>> adjacency(k);
  std::vector<Weight> accumulated(k, 0);
  std::vector<Vertex> touched;
  for (Vertex s = 0; s < k; ++s) {
    const auto& st = c.stats(ids[s]);
    vertex_weights[s] = st.size;
    self_loops[s] = st.intra;
    for (std::size_t i = start[s]; i < start[s + 1]; ++i) {
      for (const auto& nb : g.neighbors(members[i])) {
        const Vertex t = out.mapping[nb.target];
        if (t == s) continue;
        if (accumulated[t] == 0) touched.push_back(t);
        accumulated[t] += nb.weight;
      }
    }
    std::sort(touched.begin(), touched.end());
    adjacency[s].reserve(touched.size());
    for (Vertex t : touched) {
      adjacency[s].push_back({t, accumulated[t]});
      accumulated[t] = 0;
    }
    touched.clear();
  }
  out.graph = Graph::from_adjacency(std::move(vertex_weights), std::move(self_loops),
                                    std::move(adjacency));
  return out;
}

Clustering project(const Clustering& coarse, const std::vector<Vertex>& mapping, const Graph& fine) {
  if (mapping.size() != fine.vertex_count()) {
    throw std::invalid_argument("projection mapping does not cover the fine graph");
  }
  std::vector<std::uint64_t> labels(mapping.size());
  std::vector<char> hit(coarse.vertex_count(), 0);
  for (std::size_t v = 0; v < mapping.size(); ++v) {
    if (mapping[v] >= coarse.vertex_count()) {
      throw std::invalid_argument("projection mapping points outside the coarse clustering");
    }
    hit[mapping[v]] = 1;
    labels[v] = coarse.cluster_of(mapping[v]);
  }
  if (std::find(hit.begin(), hit.end(), 0) != hit.end()) {
    throw std::invalid_argument("coarse vertex without fine preimage");
  }
  return Clustering::from_labels(fine, labels);
}

}  // namespace dcc
