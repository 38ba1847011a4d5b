#pragma once

#include <vector>

#include "dcc/clustering.hpp"
#include "dcc/graph.hpp"

namespace dcc {

struct Contraction {
  Graph graph;
  std::vector<Vertex> mapping;  // fine vertex -> super-vertex
};

/// Collapses every cluster into one super-vertex. Super-vertices are numbered
/// by ascending cluster id; vertex weight is n_C, self-loop weight is m_C and
/// the edge between two super-vertices carries m_{A,B}.
Contraction contract(const Graph& g, const Clustering& c);

/// Unfolds a clustering of the contracted graph onto the finer graph.
/// Throws std::invalid_argument if the mapping does not fit the two sides.
Clustering project(const Clustering& coarse, const std::vector<Vertex>& mapping, const Graph& fine);

}  // namespace dcc
