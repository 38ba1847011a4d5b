#pragma once

#include <array>
#include <compare>

#include "dcc/cluster_stats.hpp"
#include "dcc/clustering.hpp"
#include "dcc/graph.hpp"
#include "dcc/measures.hpp"

namespace dcc {

/// How a move or merge rewrites the cluster set: up to two clusters are
/// replaced by up to two new ones. Every measure of the resulting clustering
/// follows from the current aggregates plus this record in O(1) (the maximum
/// measures in the sense of L-comparison).
struct ClusterChange {
  std::array<ClusterId, 2> removed_ids{kFreshCluster, kFreshCluster};
  std::array<ClusterStats, 2> removed{};
  int removed_count = 0;
  std::array<ClusterStats, 2> added{};
  int added_count = 0;

  bool empty() const { return removed_count == 0 && added_count == 0; }
};

enum class TargetKind { stay, existing, fresh };

/// A proposed relocation of one vertex.
struct MoveCandidate {
  TargetKind kind = TargetKind::stay;
  VertexMove move;
  ClusterChange change;

  Vertex vertex() const { return move.vertex; }
  ClusterId source() const { return move.source; }
};

/// Candidate for moving v to `target` (kFreshCluster for a new singleton).
/// `to_source` is E(v, C(v) \ {v}) and `to_target` is E(v, target).
/// A target equal to the source, or a fresh target for a vertex that is
/// already alone, yields a stay candidate.
MoveCandidate make_move(const Graph& g, const Clustering& c, Vertex v, ClusterId target,
                        Weight to_source, Weight to_target);

/// Same, with the two weights found by scanning v's adjacency.
MoveCandidate make_move(const Graph& g, const Clustering& c, Vertex v, ClusterId target);

MoveCandidate make_stay(const Graph& g, const Clustering& c, Vertex v);

/// Change caused by merging clusters a and b, `between` being m_{a,b}.
ClusterChange merge_change(const Clustering& c, ClusterId a, ClusterId b, Weight between);

/// Intracluster measure after the change.
double intra_after(Measure intra, const Clustering& c, const ClusterChange& change);

/// intra_after(...) >= alpha, with exact arithmetic where the measure allows
/// it and a 1e-12 tolerance otherwise.
bool feasible_after(Measure intra, double alpha, const Clustering& c, const ClusterChange& change);

/// Intercluster measure after the change.
double inter_after(Measure inter, const Clustering& c, const ClusterChange& change);

/// Orders the clusterings produced by two changes under an intercluster
/// objective; `less` means `a` gives the better clustering. Maximum measures
/// are L-compared on the affected clusters only; the others compare values
/// (exactly for nxe, gxd and mod, with 1e-12 relative tolerance for the
/// averages).
std::weak_ordering compare_changes(Measure inter, const Clustering& c, const ClusterChange& a,
                                   const ClusterChange& b);

double intra_after_move(Measure intra, const Clustering& c, const MoveCandidate& mv);

/// Throws std::invalid_argument unless both candidates move the same vertex
/// out of the same cluster.
std::weak_ordering compare_moves(Measure inter, const Clustering& c, const MoveCandidate& a,
                                 const MoveCandidate& b);

/// Performs the move; returns the cluster the vertex ends up in.
ClusterId apply_move(Clustering& c, const MoveCandidate& mv);

}  // namespace dcc
