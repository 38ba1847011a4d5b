#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "dcc/cluster_stats.hpp"
#include "dcc/graph.hpp"

namespace dcc {

using ClusterId = std::uint32_t;
inline constexpr ClusterId kFreshCluster = std::numeric_limits<ClusterId>::max();

/// Relocation of a single vertex together with the weights that determine
/// how the aggregates of the two affected clusters change.
struct VertexMove {
  Vertex vertex = 0;
  ClusterId source = 0;
  ClusterId target = kFreshCluster;  // kFreshCluster opens a new singleton
  Weight to_source = 0;              // E(v, C(v) \ {v})
  Weight to_target = 0;              // E(v, target), 0 for a fresh cluster
  Weight vertex_weight = 1;
  Weight self_loop = 0;
  Weight degree = 0;  // weighted degree, self-loop counted twice
};

/// Partition of the vertices of one graph with per-cluster aggregates kept
/// up to date under vertex moves and cluster merges.
///
/// Cluster ids live in [0, vertex_count()). Ids of clusters that become empty
/// go to a free list and are handed out again for fresh singletons.
///
/// Besides the integer aggregates the clustering tracks the sums of the
/// per-cluster ratios used by the average measures (floating point, see
/// refresh_sums()) and the three lowest intracluster densities.
class Clustering {
 public:
  Clustering() = default;

  static Clustering singletons(const Graph& g);

  /// Clustering with arbitrary labels; labels are renumbered densely in order
  /// of first appearance. Throws std::invalid_argument on a size mismatch.
  static Clustering from_labels(const Graph& g, std::span<const std::uint64_t> labels);

  std::size_t vertex_count() const { return assignment_.size(); }
  ClusterId cluster_of(Vertex v) const { return assignment_[v]; }
  std::span<const ClusterId> assignment() const { return assignment_; }

  /// Number of non-empty clusters (k).
  std::size_t cluster_count() const { return cluster_count_; }
  bool contains(ClusterId id) const { return id < member_count_.size() && member_count_[id] > 0; }
  const ClusterStats& stats(ClusterId id) const { return stats_[id]; }
  std::size_t member_count(ClusterId id) const { return member_count_[id]; }

  /// Ids of all non-empty clusters in ascending order.
  std::vector<ClusterId> cluster_ids() const;

  /// Id that the next fresh singleton will receive.
  ClusterId next_fresh_id() const;

  const GraphTotals& totals() const { return totals_; }

  Weight intra_edge_sum() const { return intra_sum_; }          // sum of m_C
  Weight intra_pair_sum() const { return pair_sum_; }            // sum of C(n_C, 2)
  Weight squared_size_sum() const { return squared_size_sum_; }  // sum of n_C^2
  Weight squared_volume_sum() const { return squared_volume_sum_; }
  Weight intercluster_edges() const { return cut_sum_ / 2; }

  double density_sum() const { return density_sum_; }
  double cut_ratio_sum(CutKind kind) const { return cut_ratio_sums_[static_cast<int>(kind)]; }

  /// Recomputes the floating-point ratio sums from the integer aggregates.
  void refresh_sums();

  /// Lowest intracluster density among clusters other than a and b, or
  /// nullopt if there is no such cluster.
  std::optional<Ratio> min_density_excluding(ClusterId a = kFreshCluster,
                                             ClusterId b = kFreshCluster) const;

  /// Applies a vertex move and returns the id of the cluster v ends up in.
  ClusterId relocate(const VertexMove& move);

  /// Merges cluster `absorb` into `keep`. `between` is m_{keep,absorb} and
  /// `absorbed` lists the members of `absorb`.
  void merge(ClusterId keep, ClusterId absorb, Weight between, std::span<const Vertex> absorbed);

  /// Labels 0..k-1 in order of first appearance over the vertices.
  std::vector<ClusterId> normalized_labels() const;

  /// Two clusterings are equal if they induce the same partition.
  bool same_partition(const Clustering& other) const;

 private:
  void init_from_assignment(const Graph& g);
  void add_cluster_terms(const ClusterStats& s, int sign);
  void note_modified(std::span<const ClusterId> ids);
  void rebuild_low() const;

  std::vector<ClusterId> assignment_;
  std::vector<ClusterStats> stats_;
  std::vector<std::uint32_t> member_count_;
  std::vector<ClusterId> free_ids_;
  std::size_t cluster_count_ = 0;
  GraphTotals totals_;

  Weight intra_sum_ = 0;
  Weight pair_sum_ = 0;
  Weight squared_size_sum_ = 0;
  Weight squared_volume_sum_ = 0;
  Weight cut_sum_ = 0;
  double density_sum_ = 0.0;
  std::array<double, 3> cut_ratio_sums_{};

  struct LowEntry {
    Ratio density;
    ClusterId id;
  };
  mutable std::array<LowEntry, 3> low_{};
  mutable int low_count_ = 0;
  mutable bool low_dirty_ = true;
};

/// Weights from one vertex to the clusters around it.
struct VertexClusterIncidence {
  std::vector<std::pair<ClusterId, Weight>> others;  // ascending cluster id
  Weight own = 0;                                    // E(v, C(v) \ {v})
};

/// Reusable scratch space for incidence scans in O(deg(v)).
class IncidenceScanner {
 public:
  explicit IncidenceScanner(std::size_t cluster_bound) : weight_(cluster_bound, 0) {}

  void scan(const Graph& g, const Clustering& c, Vertex v, VertexClusterIncidence& out);

 private:
  std::vector<Weight> weight_;
  std::vector<ClusterId> touched_;
};

VertexClusterIncidence incidence(const Graph& g, const Clustering& c, Vertex v);

/// Aggregates of every cluster recomputed from scratch, indexed by cluster id
/// (entries of empty ids are zero).
std::vector<ClusterStats> recompute_stats(const Graph& g, const Clustering& c);

/// Checks the maintained aggregates and sums against a recomputation.
bool aggregates_consistent(const Graph& g, const Clustering& c);

}  // namespace dcc
