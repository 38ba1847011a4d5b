#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dcc/clustering.hpp"
#include "dcc/graph.hpp"
#include "dcc/measures.hpp"

namespace dcc {

enum class ScanOrder { ascending, shuffled };

std::optional<ScanOrder> parse_scan_order(std::string_view name);

/// One instance of density-constrained clustering: optimize `inter` subject
/// to intra(C) >= alpha.
struct DccConfig {
  Measure intra = Measure::gid;
  double alpha = 0.0;
  Measure inter = Measure::mod;
  ScanOrder scan_order = ScanOrder::ascending;
  std::uint64_t seed = 0;
  // Rounds per local-moving call; unset means until convergence, with a
  // safety cap of 10 * n rounds.
  std::optional<std::size_t> max_rounds;

  /// Throws std::invalid_argument for alpha outside [0, 1] or swapped roles.
  void validate() const;
};

struct LevelStats {
  std::size_t vertices = 0;
  std::size_t rounds = 0;
  std::size_t moves = 0;
};

struct LocalMovingStats {
  std::size_t rounds = 0;
  std::size_t moves = 0;
  bool capped = false;  // stopped by the round limit, not by convergence
};

struct RunReport {
  Clustering clustering;
  std::vector<LevelStats> coarsening;  // one entry per local-moving call, finest first
  std::vector<LevelStats> refinement;  // coarse to fine
  std::size_t contractions = 0;        // real contractions performed
  std::size_t moves = 0;
  std::size_t merges = 0;
  bool capped = false;
  double seconds = 0.0;
  std::array<double, kAllMeasures.size()> values{};

  double value(Measure m) const { return values[static_cast<std::size_t>(m)]; }
};

/// Local moving in place: sweeps over the vertices and performs, for each,
/// the best feasible move to a neighboring cluster or to a fresh singleton
/// if it strictly improves the objective (L-improves it for maximum
/// measures). Repeats until a sweep moves nothing. Throws
/// std::invalid_argument if `c` violates the constraint on entry.
LocalMovingStats local_moving(const Graph& g, Clustering& c, const DccConfig& cfg);

/// Value-returning form of local_moving.
Clustering local_moving(const Graph& g, Clustering init, const DccConfig& cfg,
                        LocalMovingStats* stats);

/// Multilevel greedy vertex moving: local moving from singletons followed by
/// contraction, repeated while contraction shrinks the graph, then projection
/// back level by level with local moving on every level.
RunReport greedy_vertex_moving(const Graph& g, const DccConfig& cfg);

/// Greedy merge from singletons: repeatedly performs the feasible merge of
/// two adjacent clusters that gives the best objective, as long as it
/// strictly improves (L-improves) the current clustering.
RunReport greedy_merge(const Graph& g, const DccConfig& cfg);

/// Unconstrained modularity: greedy vertex moving with gid >= 0 and mod.
RunReport modularity_mode(const Graph& g, ScanOrder order = ScanOrder::ascending,
                          std::uint64_t seed = 0);

/// Fills report.values from report.clustering.
void evaluate_all(const Graph& g, RunReport& report);

}  // namespace dcc
