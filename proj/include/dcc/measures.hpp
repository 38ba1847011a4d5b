#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "dcc/cluster_stats.hpp"
#include "dcc/clustering.hpp"
#include "dcc/graph.hpp"

namespace dcc {

/// The intracluster density and intercluster sparsity measures. Modularity is
/// treated as an intercluster objective that is maximized.
enum class Measure : std::uint8_t {
  gid,
  mid,
  aid,
  nxe,
  gxd,
  aixd,
  aixc,
  aixe,
  mixd,
  mixc,
  mixe,
  mod,
};

enum class MeasureKind { intra, inter };
enum class Aggregation { global, average, minimum, maximum };

struct MeasureInfo {
  Measure id;
  std::string_view name;
  MeasureKind kind;
  Aggregation aggregation;
  bool maximize;
  std::optional<CutKind> cut;  // per-cluster cut ratio behind average/maximum measures
};

inline constexpr std::array<Measure, 12> kAllMeasures = {
    Measure::gid,  Measure::mid,  Measure::aid,  Measure::nxe,  Measure::gxd,  Measure::aixd,
    Measure::aixc, Measure::aixe, Measure::mixd, Measure::mixc, Measure::mixe, Measure::mod};

inline constexpr std::array<Measure, 3> kIntraMeasures = {Measure::gid, Measure::mid, Measure::aid};

inline constexpr std::array<Measure, 9> kInterMeasures = {
    Measure::nxe,  Measure::gxd,  Measure::aixd, Measure::aixc, Measure::aixe,
    Measure::mixd, Measure::mixc, Measure::mixe, Measure::mod};

const MeasureInfo& info(Measure m);
inline std::string_view name(Measure m) { return info(m).name; }
std::optional<Measure> parse_measure(std::string_view name);

inline bool is_intra(Measure m) { return info(m).kind == MeasureKind::intra; }
inline bool is_maximum(Measure m) { return info(m).aggregation == Aggregation::maximum; }

/// Value of a measure on a clustering, computed from its aggregates in O(k).
///
/// Conventions: clusters of weighted size <= 1 have intracluster density 1
/// (so gid of singletons is 1); every 0/0 cut ratio is 0, hence all
/// intercluster measures vanish on the all-clustering; mod is 0 on an
/// edgeless graph.
double eval(Measure measure, const Graph& g, const Clustering& c);

struct ClusterCutValue {
  ClusterId cluster;
  Ratio ratio;
  double value() const { return ratio.value(); }
};

/// Cut density, conductance or expansion of a single cluster. Throws
/// std::out_of_range for ids that do not name a non-empty cluster.
ClusterCutValue cluster_cut_value(CutKind kind, const Graph& g, const Clustering& c, ClusterId id);

/// Cut values of all clusters, sorted descending. Requires a maximum measure.
std::vector<Ratio> l_sequence(Measure measure, const Graph& g, const Clustering& c);

/// Lexicographic order of two descending cut-value sequences; a proper
/// prefix is smaller. `less` means the first clustering is L-better.
std::strong_ordering l_compare(std::span<const Ratio> a, std::span<const Ratio> b);

}  // namespace dcc
