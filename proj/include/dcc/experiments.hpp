#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dcc/algorithms.hpp"
#include "dcc/generators.hpp"
#include "dcc/graph.hpp"
#include "dcc/io.hpp"
#include "dcc/measures.hpp"

namespace dcc {

enum class ExperimentKind { ratio, ranking, recovery };

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name);

/// A graph read from a file.
struct GraphFile {
  std::filesystem::path path;
  GraphFormat format = GraphFormat::edge_list;
};

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::ratio;

  // Graph sources for the ratio and ranking experiments: the files, followed
  // by `instances` planted graphs drawn from `planted`. The recovery
  // experiment always uses planted graphs.
  std::vector<GraphFile> files;
  PlantedConfig planted;
  std::size_t instances = 0;

  std::vector<Measure> intra{kIntraMeasures.begin(), kIntraMeasures.end()};
  std::vector<double> alphas = default_alphas();
  std::vector<Measure> inter{kInterMeasures.begin(), kInterMeasures.end()};

  // Recovery: alpha = alpha_factor * p_in unless alpha_override is set.
  double alpha_factor = 0.75;
  std::optional<double> alpha_override;
  bool mod_baseline = true;

  std::uint64_t seed = 0;  // master seed; every run derives its own
  ScanOrder scan_order = ScanOrder::ascending;
  std::size_t workers = 1;

  // When set, every clustering (and every generated graph) is written below it.
  std::optional<std::filesystem::path> save_dir;

  /// Throws std::invalid_argument for an empty source list, alphas outside
  /// [0, 1] or misplaced measures.
  void validate() const;

  static std::vector<double> default_alphas();  // 0.0, 0.1, ..., 1.0
};

/// Deterministic 64-bit seed for one run, expanded from the master seed and
/// the run's coordinates.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coordinates);

/// Effective worker count: DCC_WORKERS if set, else `requested`, at least 1.
std::size_t resolve_workers(std::size_t requested);

/// Runs task(i) for i in [0, count) on up to `workers` threads. The first
/// exception thrown by a task is rethrown after all workers stopped.
void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& task);

struct RatioRow {
  std::string graph;
  Measure intra;
  double alpha;
  Measure inter;
  double gvm;
  double gm;
  double ratio;  // gvm / gm, 0/0 -> 1, x/0 -> inf
};

struct RatioSummaryRow {
  Measure intra;
  double alpha;
  Measure inter;
  std::size_t graphs;
  double mean;      // arithmetic
  double geo_mean;  // nan if some ratio is not positive and finite
};

struct RankingRow {
  std::string graph;
  Measure intra;
  double alpha;
  Measure judge;      // x, the measure the clusterings are ranked by
  Measure objective;  // y, the objective GVM optimized
  double value;       // x of GVM_{intra, alpha, y}
  std::size_t rank;   // 1 = best, competition ranking
};

struct RecoveryRow {
  std::string config;
  std::uint64_t seed;  // generator seed of the instance
  std::string intra;   // "none" for the unconstrained modularity baseline
  double alpha;
  Measure inter;
  std::string objective;  // y whose clustering was selected
  double rand_index;
  double esd;
  std::size_t k_found;
  std::size_t k_reference;
};

double gvm_gm_ratio(double gvm, double gm);

std::vector<RatioRow> run_ratio_experiment(const ExperimentSpec& spec);
std::vector<RatioSummaryRow> summarize_ratios(const std::vector<RatioRow>& rows);
std::vector<RankingRow> run_ranking_experiment(const ExperimentSpec& spec);
std::vector<RecoveryRow> run_recovery_experiment(const ExperimentSpec& spec);

/// Competition ranks ("1224") of the values under measure x; maximum measures
/// are ordered by L-comparison of the given sequences.
std::vector<std::size_t> competition_ranks(Measure x, const std::vector<double>& values,
                                           const std::vector<std::vector<Ratio>>& sequences);

std::string to_csv(const std::vector<RatioRow>& rows);
std::string to_csv(const std::vector<RatioSummaryRow>& rows);
std::string to_csv(const std::vector<RankingRow>& rows);
std::string to_csv(const std::vector<RecoveryRow>& rows);

/// Shortest round-trip decimal form, "inf"/"nan" for special values.
std::string format_number(double x);

/// Name used in CSV rows and file names for a planted configuration.
std::string config_name(const PlantedConfig& cfg);

}  // namespace dcc
