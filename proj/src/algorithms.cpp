#include "dcc/algorithms.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "dcc/contraction.hpp"
#include "dcc/moves.hpp"

namespace dcc {
namespace {

constexpr double kFeasibilityTolerance = 1e-12;

bool satisfies(const Graph& g, const Clustering& c, const DccConfig& cfg) {
  return cfg.alpha <= 0.0 || eval(cfg.intra, g, c) >= cfg.alpha - kFeasibilityTolerance;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Best feasible move for v, or a stay candidate.
class MoveSelector {
 public:
  MoveSelector(const Graph& g, const DccConfig& cfg) : g_(g), cfg_(cfg), scanner_(g.vertex_count()) {}

  MoveCandidate best_move(const Clustering& c, Vertex v) {
    scanner_.scan(g_, c, v, incidence_);
    MoveCandidate best = make_move(g_, c, v, c.cluster_of(v), incidence_.own, incidence_.own);
    auto consider = [&](ClusterId target, Weight to_target) {
      MoveCandidate cand = make_move(g_, c, v, target, incidence_.own, to_target);
      if (cand.kind == TargetKind::stay) return;
      if (!feasible_after(cfg_.intra, cfg_.alpha, c, cand.change)) return;
      if (compare_changes(cfg_.inter, c, cand.change, best.change) < 0) best = cand;
    };
    for (const auto& [target, weight] : incidence_.others) consider(target, weight);
    consider(kFreshCluster, 0);
    return best;
  }

 private:
  const Graph& g_;
  const DccConfig& cfg_;
  IncidenceScanner scanner_;
  VertexClusterIncidence incidence_;
};

}  // namespace

std::optional<ScanOrder> parse_scan_order(std::string_view name) {
  if (name == "ascending") return ScanOrder::ascending;
  if (name == "shuffle" || name == "shuffled") return ScanOrder::shuffled;
  return std::nullopt;
}

void DccConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (!is_intra(intra)) throw std::invalid_argument(std::string(name(intra)) + " cannot be a constraint");
  if (is_intra(inter)) throw std::invalid_argument(std::string(name(inter)) + " cannot be an objective");
  if (max_rounds && *max_rounds == 0) throw std::invalid_argument("max rounds must be positive");
}

LocalMovingStats local_moving(const Graph& g, Clustering& c, const DccConfig& cfg) {
  cfg.validate();
  if (c.vertex_count() != g.vertex_count()) {
    throw std::invalid_argument("clustering does not belong to this graph");
  }
  if (!satisfies(g, c, cfg)) {
    throw std::invalid_argument("initial clustering violates " + std::string(name(cfg.intra)) +
                                " >= " + std::to_string(cfg.alpha));
  }
  const std::size_t n = g.vertex_count();
  const std::size_t cap = cfg.max_rounds.value_or(std::max<std::size_t>(10 * n, 10));

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::mt19937_64 rng(cfg.seed);

  MoveSelector selector(g, cfg);
  LocalMovingStats stats;
  while (true) {
    if (stats.rounds == cap) {
      stats.capped = true;
      if (!cfg.max_rounds) {
        std::cerr << "warning: local moving stopped after " << cap << " rounds without converging\n";
      }
      break;
    }
    if (cfg.scan_order == ScanOrder::shuffled) std::shuffle(order.begin(), order.end(), rng);
    c.refresh_sums();
    ++stats.rounds;
    std::size_t moved = 0;
    for (Vertex v : order) {
      const MoveCandidate best = selector.best_move(c, v);
      if (best.kind == TargetKind::stay) continue;
      apply_move(c, best);
      ++moved;
      assert(satisfies(g, c, cfg));
    }
    stats.moves += moved;
    if (moved == 0) break;
  }
  return stats;
}

Clustering local_moving(const Graph& g, Clustering init, const DccConfig& cfg, LocalMovingStats* stats) {
  const auto s = local_moving(g, init, cfg);
  if (stats) *stats = s;
  return init;
}

void evaluate_all(const Graph& g, RunReport& report) {
  for (Measure m : kAllMeasures) report.values[static_cast<std::size_t>(m)] = eval(m, g, report.clustering);
}

RunReport greedy_vertex_moving(const Graph& g, const DccConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  RunReport report;

  std::vector<Graph> levels;  // contracted graphs, level h lives at levels[h - 1]
  std::vector<std::vector<Vertex>> mappings;
  auto level = [&](std::size_t h) -> const Graph& { return h == 0 ? g : levels[h - 1]; };

  // coarsening
  Clustering top;
  std::size_t h = 0;
  while (true) {
    const Graph& current = level(h);
    Clustering c = Clustering::singletons(current);
    const auto s = local_moving(current, c, cfg);
    report.coarsening.push_back({current.vertex_count(), s.rounds, s.moves});
    report.moves += s.moves;
    report.capped = report.capped || s.capped;
    if (c.cluster_count() == current.vertex_count()) {
      top = std::move(c);
      break;
    }
    auto contraction = contract(current, c);
    levels.push_back(std::move(contraction.graph));
    mappings.push_back(std::move(contraction.mapping));
    ++report.contractions;
    ++h;
  }

  // refinement
  while (h > 0) {
    --h;
    const Graph& fine = level(h);
    Clustering c = project(top, mappings[h], fine);
    const auto s = local_moving(fine, c, cfg);
    report.refinement.push_back({fine.vertex_count(), s.rounds, s.moves});
    report.moves += s.moves;
    report.capped = report.capped || s.capped;
    top = std::move(c);
  }

  report.clustering = std::move(top);
  report.seconds = seconds_since(start);
  evaluate_all(g, report);
  return report;
}

RunReport greedy_merge(const Graph& g, const DccConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = g.vertex_count();

  RunReport report;
  Clustering c = Clustering::singletons(g);
  std::vector<std::vector<Vertex>> members(n);
  std::vector<std::map<ClusterId, Weight>> adjacent(n);
  for (Vertex v = 0; v < n; ++v) {
    members[v] = {v};
    for (const auto& nb : g.neighbors(v)) adjacent[v].emplace(nb.target, nb.weight);
  }

  while (true) {
    c.refresh_sums();
    ClusterChange best;
    ClusterId best_a = kFreshCluster, best_b = kFreshCluster;
    for (ClusterId a = 0; a < n; ++a) {
      if (!c.contains(a)) continue;
      for (auto it = adjacent[a].upper_bound(a); it != adjacent[a].end(); ++it) {
        const ClusterId b = it->first;
        const ClusterChange change = merge_change(c, a, b, it->second);
        if (!feasible_after(cfg.intra, cfg.alpha, c, change)) continue;
        if (compare_changes(cfg.inter, c, change, best) < 0) {
          best = change;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (best_a == kFreshCluster) break;

    ClusterId keep = best_a, absorb = best_b;
    if (adjacent[absorb].size() > adjacent[keep].size()) std::swap(keep, absorb);
    const Weight between = adjacent[keep].at(absorb);
    c.merge(keep, absorb, between, members[absorb]);
    members[keep].insert(members[keep].end(), members[absorb].begin(), members[absorb].end());
    members[absorb].clear();
    members[absorb].shrink_to_fit();

    adjacent[keep].erase(absorb);
    for (const auto& [x, w] : adjacent[absorb]) {
      if (x == keep) continue;
      adjacent[keep][x] += w;
      adjacent[x].erase(absorb);
      adjacent[x][keep] += w;
    }
    adjacent[absorb].clear();
    ++report.merges;
    assert(satisfies(g, c, cfg));
  }

  report.clustering = std::move(c);
  report.seconds = seconds_since(start);
  evaluate_all(g, report);
  return report;
}

RunReport modularity_mode(const Graph& g, ScanOrder order, std::uint64_t seed) {
  DccConfig cfg;
  cfg.intra = Measure::gid;
  cfg.alpha = 0.0;
  cfg.inter = Measure::mod;
  cfg.scan_order = order;
  cfg.seed = seed;
  return greedy_vertex_moving(g, cfg);
}

}  // namespace dcc
