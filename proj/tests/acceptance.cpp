// Acceptance suite. Prints one PASS/FAIL line per criterion and exits with
// the number of failed criteria. Arguments select a subset, e.g. `3 5`.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <unistd.h>
#include <vector>

#include "dcc/algorithms.hpp"
#include "dcc/clustering.hpp"
#include "dcc/experiments.hpp"
#include "dcc/generators.hpp"
#include "dcc/measures.hpp"
#include "dcc/moves.hpp"
#include "oracle.hpp"

using namespace dcc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Clustering from(const Graph& g, const oracle::Labels& l) {
  const std::vector<std::uint64_t> w(l.begin(), l.end());
  return Clustering::from_labels(g, w);
}

std::size_t workers() { return resolve_workers(std::max(1u, std::thread::hardware_concurrency())); }

// 1. Incrementally maintained measures against the naive evaluator.

constexpr int kOracleGraphs = 50;
constexpr int kOracleN = 8;
constexpr double kOracleTol = 1e-12;

// Moves vertices until c induces `labels`. Vertex v joins the cluster of the
// first earlier vertex with its label; the first vertex of a label stays put
// unless its cluster still holds an earlier vertex, in which case it opens a
// fresh cluster.
std::size_t move_to(const Graph& g, Clustering& c, const oracle::Labels& labels) {
  std::size_t moves = 0;
  const auto n = static_cast<Vertex>(labels.size());
  for (Vertex v = 0; v < n; ++v) {
    std::optional<Vertex> first;
    bool shares_with_earlier = false;
    for (Vertex u = 0; u < v; ++u) {
      if (!first && labels[u] == labels[v]) first = u;
      shares_with_earlier = shares_with_earlier || c.cluster_of(u) == c.cluster_of(v);
    }
    ClusterId target = c.cluster_of(v);
    if (first) {
      target = c.cluster_of(*first);
    } else if (shares_with_earlier) {
      target = kFreshCluster;
    }
    if (target == c.cluster_of(v)) continue;
    apply_move(c, make_move(g, c, v, target));
    ++moves;
  }
  return moves;
}

Outcome criterion_oracle() {
  std::mt19937_64 rng(1001);
  std::size_t checks = 0, violations = 0, moves = 0, partitions = 0;
  double worst = 0.0;
  for (int i = 0; i < kOracleGraphs; ++i) {
    const double p = 0.15 + 0.7 * static_cast<double>(i) / (kOracleGraphs - 1);
    const auto sg = oracle::random_graph(kOracleN, p, rng);
    const Graph g = sg.to_graph();
    Clustering c = Clustering::singletons(g);
    oracle::for_each_partition(kOracleN, [&](const oracle::Labels& labels) {
      moves += move_to(g, c, labels);
      ++partitions;
      for (Measure m : kAllMeasures) {
        const double got = eval(m, g, c);
        const double want = oracle::measure(m, sg, labels);
        const double err = std::abs(got - want);
        worst = std::max(worst, err);
        const bool ok = m == Measure::nxe ? got == want : err <= kOracleTol;
        violations += ok ? 0 : 1;
        ++checks;
      }
    });
  }
  const bool complete = partitions == static_cast<std::size_t>(kOracleGraphs * oracle::bell(kOracleN));
  return {complete && violations == 0,
          fmt::format("{} graphs, {} partitions, {} moves, {} checks, {} violations, max error {:.3g}",
                      kOracleGraphs, partitions, moves, checks, violations, worst)};
}

// 2. Move lemmas.

constexpr int kLemmaTrials = 10'000;

struct Instance {
  oracle::SimpleGraph sg;
  Graph g;
  Clustering c;
  oracle::Labels labels;
};

Instance random_instance(std::mt19937_64& rng) {
  const int n = 5 + static_cast<int>(rng() % 8);
  const double p = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
  const int groups = 1 + static_cast<int>(rng() % 5);
  Instance in;
  in.sg = oracle::random_graph(n, p, rng);
  in.g = in.sg.to_graph();
  oracle::Labels raw(n);
  for (auto& x : raw) x = static_cast<int>(rng() % groups);
  in.labels = oracle::to_labels(std::vector<ClusterId>(raw.begin(), raw.end()));
  in.c = from(in.g, in.labels);
  return in;
}

oracle::Labels labels_after(const Clustering& c, Vertex v, ClusterId target) {
  std::vector<ClusterId> a(c.assignment().begin(), c.assignment().end());
  a[v] = target;
  return oracle::to_labels(a);
}

// Existing clusters other than C(v) that v has no edge to.
std::vector<ClusterId> non_adjacent_clusters(const Graph& g, const Clustering& c, Vertex v) {
  const auto inc = incidence(g, c, v);
  std::vector<ClusterId> out;
  for (ClusterId id : c.cluster_ids()) {
    if (id == c.cluster_of(v)) continue;
    const bool adjacent = std::any_of(inc.others.begin(), inc.others.end(),
                                      [&](const auto& e) { return e.first == id; });
    if (!adjacent) out.push_back(id);
  }
  return out;
}

oracle::Frac exact_gxd(const oracle::SimpleGraph& g, const oracle::Labels& labels) {
  long long intra = 0, intra_pairs = 0;
  for (const auto& cl : oracle::clusters_of(g, labels)) {
    intra += cl.intra;
    intra_pairs += oracle::pairs(cl.size);
  }
  const long long inter_pairs = oracle::pairs(g.n) - intra_pairs;
  const long long nxe = static_cast<long long>(g.edges.size()) - intra;
  return inter_pairs == 0 ? oracle::Frac{0, 1} : oracle::Frac{nxe, inter_pairs};
}

int sign(std::weak_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }
int sign(std::strong_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }

Outcome criterion_lemmas() {
  std::mt19937_64 rng(2002);
  auto pick = [&](const std::vector<ClusterId>& v) { return v[rng() % v.size()]; };

  std::size_t nxe_bad = 0, gxd_bad = 0, gxd_strict = 0, l_bad = 0;
  for (int t = 0; t < kLemmaTrials;) {
    auto in = random_instance(rng);
    const Vertex v = static_cast<Vertex>(rng() % in.g.vertex_count());
    auto targets = non_adjacent_clusters(in.g, in.c, v);
    if (in.c.member_count(in.c.cluster_of(v)) > 1) targets.push_back(kFreshCluster);
    if (targets.empty()) continue;
    ++t;
    const ClusterId b = pick(targets);
    const auto mv = make_move(in.g, in.c, v, b);
    const double before = oracle::measure(Measure::nxe, in.sg, in.labels);
    const double after = oracle::measure(Measure::nxe, in.sg, labels_after(in.c, v, b));
    const double predicted = inter_after(Measure::nxe, in.c, mv.change);
    if (after < before || predicted != after) ++nxe_bad;
  }

  for (int t = 0; t < kLemmaTrials;) {
    auto in = random_instance(rng);
    const Vertex v = static_cast<Vertex>(rng() % in.g.vertex_count());
    const auto targets = non_adjacent_clusters(in.g, in.c, v);
    if (targets.empty()) continue;
    ++t;
    const ClusterId b = pick(targets);
    const auto iso = make_move(in.g, in.c, v, kFreshCluster);
    const auto mv = make_move(in.g, in.c, v, b);
    const auto moved = labels_after(in.c, v, b);
    std::vector<ClusterId> alone(in.c.assignment().begin(), in.c.assignment().end());
    if (in.c.member_count(in.c.cluster_of(v)) > 1) alone[v] = kFreshCluster;
    const auto g_iso = exact_gxd(in.sg, oracle::to_labels(alone));
    const auto g_mv = exact_gxd(in.sg, moved);
    const bool cut_left = oracle::measure(Measure::nxe, in.sg, moved) > 0;
    const int want = g_iso < g_mv ? -1 : (g_iso == g_mv ? 0 : 1);
    const int got = sign(compare_moves(Measure::gxd, in.c, iso, mv));
    if (want > 0 || got != want || (cut_left && want != -1)) ++gxd_bad;
    if (want == -1) ++gxd_strict;
  }

  constexpr std::array<Measure, 3> maxima{Measure::mixd, Measure::mixc, Measure::mixe};
  for (int t = 0; t < kLemmaTrials; ++t) {
    auto in = random_instance(rng);
    const Vertex v = static_cast<Vertex>(rng() % in.g.vertex_count());
    auto targets = in.c.cluster_ids();
    targets.push_back(kFreshCluster);
    const ClusterId ta = pick(targets), tb = pick(targets);
    const Measure m = maxima[rng() % maxima.size()];
    const auto a = make_move(in.g, in.c, v, ta);
    const auto b = make_move(in.g, in.c, v, tb);
    const int got = sign(compare_moves(m, in.c, a, b));
    const int want = oracle::l_order(oracle::l_sequence(m, in.sg, labels_after(in.c, v, ta)),
                                     oracle::l_sequence(m, in.sg, labels_after(in.c, v, tb)));
    Clustering ca = in.c, cb = in.c;
    apply_move(ca, a);
    apply_move(cb, b);
    const int full = sign(l_compare(l_sequence(m, in.g, ca), l_sequence(m, in.g, cb)));
    if (got != want || full != want) ++l_bad;
  }

  return {nxe_bad == 0 && gxd_bad == 0 && l_bad == 0,
          fmt::format("{} trials each: nxe {} violations, gxd isolation {} violations ({} strict), "
                      "L-compare {} disagreements",
                      kLemmaTrials, nxe_bad, gxd_bad, gxd_strict, l_bad)};
}

// 3. GVM against the exhaustive optimum.

constexpr int kSmallGraphs = 200;
constexpr double kMinOptimalShare = 0.60;
constexpr double kOptTol = 1e-12;

Outcome criterion_small_optimality() {
  constexpr std::array<double, 3> alphas{0.25, 0.5, 0.75};
  constexpr std::array<Measure, 3> inters{Measure::nxe, Measure::gxd, Measure::mod};
  std::mt19937_64 rng(3003);
  std::size_t cases = 0, optimal = 0, beaten = 0, infeasible = 0;
  for (int i = 0; i < kSmallGraphs; ++i) {
    const int n = 3 + i % 5;
    const double extra = std::uniform_real_distribution<double>(0.0, 0.7)(rng);
    const auto sg = oracle::random_connected_graph(n, extra, rng);
    const Graph g = sg.to_graph();

    struct Row {
      double gid;
      std::array<double, 3> value;
    };
    std::vector<Row> table;
    oracle::for_each_partition(n, [&](const oracle::Labels& l) {
      Row r{oracle::measure(Measure::gid, sg, l), {}};
      for (std::size_t x = 0; x < inters.size(); ++x) r.value[x] = oracle::measure(inters[x], sg, l);
      table.push_back(r);
    });

    for (double alpha : alphas) {
      for (std::size_t x = 0; x < inters.size(); ++x) {
        const Measure inter = inters[x];
        std::optional<double> best;
        for (const auto& r : table) {
          if (r.gid < alpha - kOptTol) continue;
          if (!best || oracle::better(inter, r.value[x], *best, 0.0)) best = r.value[x];
        }
        DccConfig cfg;
        cfg.intra = Measure::gid;
        cfg.alpha = alpha;
        cfg.inter = inter;
        const auto report = greedy_vertex_moving(g, cfg);
        const auto labels = oracle::to_labels(report.clustering.assignment());
        const double got = oracle::measure(inter, sg, labels);
        ++cases;
        if (oracle::measure(Measure::gid, sg, labels) < alpha - kOptTol) ++infeasible;
        if (oracle::better(inter, got, *best, kOptTol)) ++beaten;
        if (std::abs(got - *best) <= kOptTol) ++optimal;
      }
    }
  }
  const double share = static_cast<double>(optimal) / static_cast<double>(cases);
  return {beaten == 0 && infeasible == 0 && share >= kMinOptimalShare,
          fmt::format("{} cases: optimal {:.1f}% (need >= {:.0f}%), {} beat the optimum, {} infeasible", cases,
                      100.0 * share, 100.0 * kMinOptimalShare, beaten, infeasible)};
}

// 4. GVM / GM ratios on small planted graphs.

constexpr double kMinCellShare = 0.80;

Outcome criterion_ratio() {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::ratio;
  spec.planted = {.n = 200, .k = 4, .beta = 1.0, .intra_deg = 5.0, .inter_deg = 3.0, .seed = 0};
  spec.instances = 20;
  spec.intra = {Measure::gid, Measure::mid};
  spec.alphas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  spec.seed = 4004;
  spec.workers = workers();
  const auto summary = summarize_ratios(run_ratio_experiment(spec));
  std::size_t cells = 0, held = 0, mod_held = 0, mod_cells = 0;
  for (const auto& row : summary) {
    if (row.inter == Measure::nxe) continue;
    const bool ok = row.inter == Measure::mod ? row.mean >= 1.0 : row.mean <= 1.0;
    ++cells;
    held += ok ? 1 : 0;
    if (row.inter == Measure::mod) {
      ++mod_cells;
      mod_held += ok ? 1 : 0;
    }
  }
  const double share = static_cast<double>(held) / static_cast<double>(cells);
  return {cells == 2 * 9 * 8 && share >= kMinCellShare,
          fmt::format("{} cells without nxe: inequality holds in {:.1f}% (need >= {:.0f}%), mod {}/{}", cells,
                      100.0 * share, 100.0 * kMinCellShare, mod_held, mod_cells)};
}

// 5. and 6. Recovery of planted partitions.

struct Means {
  double rand_index = 0.0;
  double esd = 0.0;
  double k_found = 0.0;
  std::size_t runs = 0;
};

std::map<std::pair<std::string, Measure>, Means> recovery_means(const std::vector<RecoveryRow>& rows) {
  std::map<std::pair<std::string, Measure>, Means> out;
  for (const auto& r : rows) {
    auto& m = out[{r.intra, r.inter}];
    m.rand_index += r.rand_index;
    m.esd += r.esd;
    m.k_found += static_cast<double>(r.k_found);
    ++m.runs;
  }
  for (auto& [key, m] : out) {
    const auto runs = static_cast<double>(m.runs);
    m.rand_index /= runs;
    m.esd /= runs;
    m.k_found /= runs;
  }
  return out;
}

constexpr double kMaxRandIndex = 0.15;
constexpr double kMaxEsd = 0.3;

Outcome criterion_recovery() {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::recovery;
  spec.planted = {.n = 1000, .k = 10, .beta = 1.0, .intra_deg = 5.0, .inter_deg = 3.0, .seed = 0};
  spec.instances = 10;
  spec.intra = {Measure::gid};
  spec.alpha_factor = 0.75;
  spec.mod_baseline = false;
  spec.seed = 5005;
  spec.workers = workers();
  const auto means = recovery_means(run_recovery_experiment(spec));
  bool ok = true;
  std::string detail;
  for (Measure x : {Measure::mod, Measure::nxe, Measure::gxd}) {
    const auto& m = means.at({"gid", x});
    ok = ok && m.runs == 10 && m.rand_index <= kMaxRandIndex && m.esd <= kMaxEsd;
    detail += fmt::format("{}: R_g {:.4f} ESD {:.4f}; ", name(x), m.rand_index, m.esd);
  }
  const auto& aixd = means.at({"gid", Measure::aixd});
  ok = ok && aixd.k_found > 10.0;
  detail += fmt::format("aixd mean k {:.1f} (need > 10)", aixd.k_found);
  return {ok, detail};
}

constexpr std::size_t kResolutionK = 60;
constexpr std::size_t kMinUnderSeeds = 7;

Outcome criterion_resolution() {
  ExperimentSpec spec;
  spec.kind = ExperimentKind::recovery;
  spec.planted = {.n = 1200, .k = kResolutionK, .beta = 1.0, .intra_deg = 5.0, .inter_deg = 3.0, .seed = 0};
  spec.instances = 10;
  spec.intra = {Measure::mid};
  spec.alpha_factor = 0.75;
  spec.mod_baseline = true;
  spec.seed = 6006;
  spec.workers = workers();
  const auto rows = run_recovery_experiment(spec);
  std::size_t under = 0, baseline_runs = 0;
  double base_gap = 0.0, mid_gap = 0.0;
  std::size_t mid_runs = 0;
  for (const auto& r : rows) {
    const double gap = std::abs(static_cast<double>(r.k_found) - static_cast<double>(kResolutionK));
    if (r.intra == "none") {
      ++baseline_runs;
      under += r.k_found < kResolutionK ? 1 : 0;
      base_gap += gap;
    } else if (r.intra == "mid" && r.inter == Measure::mod) {
      ++mid_runs;
      mid_gap += gap;
    }
  }
  base_gap /= static_cast<double>(baseline_runs);
  mid_gap /= static_cast<double>(mid_runs);
  return {baseline_runs == 10 && mid_runs == 10 && under >= kMinUnderSeeds && mid_gap < base_gap,
          fmt::format("unconstrained mod below {} clusters on {}/10 seeds (need >= {}); mean |k - {}|: "
                      "unconstrained {:.1f}, mid-constrained {:.1f}",
                      kResolutionK, under, kMinUnderSeeds, kResolutionK, base_gap, mid_gap)};
}

// 7. One local-moving round scales linearly in m.

constexpr double kMaxDoublingFactor = 2.5;

Outcome criterion_scaling() {
  // Samples rotate over the graphs so that drift in machine load hits every
  // size alike; the minimum over samples estimates the undisturbed cost.
  constexpr int kSamples = 15;
  std::vector<PlantedGraph> graphs;
  for (double deg : {4.0, 8.0, 16.0, 32.0}) {
    graphs.push_back(
        generate({.n = 50'000, .k = 50, .beta = 1.0, .intra_deg = deg, .inter_deg = 0.6 * deg, .seed = 7007}));
  }
  DccConfig cfg;
  cfg.intra = Measure::gid;
  cfg.alpha = 0.0;
  cfg.inter = Measure::mod;
  cfg.max_rounds = 1;
  std::vector<double> seconds(graphs.size(), INFINITY), edges;
  for (const auto& p : graphs) edges.push_back(static_cast<double>(p.graph.total_edge_weight()));
  for (int r = 0; r < kSamples; ++r) {
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      const Graph& g = graphs[i].graph;
      Clustering c = Clustering::singletons(g);
      const auto start = std::chrono::steady_clock::now();
      local_moving(g, c, cfg);
      const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      seconds[i] = std::min(seconds[i], t);
    }
  }
  bool ok = true;
  std::string detail = "fastest round time";
  for (std::size_t i = 0; i < seconds.size(); ++i) {
    detail += fmt::format(" m={:.0f}: {:.2f} ms", edges[i], 1e3 * seconds[i]);
    if (i > 0) {
      const double factor = seconds[i] / seconds[i - 1];
      ok = ok && factor <= kMaxDoublingFactor;
      detail += fmt::format(" (x{:.2f})", factor);
    }
    detail += i + 1 < seconds.size() ? ";" : "";
  }
  return {ok, detail + fmt::format(", need each factor <= {}", kMaxDoublingFactor)};
}

// 8. Byte-identical CLI output across repeated runs.

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).generic_string()] = slurp(e.path());
  }
  return files;
}

Outcome criterion_determinism() {
  const std::string karate = std::string(DCC_DATA_DIR) + "/karate.edges";
  const std::vector<std::string> commands{
      "generate --n 300 --k 5 --beta 1.5 --seed 7 --out planted",
      "cluster gvm --graph planted.edges --intra mid --alpha 0.2 --inter mixc --scan-order shuffle --seed 3 "
      "--out gvm.clustering",
      "cluster gm --graph planted.edges --intra gid --alpha 0.3 --inter gxd",
      "cluster mod --graph " + karate + " --scan-order shuffle --seed 5",
      "measure --graph planted.edges --clustering gvm.clustering",
      "compare --graph planted.edges --clustering planted.clustering gvm.clustering",
      "experiment ratio --n 120 --k 3 --instances 2 --intra gid,mid --alpha 0.2,0.5 --seed 11 --workers 4 "
      "--save-clusterings --out ratio",
      "experiment ranking --graph " + karate +
          " --n 120 --k 3 --instances 1 --alpha 0.3 --scan-order shuffle --workers 4 --out ranking",
      "experiment recovery --n 300 --k 5 --instances 3 --seed 2 --workers 4 --save-clusterings --out recovery",
      "plot --csv ratio/ratio_summary.csv --out plots",
      "plot --csv ranking/ranking.csv --out plots",
      "plot --csv recovery/recovery.csv --out plots",
  };
  const fs::path base = fs::temp_directory_path() / fmt::format("dcc_acceptance_{}", ::getpid());
  fs::remove_all(base);
  std::vector<std::map<std::string, std::string>> outputs;
  for (const char* run : {"a", "b"}) {
    const fs::path dir = base / run;
    fs::create_directories(dir);
    for (std::size_t i = 0; i < commands.size(); ++i) {
      const std::string line = fmt::format("cd '{}' && '{}' {} > stdout_{:02}.txt 2> stderr_{:02}.txt",
                                           dir.string(), DCC_BINARY, commands[i], i, i);
      if (std::system(line.c_str()) != 0) {
        return {false, fmt::format("command failed: dcc {}", commands[i])};
      }
    }
    outputs.push_back(tree(dir));
  }
  fs::remove_all(base);
  std::size_t differing = 0;
  std::string first;
  for (const auto& [path, bytes] : outputs[0]) {
    const auto it = outputs[1].find(path);
    if (it == outputs[1].end() || it->second != bytes) {
      if (differing++ == 0) first = path;
    }
  }
  differing += outputs[1].size() > outputs[0].size() ? outputs[1].size() - outputs[0].size() : 0;
  return {differing == 0 && outputs[0].size() > commands.size(),
          fmt::format("{} commands, {} files compared, {} differ{}", commands.size(), outputs[0].size(), differing,
                      first.empty() ? "" : " (first: " + first + ")")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"measure-oracle equivalence", criterion_oracle},
      {"move-lemma properties", criterion_lemmas},
      {"small-instance optimality", criterion_small_optimality},
      {"GVM/GM ratio on planted graphs", criterion_ratio},
      {"planted partition recovery", criterion_recovery},
      {"modularity resolution limit", criterion_resolution},
      {"local-moving round scaling", criterion_scaling},
      {"CLI determinism", criterion_determinism},
  };
  std::set<std::size_t> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::strtoul(argv[i], nullptr, 10));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected.empty() && !selected.contains(i + 1)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.pass ? 0 : 1;
    fmt::print("{} [{}] {}: {} [{:.1f} s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail, secs);
    std::fflush(stdout);
  }
  return failed;
}
