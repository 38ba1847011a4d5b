#include "dcc/experiments.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "dcc/distances.hpp"

namespace dcc {
namespace {

struct NamedGraph {
  std::string name;
  Graph graph;
};

std::vector<NamedGraph> collect_graphs(const ExperimentSpec& spec) {
  std::vector<NamedGraph> out;
  std::map<std::string, int> used;
  for (const auto& file : spec.files) {
    std::string name = file.path.stem().string();
    for (char& ch : name)
      if (ch == ',' || ch == '/') ch = '_';
    if (const int n = used[name]++; n > 0) name += "_" + std::to_string(n);
    out.push_back({name, load_graph(file.path, file.format)});
  }
  for (std::size_t i = 0; i < spec.instances; ++i) {
    PlantedConfig cfg = spec.planted;
    cfg.seed = derive_seed(spec.seed, {0, i});
    out.push_back({fmt::format("{}_{}", config_name(spec.planted), i), generate(cfg).graph});
  }
  if (spec.save_dir) {
    std::filesystem::create_directories(*spec.save_dir);
    for (const auto& ng : out) save_edge_list(*spec.save_dir / (ng.name + ".edges"), ng.graph);
  }
  return out;
}

DccConfig run_config(const ExperimentSpec& spec, Measure intra, double alpha, Measure inter, std::uint64_t seed) {
  DccConfig cfg;
  cfg.intra = intra;
  cfg.alpha = alpha;
  cfg.inter = inter;
  cfg.scan_order = spec.scan_order;
  cfg.seed = seed;
  return cfg;
}

void save(const ExperimentSpec& spec, const std::string& folder, const std::string& file, const Clustering& c) {
  if (!spec.save_dir) return;
  const auto dir = *spec.save_dir / folder;
  std::filesystem::create_directories(dir);
  save_clustering(dir / (file + ".clustering"), c);
}

std::string run_file(std::string_view algorithm, Measure intra, double alpha, Measure inter) {
  return fmt::format("{}_{}_{}_{}", algorithm, name(intra), format_number(alpha), name(inter));
}

// True if `a` is strictly better than `b` under x.
bool strictly_better(Measure x, double a, double b, const std::vector<Ratio>& la, const std::vector<Ratio>& lb) {
  if (is_maximum(x)) return l_compare(la, lb) < 0;
  return info(x).maximize ? a > b : a < b;
}

std::string join(std::initializer_list<std::string_view> cells) {
  std::string out;
  for (auto it = cells.begin(); it != cells.end(); ++it) {
    if (it != cells.begin()) out += ',';
    out += *it;
  }
  out += '\n';
  return out;
}

}  // namespace

std::optional<ExperimentKind> parse_experiment_kind(std::string_view name) {
  if (name == "ratio") return ExperimentKind::ratio;
  if (name == "ranking") return ExperimentKind::ranking;
  if (name == "recovery") return ExperimentKind::recovery;
  return std::nullopt;
}

std::vector<double> ExperimentSpec::default_alphas() {
  std::vector<double> out;
  for (int i = 0; i <= 10; ++i) out.push_back(i / 10.0);
  return out;
}

void ExperimentSpec::validate() const {
  if (kind == ExperimentKind::recovery) {
    if (instances == 0) throw std::invalid_argument("recovery needs at least one planted instance");
  } else if (files.empty() && instances == 0) {
    throw std::invalid_argument("experiment needs at least one graph source");
  }
  if (intra.empty() || inter.empty()) throw std::invalid_argument("measure lists must not be empty");
  for (Measure m : intra)
    if (!is_intra(m)) throw std::invalid_argument(std::string(name(m)) + " is not an intracluster measure");
  for (Measure m : inter)
    if (is_intra(m)) throw std::invalid_argument(std::string(name(m)) + " is not an intercluster measure");
  if (kind != ExperimentKind::recovery && alphas.empty()) throw std::invalid_argument("alpha grid is empty");
  for (double a : alphas)
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("alpha outside [0, 1]");
  if (alpha_override && !(*alpha_override >= 0.0 && *alpha_override <= 1.0)) {
    throw std::invalid_argument("alpha outside [0, 1]");
  }
  if (!(alpha_factor >= 0.0)) throw std::invalid_argument("alpha factor must be non-negative");
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coordinates) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32)};
  for (std::uint64_t c : coordinates) {
    words.push_back(static_cast<std::uint32_t>(c));
    words.push_back(static_cast<std::uint32_t>(c >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::size_t resolve_workers(std::size_t requested) {
  if (const char* env = std::getenv("DCC_WORKERS"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(requested, 1);
}

void parallel_for(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& task) {
  workers = std::min(std::max<std::size_t>(workers, 1), std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

double gvm_gm_ratio(double gvm, double gm) {
  if (gm == 0.0) return gvm == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return gvm / gm;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

std::string config_name(const PlantedConfig& cfg) {
  return fmt::format("n{}_k{}_b{}_in{}_out{}", cfg.n, cfg.k, cfg.beta, cfg.intra_deg, cfg.inter_deg);
}

std::vector<RatioRow> run_ratio_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const auto graphs = collect_graphs(spec);
  const std::size_t ni = spec.intra.size(), na = spec.alphas.size(), nx = spec.inter.size();
  std::vector<RatioRow> rows(graphs.size() * ni * na * nx);

  parallel_for(rows.size(), resolve_workers(spec.workers), [&](std::size_t t) {
    const std::size_t x = t % nx, a = (t / nx) % na, i = (t / nx / na) % ni, g = t / nx / na / ni;
    const Measure intra = spec.intra[i], inter = spec.inter[x];
    const double alpha = spec.alphas[a];
    const auto cfg = run_config(spec, intra, alpha, inter, derive_seed(spec.seed, {1, g, i, a, x}));
    const auto gvm = greedy_vertex_moving(graphs[g].graph, cfg);
    const auto gm = greedy_merge(graphs[g].graph, cfg);
    save(spec, graphs[g].name, run_file("gvm", intra, alpha, inter), gvm.clustering);
    save(spec, graphs[g].name, run_file("gm", intra, alpha, inter), gm.clustering);
    const double a_value = gvm.value(inter), b_value = gm.value(inter);
    rows[t] = {graphs[g].name, intra, alpha, inter, a_value, b_value, gvm_gm_ratio(a_value, b_value)};
  });
  return rows;
}

std::vector<RatioSummaryRow> summarize_ratios(const std::vector<RatioRow>& rows) {
  struct Acc {
    std::size_t count = 0;
    double sum = 0.0;
    double log_sum = 0.0;
    bool geo_defined = true;
  };
  std::vector<std::tuple<Measure, double, Measure>> order;
  std::map<std::tuple<int, double, int>, Acc> acc;
  for (const auto& r : rows) {
    const auto key = std::make_tuple(static_cast<int>(r.intra), r.alpha, static_cast<int>(r.inter));
    auto [it, fresh] = acc.try_emplace(key);
    if (fresh) order.emplace_back(r.intra, r.alpha, r.inter);
    Acc& a = it->second;
    ++a.count;
    a.sum += r.ratio;
    if (r.ratio > 0.0 && std::isfinite(r.ratio)) {
      a.log_sum += std::log(r.ratio);
    } else {
      a.geo_defined = false;
    }
  }
  std::vector<RatioSummaryRow> out;
  for (const auto& [intra, alpha, inter] : order) {
    const Acc& a = acc.at({static_cast<int>(intra), alpha, static_cast<int>(inter)});
    const double n = static_cast<double>(a.count);
    out.push_back({intra, alpha, inter, a.count, a.sum / n,
                   a.geo_defined ? std::exp(a.log_sum / n) : std::numeric_limits<double>::quiet_NaN()});
  }
  return out;
}

std::vector<std::size_t> competition_ranks(Measure x, const std::vector<double>& values,
                                           const std::vector<std::vector<Ratio>>& sequences) {
  static const std::vector<Ratio> kNone;
  const std::size_t n = values.size();
  std::vector<std::size_t> ranks(n, 1);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto& la = is_maximum(x) ? sequences[a] : kNone;
      const auto& lb = is_maximum(x) ? sequences[b] : kNone;
      if (strictly_better(x, values[b], values[a], lb, la)) ++ranks[a];
    }
  }
  return ranks;
}

std::vector<RankingRow> run_ranking_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const auto graphs = collect_graphs(spec);
  const std::size_t ni = spec.intra.size(), na = spec.alphas.size(), ny = spec.inter.size();
  std::vector<Clustering> results(graphs.size() * ni * na * ny);

  parallel_for(results.size(), resolve_workers(spec.workers), [&](std::size_t t) {
    const std::size_t y = t % ny, a = (t / ny) % na, i = (t / ny / na) % ni, g = t / ny / na / ni;
    const Measure intra = spec.intra[i], objective = spec.inter[y];
    const double alpha = spec.alphas[a];
    const auto cfg = run_config(spec, intra, alpha, objective, derive_seed(spec.seed, {1, g, i, a, y}));
    results[t] = greedy_vertex_moving(graphs[g].graph, cfg).clustering;
    save(spec, graphs[g].name, run_file("gvm", intra, alpha, objective), results[t]);
  });

  std::vector<RankingRow> rows;
  for (std::size_t g = 0; g < graphs.size(); ++g) {
    for (std::size_t i = 0; i < ni; ++i) {
      for (std::size_t a = 0; a < na; ++a) {
        const std::size_t base = ((g * ni + i) * na + a) * ny;
        for (Measure judge : spec.inter) {
          std::vector<double> values(ny);
          std::vector<std::vector<Ratio>> seqs(ny);
          for (std::size_t y = 0; y < ny; ++y) {
            values[y] = eval(judge, graphs[g].graph, results[base + y]);
            if (is_maximum(judge)) seqs[y] = l_sequence(judge, graphs[g].graph, results[base + y]);
          }
          const auto ranks = competition_ranks(judge, values, seqs);
          for (std::size_t y = 0; y < ny; ++y) {
            rows.push_back({graphs[g].name, spec.intra[i], spec.alphas[a], judge, spec.inter[y], values[y], ranks[y]});
          }
        }
      }
    }
  }
  return rows;
}

std::vector<RecoveryRow> run_recovery_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const std::size_t ns = spec.instances, ni = spec.intra.size(), ny = spec.inter.size();
  const std::string cname = config_name(spec.planted);

  std::vector<PlantedGraph> planted(ns);
  std::vector<Clustering> references(ns);
  std::vector<double> alphas(ns);
  parallel_for(ns, resolve_workers(spec.workers), [&](std::size_t s) {
    PlantedConfig cfg = spec.planted;
    cfg.seed = derive_seed(spec.seed, {2, s});
    planted[s] = generate(cfg);
    references[s] = reference_clustering(planted[s]);
    alphas[s] = spec.alpha_override.value_or(std::min(1.0, spec.alpha_factor * planted[s].probabilities.p_in));
  });
  auto folder = [&](std::size_t s) { return fmt::format("{}_s{}", cname, s); };
  if (spec.save_dir) {
    for (std::size_t s = 0; s < ns; ++s) {
      std::filesystem::create_directories(*spec.save_dir / folder(s));
      save_edge_list(*spec.save_dir / folder(s) / "graph.edges", planted[s].graph);
      save(spec, folder(s), "reference", references[s]);
    }
  }

  // one GVM run per (instance, intra, objective), plus the baseline per instance
  const std::size_t per_instance = ni * ny + (spec.mod_baseline ? 1 : 0);
  std::vector<Clustering> results(ns * per_instance);
  parallel_for(results.size(), resolve_workers(spec.workers), [&](std::size_t t) {
    const std::size_t s = t / per_instance, r = t % per_instance;
    const Graph& g = planted[s].graph;
    if (r == ni * ny) {
      results[t] = modularity_mode(g, spec.scan_order, derive_seed(spec.seed, {3, s})).clustering;
      save(spec, folder(s), "mod_baseline", results[t]);
      return;
    }
    const std::size_t i = r / ny, y = r % ny;
    const auto cfg = run_config(spec, spec.intra[i], alphas[s], spec.inter[y], derive_seed(spec.seed, {4, s, i, y}));
    results[t] = greedy_vertex_moving(g, cfg).clustering;
    save(spec, folder(s), run_file("gvm", spec.intra[i], alphas[s], spec.inter[y]), results[t]);
  });

  std::vector<RecoveryRow> rows;
  for (std::size_t s = 0; s < ns; ++s) {
    const Graph& g = planted[s].graph;
    const std::uint64_t seed = derive_seed(spec.seed, {2, s});
    auto row = [&](std::string intra, Measure x, std::string objective, const Clustering& c) {
      return RecoveryRow{cname,
                         seed,
                         std::move(intra),
                         alphas[s],
                         x,
                         std::move(objective),
                         rand_index_graph(g, c, references[s]),
                         esd(g, c, references[s]),
                         c.cluster_count(),
                         references[s].cluster_count()};
    };
    for (std::size_t i = 0; i < ni; ++i) {
      const std::size_t base = s * per_instance + i * ny;
      for (Measure x : spec.inter) {
        std::size_t best = 0;
        double best_value = eval(x, g, results[base]);
        std::vector<Ratio> best_seq = is_maximum(x) ? l_sequence(x, g, results[base]) : std::vector<Ratio>{};
        for (std::size_t y = 1; y < ny; ++y) {
          const double v = eval(x, g, results[base + y]);
          std::vector<Ratio> seq = is_maximum(x) ? l_sequence(x, g, results[base + y]) : std::vector<Ratio>{};
          if (strictly_better(x, v, best_value, seq, best_seq)) {
            best = y;
            best_value = v;
            best_seq = std::move(seq);
          }
        }
        rows.push_back(row(std::string(name(spec.intra[i])), x, std::string(name(spec.inter[best])), results[base + best]));
      }
    }
    if (spec.mod_baseline) {
      rows.push_back(row("none", Measure::mod, "mod", results[s * per_instance + ni * ny]));
      rows.back().alpha = 0.0;
    }
  }
  return rows;
}

std::string to_csv(const std::vector<RatioRow>& rows) {
  std::string out = "graph,intra,alpha,inter,gvm,gm,ratio\n";
  for (const auto& r : rows) {
    out += join({r.graph, name(r.intra), format_number(r.alpha), name(r.inter), format_number(r.gvm),
                 format_number(r.gm), format_number(r.ratio)});
  }
  return out;
}

std::string to_csv(const std::vector<RatioSummaryRow>& rows) {
  std::string out = "intra,alpha,inter,graphs,mean_ratio,geomean_ratio\n";
  for (const auto& r : rows) {
    out += join({name(r.intra), format_number(r.alpha), name(r.inter), std::to_string(r.graphs),
                 format_number(r.mean), format_number(r.geo_mean)});
  }
  return out;
}

std::string to_csv(const std::vector<RankingRow>& rows) {
  std::string out = "graph,intra,alpha,judge,objective,value,rank\n";
  for (const auto& r : rows) {
    out += join({r.graph, name(r.intra), format_number(r.alpha), name(r.judge), name(r.objective),
                 format_number(r.value), std::to_string(r.rank)});
  }
  return out;
}

std::string to_csv(const std::vector<RecoveryRow>& rows) {
  std::string out = "config,seed,intra,alpha,inter,objective,rand_index,esd,k_found,k_reference\n";
  for (const auto& r : rows) {
    out += join({r.config, std::to_string(r.seed), r.intra, format_number(r.alpha), name(r.inter), r.objective,
                 format_number(r.rand_index), format_number(r.esd), std::to_string(r.k_found),
                 std::to_string(r.k_reference)});
  }
  return out;
}

}  // namespace dcc
