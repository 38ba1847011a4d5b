#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "dcc/algorithms.hpp"
#include "dcc/distances.hpp"
#include "dcc/experiments.hpp"
#include "dcc/generators.hpp"
#include "dcc/io.hpp"
#include "dcc/measures.hpp"
#include "dcc/plots.hpp"

namespace dcc {
namespace {

Measure measure_arg(const std::string& text) {
  const auto m = parse_measure(text);
  if (!m) throw std::invalid_argument("unknown measure '" + text + "'");
  return *m;
}

std::vector<Measure> measure_list(const std::vector<std::string>& texts) {
  std::vector<Measure> out;
  for (const auto& t : texts) out.push_back(measure_arg(t));
  return out;
}

GraphFormat format_arg(const std::string& text) {
  const auto f = parse_graph_format(text);
  if (!f) throw std::invalid_argument("unknown graph format '" + text + "'");
  return *f;
}

ScanOrder scan_order_arg(const std::string& text) {
  const auto s = parse_scan_order(text);
  if (!s) throw std::invalid_argument("unknown scan order '" + text + "'");
  return *s;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void print_measures(std::ostream& out, const Graph& g, const Clustering& c) {
  out << "measure,value\n";
  out << "k," << c.cluster_count() << '\n';
  for (Measure m : kAllMeasures) out << name(m) << ',' << format_number(eval(m, g, c)) << '\n';
}

struct GraphArgs {
  std::string path;
  std::string format = "edge-list";

  void add(CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--graph", path, "graph file");
    if (required) opt->required();
    cmd->add_option("--format", format, "edge-list or metis")->capture_default_str();
  }
  Graph load() const { return load_graph(path, format_arg(format)); }
};

struct PlantedArgs {
  PlantedConfig cfg;

  void add(CLI::App* cmd) {
    cmd->add_option("--n", cfg.n, "vertex count")->capture_default_str();
    cmd->add_option("--k", cfg.k, "planted cluster count")->capture_default_str();
    cmd->add_option("--beta", cfg.beta, "cluster size skew")->capture_default_str();
    cmd->add_option("--intra-deg", cfg.intra_deg, "expected intracluster degree")->capture_default_str();
    cmd->add_option("--inter-deg", cfg.inter_deg, "expected intercluster degree")->capture_default_str();
  }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Density-constrained graph clustering"};
  app.name("dcc");
  app.require_subcommand(1);

  // cluster
  auto* cluster = app.add_subcommand("cluster", "cluster a graph with gvm, gm or unconstrained modularity");
  std::string algorithm;
  GraphArgs cluster_graph;
  std::string intra = "gid", inter = "mod", scan = "ascending";
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::string out_path;
  std::size_t max_rounds = 0;
  cluster->add_option("algorithm", algorithm, "gvm, gm or mod")
      ->required()
      ->check(CLI::IsMember({"gvm", "gm", "mod"}));
  cluster_graph.add(cluster);
  cluster->add_option("--intra", intra, "constrained intracluster measure")->capture_default_str();
  cluster->add_option("--alpha", alpha, "lower bound on the intracluster measure")->capture_default_str();
  cluster->add_option("--inter", inter, "intercluster objective")->capture_default_str();
  cluster->add_option("--seed", seed, "seed for shuffled scans")->capture_default_str();
  cluster->add_option("--scan-order", scan, "ascending or shuffle")->capture_default_str();
  cluster->add_option("--max-rounds", max_rounds, "rounds per local-moving call (0: until convergence)");
  cluster->add_option("--out", out_path, "clustering file; measures go to stdout when set");

  // measure
  auto* measure = app.add_subcommand("measure", "evaluate all measures on a clustering");
  GraphArgs measure_graph;
  std::string measure_clustering;
  measure_graph.add(measure);
  measure->add_option("--clustering", measure_clustering, "clustering file")->required();

  // generate
  auto* gen = app.add_subcommand("generate", "sample a planted-partition graph");
  PlantedArgs gen_args;
  std::uint64_t gen_seed = 0;
  std::string prefix;
  gen_args.add(gen);
  gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
  gen->add_option("--out", prefix, "writes PREFIX.edges and PREFIX.clustering")->required();

  // compare
  auto* compare = app.add_subcommand("compare", "distances between two clusterings of a graph");
  GraphArgs compare_graph;
  std::vector<std::string> compare_files;
  compare_graph.add(compare);
  compare->add_option("--clustering", compare_files, "two clustering files")->required()->expected(2);

  // experiment
  auto* exp = app.add_subcommand("experiment", "run an experiment family and write CSV");
  std::string kind;
  std::vector<std::string> exp_graphs;
  std::string exp_format = "edge-list";
  PlantedArgs exp_planted;
  std::size_t instances = 0;
  std::vector<std::string> exp_intra, exp_inter;
  std::vector<double> exp_alpha;
  double alpha_factor = 0.75;
  std::uint64_t exp_seed = 0;
  std::string exp_scan = "ascending";
  std::size_t workers = 1;
  std::string exp_out;
  bool save_clusterings = false;
  bool no_baseline = false;
  exp->add_option("kind", kind, "ratio, ranking or recovery")
      ->required()
      ->check(CLI::IsMember({"ratio", "ranking", "recovery"}));
  exp->add_option("--graph", exp_graphs, "graph files (ratio, ranking)");
  exp->add_option("--format", exp_format, "edge-list or metis")->capture_default_str();
  exp_planted.add(exp);
  exp->add_option("--instances", instances, "planted instances (default 10 for recovery, 5 without --graph)");
  exp->add_option("--intra", exp_intra, "intracluster measures")->delimiter(',');
  exp->add_option("--alpha", exp_alpha, "alpha grid; for recovery a single override")->delimiter(',');
  exp->add_option("--alpha-factor", alpha_factor, "recovery alpha as a multiple of p_in")->capture_default_str();
  exp->add_option("--inter", exp_inter, "intercluster objectives")->delimiter(',');
  exp->add_option("--seed", exp_seed, "master seed")->capture_default_str();
  exp->add_option("--scan-order", exp_scan, "ascending or shuffle")->capture_default_str();
  exp->add_option("--workers", workers, "parallel runs (DCC_WORKERS overrides)")->capture_default_str();
  exp->add_option("--out", exp_out, "output directory")->required();
  exp->add_flag("--save-clusterings", save_clusterings, "persist every clustering and generated graph");
  exp->add_flag("--no-baseline", no_baseline, "recovery: skip the unconstrained modularity rows");

  // plot
  auto* plot = app.add_subcommand("plot", "write a gnuplot script for an experiment CSV");
  std::string plot_csv, plot_out;
  plot->add_option("--csv", plot_csv, "experiment CSV")->required();
  plot->add_option("--out", plot_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*cluster) {
      const Graph g = cluster_graph.load();
      DccConfig cfg;
      cfg.intra = measure_arg(intra);
      cfg.alpha = alpha;
      cfg.inter = measure_arg(inter);
      cfg.seed = seed;
      cfg.scan_order = scan_order_arg(scan);
      if (max_rounds > 0) cfg.max_rounds = max_rounds;
      RunReport report;
      if (algorithm == "gvm") {
        report = greedy_vertex_moving(g, cfg);
      } else if (algorithm == "gm") {
        report = greedy_merge(g, cfg);
      } else {
        report = modularity_mode(g, cfg.scan_order, cfg.seed);
      }
      if (out_path.empty()) {
        write_clustering(out, report.clustering);
      } else {
        save_clustering(out_path, report.clustering);
        print_measures(out, g, report.clustering);
      }
    } else if (*measure) {
      const Graph g = measure_graph.load();
      const auto labels = load_labels(measure_clustering);
      print_measures(out, g, Clustering::from_labels(g, labels));
    } else if (*gen) {
      PlantedConfig cfg = gen_args.cfg;
      cfg.seed = gen_seed;
      const auto planted = generate(cfg);
      save_edge_list(prefix + ".edges", planted.graph);
      save_clustering(prefix + ".clustering", reference_clustering(planted));
      out << "n,m,k,p_in,p_out\n"
          << planted.graph.vertex_count() << ',' << planted.graph.total_edge_weight() << ','
          << planted.reference.sizes.size() << ',' << format_number(planted.probabilities.p_in) << ','
          << format_number(planted.probabilities.p_out) << '\n';
    } else if (*compare) {
      const Graph g = compare_graph.load();
      const auto a = Clustering::from_labels(g, load_labels(compare_files[0]));
      const auto b = Clustering::from_labels(g, load_labels(compare_files[1]));
      out << "rand_index,esd,k_first,k_second\n"
          << format_number(rand_index_graph(g, a, b)) << ',' << format_number(esd(g, a, b)) << ','
          << a.cluster_count() << ',' << b.cluster_count() << '\n';
    } else if (*exp) {
      ExperimentSpec spec;
      spec.kind = *parse_experiment_kind(kind);
      for (const auto& path : exp_graphs) spec.files.push_back({path, format_arg(exp_format)});
      spec.planted = exp_planted.cfg;
      spec.instances = instances;
      if (instances == 0 && (spec.kind == ExperimentKind::recovery || exp_graphs.empty())) {
        spec.instances = spec.kind == ExperimentKind::recovery ? 10 : 5;
      }
      if (spec.kind == ExperimentKind::recovery) {
        spec.intra = {Measure::gid, Measure::mid};
        if (exp_alpha.size() > 1) throw std::invalid_argument("recovery takes a single --alpha override");
        if (exp_alpha.size() == 1) spec.alpha_override = exp_alpha[0];
      } else if (!exp_alpha.empty()) {
        spec.alphas = exp_alpha;
      }
      if (!exp_intra.empty()) spec.intra = measure_list(exp_intra);
      if (!exp_inter.empty()) spec.inter = measure_list(exp_inter);
      spec.alpha_factor = alpha_factor;
      spec.mod_baseline = !no_baseline;
      spec.seed = exp_seed;
      spec.scan_order = scan_order_arg(exp_scan);
      spec.workers = workers;
      const std::filesystem::path dir = exp_out;
      if (save_clusterings) spec.save_dir = dir / "runs";
      std::filesystem::create_directories(dir);

      std::vector<std::filesystem::path> written;
      if (spec.kind == ExperimentKind::ratio) {
        const auto rows = run_ratio_experiment(spec);
        write_file(dir / "ratio.csv", to_csv(rows));
        write_file(dir / "ratio_summary.csv", to_csv(summarize_ratios(rows)));
        written = {dir / "ratio.csv", dir / "ratio_summary.csv"};
      } else if (spec.kind == ExperimentKind::ranking) {
        write_file(dir / "ranking.csv", to_csv(run_ranking_experiment(spec)));
        written = {dir / "ranking.csv"};
      } else {
        write_file(dir / "recovery.csv", to_csv(run_recovery_experiment(spec)));
        written = {dir / "recovery.csv"};
      }
      for (const auto& p : written) out << p.string() << '\n';
    } else if (*plot) {
      const auto files = emit_plots(plot_csv, plot_out);
      out << files.script.string() << '\n';
      for (const auto& d : files.data) out << d.string() << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace dcc
