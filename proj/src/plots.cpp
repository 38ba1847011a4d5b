#include "dcc/plots.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "dcc/io.hpp"

namespace dcc {
namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError(1, fmt::format("missing column '{}'", name));
    return static_cast<std::size_t>(it - header.begin());
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Table t;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ParseError(number, fmt::format("expected {} cells, found {}", t.header.size(), cells.size()));
    }
    t.rows.push_back(std::move(cells));
  }
  return t;
}

double number(const std::string& cell) {
  if (cell == "inf") return INFINITY;
  if (cell == "-inf") return -INFINITY;
  if (cell == "nan") return NAN;
  std::size_t used = 0;
  const double v = std::stod(cell, &used);
  if (used != cell.size()) throw std::invalid_argument("not a number: " + cell);
  return v;
}

// Parses numeric cells, reporting the 1-based file line (header is line 1).
double cell_number(const Table& t, std::size_t row, std::size_t col) {
  try {
    return number(t.rows[row][col]);
  } catch (const std::exception&) {
    throw ParseError(row + 2, fmt::format("bad number '{}'", t.rows[row][col]));
  }
}

// Keeps first-appearance order.
struct Index {
  std::vector<std::string> names;
  std::map<std::string, std::size_t> at;
  std::size_t operator()(const std::string& key) {
    auto [it, fresh] = at.try_emplace(key, names.size());
    if (fresh) names.push_back(key);
    return it->second;
  }
};

std::string gp_value(double v) { return std::isfinite(v) ? fmt::format("{}", v) : "?"; }

std::string preamble(const std::string& stem, int width, int height) {
  return fmt::format(
      "set terminal pngcairo size {},{} noenhanced\n"
      "set output '{}.png'\n"
      "set datafile missing '?'\n"
      "set grid ytics\n",
      width, height, stem);
}

void write(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string empty_plot(const std::string& stem) {
  return preamble(stem, 640, 480) + "set title 'no data'\nunset key\nplot [0:1][0:1] NaN notitle\n";
}

std::string ratio_plot(const Table& t, const std::string& stem, const std::filesystem::path& data) {
  const bool summary = std::find(t.header.begin(), t.header.end(), "mean_ratio") != t.header.end();
  const std::size_t c_intra = t.column("intra"), c_alpha = t.column("alpha"), c_inter = t.column("inter");
  const std::size_t c_ratio = t.column(summary ? "mean_ratio" : "ratio");

  Index groups, inters;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, std::size_t>> sums;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::size_t g = groups(row[c_intra] + "_" + row[c_alpha]);
    const std::size_t x = inters(row[c_inter]);
    auto& [sum, count] = sums[{g, x}];
    sum += cell_number(t, r, c_ratio);
    ++count;
  }
  std::string dat = "group";
  for (const auto& x : inters.names) dat += " " + x;
  dat += "\n";
  for (std::size_t g = 0; g < groups.names.size(); ++g) {
    dat += groups.names[g];
    for (std::size_t x = 0; x < inters.names.size(); ++x) {
      const auto it = sums.find({g, x});
      dat += " " + (it == sums.end() ? std::string("?") : gp_value(it->second.first / it->second.second));
    }
    dat += "\n";
  }
  write(data, dat);

  return preamble(stem, 1400, 600) +
         fmt::format(
             "set title 'GVM / GM ratio of the objective'\n"
             "set style data histograms\n"
             "set style histogram clustered gap 1\n"
             "set style fill solid 0.8 border -1\n"
             "set xtics rotate by -60\n"
             "set key outside right\n"
             "set ylabel 'mean ratio'\n"
             "plot for [i=2:{}] '{}' using i:xtic(1) title columnhead(i)\n",
             inters.names.size() + 1, data.filename().string());
}

std::string ranking_plot(const Table& t, const std::string& stem, const std::filesystem::path& data) {
  const std::size_t c_judge = t.column("judge"), c_objective = t.column("objective"), c_rank = t.column("rank");
  Index judges, objectives;
  std::size_t max_rank = 1;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> counts;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const double rank = cell_number(t, r, c_rank);
    if (rank < 1 || rank != std::floor(rank)) throw ParseError(r + 2, "rank must be a positive integer");
    const auto rk = static_cast<std::size_t>(rank);
    max_rank = std::max(max_rank, rk);
    ++counts[{judges(row[c_judge]), objectives(row[c_objective]), rk}];
  }
  std::string dat;
  for (std::size_t j = 0; j < judges.names.size(); ++j) {
    if (j > 0) dat += "\n\n";
    dat += "objective";
    for (std::size_t rk = 1; rk <= max_rank; ++rk) dat += fmt::format(" rank{}", rk);
    dat += "\n";
    for (std::size_t y = 0; y < objectives.names.size(); ++y) {
      dat += objectives.names[y];
      for (std::size_t rk = 1; rk <= max_rank; ++rk) {
        const auto it = counts.find({j, y, rk});
        dat += fmt::format(" {}", it == counts.end() ? 0 : it->second);
      }
      dat += "\n";
    }
  }
  write(data, dat);

  const std::size_t cols = std::min<std::size_t>(3, judges.names.size());
  const std::size_t rows = (judges.names.size() + cols - 1) / cols;
  std::string script = preamble(stem, static_cast<int>(480 * cols), static_cast<int>(360 * rows)) +
                       "set style data histograms\n"
                       "set style histogram rowstacked\n"
                       "set style fill solid 0.9 border -1\n"
                       "set key off\n" +
                       fmt::format("set multiplot layout {},{}\n", rows, cols);
  for (std::size_t j = 0; j < judges.names.size(); ++j) {
    script += fmt::format("set title 'ranked by {}'\n", judges.names[j]);
    script += fmt::format("plot for [i=2:{}] '{}' index {} using i:xtic(1) title columnhead(i)\n", max_rank + 1,
                          data.filename().string(), j);
  }
  script += "unset multiplot\n";
  return script;
}

std::string recovery_plot(const Table& t, const std::string& stem, const std::filesystem::path& data) {
  const std::size_t c_intra = t.column("intra"), c_inter = t.column("inter");
  const std::size_t c_rand = t.column("rand_index"), c_esd = t.column("esd"), c_k = t.column("k_found");
  Index categories;
  std::vector<std::pair<double, std::size_t>> k_sums;
  std::string samples;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::string category = row[c_intra] + ":" + row[c_inter];
    const std::size_t c = categories(category);
    if (k_sums.size() <= c) k_sums.resize(c + 1);
    k_sums[c].first += cell_number(t, r, c_k);
    ++k_sums[c].second;
    samples += fmt::format("{} {} {}\n", category, gp_value(cell_number(t, r, c_rand)),
                           gp_value(cell_number(t, r, c_esd)));
  }
  std::string dat = samples + "\n\n";
  for (std::size_t c = 0; c < categories.names.size(); ++c) {
    dat += fmt::format("{} {}\n", c + 1, gp_value(k_sums[c].first / static_cast<double>(k_sums[c].second)));
  }
  write(data, dat);

  const std::string file = data.filename().string();
  std::string script = preamble(stem, 1400, 900) +
                       "set style fill solid 0.3 border -1\n"
                       "set style boxplot outliers pointtype 7\n"
                       "set xtics rotate by -60\n"
                       "set ytics nomirror\n"
                       "set y2tics\n"
                       "set y2label 'clusters found (mean)'\n"
                       "set yrange [0:1]\n"
                       "set key off\n"
                       "set multiplot layout 2,1\n";
  const char* panels[][2] = {{"2", "graph-based Rand index"}, {"3", "editing set difference"}};
  for (const auto& [col, label] : panels) {
    script += fmt::format(
        "set ylabel '{}'\n"
        "plot '{}' index 0 using (1):{}:(0.5):1 with boxplot lc rgb 'steelblue', \\\n"
        "     '{}' index 1 using 1:2 axes x1y2 with points pointtype 2 pointsize 2 lc rgb 'dark-green'\n",
        label, file, col, file);
  }
  script += "unset multiplot\n";
  return script;
}

}  // namespace

PlotFiles emit_plots(const std::filesystem::path& csv, const std::filesystem::path& out_dir) {
  const Table t = read_table(csv);
  std::filesystem::create_directories(out_dir);
  const std::string stem = csv.stem().string();
  PlotFiles files;
  files.script = out_dir / (stem + ".gp");
  const auto data = out_dir / (stem + ".dat");

  auto has = [&](std::string_view c) { return std::find(t.header.begin(), t.header.end(), c) != t.header.end(); };
  const bool empty = t.header.empty() || t.rows.empty();
  std::string script;
  if (empty) {
    script = empty_plot(stem);
  } else if (has("rand_index")) {
    script = recovery_plot(t, stem, data);
  } else if (has("judge")) {
    script = ranking_plot(t, stem, data);
  } else if (has("ratio") || has("mean_ratio")) {
    script = ratio_plot(t, stem, data);
  } else {
    throw ParseError(1, "unrecognized experiment table header");
  }
  if (!empty) files.data.push_back(data);
  write(files.script, script);
  return files;
}

}  // namespace dcc
