#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dcc {

struct PlotFiles {
  std::filesystem::path script;
  std::vector<std::filesystem::path> data;
};

/// Writes a gnuplot script and its data files for an experiment CSV into
/// `out_dir`, named after the CSV. The experiment kind is read from the
/// header: ratio tables (raw or summary) give grouped bars keyed by
/// (intra, alpha), ranking tables give rank distributions per judging
/// measure, recovery tables give boxplots of both distances with the mean
/// cluster count on the right axis. An empty CSV gives an empty plot.
/// Throws ParseError for unknown headers and malformed rows.
PlotFiles emit_plots(const std::filesystem::path& csv, const std::filesystem::path& out_dir);

}  // namespace dcc
