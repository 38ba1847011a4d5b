#include "dcc/measures.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dcc {
namespace {

constexpr std::array<MeasureInfo, 12> kInfo = {{
    {Measure::gid, "gid", MeasureKind::intra, Aggregation::global, true, std::nullopt},
    {Measure::mid, "mid", MeasureKind::intra, Aggregation::minimum, true, std::nullopt},
    {Measure::aid, "aid", MeasureKind::intra, Aggregation::average, true, std::nullopt},
    {Measure::nxe, "nxe", MeasureKind::inter, Aggregation::global, false, std::nullopt},
    {Measure::gxd, "gxd", MeasureKind::inter, Aggregation::global, false, std::nullopt},
    {Measure::aixd, "aixd", MeasureKind::inter, Aggregation::average, false, CutKind::density},
    {Measure::aixc, "aixc", MeasureKind::inter, Aggregation::average, false, CutKind::conductance},
    {Measure::aixe, "aixe", MeasureKind::inter, Aggregation::average, false, CutKind::expansion},
    {Measure::mixd, "mixd", MeasureKind::inter, Aggregation::maximum, false, CutKind::density},
    {Measure::mixc, "mixc", MeasureKind::inter, Aggregation::maximum, false, CutKind::conductance},
    {Measure::mixe, "mixe", MeasureKind::inter, Aggregation::maximum, false, CutKind::expansion},
    {Measure::mod, "mod", MeasureKind::inter, Aggregation::global, true, std::nullopt},
}};

}  // namespace

const MeasureInfo& info(Measure m) { return kInfo[static_cast<std::size_t>(m)]; }

std::optional<Measure> parse_measure(std::string_view name) {
  for (const auto& entry : kInfo) {
    if (entry.name == name) return entry.id;
  }
  return std::nullopt;
}

double eval(Measure measure, const Graph& g, const Clustering& c) {
  if (g.vertex_count() != c.vertex_count()) {
    throw std::invalid_argument("clustering does not belong to this graph");
  }
  const GraphTotals t = totals_of(g);
  const auto k = static_cast<double>(c.cluster_count());
  const auto& mi = info(measure);

  switch (measure) {
    case Measure::gid:
      if (c.intra_pair_sum() == 0) return 1.0;
      return Ratio{c.intra_edge_sum(), c.intra_pair_sum()}.value();
    case Measure::mid: {
      const auto low = c.min_density_excluding();
      return low ? low->value() : 1.0;
    }
    case Measure::aid: {
      if (k == 0) return 1.0;
      double sum = 0.0;
      for (ClusterId id : c.cluster_ids()) sum += intra_density(c.stats(id)).value();
      return sum / k;
    }
    case Measure::nxe:
      return static_cast<double>(c.intercluster_edges());
    case Measure::gxd: {
      const Weight inter_pairs = (t.size * t.size - c.squared_size_sum()) / 2;
      return Ratio{c.intercluster_edges(), inter_pairs}.value();
    }
    case Measure::mod: {
      if (t.edges == 0) return 0.0;
      const auto m = static_cast<double>(t.edges);
      return static_cast<double>(c.intra_edge_sum()) / m -
             static_cast<double>(c.squared_volume_sum()) / (4.0 * m * m);
    }
    default:
      break;
  }

  const CutKind kind = *mi.cut;
  if (mi.aggregation == Aggregation::average) {
    if (k == 0) return 0.0;
    double sum = 0.0;
    for (ClusterId id : c.cluster_ids()) sum += cut_ratio(kind, c.stats(id), t).value();
    return sum / k;
  }
  Ratio best{0, 1};
  for (ClusterId id : c.cluster_ids()) best = std::max(best, cut_ratio(kind, c.stats(id), t));
  return best.value();
}

ClusterCutValue cluster_cut_value(CutKind kind, const Graph& g, const Clustering& c, ClusterId id) {
  if (!c.contains(id)) {
    throw std::out_of_range("cluster " + std::to_string(id) + " does not exist");
  }
  return {id, cut_ratio(kind, c.stats(id), totals_of(g))};
}

std::vector<Ratio> l_sequence(Measure measure, const Graph& g, const Clustering& c) {
  if (!is_maximum(measure) || is_intra(measure)) {
    throw std::invalid_argument("l_sequence needs mixd, mixc or mixe");
  }
  const GraphTotals t = totals_of(g);
  std::vector<Ratio> values;
  values.reserve(c.cluster_count());
  for (ClusterId id : c.cluster_ids()) values.push_back(cut_ratio(*info(measure).cut, c.stats(id), t));
  std::sort(values.begin(), values.end(), [](const Ratio& a, const Ratio& b) { return a > b; });
  return values;
}

std::strong_ordering l_compare(std::span<const Ratio> a, std::span<const Ratio> b) {
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i) {
    const auto cmp = a[i] <=> b[i];
    if (cmp != 0) return cmp;
  }
  return a.size() <=> b.size();
}

}  // namespace dcc
