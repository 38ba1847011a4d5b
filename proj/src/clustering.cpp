#include "dcc/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace dcc {
namespace {

constexpr std::array<CutKind, 3> kCutKinds = {CutKind::density, CutKind::conductance,
                                              CutKind::expansion};

bool low_less(const Ratio& da, ClusterId ia, const Ratio& db, ClusterId ib) {
  const auto cmp = da <=> db;
  if (cmp != 0) return cmp < 0;
  return ia < ib;
}

}  // namespace

Clustering Clustering::singletons(const Graph& g) {
  Clustering c;
  c.assignment_.resize(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) c.assignment_[v] = v;
  c.init_from_assignment(g);
  return c;
}

Clustering Clustering::from_labels(const Graph& g, std::span<const std::uint64_t> labels) {
  if (labels.size() != g.vertex_count()) {
    throw std::invalid_argument("clustering has " + std::to_string(labels.size()) +
                                " entries but the graph has " + std::to_string(g.vertex_count()) +
                                " vertices");
  }
  Clustering c;
  c.assignment_.resize(labels.size());
  std::unordered_map<std::uint64_t, ClusterId> dense;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto [it, inserted] = dense.try_emplace(labels[v], static_cast<ClusterId>(dense.size()));
    c.assignment_[v] = it->second;
  }
  c.init_from_assignment(g);
  return c;
}

void Clustering::init_from_assignment(const Graph& g) {
  const std::size_t n = g.vertex_count();
  totals_ = totals_of(g);
  stats_.assign(n, ClusterStats{});
  member_count_.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    const ClusterId id = assignment_[v];
    auto& s = stats_[id];
    ++member_count_[id];
    s.size += g.vertex_weight(v);
    s.volume += g.weighted_degree(v);
    s.intra += g.self_loop(v);
    for (const auto& nb : g.neighbors(v)) {
      if (assignment_[nb.target] == id) {
        if (v < nb.target) s.intra += nb.weight;
      } else {
        s.cut += nb.weight;
      }
    }
  }
  free_ids_.clear();
  cluster_count_ = 0;
  for (ClusterId id = static_cast<ClusterId>(n); id-- > 0;) {
    if (member_count_[id] == 0) {
      free_ids_.push_back(id);
    } else {
      ++cluster_count_;
    }
  }
  intra_sum_ = pair_sum_ = squared_size_sum_ = squared_volume_sum_ = cut_sum_ = 0;
  for (ClusterId id = 0; id < n; ++id) {
    if (member_count_[id] == 0) continue;
    const auto& s = stats_[id];
    intra_sum_ += s.intra;
    pair_sum_ += pair_count(s.size);
    squared_size_sum_ += s.size * s.size;
    squared_volume_sum_ += s.volume * s.volume;
    cut_sum_ += s.cut;
  }
  refresh_sums();
  low_dirty_ = true;
}

std::vector<ClusterId> Clustering::cluster_ids() const {
  std::vector<ClusterId> ids;
  ids.reserve(cluster_count_);
  for (ClusterId id = 0; id < member_count_.size(); ++id) {
    if (member_count_[id] > 0) ids.push_back(id);
  }
  return ids;
}

ClusterId Clustering::next_fresh_id() const {
  return free_ids_.empty() ? kFreshCluster : free_ids_.back();
}

void Clustering::refresh_sums() {
  density_sum_ = 0.0;
  cut_ratio_sums_ = {};
  for (ClusterId id = 0; id < member_count_.size(); ++id) {
    if (member_count_[id] == 0) continue;
    density_sum_ += intra_density(stats_[id]).value();
    for (auto kind : kCutKinds) {
      cut_ratio_sums_[static_cast<int>(kind)] += cut_ratio(kind, stats_[id], totals_).value();
    }
  }
}

void Clustering::add_cluster_terms(const ClusterStats& s, int sign) {
  intra_sum_ += sign * s.intra;
  pair_sum_ += sign * pair_count(s.size);
  squared_size_sum_ += sign * s.size * s.size;
  squared_volume_sum_ += sign * s.volume * s.volume;
  cut_sum_ += sign * s.cut;
  density_sum_ += sign * intra_density(s).value();
  for (auto kind : kCutKinds) {
    cut_ratio_sums_[static_cast<int>(kind)] += sign * cut_ratio(kind, s, totals_).value();
  }
}

ClusterId Clustering::relocate(const VertexMove& move) {
  const ClusterId source = move.source;
  if (assignment_[move.vertex] != source) {
    throw std::invalid_argument("vertex move names the wrong source cluster");
  }
  if (move.target == source) return source;
  if (move.target == kFreshCluster && member_count_[source] == 1) return source;

  ClusterId target = move.target;
  const bool fresh = target == kFreshCluster;
  if (fresh) {
    target = free_ids_.back();
    free_ids_.pop_back();
  } else if (!contains(target)) {
    throw std::invalid_argument("vertex move targets an empty cluster");
  }

  const Weight outgoing = move.degree - 2 * move.self_loop;
  ClusterStats& src = stats_[source];
  ClusterStats& dst = stats_[target];

  add_cluster_terms(src, -1);
  if (!fresh) add_cluster_terms(dst, -1);

  src.size -= move.vertex_weight;
  src.intra -= move.self_loop + move.to_source;
  src.volume -= move.degree;
  src.cut += 2 * move.to_source - outgoing;

  dst.size += move.vertex_weight;
  dst.intra += move.self_loop + move.to_target;
  dst.volume += move.degree;
  dst.cut += outgoing - 2 * move.to_target;

  --member_count_[source];
  ++member_count_[target];
  if (fresh) ++cluster_count_;
  if (member_count_[source] == 0) {
    stats_[source] = ClusterStats{};
    free_ids_.push_back(source);
    --cluster_count_;
  } else {
    add_cluster_terms(src, +1);
  }
  add_cluster_terms(dst, +1);
  assignment_[move.vertex] = target;

  const std::array<ClusterId, 2> touched{source, target};
  note_modified(touched);
  return target;
}

void Clustering::merge(ClusterId keep, ClusterId absorb, Weight between,
                       std::span<const Vertex> absorbed) {
  if (keep == absorb || !contains(keep) || !contains(absorb)) {
    throw std::invalid_argument("merge needs two distinct non-empty clusters");
  }
  if (absorbed.size() != member_count_[absorb]) {
    throw std::invalid_argument("merge member list does not match the absorbed cluster");
  }
  ClusterStats& k = stats_[keep];
  ClusterStats& a = stats_[absorb];
  add_cluster_terms(k, -1);
  add_cluster_terms(a, -1);
  k.size += a.size;
  k.intra += a.intra + between;
  k.volume += a.volume;
  k.cut += a.cut - 2 * between;
  a = ClusterStats{};
  add_cluster_terms(k, +1);

  for (Vertex v : absorbed) assignment_[v] = keep;
  member_count_[keep] += member_count_[absorb];
  member_count_[absorb] = 0;
  free_ids_.push_back(absorb);
  --cluster_count_;

  const std::array<ClusterId, 2> touched{keep, absorb};
  note_modified(touched);
}

void Clustering::note_modified(std::span<const ClusterId> ids) {
  if (low_dirty_) return;
  if (low_count_ < 3) {
    low_dirty_ = true;
    return;
  }
  for (ClusterId id : ids) {
    for (int i = 0; i < low_count_; ++i) {
      if (low_[i].id == id) {
        low_dirty_ = true;
        return;
      }
    }
  }
  for (ClusterId id : ids) {
    if (!contains(id)) continue;
    const Ratio d = intra_density(stats_[id]);
    if (!low_less(d, id, low_[2].density, low_[2].id)) continue;
    low_[2] = {d, id};
    for (int i = 2; i > 0 && low_less(low_[i].density, low_[i].id, low_[i - 1].density, low_[i - 1].id); --i) {
      std::swap(low_[i], low_[i - 1]);
    }
  }
}

void Clustering::rebuild_low() const {
  low_count_ = 0;
  for (ClusterId id = 0; id < member_count_.size(); ++id) {
    if (member_count_[id] == 0) continue;
    const Ratio d = intra_density(stats_[id]);
    int pos = low_count_;
    if (pos == 3) {
      if (!low_less(d, id, low_[2].density, low_[2].id)) continue;
      pos = 2;
    } else {
      ++low_count_;
    }
    low_[pos] = {d, id};
    for (int i = pos; i > 0 && low_less(low_[i].density, low_[i].id, low_[i - 1].density, low_[i - 1].id); --i) {
      std::swap(low_[i], low_[i - 1]);
    }
  }
  low_dirty_ = false;
}

std::optional<Ratio> Clustering::min_density_excluding(ClusterId a, ClusterId b) const {
  if (low_dirty_) rebuild_low();
  for (int i = 0; i < low_count_; ++i) {
    if (low_[i].id != a && low_[i].id != b) return low_[i].density;
  }
  return std::nullopt;
}

std::vector<ClusterId> Clustering::normalized_labels() const {
  std::vector<ClusterId> relabel(member_count_.size(), kFreshCluster);
  std::vector<ClusterId> labels(assignment_.size());
  ClusterId next = 0;
  for (std::size_t v = 0; v < assignment_.size(); ++v) {
    auto& r = relabel[assignment_[v]];
    if (r == kFreshCluster) r = next++;
    labels[v] = r;
  }
  return labels;
}

bool Clustering::same_partition(const Clustering& other) const {
  return normalized_labels() == other.normalized_labels();
}

void IncidenceScanner::scan(const Graph& g, const Clustering& c, Vertex v,
                            VertexClusterIncidence& out) {
  out.others.clear();
  out.own = 0;
  const ClusterId own = c.cluster_of(v);
  for (const auto& nb : g.neighbors(v)) {
    const ClusterId id = c.cluster_of(nb.target);
    if (id == own) {
      out.own += nb.weight;
      continue;
    }
    if (weight_[id] == 0) touched_.push_back(id);
    weight_[id] += nb.weight;
  }
  std::sort(touched_.begin(), touched_.end());
  out.others.reserve(touched_.size());
  for (ClusterId id : touched_) {
    out.others.emplace_back(id, weight_[id]);
    weight_[id] = 0;
  }
  touched_.clear();
}

VertexClusterIncidence incidence(const Graph& g, const Clustering& c, Vertex v) {
  IncidenceScanner scanner(c.vertex_count());
  VertexClusterIncidence out;
  scanner.scan(g, c, v, out);
  return out;
}

std::vector<ClusterStats> recompute_stats(const Graph& g, const Clustering& c) {
  std::vector<ClusterStats> stats(c.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    auto& s = stats[c.cluster_of(v)];
    s.size += g.vertex_weight(v);
    s.volume += g.weighted_degree(v);
    s.intra += g.self_loop(v);
    for (const auto& nb : g.neighbors(v)) {
      if (c.cluster_of(nb.target) == c.cluster_of(v)) {
        if (v < nb.target) s.intra += nb.weight;
      } else {
        s.cut += nb.weight;
      }
    }
  }
  return stats;
}

bool aggregates_consistent(const Graph& g, const Clustering& c) {
  const auto fresh = recompute_stats(g, c);
  std::size_t k = 0;
  Weight size = 0, volume = 0, cut = 0, intra = 0;
  for (ClusterId id = 0; id < fresh.size(); ++id) {
    if (c.contains(id)) {
      ++k;
      if (!(c.stats(id) == fresh[id])) return false;
    } else if (!(fresh[id] == ClusterStats{})) {
      return false;
    }
    size += fresh[id].size;
    volume += fresh[id].volume;
    cut += fresh[id].cut;
    intra += fresh[id].intra;
  }
  const GraphTotals t = totals_of(g);
  if (k != c.cluster_count() || size != t.size || volume != t.volume) return false;
  if (intra + cut / 2 != t.edges || intra != c.intra_edge_sum() || cut / 2 != c.intercluster_edges()) {
    return false;
  }
  Weight pairs = 0, sq_size = 0, sq_volume = 0;
  for (ClusterId id = 0; id < fresh.size(); ++id) {
    pairs += pair_count(fresh[id].size);
    sq_size += fresh[id].size * fresh[id].size;
    sq_volume += fresh[id].volume * fresh[id].volume;
  }
  if (pairs != c.intra_pair_sum() || sq_size != c.squared_size_sum() ||
      sq_volume != c.squared_volume_sum()) {
    return false;
  }
  Clustering rebuilt = c;
  rebuilt.refresh_sums();
  constexpr double kTol = 1e-9;
  if (std::abs(rebuilt.density_sum() - c.density_sum()) > kTol) return false;
  for (auto kind : kCutKinds) {
    if (std::abs(rebuilt.cut_ratio_sum(kind) - c.cut_ratio_sum(kind)) > kTol) return false;
  }
  return true;
}

}  // namespace dcc
