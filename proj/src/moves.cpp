#include "dcc/moves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcc {
namespace {

constexpr double kRelativeTolerance = 1e-12;

struct Sums {
  Weight intra = 0;
  Weight pairs = 0;
  Weight squared_size = 0;
  Weight squared_volume = 0;
  Weight cut = 0;
  std::ptrdiff_t clusters = 0;
};

Sums sums_after(const Clustering& c, const ClusterChange& change) {
  Sums s{c.intra_edge_sum(), c.intra_pair_sum(), c.squared_size_sum(), c.squared_volume_sum(),
         2 * c.intercluster_edges(), static_cast<std::ptrdiff_t>(c.cluster_count())};
  auto apply = [&s](const ClusterStats& st, int sign) {
    s.intra += sign * st.intra;
    s.pairs += sign * pair_count(st.size);
    s.squared_size += sign * st.size * st.size;
    s.squared_volume += sign * st.volume * st.volume;
    s.cut += sign * st.cut;
    s.clusters += sign;
  };
  for (int i = 0; i < change.removed_count; ++i) apply(change.removed[i], -1);
  for (int i = 0; i < change.added_count; ++i) apply(change.added[i], +1);
  return s;
}

double average_after(double sum, const Clustering& c, const ClusterChange& change,
                     double (*term)(const ClusterStats&, const GraphTotals&), double empty_value) {
  const auto& t = c.totals();
  for (int i = 0; i < change.removed_count; ++i) sum -= term(change.removed[i], t);
  for (int i = 0; i < change.added_count; ++i) sum += term(change.added[i], t);
  const auto k = static_cast<std::ptrdiff_t>(c.cluster_count()) - change.removed_count + change.added_count;
  return k == 0 ? empty_value : sum / static_cast<double>(k);
}

template <CutKind kind>
double cut_term(const ClusterStats& s, const GraphTotals& t) {
  return cut_ratio(kind, s, t).value();
}

double density_term(const ClusterStats& s, const GraphTotals&) { return intra_density(s).value(); }

std::weak_ordering compare_real(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  if (std::abs(a - b) <= kRelativeTolerance * scale) return std::weak_ordering::equivalent;
  return a < b ? std::weak_ordering::less : std::weak_ordering::greater;
}

bool contains_id(const ClusterChange& change, ClusterId id) {
  for (int i = 0; i < change.removed_count; ++i) {
    if (change.removed_ids[i] == id) return true;
  }
  return false;
}

// Cut values the clustering after `a` has on the clusters touched by a or b.
int local_values(CutKind kind, const GraphTotals& t, const ClusterChange& a, const ClusterChange& b,
                 std::array<Ratio, 4>& out) {
  int count = 0;
  for (int i = 0; i < a.added_count; ++i) out[count++] = cut_ratio(kind, a.added[i], t);
  for (int i = 0; i < b.removed_count; ++i) {
    if (!contains_id(a, b.removed_ids[i])) out[count++] = cut_ratio(kind, b.removed[i], t);
  }
  std::sort(out.begin(), out.begin() + count, [](const Ratio& x, const Ratio& y) { return x > y; });
  return count;
}

std::weak_ordering l_compare_changes(CutKind kind, const Clustering& c, const ClusterChange& a,
                                     const ClusterChange& b) {
  std::array<Ratio, 4> va{}, vb{};
  const int na = local_values(kind, c.totals(), a, b, va);
  const int nb = local_values(kind, c.totals(), b, a, vb);
  return l_compare(std::span<const Ratio>(va.data(), na), std::span<const Ratio>(vb.data(), nb));
}

}  // namespace

MoveCandidate make_move(const Graph& g, const Clustering& c, Vertex v, ClusterId target,
                        Weight to_source, Weight to_target) {
  MoveCandidate mv;
  const ClusterId source = c.cluster_of(v);
  mv.move = VertexMove{v,         source,           target, to_source, to_target, g.vertex_weight(v),
                       g.self_loop(v), g.weighted_degree(v)};
  const bool alone = c.member_count(source) == 1;
  if (target == source || (target == kFreshCluster && alone)) {
    mv.kind = TargetKind::stay;
    mv.move.target = source;
    mv.move.to_target = to_source;
    return mv;
  }
  if (target != kFreshCluster && !c.contains(target)) {
    throw std::invalid_argument("move target is not an existing cluster");
  }
  mv.kind = target == kFreshCluster ? TargetKind::fresh : TargetKind::existing;

  const auto& m = mv.move;
  const Weight outgoing = m.degree - 2 * m.self_loop;
  auto& ch = mv.change;

  const ClusterStats& src = c.stats(source);
  ch.removed_ids[ch.removed_count] = source;
  ch.removed[ch.removed_count++] = src;
  if (!alone) {
    ch.added[ch.added_count++] = ClusterStats{src.size - m.vertex_weight,
                                              src.intra - m.self_loop - m.to_source,
                                              src.volume - m.degree,
                                              src.cut + 2 * m.to_source - outgoing};
  }

  ClusterStats dst{};
  if (mv.kind == TargetKind::existing) {
    dst = c.stats(target);
    ch.removed_ids[ch.removed_count] = target;
    ch.removed[ch.removed_count++] = dst;
  }
  ch.added[ch.added_count++] = ClusterStats{dst.size + m.vertex_weight,
                                            dst.intra + m.self_loop + m.to_target,
                                            dst.volume + m.degree,
                                            dst.cut + outgoing - 2 * m.to_target};
  return mv;
}

MoveCandidate make_move(const Graph& g, const Clustering& c, Vertex v, ClusterId target) {
  Weight to_source = 0, to_target = 0;
  const ClusterId source = c.cluster_of(v);
  for (const auto& nb : g.neighbors(v)) {
    const ClusterId id = c.cluster_of(nb.target);
    if (id == source) to_source += nb.weight;
    if (id == target && target != source) to_target += nb.weight;
  }
  return make_move(g, c, v, target, to_source, to_target);
}

MoveCandidate make_stay(const Graph& g, const Clustering& c, Vertex v) {
  return make_move(g, c, v, c.cluster_of(v));
}

ClusterChange merge_change(const Clustering& c, ClusterId a, ClusterId b, Weight between) {
  if (a == b || !c.contains(a) || !c.contains(b)) {
    throw std::invalid_argument("merge needs two distinct non-empty clusters");
  }
  ClusterChange ch;
  const auto& sa = c.stats(a);
  const auto& sb = c.stats(b);
  ch.removed_ids = {a, b};
  ch.removed = {sa, sb};
  ch.removed_count = 2;
  ch.added[0] = ClusterStats{sa.size + sb.size, sa.intra + sb.intra + between, sa.volume + sb.volume,
                             sa.cut + sb.cut - 2 * between};
  ch.added_count = 1;
  return ch;
}

double intra_after(Measure intra, const Clustering& c, const ClusterChange& change) {
  switch (intra) {
    case Measure::gid: {
      const Sums s = sums_after(c, change);
      return s.pairs == 0 ? 1.0 : Ratio{s.intra, s.pairs}.value();
    }
    case Measure::mid: {
      std::optional<Ratio> low = c.min_density_excluding(change.removed_ids[0], change.removed_ids[1]);
      for (int i = 0; i < change.added_count; ++i) {
        const Ratio d = intra_density(change.added[i]);
        if (!low || d < *low) low = d;
      }
      return low ? low->value() : 1.0;
    }
    case Measure::aid:
      return average_after(c.density_sum(), c, change, density_term, 1.0);
    default:
      throw std::invalid_argument(std::string(name(intra)) + " is not an intracluster measure");
  }
}

bool feasible_after(Measure intra, double alpha, const Clustering& c, const ClusterChange& change) {
  if (alpha <= 0.0) return true;
  if (intra == Measure::gid) {
    const Sums s = sums_after(c, change);
    if (s.pairs == 0) return 1.0 >= alpha - kRelativeTolerance;
    return static_cast<long double>(s.intra) >=
           (static_cast<long double>(alpha) - kRelativeTolerance) * static_cast<long double>(s.pairs);
  }
  return intra_after(intra, c, change) >= alpha - kRelativeTolerance;
}

double inter_after(Measure inter, const Clustering& c, const ClusterChange& change) {
  const auto& t = c.totals();
  const Sums s = sums_after(c, change);
  switch (inter) {
    case Measure::nxe:
      return static_cast<double>(s.cut / 2);
    case Measure::gxd:
      return Ratio{s.cut / 2, (t.size * t.size - s.squared_size) / 2}.value();
    case Measure::mod: {
      if (t.edges == 0) return 0.0;
      const auto m = static_cast<double>(t.edges);
      return static_cast<double>(s.intra) / m - static_cast<double>(s.squared_volume) / (4.0 * m * m);
    }
    case Measure::aixd:
      return average_after(c.cut_ratio_sum(CutKind::density), c, change, cut_term<CutKind::density>, 0.0);
    case Measure::aixc:
      return average_after(c.cut_ratio_sum(CutKind::conductance), c, change,
                           cut_term<CutKind::conductance>, 0.0);
    case Measure::aixe:
      return average_after(c.cut_ratio_sum(CutKind::expansion), c, change, cut_term<CutKind::expansion>,
                           0.0);
    case Measure::mixd:
    case Measure::mixc:
    case Measure::mixe: {
      const CutKind kind = *info(inter).cut;
      Ratio best{0, 1};
      for (ClusterId id : c.cluster_ids()) {
        if (!contains_id(change, id)) best = std::max(best, cut_ratio(kind, c.stats(id), t));
      }
      for (int i = 0; i < change.added_count; ++i) best = std::max(best, cut_ratio(kind, change.added[i], t));
      return best.value();
    }
    default:
      throw std::invalid_argument(std::string(name(inter)) + " is not an intercluster measure");
  }
}

std::weak_ordering compare_changes(Measure inter, const Clustering& c, const ClusterChange& a,
                                   const ClusterChange& b) {
  const auto& t = c.totals();
  switch (inter) {
    case Measure::nxe: {
      const Sums sa = sums_after(c, a), sb = sums_after(c, b);
      return sa.cut <=> sb.cut;
    }
    case Measure::gxd: {
      const Sums sa = sums_after(c, a), sb = sums_after(c, b);
      const Ratio ra{sa.cut / 2, (t.size * t.size - sa.squared_size) / 2};
      const Ratio rb{sb.cut / 2, (t.size * t.size - sb.squared_size) / 2};
      return ra <=> rb;
    }
    case Measure::mod: {
      if (t.edges == 0) return std::weak_ordering::equivalent;
      const Sums sa = sums_after(c, a), sb = sums_after(c, b);
      // common denominator 4m^2; larger numerator is better
      const Int128 na = static_cast<Int128>(4 * t.edges) * sa.intra - sa.squared_volume;
      const Int128 nb = static_cast<Int128>(4 * t.edges) * sb.intra - sb.squared_volume;
      return nb <=> na;
    }
    case Measure::aixd:
    case Measure::aixc:
    case Measure::aixe:
      return compare_real(inter_after(inter, c, a), inter_after(inter, c, b));
    case Measure::mixd:
    case Measure::mixc:
    case Measure::mixe:
      return l_compare_changes(*info(inter).cut, c, a, b);
    default:
      throw std::invalid_argument(std::string(name(inter)) + " is not an intercluster measure");
  }
}

double intra_after_move(Measure intra, const Clustering& c, const MoveCandidate& mv) {
  return intra_after(intra, c, mv.change);
}

std::weak_ordering compare_moves(Measure inter, const Clustering& c, const MoveCandidate& a,
                                 const MoveCandidate& b) {
  if (a.vertex() != b.vertex() || a.source() != b.source()) {
    throw std::invalid_argument("compared moves must relocate the same vertex from the same cluster");
  }
  return compare_changes(inter, c, a.change, b.change);
}

ClusterId apply_move(Clustering& c, const MoveCandidate& mv) {
  if (mv.kind == TargetKind::stay) return mv.source();
  return c.relocate(mv.move);
}

}  // namespace dcc
