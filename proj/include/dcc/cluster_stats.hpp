#pragma once

#include <algorithm>
#include <compare>

#include "dcc/graph.hpp"

namespace dcc {

/// Aggregates of one cluster C, all counted on the original graph.
struct ClusterStats {
  Weight size = 0;    // n_C, sum of vertex weights
  Weight intra = 0;   // m_C, intracluster edges including member self-loops
  Weight volume = 0;  // v_C, sum of weighted degrees
  Weight cut = 0;     // x_C, edges leaving C

  friend bool operator==(const ClusterStats&, const ClusterStats&) = default;
};

/// Graph-wide constants the per-cluster ratios refer to.
struct GraphTotals {
  Weight size = 0;    // n
  Weight edges = 0;   // m
  Weight volume = 0;  // 2m
};

inline GraphTotals totals_of(const Graph& g) {
  return {g.total_vertex_weight(), g.total_edge_weight(), 2 * g.total_edge_weight()};
}

__extension__ using Int128 = __int128;

/// Non-negative rational number with exact ordering. A zero denominator is
/// only produced together with a zero numerator and reads as 0.
struct Ratio {
  Weight num = 0;
  Weight den = 1;

  double value() const { return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den); }

  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    const Int128 lhs = static_cast<Int128>(a.num) * (b.den == 0 ? 1 : b.den);
    const Int128 rhs = static_cast<Int128>(b.num) * (a.den == 0 ? 1 : a.den);
    const Int128 l = a.den == 0 ? 0 : lhs;
    const Int128 r = b.den == 0 ? 0 : rhs;
    return l <=> r;
  }
  friend bool operator==(const Ratio& a, const Ratio& b) { return (a <=> b) == 0; }
};

inline Weight pair_count(Weight size) { return size * (size - 1) / 2; }

/// m_C / (n_C choose 2); clusters of weighted size <= 1 have density 1.
inline Ratio intra_density(const ClusterStats& c) {
  if (c.size <= 1) return {1, 1};
  return {c.intra, pair_count(c.size)};
}

enum class CutKind { density, conductance, expansion };

/// Sparsity of the cut (C, V \ C). Any 0/0 is 0.
inline Ratio cut_ratio(CutKind kind, const ClusterStats& c, const GraphTotals& t) {
  Weight den = 0;
  switch (kind) {
    case CutKind::density:
      den = c.size * (t.size - c.size);
      break;
    case CutKind::conductance:
      den = std::min(c.volume, t.volume - c.volume);
      break;
    case CutKind::expansion:
      den = std::min(c.size, t.size - c.size);
      break;
  }
  if (den == 0) return {0, 1};
  return {c.cut, den};
}

}  // namespace dcc
