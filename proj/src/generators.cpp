#include "dcc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace dcc {
namespace {

// Calls emit(index) for each index in [0, count) independently with
// probability p.
template <typename Rng, typename Emit>
void sample_indices(std::uint64_t count, double p, Rng& rng, Emit&& emit) {
  if (count == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < count; ++i) emit(i);
    return;
  }
  std::geometric_distribution<std::uint64_t> skip(p);
  std::uint64_t i = skip(rng);
  while (i < count) {
    emit(i);
    const std::uint64_t gap = skip(rng);
    if (gap >= count - i) break;
    i += gap + 1;
  }
}

}  // namespace

std::vector<std::size_t> cluster_sizes(std::size_t n, std::size_t k, double beta) {
  if (k == 0 || k > n) throw std::invalid_argument("need 1 <= k <= n");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  std::vector<std::size_t> sizes(k);
  std::size_t previous = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(k);
    auto boundary = static_cast<std::size_t>(std::llround(static_cast<double>(n) * std::pow(frac, beta)));
    boundary = std::clamp(boundary, previous, n);
    if (i == k) boundary = n;
    sizes[i - 1] = boundary - previous;
    previous = boundary;
  }
  for (auto& s : sizes) {
    if (s != 0) continue;
    auto largest = std::max_element(sizes.begin(), sizes.end());
    --*largest;
    s = 1;
  }
  return sizes;
}

EdgeProbabilities derive_probabilities(const std::vector<std::size_t>& sizes, double intra_deg,
                                       double inter_deg) {
  if (intra_deg < 0.0 || inter_deg < 0.0) throw std::invalid_argument("degrees must be non-negative");
  const double n = static_cast<double>(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}));
  double intra_slots = 0.0, inter_slots = 0.0;
  for (std::size_t s : sizes) {
    const auto sd = static_cast<double>(s);
    intra_slots += sd * (sd - 1.0);
    inter_slots += sd * (n - sd);
  }
  auto solve = [&](double degree, double slots, const char* what) {
    if (degree == 0.0) return 0.0;
    if (slots == 0.0) {
      throw std::invalid_argument(std::string("no ") + what + " pairs to realize a positive degree");
    }
    const double p = degree * n / slots;
    if (p > 1.0) {
      throw std::invalid_argument(std::string(what) + " degree " + std::to_string(degree) +
                                  " needs a probability above 1");
    }
    return p;
  };
  return {solve(intra_deg, intra_slots, "intracluster"), solve(inter_deg, inter_slots, "intercluster")};
}

PlantedGraph generate(const std::vector<std::size_t>& sizes, EdgeProbabilities p, std::uint64_t seed) {
  const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  std::vector<std::size_t> offset(sizes.size() + 1, 0);
  std::partial_sum(sizes.begin(), sizes.end(), offset.begin() + 1);

  PlantedGraph out;
  out.probabilities = p;
  out.reference.sizes = sizes;
  out.reference.assignment.resize(n);
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    for (std::size_t v = offset[b]; v < offset[b + 1]; ++v) out.reference.assignment[v] = static_cast<std::uint32_t>(b);
  }

  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t a = 0; a < sizes.size(); ++a) {
    const std::uint64_t s = sizes[a];
    // pair index i enumerates (row, col) with col < row inside the block
    sample_indices(s * (s - 1) / 2, p.p_in, rng, [&](std::uint64_t i) {
      auto row = static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(i))) / 2.0);
      while (row * (row - 1) / 2 > i) --row;
      while ((row + 1) * row / 2 <= i) ++row;
      const std::uint64_t col = i - row * (row - 1) / 2;
      edges.emplace_back(static_cast<Vertex>(offset[a] + col), static_cast<Vertex>(offset[a] + row));
    });
    for (std::size_t b = a + 1; b < sizes.size(); ++b) {
      const std::uint64_t t = sizes[b];
      sample_indices(s * t, p.p_out, rng, [&](std::uint64_t i) {
        edges.emplace_back(static_cast<Vertex>(offset[a] + i / t), static_cast<Vertex>(offset[b] + i % t));
      });
    }
  }
  out.graph = Graph::from_edges(n, edges);
  return out;
}

PlantedGraph generate(const PlantedConfig& cfg) {
  const auto sizes = cluster_sizes(cfg.n, cfg.k, cfg.beta);
  return generate(sizes, derive_probabilities(sizes, cfg.intra_deg, cfg.inter_deg), cfg.seed);
}

Clustering reference_clustering(const PlantedGraph& planted) {
  std::vector<std::uint64_t> labels(planted.reference.assignment.begin(), planted.reference.assignment.end());
  return Clustering::from_labels(planted.graph, labels);
}

}  // namespace dcc
