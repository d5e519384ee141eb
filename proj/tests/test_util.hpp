#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "hyperspec/hypergraph.hpp"

namespace hyperspec::testing {

inline Edge random_edge(std::mt19937_64& rng, int rank, std::size_t n) {
  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), Vertex{0});
  std::shuffle(pool.begin(), pool.end(), rng);
  Edge e(pool.begin(), pool.begin() + rank);
  std::sort(e.begin(), e.end());
  return e;
}

// Up to `edges` distinct random edges (at least one) on n vertices.
inline Hypergraph random_hypergraph(std::mt19937_64& rng, int rank, std::size_t n, std::size_t edges) {
  std::set<Edge> chosen;
  for (std::size_t attempt = 0; attempt < 20 * edges && chosen.size() < edges; ++attempt)
    chosen.insert(random_edge(rng, rank, n));
  if (chosen.empty()) chosen.insert(random_edge(rng, rank, n));
  return Hypergraph::build(rank, n, std::vector<Edge>(chosen.begin(), chosen.end()));
}

// Connected: each new edge after the first reuses a vertex already covered,
// until every vertex is covered; then random extra edges inside.
inline Hypergraph random_connected_hypergraph(std::mt19937_64& rng, int rank, std::size_t n,
                                              std::size_t edges) {
  std::set<Edge> chosen;
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::shuffle(order.begin(), order.end(), rng);

  Edge first(order.begin(), order.begin() + rank);
  std::sort(first.begin(), first.end());
  chosen.insert(first);
  std::size_t covered = rank;
  while (covered < n) {
    const std::size_t fresh = std::min<std::size_t>(n - covered, rank - 1);
    Edge e(order.begin() + covered, order.begin() + covered + fresh);
    std::uniform_int_distribution<std::size_t> pick(0, covered - 1);
    while (e.size() < static_cast<std::size_t>(rank)) {
      const Vertex old = order[pick(rng)];
      if (std::find(e.begin(), e.end(), old) == e.end()) e.push_back(old);
    }
    std::sort(e.begin(), e.end());
    chosen.insert(e);
    covered += fresh;
  }
  for (std::size_t attempt = 0; attempt < 20 * edges && chosen.size() < edges; ++attempt)
    chosen.insert(random_edge(rng, rank, n));
  return Hypergraph::build(rank, n, std::vector<Edge>(chosen.begin(), chosen.end()));
}

}  // namespace hyperspec::testing
