#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperspec/error.hpp"

namespace hyperspec {

using Vertex = std::uint32_t;

// Strictly increasing list of vertex ids.
using Edge = std::vector<Vertex>;

/// An r-uniform hypergraph on the dense vertex ids [0, n).
///
/// Edges are kept sorted and deduplicated, so two hypergraphs with the same
/// edge set compare equal and serialize identically. Vertices that lie in no
/// edge are allowed; they matter for the equality case of the bound (a
/// complete hypergraph plus isolated vertices) and keep vertex ids stable
/// across deletion.
///
/// Rank 1 is representable because the shadow of a graph and the link of a
/// 3-graph's vertex land there; spectral routines require rank >= 2.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Validates and normalizes `edges`. Each edge may be given in any order.
  /// Duplicates are collapsed; their count goes to `duplicates_removed`.
  static Hypergraph build(int rank, std::size_t vertex_count, std::vector<Edge> edges,
                          std::size_t* duplicates_removed = nullptr);

  int rank() const noexcept { return rank_; }
  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  bool contains(const Edge& sorted_edge) const;
  std::optional<std::size_t> edge_index(const Edge& sorted_edge) const;

  // Incident edge indices of every vertex, in ascending edge order.
  std::vector<std::vector<std::size_t>> incidence() const;

  bool operator==(const Hypergraph&) const = default;

 private:
  Hypergraph(int rank, std::size_t n, std::vector<Edge> edges)
      : rank_(rank), vertex_count_(n), edges_(std::move(edges)) {}

  int rank_ = 2;
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;

  friend Hypergraph make_unchecked(int, std::size_t, std::vector<Edge>);
};

// Skips validation; `edges` must already be sorted, unique and in range.
Hypergraph make_unchecked(int rank, std::size_t vertex_count, std::vector<Edge> edges);

Hypergraph complete_hypergraph(std::size_t k, int rank);

std::size_t degree(const Hypergraph& h, Vertex v);

/// The (r-1)-uniform link of `v`: every S with S + {v} an edge. Requires
/// rank >= 3; for graphs use `neighbors`.
Hypergraph link_graph(const Hypergraph& h, Vertex v);

std::vector<Vertex> neighbors(const Hypergraph& h, Vertex v);

/// Drops the edges through `v`; `v` stays as an isolated id.
Hypergraph delete_vertex(const Hypergraph& h, Vertex v);

/// All (r-1)-sets obtained by removing one vertex from an edge.
Hypergraph shadow(const Hypergraph& family);

struct Component {
  std::vector<Vertex> vertices;  // ascending
  bool trivial = true;           // no edge inside
};

/// Components under the "share an edge" relation, ordered by smallest vertex.
std::vector<Component> connected_components(const Hypergraph& h);

std::size_t nontrivial_component_count(const Hypergraph& h);

/// True when all edges lie in a single component (isolated vertices ignored).
/// A hypergraph without edges is not connected.
bool is_connected(const Hypergraph& h);

/// Keeps only the edges inside `component`, on the same vertex id space.
Hypergraph restrict_to(const Hypergraph& h, std::span<const Vertex> component);

/// Removes isolated vertices and relabels the rest to [0, k) preserving order.
/// `original_ids[i]` is the old id of new vertex i.
Hypergraph compact(const Hypergraph& h, std::vector<Vertex>* original_ids = nullptr);

/// Applies `perm` (old id -> new id) to every edge.
Hypergraph relabel(const Hypergraph& h, std::span<const Vertex> perm);

bool is_subfamily(const Hypergraph& sub, const Hypergraph& super);

struct EdgeMove {
  Edge edge;
  Vertex from;
};

/// Replaces every moved edge e by e - {from} + {to}. Rejects moves that would
/// collapse two edges into one.
Hypergraph move_edges(const Hypergraph& h, std::span<const EdgeMove> moves, Vertex to);

/// Header `r n`, then one edge per line; `#` starts a comment.
Hypergraph parse_edge_list(std::string_view text, std::size_t* duplicates_removed = nullptr);
Hypergraph read_edge_list_file(const std::string& path, std::size_t* duplicates_removed = nullptr);
std::string serialize_edge_list(const Hypergraph& h);

}  // namespace hyperspec
