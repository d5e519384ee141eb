#include "hyperspec/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace hyperspec {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::wrong_edge_size: return "WrongEdgeSize";
    case ErrorCode::vertex_out_of_range: return "VertexOutOfRange";
    case ErrorCode::repeated_vertex_in_edge: return "RepeatedVertexInEdge";
    case ErrorCode::invalid_parameters: return "InvalidParameters";
    case ErrorCode::rank_too_small: return "RankTooSmall";
    case ErrorCode::vertex_not_in_edge: return "VertexNotInEdge";
    case ErrorCode::target_already_in_edge: return "TargetAlreadyInEdge";
    case ErrorCode::edge_not_found: return "EdgeNotFound";
    case ErrorCode::would_create_multiple_edge: return "WouldCreateMultipleEdge";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::invalid_rank: return "InvalidRank";
    case ErrorCode::negative_input: return "NegativeInput";
    case ErrorCode::domain_error: return "DomainError";
    case ErrorCode::not_applicable: return "NotApplicable";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::no_edges: return "NoEdges";
    case ErrorCode::not_converged: return "NotConverged";
    case ErrorCode::not_connected: return "NotConnected";
    case ErrorCode::not_subnormal: return "NotSubnormal";
    case ErrorCode::degree_too_small: return "DegreeTooSmall";
    case ErrorCode::link_not_normal: return "LinkNotNormal";
    case ErrorCode::base_not_normal: return "BaseNotNormal";
    case ErrorCode::weight_overflow: return "WeightOverflow";
    case ErrorCode::space_too_large: return "SpaceTooLarge";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

namespace {

void check_vertex(const Hypergraph& h, Vertex v) {
  if (v >= h.vertex_count())
    throw Error(ErrorCode::vertex_out_of_range,
                "vertex " + std::to_string(v) + " not in [0, " +
                    std::to_string(h.vertex_count()) + ")");
}

void sort_unique(std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

Edge without(const Edge& e, Vertex v) {
  Edge out;
  out.reserve(e.size() - 1);
  for (Vertex u : e)
    if (u != v) out.push_back(u);
  return out;
}

Edge with(Edge e, Vertex v) {
  e.insert(std::upper_bound(e.begin(), e.end(), v), v);
  return e;
}

// Union-find over vertex ids.
struct DisjointSets {
  std::vector<Vertex> parent;

  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), Vertex{0});
  }

  Vertex find(Vertex v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }

  void unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

Hypergraph make_unchecked(int rank, std::size_t vertex_count, std::vector<Edge> edges) {
  return Hypergraph(rank, vertex_count, std::move(edges));
}

Hypergraph Hypergraph::build(int rank, std::size_t vertex_count, std::vector<Edge> edges,
                             std::size_t* duplicates_removed) {
  if (rank < 1) throw Error(ErrorCode::invalid_rank, "rank must be positive");
  for (auto& e : edges) {
    if (e.size() != static_cast<std::size_t>(rank))
      throw Error(ErrorCode::wrong_edge_size, "edge has " + std::to_string(e.size()) +
                                                  " vertices, expected " + std::to_string(rank));
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] >= vertex_count)
        throw Error(ErrorCode::vertex_out_of_range,
                    "vertex " + std::to_string(e[i]) + " not in [0, " +
                        std::to_string(vertex_count) + ")");
      if (i > 0 && e[i] == e[i - 1])
        throw Error(ErrorCode::repeated_vertex_in_edge,
                    "vertex " + std::to_string(e[i]) + " repeated in an edge");
    }
  }
  const std::size_t before = edges.size();
  sort_unique(edges);
  if (duplicates_removed) *duplicates_removed = before - edges.size();
  return Hypergraph(rank, vertex_count, std::move(edges));
}

bool Hypergraph::contains(const Edge& sorted_edge) const {
  return std::binary_search(edges_.begin(), edges_.end(), sorted_edge);
}

std::optional<std::size_t> Hypergraph::edge_index(const Edge& sorted_edge) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), sorted_edge);
  if (it == edges_.end() || *it != sorted_edge) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::vector<std::vector<std::size_t>> Hypergraph::incidence() const {
  std::vector<std::vector<std::size_t>> inc(vertex_count_);
  for (std::size_t i = 0; i < edges_.size(); ++i)
    for (Vertex v : edges_[i]) inc[v].push_back(i);
  return inc;
}

Hypergraph complete_hypergraph(std::size_t k, int rank) {
  if (rank < 2 || k < static_cast<std::size_t>(rank))
    throw Error(ErrorCode::invalid_parameters, "complete hypergraph needs k >= rank >= 2");
  std::vector<Edge> edges;
  Edge e(rank);
  std::iota(e.begin(), e.end(), Vertex{0});
  // Lexicographic successor of a combination.
  while (true) {
    edges.push_back(e);
    int i = rank - 1;
    while (i >= 0 && e[i] == k - rank + i) --i;
    if (i < 0) break;
    ++e[i];
    for (int j = i + 1; j < rank; ++j) e[j] = e[j - 1] + 1;
  }
  return make_unchecked(rank, k, std::move(edges));
}

std::size_t degree(const Hypergraph& h, Vertex v) {
  check_vertex(h, v);
  return static_cast<std::size_t>(std::count_if(h.edges().begin(), h.edges().end(), [v](const Edge& e) {
    return std::binary_search(e.begin(), e.end(), v);
  }));
}

Hypergraph link_graph(const Hypergraph& h, Vertex v) {
  if (h.rank() < 3)
    throw Error(ErrorCode::rank_too_small, "link graph needs rank >= 3; use neighbors()");
  check_vertex(h, v);
  std::vector<Edge> link;
  for (const Edge& e : h.edges())
    if (std::binary_search(e.begin(), e.end(), v)) link.push_back(without(e, v));
  sort_unique(link);
  return make_unchecked(h.rank() - 1, h.vertex_count(), std::move(link));
}

std::vector<Vertex> neighbors(const Hypergraph& h, Vertex v) {
  check_vertex(h, v);
  std::vector<Vertex> out;
  for (const Edge& e : h.edges())
    if (std::binary_search(e.begin(), e.end(), v))
      for (Vertex u : e)
        if (u != v) out.push_back(u);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Hypergraph delete_vertex(const Hypergraph& h, Vertex v) {
  check_vertex(h, v);
  std::vector<Edge> kept;
  for (const Edge& e : h.edges())
    if (!std::binary_search(e.begin(), e.end(), v)) kept.push_back(e);
  return make_unchecked(h.rank(), h.vertex_count(), std::move(kept));
}

Hypergraph shadow(const Hypergraph& family) {
  if (family.rank() < 2) throw Error(ErrorCode::invalid_rank, "shadow needs rank >= 2");
  std::vector<Edge> out;
  out.reserve(family.edge_count() * family.rank());
  for (const Edge& e : family.edges())
    for (Vertex v : e) out.push_back(without(e, v));
  sort_unique(out);
  return make_unchecked(family.rank() - 1, family.vertex_count(), std::move(out));
}

std::vector<Component> connected_components(const Hypergraph& h) {
  DisjointSets sets(h.vertex_count());
  std::vector<bool> covered(h.vertex_count(), false);
  for (const Edge& e : h.edges())
    for (Vertex u : e) {
      sets.unite(e.front(), u);
      covered[u] = true;
    }
  // Roots are the smallest vertex of each set, so scanning ids in order
  // visits components by their smallest member.
  std::vector<Component> out;
  std::vector<std::size_t> slot(h.vertex_count(), 0);
  for (Vertex v = 0; v < h.vertex_count(); ++v) {
    Vertex root = sets.find(v);
    if (root == v) {
      slot[v] = out.size();
      out.push_back({{}, !covered[v]});
    }
    out[slot[root]].vertices.push_back(v);
  }
  return out;
}

std::size_t nontrivial_component_count(const Hypergraph& h) {
  auto comps = connected_components(h);
  return static_cast<std::size_t>(
      std::count_if(comps.begin(), comps.end(), [](const Component& c) { return !c.trivial; }));
}

bool is_connected(const Hypergraph& h) { return nontrivial_component_count(h) == 1; }

Hypergraph restrict_to(const Hypergraph& h, std::span<const Vertex> component) {
  std::vector<bool> inside(h.vertex_count(), false);
  for (Vertex v : component) {
    check_vertex(h, v);
    inside[v] = true;
  }
  std::vector<Edge> kept;
  for (const Edge& e : h.edges())
    if (std::all_of(e.begin(), e.end(), [&](Vertex u) { return inside[u]; })) kept.push_back(e);
  return make_unchecked(h.rank(), h.vertex_count(), std::move(kept));
}

Hypergraph compact(const Hypergraph& h, std::vector<Vertex>* original_ids) {
  std::vector<bool> used(h.vertex_count(), false);
  for (const Edge& e : h.edges())
    for (Vertex u : e) used[u] = true;
  std::vector<Vertex> new_id(h.vertex_count(), 0);
  std::vector<Vertex> old_id;
  for (Vertex v = 0; v < h.vertex_count(); ++v)
    if (used[v]) {
      new_id[v] = static_cast<Vertex>(old_id.size());
      old_id.push_back(v);
    }
  // Relabeling is monotone, so sorted edges stay sorted.
  std::vector<Edge> edges(h.edges().begin(), h.edges().end());
  for (Edge& e : edges)
    for (Vertex& u : e) u = new_id[u];
  std::size_t k = old_id.size();
  if (original_ids) *original_ids = std::move(old_id);
  return make_unchecked(h.rank(), k, std::move(edges));
}

Hypergraph relabel(const Hypergraph& h, std::span<const Vertex> perm) {
  if (perm.size() != h.vertex_count())
    throw Error(ErrorCode::dimension_mismatch, "permutation size differs from vertex count");
  std::vector<Edge> edges;
  edges.reserve(h.edge_count());
  for (const Edge& e : h.edges()) {
    Edge m;
    m.reserve(e.size());
    for (Vertex u : e) m.push_back(perm[u]);
    std::sort(m.begin(), m.end());
    edges.push_back(std::move(m));
  }
  return Hypergraph::build(h.rank(), h.vertex_count(), std::move(edges));
}

bool is_subfamily(const Hypergraph& sub, const Hypergraph& super) {
  if (sub.rank() != super.rank()) return false;
  return std::includes(super.edges().begin(), super.edges().end(), sub.edges().begin(),
                       sub.edges().end());
}

Hypergraph move_edges(const Hypergraph& h, std::span<const EdgeMove> moves, Vertex to) {
  check_vertex(h, to);
  std::vector<bool> moved(h.edge_count(), false);
  std::vector<Edge> created;
  for (const EdgeMove& m : moves) {
    Edge e = m.edge;
    std::sort(e.begin(), e.end());
    auto idx = h.edge_index(e);
    if (!idx) throw Error(ErrorCode::edge_not_found, "moved edge is not in the hypergraph");
    if (!std::binary_search(e.begin(), e.end(), m.from))
      throw Error(ErrorCode::vertex_not_in_edge,
                  "vertex " + std::to_string(m.from) + " is not in the moved edge");
    if (std::binary_search(e.begin(), e.end(), to))
      throw Error(ErrorCode::target_already_in_edge,
                  "target " + std::to_string(to) + " already lies in the moved edge");
    if (moved[*idx]) throw Error(ErrorCode::invalid_parameters, "edge moved twice");
    moved[*idx] = true;
    created.push_back(with(without(e, m.from), to));
  }
  std::vector<Edge> out;
  out.reserve(h.edge_count());
  for (std::size_t i = 0; i < h.edge_count(); ++i)
    if (!moved[i]) out.push_back(h.edge(i));
  out.insert(out.end(), created.begin(), created.end());
  const std::size_t before = out.size();
  sort_unique(out);
  if (out.size() != before)
    throw Error(ErrorCode::would_create_multiple_edge, "edge move would create a multiple edge");
  return make_unchecked(h.rank(), h.vertex_count(), std::move(out));
}

namespace {

template <class Int>
bool parse_int(std::string_view tok, Int& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) toks.push_back(line.substr(i, j - i));
    i = j;
  }
  return toks;
}

}  // namespace

Hypergraph parse_edge_list(std::string_view text, std::size_t* duplicates_removed) {
  int rank = 0;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split_tokens(line);
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.size() != 2 || !parse_int(toks[0], rank) || !parse_int(toks[1], n))
        throw ParseError(line_no, "expected header 'r n'");
      if (rank < 2) throw ParseError(line_no, "rank must be at least 2");
      have_header = true;
      continue;
    }
    if (toks.size() != static_cast<std::size_t>(rank))
      throw ParseError(line_no, "expected " + std::to_string(rank) + " vertices, got " +
                                    std::to_string(toks.size()));
    Edge e(toks.size());
    for (std::size_t i = 0; i < toks.size(); ++i)
      if (!parse_int(toks[i], e[i]))
        throw ParseError(line_no, "not a vertex id: '" + std::string(toks[i]) + "'");
    for (Vertex u : e)
      if (u >= n)
        throw ParseError(line_no, "vertex " + std::to_string(u) + " not in [0, " + std::to_string(n) + ")");
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw ParseError(line_no, "repeated vertex in edge");
    edges.push_back(std::move(e));
  }
  if (!have_header) throw ParseError(line_no, "missing header 'r n'");
  return Hypergraph::build(rank, n, std::move(edges), duplicates_removed);
}

Hypergraph read_edge_list_file(const std::string& path, std::size_t* duplicates_removed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str(), duplicates_removed);
}

std::string serialize_edge_list(const Hypergraph& h) {
  std::string out = std::to_string(h.rank()) + " " + std::to_string(h.vertex_count()) + "\n";
  for (const Edge& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(e[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace hyperspec
