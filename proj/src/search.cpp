#include "hyperspec/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <thread>

#include "hyperspec/analytic.hpp"

namespace hyperspec {

const char* to_string(EqualityClass c) noexcept {
  switch (c) {
    case EqualityClass::strict: return "strict";
    case EqualityClass::equality_complete: return "equality_complete";
    case EqualityClass::equality_violation: return "equality_violation";
  }
  return "unknown";
}

namespace {

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Each index writes only
// its own slot, so results do not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, int jobs, Fn fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1, jobs), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

// Iterated refinement of vertex colors by degree, co-degrees and the colors
// of edge mates. Color values are ranks of signatures, so they do not depend
// on the input labeling.
std::vector<int> refined_colors(const Hypergraph& h) {
  const std::size_t n = h.vertex_count();
  std::vector<std::vector<int>> codeg(n, std::vector<int>(n, 0));
  std::vector<int> color(n, 0);
  for (const Edge& e : h.edges())
    for (Vertex a : e) {
      ++color[a];
      for (Vertex b : e)
        if (a != b) ++codeg[a][b];
    }
  const auto inc = h.incidence();
  std::size_t classes = 0;
  while (true) {
    std::vector<std::vector<int>> sig(n);
    for (Vertex v = 0; v < n; ++v) {
      std::vector<std::pair<int, int>> mates;
      for (Vertex u = 0; u < n; ++u)
        if (u != v) mates.emplace_back(color[u], codeg[v][u]);
      std::sort(mates.begin(), mates.end());
      std::vector<std::vector<int>> edge_sigs;
      for (std::size_t i : inc[v]) {
        std::vector<int> cs;
        for (Vertex u : h.edge(i))
          if (u != v) cs.push_back(color[u]);
        std::sort(cs.begin(), cs.end());
        edge_sigs.push_back(std::move(cs));
      }
      std::sort(edge_sigs.begin(), edge_sigs.end());
      sig[v].push_back(color[v]);
      for (auto [c, k] : mates) {
        sig[v].push_back(c);
        sig[v].push_back(k);
      }
      sig[v].push_back(-1);
      for (const auto& cs : edge_sigs) {
        sig[v].insert(sig[v].end(), cs.begin(), cs.end());
        sig[v].push_back(-2);
      }
    }
    std::vector<std::vector<int>> distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (Vertex v = 0; v < n; ++v)
      color[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    if (distinct.size() == classes) break;
    classes = distinct.size();
  }
  return color;
}

std::vector<Edge> relabeled_edges(const Hypergraph& h, const std::vector<Vertex>& new_id) {
  std::vector<Edge> edges;
  edges.reserve(h.edge_count());
  for (const Edge& e : h.edges()) {
    Edge m;
    m.reserve(e.size());
    for (Vertex u : e) m.push_back(new_id[u]);
    std::sort(m.begin(), m.end());
    edges.push_back(std::move(m));
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

bool has_vertex(const Edge& e, Vertex v) { return std::binary_search(e.begin(), e.end(), v); }

}  // namespace

Hypergraph canonical_form(const Hypergraph& h) {
  const std::size_t n = h.vertex_count();
  const std::vector<int> color = refined_colors(h);
  // Cells in decreasing color order, so high-degree vertices get small labels
  // and isolated vertices come last.
  std::map<int, std::vector<Vertex>, std::greater<>> cell_map;
  for (Vertex v = 0; v < n; ++v) cell_map[color[v]].push_back(v);
  std::vector<std::vector<Vertex>> cells;
  for (auto& [c, vs] : cell_map) cells.push_back(vs);

  std::vector<Vertex> new_id(n);
  std::optional<std::vector<Edge>> best;
  while (true) {
    Vertex label = 0;
    for (const auto& cell : cells)
      for (Vertex v : cell) new_id[v] = label++;
    std::vector<Edge> edges = relabeled_edges(h, new_id);
    if (!best || edges < *best) best = std::move(edges);
    // Odometer over the orderings of every cell.
    std::size_t c = 0;
    for (; c < cells.size(); ++c)
      if (std::next_permutation(cells[c].begin(), cells[c].end())) break;
    if (c == cells.size()) break;
  }
  return make_unchecked(h.rank(), n, std::move(*best));
}

std::string canonical_id(const Hypergraph& h) {
  const Hypergraph c = canonical_form(h);
  std::string out;
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    if (i) out += '|';
    const Edge& e = c.edge(i);
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (j) out += ',';
      out += std::to_string(e[j]);
    }
  }
  return out;
}

double raw_space_size(const SearchSpace& space) {
  // lgamma keeps this finite for spaces far beyond the cap.
  const double slots = static_cast<double>(binomial(space.max_vertices, space.rank));
  const double k = static_cast<double>(space.edges);
  if (k > slots) return 0;
  return std::exp(std::lgamma(slots + 1) - std::lgamma(k + 1) - std::lgamma(slots - k + 1));
}

std::vector<Hypergraph> enumerate_hypergraphs(const SearchSpace& space) {
  if (space.rank < 2 || space.max_vertices < static_cast<std::size_t>(space.rank) || space.edges < 1)
    throw Error(ErrorCode::invalid_parameters, "search space needs 2 <= r <= n_max and e >= 1");
  if (raw_space_size(space) > space.cap)
    throw Error(ErrorCode::space_too_large, "search space exceeds the enumeration cap");
  const Hypergraph all = complete_hypergraph(space.max_vertices, space.rank);
  const std::size_t slots = all.edge_count();
  const std::size_t k = space.edges;
  std::map<std::vector<Edge>, Hypergraph> classes;
  if (k > slots) return {};

  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  std::vector<Edge> edges(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) edges[i] = all.edge(pick[i]);
    // Picks are increasing and `all` is sorted, so edges are already canonical order.
    Hypergraph h = make_unchecked(space.rank, space.max_vertices, edges);
    if (!space.connected || is_connected(h)) {
      Hypergraph c = canonical_form(h);
      std::vector<Edge> key(c.edges().begin(), c.edges().end());
      classes.try_emplace(std::move(key), std::move(c));
    }
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == slots - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::vector<Hypergraph> out;
  out.reserve(classes.size());
  for (auto& [key, h] : classes) out.push_back(std::move(h));
  return out;
}

bool is_complete_plus_isolated(const Hypergraph& h) {
  if (h.edge_count() == 0) return false;
  const Hypergraph core = compact(h);
  return h.edge_count() == binomial(core.vertex_count(), core.rank());
}

BoundCertificate certify_bound(const Hypergraph& h, const SpectralSolution& sol, const EqualityTolerances& tol) {
  BoundCertificate cert;
  cert.id = canonical_id(h);
  cert.e = h.edge_count();
  cert.rho = sol.rho;
  cert.converged = sol.converged;
  cert.fr = f_r(h.rank(), static_cast<double>(cert.e)).value;
  cert.gap = cert.fr - cert.rho;
  cert.complete = is_complete_plus_isolated(h);
  cert.binomial_edges = binomial_root(cert.e, h.rank()).has_value();
  if (cert.gap < -tol.violation)
    cert.equality = EqualityClass::equality_violation;
  else if (std::abs(cert.gap) <= tol.equality)
    cert.equality = cert.complete && cert.binomial_edges ? EqualityClass::equality_complete
                                                         : EqualityClass::equality_violation;
  else
    cert.equality = EqualityClass::strict;
  return cert;
}

MaximizerResult brute_force_max_rho(const SearchSpace& space, const SolverOptions& options) {
  const std::vector<Hypergraph> classes = enumerate_hypergraphs(space);
  if (classes.empty()) throw Error(ErrorCode::invalid_parameters, "search space has no hypergraphs");
  std::vector<SpectralSolution> sols(classes.size());
  parallel_for(classes.size(), space.jobs, [&](std::size_t i) { sols[i] = spectral_radius(classes[i], options); });

  std::size_t best = 0;
  for (std::size_t i = 1; i < classes.size(); ++i)
    if (sols[i].rho > sols[best].rho) best = i;
  MaximizerResult out;
  out.classes = classes.size();
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (sols[best].rho - sols[i].rho <= 1e-9) out.maximizers.push_back(classes[i]);
  // The reported solution belongs to the first maximizer in canonical order.
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i] == out.maximizers.front()) {
      out.solution = sols[i];
      break;
    }
  out.certificate = certify_bound(out.maximizers.front(), out.solution);
  return out;
}

std::optional<ShiftResult> edge_shift_step(const Hypergraph& h, const SpectralSolution& sol,
                                           const SolverOptions& options) {
  if (!sol.converged) throw Error(ErrorCode::not_converged, "edge shifting needs a converged Perron vector");
  const std::vector<double>& x = sol.perron;
  const double scale = *std::max_element(x.begin(), x.end());
  const double slack = 1e-9 * scale;

  std::vector<Vertex> targets(h.vertex_count());
  std::iota(targets.begin(), targets.end(), Vertex{0});
  std::stable_sort(targets.begin(), targets.end(), [&](Vertex a, Vertex b) { return x[a] > x[b]; });

  std::size_t rejected = 0;
  for (Vertex to : targets) {
    for (const Edge& f : h.edges()) {
      if (has_vertex(f, to)) continue;
      for (Vertex from : f) {
        if (x[to] < x[from] - slack) continue;
        Edge moved;
        for (Vertex u : f)
          if (u != from) moved.push_back(u);
        moved.insert(std::upper_bound(moved.begin(), moved.end(), to), to);
        if (h.contains(moved)) continue;
        const EdgeMove m{f, from};
        Hypergraph next = move_edges(h, std::span<const EdgeMove>(&m, 1), to);
        SpectralSolution next_sol = spectral_radius(next, options);
        const double delta = next_sol.rho - sol.rho;
        if (delta > 0)
          return ShiftResult{std::move(next), std::move(next_sol), {f, from, to}, delta, rejected};
        ++rejected;
      }
    }
  }
  return std::nullopt;
}

LocalSearchResult edge_shift_local_search(const Hypergraph& h, int max_steps, const SolverOptions& options) {
  if (!is_connected(h)) throw Error(ErrorCode::not_connected, "local search needs a connected start");
  LocalSearchResult out;
  out.final = h;
  SpectralSolution sol = spectral_radius(h, options);
  out.trace.push_back(sol.rho);
  for (int step = 0; step < max_steps; ++step) {
    auto next = edge_shift_step(out.final, sol, options);
    if (!next) {
      out.fixed_point = true;
      return out;
    }
    out.rejected += next->rejected;
    out.moves.push_back(next->move);
    out.final = std::move(next->next);
    sol = std::move(next->solution);
    out.trace.push_back(sol.rho);
  }
  return out;
}

DominatingAudit audit_dominating_vertex(const Hypergraph& h, const SpectralSolution& sol) {
  std::vector<bool> covered(h.vertex_count(), false);
  for (const Edge& e : h.edges())
    for (Vertex u : e) covered[u] = true;
  const std::size_t active = static_cast<std::size_t>(std::count(covered.begin(), covered.end(), true));
  auto dominates = [&](Vertex v) { return covered[v] && neighbors(h, v).size() + 1 == active; };

  DominatingAudit out;
  out.argmax = perron_argmax(sol);
  out.argmax_dominating = dominates(out.argmax);
  for (Vertex v = 0; v < h.vertex_count() && !out.any_dominating; ++v) out.any_dominating = dominates(v);
  return out;
}

LinkAudit audit_link_lemma(const Hypergraph& h, const SpectralSolution& sol) {
  LinkAudit out;
  out.vertex = perron_argmax(sol);
  out.degree = degree(h, out.vertex);
  out.fr = f_r(h.rank(), static_cast<double>(h.edge_count())).value;
  out.degree_bound = static_cast<double>(out.degree) >= out.fr - 1e-9;
  const Hypergraph rest = delete_vertex(h, out.vertex);
  if (h.rank() >= 3) {
    const Hypergraph link = link_graph(h, out.vertex);
    out.shadow_in_link = rest.edge_count() == 0 || is_subfamily(shadow(rest), link);
    out.link_connected = is_connected(link);
  } else {
    const std::vector<Vertex> nb = neighbors(h, out.vertex);
    out.shadow_in_link = true;
    for (const Edge& e : rest.edges())
      for (Vertex u : e) out.shadow_in_link = out.shadow_in_link && std::binary_search(nb.begin(), nb.end(), u);
    out.link_connected = !nb.empty();
  }
  return out;
}

Hypergraph brualdi_hoffman_graph(std::size_t e) {
  if (e < 1) throw Error(ErrorCode::invalid_parameters, "edge count must be positive");
  std::size_t k = 2;
  while (binomial(k + 1, 2) <= e) ++k;
  const std::size_t s = e - binomial(k, 2);
  std::vector<Edge> edges;
  for (Vertex a = 0; a < k; ++a)
    for (Vertex b = a + 1; b < k; ++b) edges.push_back({a, b});
  for (Vertex a = 0; a < s; ++a) edges.push_back({a, static_cast<Vertex>(k)});
  return Hypergraph::build(2, s > 0 ? k + 1 : k, std::move(edges));
}

BoundAudit bound_audit(const SearchSpace& space, const SolverOptions& options, const EqualityTolerances& tol) {
  const std::vector<Hypergraph> classes = enumerate_hypergraphs(space);
  BoundAudit out;
  out.certificates.resize(classes.size());
  parallel_for(classes.size(), space.jobs, [&](std::size_t i) {
    out.certificates[i] = certify_bound(classes[i], spectral_radius(classes[i], options), tol);
  });
  out.equality_exact = true;
  out.all_converged = true;
  for (const auto& c : out.certificates) {
    out.violations += c.equality == EqualityClass::equality_violation;
    out.equality_classes += c.equality == EqualityClass::equality_complete;
    const bool predicted = c.complete && c.binomial_edges;
    if ((c.equality == EqualityClass::equality_complete) != predicted) out.equality_exact = false;
    out.all_converged = out.all_converged && c.converged;
  }
  if (out.violations) out.equality_exact = false;
  return out;
}

}  // namespace hyperspec
