#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hyperspec/hypergraph.hpp"
#include "hyperspec/spectral.hpp"

namespace hyperspec {

struct SearchSpace {
  int rank = 3;
  std::size_t edges = 1;
  std::size_t max_vertices = 6;
  bool connected = true;
  double cap = 1e7;  // largest admissible number of raw edge subsets
  int jobs = 1;
};

/// Minimum lexicographic edge list over all relabelings that respect an
/// isomorphism-invariant vertex coloring (iterated degree refinement).
/// Isomorphic hypergraphs on the same number of vertices get equal forms.
Hypergraph canonical_form(const Hypergraph& h);

/// Compact text id of a canonical form: edges joined by '|', vertices by ','.
std::string canonical_id(const Hypergraph& h);

/// Number of raw e-subsets of C([n_max], r).
double raw_space_size(const SearchSpace& space);

/// Every isomorphism class of e-edge r-graphs on max_vertices vertices
/// (connected ones only when the filter is on), ordered by canonical edge list.
std::vector<Hypergraph> enumerate_hypergraphs(const SearchSpace& space);

enum class EqualityClass { strict, equality_complete, equality_violation };

const char* to_string(EqualityClass c) noexcept;

struct BoundCertificate {
  std::string id;
  std::size_t e = 0;
  double rho = 0;
  double fr = 0;
  double gap = 0;
  bool converged = false;
  bool complete = false;        // K_k^r plus isolated vertices
  bool binomial_edges = false;  // e = C(k, r)
  EqualityClass equality = EqualityClass::strict;
};

struct EqualityTolerances {
  double equality = 1e-6;   // |rho - f_r(e)| for an equality verdict
  double violation = 1e-7;  // rho > f_r(e) + this is a bound violation
};

/// True when the non-isolated part of h is K_k^r for some k.
bool is_complete_plus_isolated(const Hypergraph& h);

BoundCertificate certify_bound(const Hypergraph& h, const SpectralSolution& sol,
                               const EqualityTolerances& tol = {});

struct MaximizerResult {
  std::vector<Hypergraph> maximizers;  // ties within 1e-9, canonical order
  SpectralSolution solution;           // of maximizers.front()
  BoundCertificate certificate;
  std::size_t classes = 0;
};

MaximizerResult brute_force_max_rho(const SearchSpace& space, const SolverOptions& options = {});

struct ShiftMove {
  Edge edge;
  Vertex from = 0;
  Vertex to = 0;
};

struct ShiftResult {
  Hypergraph next;
  SpectralSolution solution;  // of `next`
  ShiftMove move;
  double delta = 0;
  // Legal moves scanned before the accepted one that did not raise rho.
  std::size_t rejected = 0;
};

/// Scans targets by descending Perron weight (ties by id), then edges in
/// order, then the vertex leaving the edge; a move of edge f from u to v is
/// legal when x_v >= x_u, v is not in f and no multiple edge appears. The
/// first legal move that raises the re-solved spectral radius is applied.
std::optional<ShiftResult> edge_shift_step(const Hypergraph& h, const SpectralSolution& sol,
                                           const SolverOptions& options = {});

struct LocalSearchResult {
  Hypergraph final;
  std::vector<double> trace;  // rho of the start, then after each step
  std::vector<ShiftMove> moves;
  std::size_t rejected = 0;
  bool fixed_point = false;
};

LocalSearchResult edge_shift_local_search(const Hypergraph& h, int max_steps,
                                          const SolverOptions& options = {});

struct DominatingAudit {
  bool any_dominating = false;
  bool argmax_dominating = false;
  Vertex argmax = 0;
};

/// Whether some vertex shares an edge with every other non-isolated vertex,
/// and whether the Perron argmax does.
DominatingAudit audit_dominating_vertex(const Hypergraph& h, const SpectralSolution& sol);

struct LinkAudit {
  Vertex vertex = 0;
  std::size_t degree = 0;
  double fr = 0;
  bool shadow_in_link = false;
  bool link_connected = false;
  bool degree_bound = false;

  bool passed() const { return shadow_in_link && link_connected && degree_bound; }
};

/// The three structural properties of a maximizer at its Perron argmax v:
/// shadow(H - v) lies in the link of v, the link is connected, and
/// deg(v) >= f_r(e). For graphs the link is the neighbor set; its
/// connectivity is read as "non-empty".
LinkAudit audit_link_lemma(const Hypergraph& h, const SpectralSolution& sol);

/// K_k plus one vertex joined to s vertices of it, where e = C(k,2) + s.
Hypergraph brualdi_hoffman_graph(std::size_t e);

struct BoundAudit {
  std::vector<BoundCertificate> certificates;
  std::size_t violations = 0;
  std::size_t equality_classes = 0;
  bool equality_exact = false;  // equality <=> complete (and e binomial)
  bool all_converged = false;
};

BoundAudit bound_audit(const SearchSpace& space, const SolverOptions& options = {},
                            const EqualityTolerances& tol = {});

}  // namespace hyperspec
