#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "hyperspec/analytic.hpp"
#include "hyperspec/search.hpp"
#include "test_util.hpp"

using namespace hyperspec;
using doctest::Approx;

namespace {

// Minimum sorted edge list over every vertex permutation. No pruning.
std::vector<Edge> naive_canonical(const Hypergraph& h) {
  std::vector<Vertex> perm(h.vertex_count());
  std::iota(perm.begin(), perm.end(), Vertex{0});
  std::vector<Edge> best;
  do {
    std::vector<Edge> edges;
    for (const Edge& e : h.edges()) {
      Edge m;
      for (Vertex v : e) m.push_back(perm[v]);
      std::sort(m.begin(), m.end());
      edges.push_back(m);
    }
    std::sort(edges.begin(), edges.end());
    if (best.empty() || edges < best) best = edges;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Class count by exhaustive subsets and naive canonical forms.
std::size_t naive_class_count(int r, std::size_t e, std::size_t n, bool connected) {
  std::vector<Edge> all;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + r, true);
  do {
    Edge edge;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) edge.push_back(static_cast<Vertex>(i));
    all.push_back(edge);
  } while (std::prev_permutation(pick.begin(), pick.end()));

  std::set<std::vector<Edge>> classes;
  std::vector<bool> take(all.size(), false);
  std::fill(take.begin(), take.begin() + e, true);
  do {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (take[i]) edges.push_back(all[i]);
    const Hypergraph h = Hypergraph::build(r, n, edges);
    if (connected && !is_connected(h)) continue;
    classes.insert(naive_canonical(h));
  } while (std::prev_permutation(take.begin(), take.end()));
  return classes.size();
}

SearchSpace space(int r, std::size_t e, std::size_t n, bool connected = true) {
  SearchSpace s;
  s.rank = r;
  s.edges = e;
  s.max_vertices = n;
  s.connected = connected;
  return s;
}

}  // namespace

TEST_CASE("enumeration class counts") {
  CHECK(enumerate_hypergraphs(space(3, 2, 5)).size() == 2);
  CHECK(enumerate_hypergraphs(space(2, 3, 4)).size() == 3);
  CHECK(enumerate_hypergraphs(space(3, 1, 3)).size() == 1);

  for (auto [r, e, n, conn] : {std::tuple{3, 2, 5, true}, {2, 3, 4, true}, {2, 4, 5, false}, {3, 3, 5, true},
                               {3, 3, 6, false}, {2, 5, 6, true}, {4, 2, 6, false}}) {
    INFO("r=" << r << " e=" << e << " n=" << n);
    CHECK(enumerate_hypergraphs(space(r, e, n, conn)).size() == naive_class_count(r, e, n, conn));
  }

  SearchSpace big = space(3, 10, 9);
  big.cap = 1000;
  CHECK_THROWS_AS(enumerate_hypergraphs(big), Error);
}

TEST_CASE("enumeration is independent of worker count") {
  SearchSpace s = space(3, 5, 6);
  const auto serial = enumerate_hypergraphs(s);
  s.jobs = 4;
  CHECK(enumerate_hypergraphs(s) == serial);
}

TEST_CASE("property: canonical forms are permutation invariant") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const int r = 2 + trial % 3;
    const std::size_t n = 5 + trial % 4;
    const Hypergraph h = testing::random_hypergraph(rng, r, n, 2 + trial % 9);
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const Hypergraph g = relabel(h, perm);
    CHECK(canonical_form(g) == canonical_form(h));
    CHECK(canonical_id(g) == canonical_id(h));
    if (n <= 7) {
      const Hypergraph c = canonical_form(h);
      CHECK(naive_canonical(c) == naive_canonical(h));
    }
  }
}

TEST_CASE("brute-force maximizers") {
  const MaximizerResult k43 = brute_force_max_rho(space(3, 4, 6));
  REQUIRE(!k43.maximizers.empty());
  CHECK(is_complete_plus_isolated(k43.maximizers.front()));
  CHECK(k43.solution.rho == Approx(3).epsilon(1e-9));
  CHECK(k43.certificate.equality == EqualityClass::equality_complete);

  const MaximizerResult k3 = brute_force_max_rho(space(2, 3, 5));
  CHECK(k3.solution.rho == Approx(2).epsilon(1e-9));
  CHECK(k3.certificate.equality == EqualityClass::equality_complete);
  CHECK(compact(k3.maximizers.front()) == complete_hypergraph(3, 2));

  const MaximizerResult five = brute_force_max_rho(space(3, 5, 6));
  CHECK(five.solution.rho < f_r(3, 5).value);
  CHECK(five.certificate.equality == EqualityClass::strict);
}

TEST_CASE("edge shifting") {
  // Two triangles sharing vertex 0. Every move onto 0 would duplicate an edge,
  // so the improving shift goes to another vertex.
  const Hypergraph bowtie = Hypergraph::build(2, 5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}});
  const auto step = edge_shift_step(bowtie, spectral_radius(bowtie));
  REQUIRE(step.has_value());
  CHECK(step->delta > 0);
  CHECK(step->solution.rho > spectral_radius(bowtie).rho);

  const Hypergraph k43 = complete_hypergraph(4, 3);
  CHECK(!edge_shift_step(k43, spectral_radius(k43)).has_value());
  const Hypergraph one = complete_hypergraph(3, 3);
  CHECK(!edge_shift_step(one, spectral_radius(one)).has_value());

  const Hypergraph loose = Hypergraph::build(3, 9, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}, {6, 7, 8}});
  const LocalSearchResult run = edge_shift_local_search(loose, 100);
  CHECK(run.fixed_point);
  CHECK(run.trace.back() >= run.trace.front());
  for (std::size_t i = 1; i < run.trace.size(); ++i) CHECK(run.trace[i] - run.trace[i - 1] > -1e-10);
  CHECK(run.rejected == 0);

  const LocalSearchResult still = edge_shift_local_search(k43, 10);
  CHECK(still.moves.empty());
  CHECK(still.fixed_point);
}

TEST_CASE("structural audits of maximizers") {
  const Hypergraph k43 = complete_hypergraph(4, 3);
  const SpectralSolution s = spectral_radius(k43);
  CHECK(audit_dominating_vertex(k43, s).any_dominating);
  CHECK(audit_dominating_vertex(k43, s).argmax_dominating);
  const LinkAudit la = audit_link_lemma(k43, s);
  CHECK(la.degree == 3);
  CHECK(la.passed());

  for (std::size_t e : {5u, 7u}) {
    const MaximizerResult m = brute_force_max_rho(space(3, e, 6));
    for (const Hypergraph& h : m.maximizers) {
      const SpectralSolution sol = spectral_radius(h);
      INFO("e=" << e << " " << canonical_id(h));
      CHECK(audit_dominating_vertex(h, sol).any_dominating);
      CHECK(audit_link_lemma(h, sol).passed());
    }
  }
}

TEST_CASE("Brualdi-Hoffman graphs") {
  CHECK(brualdi_hoffman_graph(3) == complete_hypergraph(3, 2));
  const Hypergraph g4 = brualdi_hoffman_graph(4);
  CHECK(g4.vertex_count() == 4);
  CHECK(g4.edge_count() == 4);
  CHECK(degree(g4, 3) == 1);
  CHECK(brualdi_hoffman_graph(10) == complete_hypergraph(5, 2));

  // They attain the brute-force maximum among graphs with e edges.
  for (std::size_t e = 2; e <= 8; ++e) {
    const double best = brute_force_max_rho(space(2, e, std::min<std::size_t>(e + 1, 6))).solution.rho;
    CHECK(spectral_radius(brualdi_hoffman_graph(e)).rho == Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("bound audits") {
  const BoundAudit a = bound_audit(space(3, 4, 6));
  CHECK(a.violations == 0);
  CHECK(a.equality_classes == 1);
  CHECK(a.equality_exact);

  const BoundAudit b = bound_audit(space(3, 5, 6));
  CHECK(b.equality_classes == 0);
  for (const auto& c : b.certificates) CHECK(c.gap > 0);

  const BoundAudit g = bound_audit(space(2, 6, 6));
  CHECK(g.equality_classes == 1);
  for (const auto& c : g.certificates)
    if (c.equality == EqualityClass::equality_complete) CHECK(c.id == canonical_id(complete_hypergraph(4, 2)));

  // For graphs the gap vanishes exactly at triangular numbers of edges.
  for (std::size_t e = 2; e <= 10; ++e) {
    const MaximizerResult m = brute_force_max_rho(space(2, e, std::min<std::size_t>(e + 1, 6)));
    const bool triangular = binomial_root(e, 2).has_value();
    CHECK((std::abs(m.certificate.gap) <= 1e-6) == triangular);
  }
}
