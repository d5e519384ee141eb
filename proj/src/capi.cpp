#include "hyperspec/hyperspec.h"

#include <cmath>
#include <cstring>
#include <string>

#include "hyperspec/analytic.hpp"
#include "hyperspec/hypergraph.hpp"
#include "hyperspec/labeling.hpp"
#include "hyperspec/search.hpp"
#include "hyperspec/spectral.hpp"

struct hs_hypergraph {
  hyperspec::Hypergraph graph;
};

struct hs_solution {
  hyperspec::SpectralSolution solution;
};

struct hs_search_result {
  hyperspec::BoundAudit audit;
};

namespace {

thread_local std::string last_error;

hs_status map_code(hyperspec::ErrorCode code) {
  using hyperspec::ErrorCode;
  switch (code) {
    case ErrorCode::wrong_edge_size: return HS_ERR_WRONG_EDGE_SIZE;
    case ErrorCode::vertex_out_of_range: return HS_ERR_VERTEX_OUT_OF_RANGE;
    case ErrorCode::repeated_vertex_in_edge: return HS_ERR_REPEATED_VERTEX_IN_EDGE;
    case ErrorCode::invalid_parameters: return HS_ERR_INVALID_PARAMETERS;
    case ErrorCode::rank_too_small: return HS_ERR_RANK_TOO_SMALL;
    case ErrorCode::vertex_not_in_edge: return HS_ERR_VERTEX_NOT_IN_EDGE;
    case ErrorCode::target_already_in_edge: return HS_ERR_TARGET_ALREADY_IN_EDGE;
    case ErrorCode::edge_not_found: return HS_ERR_EDGE_NOT_FOUND;
    case ErrorCode::would_create_multiple_edge: return HS_ERR_WOULD_CREATE_MULTIPLE_EDGE;
    case ErrorCode::parse_error: return HS_ERR_PARSE;
    case ErrorCode::invalid_rank: return HS_ERR_INVALID_RANK;
    case ErrorCode::negative_input: return HS_ERR_NEGATIVE_INPUT;
    case ErrorCode::domain_error: return HS_ERR_DOMAIN;
    case ErrorCode::not_applicable: return HS_ERR_NOT_APPLICABLE;
    case ErrorCode::dimension_mismatch: return HS_ERR_DIMENSION_MISMATCH;
    case ErrorCode::no_edges: return HS_ERR_NO_EDGES;
    case ErrorCode::not_converged: return HS_ERR_NOT_CONVERGED;
    case ErrorCode::not_connected: return HS_ERR_NOT_CONNECTED;
    case ErrorCode::not_subnormal: return HS_ERR_NOT_SUBNORMAL;
    case ErrorCode::degree_too_small: return HS_ERR_DEGREE_TOO_SMALL;
    case ErrorCode::link_not_normal: return HS_ERR_LINK_NOT_NORMAL;
    case ErrorCode::base_not_normal: return HS_ERR_BASE_NOT_NORMAL;
    case ErrorCode::weight_overflow: return HS_ERR_WEIGHT_OVERFLOW;
    case ErrorCode::space_too_large: return HS_ERR_SPACE_TOO_LARGE;
    case ErrorCode::io_error: return HS_ERR_IO;
  }
  return HS_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes.
template <class Fn>
hs_status guarded(Fn&& fn) noexcept {
  last_error.clear();
  try {
    fn();
    return HS_OK;
  } catch (const hyperspec::Error& e) {
    last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return HS_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return HS_ERR_INTERNAL;
  }
}

hs_status null_argument(const char* what) {
  last_error = std::string(what) + " must not be NULL";
  return HS_ERR_NULL_ARGUMENT;
}

char* duplicate(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hyperspec::SolverOptions to_options(const hs_solver_options* o) {
  hyperspec::SolverOptions opt;
  if (o) {
    opt.tol = o->tol;
    opt.max_iter = o->max_iter;
    opt.shift = o->shift;
  }
  return opt;
}

hs_equality_class to_c(hyperspec::EqualityClass c) {
  switch (c) {
    case hyperspec::EqualityClass::strict: return HS_STRICT;
    case hyperspec::EqualityClass::equality_complete: return HS_EQUALITY_COMPLETE;
    case hyperspec::EqualityClass::equality_violation: return HS_EQUALITY_VIOLATION;
  }
  return HS_EQUALITY_VIOLATION;
}

}  // namespace

extern "C" {

const char* hs_status_name(hs_status status) {
  switch (status) {
    case HS_OK: return "Ok";
    case HS_ERR_NULL_ARGUMENT: return "NullArgument";
    case HS_ERR_INTERNAL: return "InternalError";
    case HS_ERR_WRONG_EDGE_SIZE: return to_string(hyperspec::ErrorCode::wrong_edge_size);
    case HS_ERR_VERTEX_OUT_OF_RANGE: return to_string(hyperspec::ErrorCode::vertex_out_of_range);
    case HS_ERR_REPEATED_VERTEX_IN_EDGE: return to_string(hyperspec::ErrorCode::repeated_vertex_in_edge);
    case HS_ERR_INVALID_PARAMETERS: return to_string(hyperspec::ErrorCode::invalid_parameters);
    case HS_ERR_RANK_TOO_SMALL: return to_string(hyperspec::ErrorCode::rank_too_small);
    case HS_ERR_VERTEX_NOT_IN_EDGE: return to_string(hyperspec::ErrorCode::vertex_not_in_edge);
    case HS_ERR_TARGET_ALREADY_IN_EDGE: return to_string(hyperspec::ErrorCode::target_already_in_edge);
    case HS_ERR_EDGE_NOT_FOUND: return to_string(hyperspec::ErrorCode::edge_not_found);
    case HS_ERR_WOULD_CREATE_MULTIPLE_EDGE: return to_string(hyperspec::ErrorCode::would_create_multiple_edge);
    case HS_ERR_PARSE: return to_string(hyperspec::ErrorCode::parse_error);
    case HS_ERR_INVALID_RANK: return to_string(hyperspec::ErrorCode::invalid_rank);
    case HS_ERR_NEGATIVE_INPUT: return to_string(hyperspec::ErrorCode::negative_input);
    case HS_ERR_DOMAIN: return to_string(hyperspec::ErrorCode::domain_error);
    case HS_ERR_NOT_APPLICABLE: return to_string(hyperspec::ErrorCode::not_applicable);
    case HS_ERR_DIMENSION_MISMATCH: return to_string(hyperspec::ErrorCode::dimension_mismatch);
    case HS_ERR_NO_EDGES: return to_string(hyperspec::ErrorCode::no_edges);
    case HS_ERR_NOT_CONVERGED: return to_string(hyperspec::ErrorCode::not_converged);
    case HS_ERR_NOT_CONNECTED: return to_string(hyperspec::ErrorCode::not_connected);
    case HS_ERR_NOT_SUBNORMAL: return to_string(hyperspec::ErrorCode::not_subnormal);
    case HS_ERR_DEGREE_TOO_SMALL: return to_string(hyperspec::ErrorCode::degree_too_small);
    case HS_ERR_LINK_NOT_NORMAL: return to_string(hyperspec::ErrorCode::link_not_normal);
    case HS_ERR_BASE_NOT_NORMAL: return to_string(hyperspec::ErrorCode::base_not_normal);
    case HS_ERR_WEIGHT_OVERFLOW: return to_string(hyperspec::ErrorCode::weight_overflow);
    case HS_ERR_SPACE_TOO_LARGE: return to_string(hyperspec::ErrorCode::space_too_large);
    case HS_ERR_IO: return to_string(hyperspec::ErrorCode::io_error);
  }
  return "Unknown";
}

const char* hs_last_error(void) { return last_error.c_str(); }

void hs_string_free(char* s) { delete[] s; }

hs_status hs_hypergraph_build(int rank, size_t vertex_count, const uint32_t* vertices, size_t edge_count,
                              hs_hypergraph** out, size_t* duplicates) {
  if (!out) return null_argument("out");
  if (!vertices && edge_count > 0) return null_argument("vertices");
  return guarded([&] {
    if (rank < 1) throw hyperspec::Error(hyperspec::ErrorCode::invalid_rank, "rank must be positive");
    std::vector<hyperspec::Edge> edges(edge_count);
    for (size_t i = 0; i < edge_count; ++i)
      edges[i].assign(vertices + i * rank, vertices + (i + 1) * rank);
    *out = new hs_hypergraph{hyperspec::Hypergraph::build(rank, vertex_count, std::move(edges), duplicates)};
  });
}

hs_status hs_hypergraph_parse(const char* text, hs_hypergraph** out, size_t* duplicates) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new hs_hypergraph{hyperspec::parse_edge_list(text, duplicates)}; });
}

hs_status hs_hypergraph_read_file(const char* path, hs_hypergraph** out, size_t* duplicates) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new hs_hypergraph{hyperspec::read_edge_list_file(path, duplicates)}; });
}

hs_status hs_hypergraph_complete(size_t k, int rank, hs_hypergraph** out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = new hs_hypergraph{hyperspec::complete_hypergraph(k, rank)}; });
}

void hs_hypergraph_free(hs_hypergraph* h) { delete h; }

int hs_hypergraph_rank(const hs_hypergraph* h) { return h ? h->graph.rank() : 0; }
size_t hs_hypergraph_vertex_count(const hs_hypergraph* h) { return h ? h->graph.vertex_count() : 0; }
size_t hs_hypergraph_edge_count(const hs_hypergraph* h) { return h ? h->graph.edge_count() : 0; }
int hs_hypergraph_is_connected(const hs_hypergraph* h) { return h && hyperspec::is_connected(h->graph); }

hs_status hs_hypergraph_serialize(const hs_hypergraph* h, char** out) {
  if (!h) return null_argument("h");
  if (!out) return null_argument("out");
  return guarded([&] { *out = duplicate(hyperspec::serialize_edge_list(h->graph)); });
}

void hs_solver_options_default(hs_solver_options* options) {
  if (!options) return;
  const hyperspec::SolverOptions d;
  options->tol = d.tol;
  options->max_iter = d.max_iter;
  options->shift = d.shift;
}

hs_status hs_spectral_radius(const hs_hypergraph* h, const hs_solver_options* options, hs_solution** out) {
  if (!h) return null_argument("h");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new hs_solution{hyperspec::spectral_radius(h->graph, to_options(options))}; });
}

void hs_solution_free(hs_solution* s) { delete s; }
double hs_solution_rho(const hs_solution* s) { return s ? s->solution.rho : 0; }
double hs_solution_residual(const hs_solution* s) { return s ? s->solution.residual : 0; }
int hs_solution_iterations(const hs_solution* s) { return s ? s->solution.iterations : 0; }
int hs_solution_converged(const hs_solution* s) { return s && s->solution.converged; }
size_t hs_solution_vertex_count(const hs_solution* s) { return s ? s->solution.perron.size() : 0; }
const double* hs_solution_perron(const hs_solution* s) { return s ? s->solution.perron.data() : nullptr; }
size_t hs_solution_component_size(const hs_solution* s) { return s ? s->solution.component.size() : 0; }
const uint32_t* hs_solution_component(const hs_solution* s) { return s ? s->solution.component.data() : nullptr; }

hs_status hs_fr(int rank, double e, hs_fr_row* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    const hyperspec::FrEvaluation f = hyperspec::f_r(rank, e, true);
    *out = hs_fr_row{f.e, f.s, f.value, f.derivative.value_or(0.0), f.derivative.has_value()};
  });
}

hs_status hs_p_r_inverse(int rank, double m, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = hyperspec::p_r_inverse(rank, m); });
}

hs_status hs_lovasz_shadow_bound(int rank, double m, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = hyperspec::lovasz_shadow_bound(rank, m); });
}

const char* hs_equality_class_name(hs_equality_class c) {
  switch (c) {
    case HS_STRICT: return to_string(hyperspec::EqualityClass::strict);
    case HS_EQUALITY_COMPLETE: return to_string(hyperspec::EqualityClass::equality_complete);
    case HS_EQUALITY_VIOLATION: return to_string(hyperspec::EqualityClass::equality_violation);
  }
  return "unknown";
}

hs_status hs_bound(const hs_hypergraph* h, const hs_solver_options* options, hs_bound_report* out) {
  if (!h) return null_argument("h");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto sol = hyperspec::spectral_radius(h->graph, to_options(options));
    const auto cert = hyperspec::certify_bound(h->graph, sol);
    *out = hs_bound_report{cert.e, cert.fr, cert.rho, cert.gap, cert.converged, cert.complete, to_c(cert.equality)};
  });
}

hs_status hs_certify(const hs_hypergraph* h, int combine, const hs_solver_options* options, double tol,
                     hs_certificate* out, char** labeling_tsv) {
  if (!h) return null_argument("h");
  if (!out) return null_argument("out");
  return guarded([&] {
    using namespace hyperspec;
    const Hypergraph& g = h->graph;
    if (!is_connected(g)) throw Error(ErrorCode::not_connected, "certificate needs a connected hypergraph");
    const SolverOptions opt = to_options(options);
    const SpectralSolution sol = spectral_radius(g, opt);
    if (!sol.converged) throw Error(ErrorCode::not_converged, "spectral solve did not converge");
    const NormalLabeling normal = construct_normal_labeling(g, sol);
    const LabelingReport nrep = verify_normal(normal.labeling, normal.alpha, tol);
    const LabelingReport crep = verify_consistency(normal.labeling, tol);

    hs_certificate c{};
    c.rho = sol.rho;
    c.alpha = normal.alpha;
    c.vertex_slack = nrep.vertex_slack;
    c.edge_slack = nrep.edge_slack;
    c.consistency_defect = crep.consistency_defect;
    c.normal = nrep.passed;
    c.consistent = crep.passed;
    c.subnormal = verify_subnormal(normal.labeling, normal.alpha, tol).passed;
    if (nrep.passed && crep.passed) c.bound = std::pow(normal.alpha, -1.0 / g.rank());
    std::string tsv;
    if (labeling_tsv) tsv = serialize_labeling_tsv(normal.labeling);

    // Graphs have no combined construction; they keep the normal certificate.
    if (combine && g.rank() >= 3) {
      const Vertex v = perron_argmax(sol);
      const CombinedCertificate cc = certify_combined(g, v, opt, tol);
      c.combined = 1;
      c.alpha = cc.combined.alpha;
      c.vertex_slack = cc.report.vertex_slack;
      c.edge_slack = cc.report.edge_slack;
      c.consistency_defect = 0;
      c.normal = 0;
      c.consistent = 0;
      c.subnormal = cc.report.passed;
      c.strictly_subnormal = cc.report.strictly_subnormal;
      c.bound = cc.bound;
      c.vertex = v;
      c.degree = cc.combined.degree;
      c.fr = cc.combined.fr;
      c.x = cc.combined.x;
      c.y = cc.combined.y;
      c.alpha1 = cc.alpha1;
      c.alpha2 = cc.alpha2;
      c.empty_remainder = cc.combined.empty_remainder;
      if (labeling_tsv) tsv = serialize_labeling_tsv(cc.combined.labeling);
    }
    *out = c;
    if (labeling_tsv) *labeling_tsv = duplicate(tsv);
  });
}

void hs_search_space_default(hs_search_space* space) {
  if (!space) return;
  const hyperspec::SearchSpace d;
  *space = hs_search_space{d.rank, d.edges, d.max_vertices, d.connected, d.jobs, d.cap};
}

hs_status hs_search(const hs_search_space* space, const hs_solver_options* options, hs_search_result** out) {
  if (!space) return null_argument("space");
  if (!out) return null_argument("out");
  return guarded([&] {
    hyperspec::SearchSpace s;
    s.rank = space->rank;
    s.edges = space->edges;
    s.max_vertices = space->max_vertices;
    s.connected = space->connected != 0;
    s.jobs = space->jobs;
    s.cap = space->cap;
    *out = new hs_search_result{hyperspec::bound_audit(s, to_options(options))};
  });
}

void hs_search_result_free(hs_search_result* r) { delete r; }

size_t hs_search_result_count(const hs_search_result* r) { return r ? r->audit.certificates.size() : 0; }

hs_status hs_search_result_get(const hs_search_result* r, size_t i, hs_class_certificate* out) {
  if (!r) return null_argument("r");
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto& c = r->audit.certificates.at(i);
    *out = hs_class_certificate{c.id.c_str(), c.e, c.rho, c.fr, c.gap, c.converged, c.complete, to_c(c.equality)};
  });
}

size_t hs_search_result_violations(const hs_search_result* r) { return r ? r->audit.violations : 0; }
size_t hs_search_result_equality_classes(const hs_search_result* r) { return r ? r->audit.equality_classes : 0; }
int hs_search_result_equality_exact(const hs_search_result* r) { return r && r->audit.equality_exact; }

size_t hs_search_result_maximizer(const hs_search_result* r) {
  if (!r || r->audit.certificates.empty()) return 0;
  const auto& cs = r->audit.certificates;
  size_t best = 0;
  for (size_t i = 1; i < cs.size(); ++i)
    if (cs[i].rho > cs[best].rho + 1e-9) best = i;
  return best;
}

}  // extern "C"
