/*
 * hyperspec C API.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns an hs_status; on
 * failure hs_last_error() describes the problem for the calling thread.
 */
#ifndef HYPERSPEC_H
#define HYPERSPEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define HS_API __declspec(dllexport)
#else
#  define HS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hs_status {
  HS_OK = 0,
  HS_ERR_WRONG_EDGE_SIZE,
  HS_ERR_VERTEX_OUT_OF_RANGE,
  HS_ERR_REPEATED_VERTEX_IN_EDGE,
  HS_ERR_INVALID_PARAMETERS,
  HS_ERR_RANK_TOO_SMALL,
  HS_ERR_VERTEX_NOT_IN_EDGE,
  HS_ERR_TARGET_ALREADY_IN_EDGE,
  HS_ERR_EDGE_NOT_FOUND,
  HS_ERR_WOULD_CREATE_MULTIPLE_EDGE,
  HS_ERR_PARSE,
  HS_ERR_INVALID_RANK,
  HS_ERR_NEGATIVE_INPUT,
  HS_ERR_DOMAIN,
  HS_ERR_NOT_APPLICABLE,
  HS_ERR_DIMENSION_MISMATCH,
  HS_ERR_NO_EDGES,
  HS_ERR_NOT_CONVERGED,
  HS_ERR_NOT_CONNECTED,
  HS_ERR_NOT_SUBNORMAL,
  HS_ERR_DEGREE_TOO_SMALL,
  HS_ERR_LINK_NOT_NORMAL,
  HS_ERR_BASE_NOT_NORMAL,
  HS_ERR_WEIGHT_OVERFLOW,
  HS_ERR_SPACE_TOO_LARGE,
  HS_ERR_IO,
  HS_ERR_NULL_ARGUMENT,
  HS_ERR_INTERNAL
} hs_status;

/* Name of a status, e.g. "ParseError". Never NULL. */
HS_API const char* hs_status_name(hs_status status);

/* Message of the last failure on this thread; empty after success. */
HS_API const char* hs_last_error(void);

/* Strings returned through char** belong to the caller. */
HS_API void hs_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Hypergraphs                                                         */

typedef struct hs_hypergraph hs_hypergraph;

/* `vertices` holds edge_count * rank ids, one edge after another. */
HS_API hs_status hs_hypergraph_build(int rank, size_t vertex_count, const uint32_t* vertices,
                                     size_t edge_count, hs_hypergraph** out, size_t* duplicates);
HS_API hs_status hs_hypergraph_parse(const char* text, hs_hypergraph** out, size_t* duplicates);
HS_API hs_status hs_hypergraph_read_file(const char* path, hs_hypergraph** out, size_t* duplicates);
HS_API hs_status hs_hypergraph_complete(size_t k, int rank, hs_hypergraph** out);
HS_API void hs_hypergraph_free(hs_hypergraph* h);

HS_API int hs_hypergraph_rank(const hs_hypergraph* h);
HS_API size_t hs_hypergraph_vertex_count(const hs_hypergraph* h);
HS_API size_t hs_hypergraph_edge_count(const hs_hypergraph* h);
HS_API int hs_hypergraph_is_connected(const hs_hypergraph* h);
HS_API hs_status hs_hypergraph_serialize(const hs_hypergraph* h, char** out);

/* ------------------------------------------------------------------ */
/* Spectral radius                                                     */

typedef struct hs_solver_options {
  double tol;
  int max_iter;
  double shift;
} hs_solver_options;

HS_API void hs_solver_options_default(hs_solver_options* options);

typedef struct hs_solution hs_solution;

/* Non-convergence is not an error: check hs_solution_converged. */
HS_API hs_status hs_spectral_radius(const hs_hypergraph* h, const hs_solver_options* options,
                                    hs_solution** out);
HS_API void hs_solution_free(hs_solution* s);

HS_API double hs_solution_rho(const hs_solution* s);
HS_API double hs_solution_residual(const hs_solution* s);
HS_API int hs_solution_iterations(const hs_solution* s);
HS_API int hs_solution_converged(const hs_solution* s);
/* Perron vector over all vertices, zero outside the solved component. */
HS_API size_t hs_solution_vertex_count(const hs_solution* s);
HS_API const double* hs_solution_perron(const hs_solution* s);
HS_API size_t hs_solution_component_size(const hs_solution* s);
HS_API const uint32_t* hs_solution_component(const hs_solution* s);

/* ------------------------------------------------------------------ */
/* Bound function                                                      */

typedef struct hs_fr_row {
  double e;
  double s;
  double value;
  double derivative;
  int has_derivative;
} hs_fr_row;

HS_API hs_status hs_fr(int rank, double e, hs_fr_row* out);
HS_API hs_status hs_p_r_inverse(int rank, double m, double* out);
HS_API hs_status hs_lovasz_shadow_bound(int rank, double m, double* out);

typedef enum hs_equality_class {
  HS_STRICT = 0,
  HS_EQUALITY_COMPLETE = 1,
  HS_EQUALITY_VIOLATION = 2
} hs_equality_class;

HS_API const char* hs_equality_class_name(hs_equality_class c);

typedef struct hs_bound_report {
  size_t e;
  double fr;
  double rho;
  double gap;
  int converged;
  int complete;
  hs_equality_class equality;
} hs_bound_report;

HS_API hs_status hs_bound(const hs_hypergraph* h, const hs_solver_options* options, hs_bound_report* out);

/* ------------------------------------------------------------------ */
/* Labeling certificates                                               */

typedef struct hs_certificate {
  int combined;           /* 1 when the link/remainder construction ran */
  double rho;
  double alpha;
  double bound;           /* alpha^{-1/r} when verified, else 0 */
  double vertex_slack;
  double edge_slack;
  double consistency_defect;
  int normal;             /* verdicts, 0/1; unused ones are 0 */
  int consistent;
  int subnormal;
  int strictly_subnormal;
  /* combined construction only */
  uint32_t vertex;
  size_t degree;
  double fr;
  double x;
  double y;
  double alpha1;
  double alpha2;
  int empty_remainder;
} hs_certificate;

/* Solves, builds the normal labeling and verifies it; with `combine` also
 * runs the link/remainder construction at the Perron argmax vertex (rank 3
 * and up; for graphs `combine` is ignored and `combined` stays 0).
 * `labeling_tsv` may be NULL; otherwise it receives the labeling that was
 * verified last, as `vertex<TAB>edge<TAB>weight` rows. */
HS_API hs_status hs_certify(const hs_hypergraph* h, int combine, const hs_solver_options* options,
                            double tol, hs_certificate* out, char** labeling_tsv);

/* ------------------------------------------------------------------ */
/* Extremal search                                                     */

typedef struct hs_search_space {
  int rank;
  size_t edges;
  size_t max_vertices;
  int connected;
  int jobs;
  double cap;
} hs_search_space;

HS_API void hs_search_space_default(hs_search_space* space);

typedef struct hs_search_result hs_search_result;

typedef struct hs_class_certificate {
  const char* id;  /* owned by the result */
  size_t e;
  double rho;
  double fr;
  double gap;
  int converged;
  int complete;
  hs_equality_class equality;
} hs_class_certificate;

HS_API hs_status hs_search(const hs_search_space* space, const hs_solver_options* options,
                           hs_search_result** out);
HS_API void hs_search_result_free(hs_search_result* r);
HS_API size_t hs_search_result_count(const hs_search_result* r);
HS_API hs_status hs_search_result_get(const hs_search_result* r, size_t i, hs_class_certificate* out);
HS_API size_t hs_search_result_violations(const hs_search_result* r);
HS_API size_t hs_search_result_equality_classes(const hs_search_result* r);
HS_API int hs_search_result_equality_exact(const hs_search_result* r);
/* Index of the largest spectral radius (first in canonical order on ties). */
HS_API size_t hs_search_result_maximizer(const hs_search_result* r);

#ifdef __cplusplus
}
#endif

#endif /* HYPERSPEC_H */
