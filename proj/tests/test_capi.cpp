#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "hyperspec/hyperspec.h"

TEST_CASE("hypergraph handles") {
  hs_hypergraph* h = nullptr;
  size_t dups = 0;
  const uint32_t verts[] = {0, 1, 2, 1, 2, 3, 0, 2, 1};
  REQUIRE(hs_hypergraph_build(3, 4, verts, 3, &h, &dups) == HS_OK);
  CHECK(dups == 1);
  CHECK(hs_hypergraph_rank(h) == 3);
  CHECK(hs_hypergraph_edge_count(h) == 2);
  CHECK(hs_hypergraph_is_connected(h) == 1);
  char* text = nullptr;
  REQUIRE(hs_hypergraph_serialize(h, &text) == HS_OK);
  CHECK(std::string(text) == "3 4\n0 1 2\n1 2 3\n");
  hs_string_free(text);
  hs_hypergraph_free(h);

  const uint32_t bad[] = {0, 1, 1};
  CHECK(hs_hypergraph_build(3, 3, bad, 1, &h, nullptr) == HS_ERR_REPEATED_VERTEX_IN_EDGE);
  CHECK(std::strlen(hs_last_error()) > 0);
  CHECK(hs_hypergraph_parse("3 4\n0 1\n", &h, nullptr) == HS_ERR_PARSE);
  CHECK(std::string(hs_status_name(HS_ERR_PARSE)) == "ParseError");
  CHECK(hs_hypergraph_parse(nullptr, &h, nullptr) == HS_ERR_NULL_ARGUMENT);
  CHECK(hs_hypergraph_read_file("/nonexistent/file.txt", &h, nullptr) == HS_ERR_IO);
}

TEST_CASE("solver through the C API") {
  hs_hypergraph* h = nullptr;
  REQUIRE(hs_hypergraph_complete(5, 3, &h) == HS_OK);
  hs_solver_options o;
  hs_solver_options_default(&o);
  CHECK(o.tol == 1e-10);
  CHECK(o.max_iter == 100000);
  hs_solution* s = nullptr;
  REQUIRE(hs_spectral_radius(h, &o, &s) == HS_OK);
  CHECK(std::abs(hs_solution_rho(s) - 6) <= 1e-8);
  CHECK(hs_solution_converged(s) == 1);
  CHECK(hs_solution_vertex_count(s) == 5);
  CHECK(hs_solution_component_size(s) == 5);
  CHECK(std::abs(hs_solution_perron(s)[2] - std::pow(5.0, -1.0 / 3)) <= 1e-10);
  hs_solution_free(s);

  hs_bound_report b;
  REQUIRE(hs_bound(h, nullptr, &b) == HS_OK);
  CHECK(b.equality == HS_EQUALITY_COMPLETE);
  CHECK(std::abs(b.fr - 6) <= 1e-12);
  CHECK(std::string(hs_equality_class_name(b.equality)) == "equality_complete");

  hs_certificate c;
  char* tsv = nullptr;
  REQUIRE(hs_certify(h, 1, nullptr, 1e-7, &c, &tsv) == HS_OK);
  CHECK(c.combined == 1);
  CHECK(std::abs(c.x - 0.5) <= 1e-9);
  CHECK(std::abs(c.y - 0.5) <= 1e-9);
  CHECK(std::abs(c.bound - 6) <= 1e-9);
  CHECK(c.subnormal == 1);
  REQUIRE(tsv != nullptr);
  CHECK(std::string(tsv).find('\t') != std::string::npos);
  hs_string_free(tsv);
  hs_hypergraph_free(h);

  REQUIRE(hs_hypergraph_parse("3 6\n0 1 2\n3 4 5\n", &h, nullptr) == HS_OK);
  CHECK(hs_certify(h, 0, nullptr, 1e-7, &c, nullptr) == HS_ERR_NOT_CONNECTED);
  hs_hypergraph_free(h);
}

TEST_CASE("bound function through the C API") {
  hs_fr_row row;
  REQUIRE(hs_fr(3, 10, &row) == HS_OK);
  CHECK(std::abs(row.value - 6) <= 1e-12);
  CHECK(std::abs(row.s - 5) <= 1e-12);
  CHECK(row.has_derivative == 1);
  CHECK(hs_fr(1, 3, &row) == HS_ERR_INVALID_RANK);
  double x = 0;
  REQUIRE(hs_p_r_inverse(2, 7.875, &x) == HS_OK);
  CHECK(std::abs(x - 4.5) <= 1e-12);
  REQUIRE(hs_lovasz_shadow_bound(3, 4, &x) == HS_OK);
  CHECK(std::abs(x - 6) <= 1e-12);
  CHECK(hs_p_r_inverse(3, -1, &x) == HS_ERR_NEGATIVE_INPUT);
}

TEST_CASE("search through the C API") {
  hs_search_space sp;
  hs_search_space_default(&sp);
  sp.rank = 3;
  sp.edges = 4;
  sp.max_vertices = 6;
  hs_search_result* r = nullptr;
  REQUIRE(hs_search(&sp, nullptr, &r) == HS_OK);
  CHECK(hs_search_result_violations(r) == 0);
  CHECK(hs_search_result_equality_classes(r) == 1);
  CHECK(hs_search_result_equality_exact(r) == 1);
  hs_class_certificate c;
  REQUIRE(hs_search_result_get(r, hs_search_result_maximizer(r), &c) == HS_OK);
  CHECK(std::string(c.id) == "0,1,2|0,1,3|0,2,3|1,2,3");
  CHECK(hs_search_result_get(r, hs_search_result_count(r), &c) != HS_OK);
  hs_search_result_free(r);

  sp.edges = 30;
  sp.max_vertices = 12;
  sp.cap = 10;
  CHECK(hs_search(&sp, nullptr, &r) == HS_ERR_SPACE_TOO_LARGE);
}
