// Command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperspec/hyperspec.h"

namespace {

using json = nlohmann::json;

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kNonConvergence = 2,
  kBoundViolation = 3,
  kCertificateFailure = 4,
};

struct GraphDeleter {
  void operator()(hs_hypergraph* h) const { hs_hypergraph_free(h); }
};
struct SolutionDeleter {
  void operator()(hs_solution* s) const { hs_solution_free(s); }
};
struct SearchDeleter {
  void operator()(hs_search_result* r) const { hs_search_result_free(r); }
};
using GraphPtr = std::unique_ptr<hs_hypergraph, GraphDeleter>;

struct CommonOptions {
  std::string input;
  std::string inline_text;
  std::string format = "json";
  double tol = 0;
  int max_iter = 0;
  double shift = 0;
};

int exit_code_for(hs_status status) {
  switch (status) {
    case HS_ERR_NOT_CONVERGED: return kNonConvergence;
    case HS_ERR_NOT_SUBNORMAL:
    case HS_ERR_DEGREE_TOO_SMALL:
    case HS_ERR_LINK_NOT_NORMAL:
    case HS_ERR_BASE_NOT_NORMAL:
    case HS_ERR_WEIGHT_OVERFLOW: return kCertificateFailure;
    default: return kInputError;
  }
}

int report_failure(hs_status status) {
  std::cerr << "error: " << hs_status_name(status) << ": " << hs_last_error() << "\n";
  return exit_code_for(status);
}

// HYPERSPEC_TOL replaces the built-in solver tolerance; --tol wins over both.
hs_solver_options solver_options(const CommonOptions& common) {
  hs_solver_options opt;
  hs_solver_options_default(&opt);
  if (const char* env = std::getenv("HYPERSPEC_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0) opt.tol = v;
  }
  if (common.tol > 0) opt.tol = common.tol;
  if (common.max_iter > 0) opt.max_iter = common.max_iter;
  if (common.shift > 0) opt.shift = common.shift;
  return opt;
}

// Reads the edge list from --inline, a file, or stdin ("-").
std::optional<GraphPtr> load_graph(const CommonOptions& common, int& exit_code) {
  hs_hypergraph* raw = nullptr;
  std::size_t duplicates = 0;
  hs_status st;
  if (!common.inline_text.empty()) {
    st = hs_hypergraph_parse(common.inline_text.c_str(), &raw, &duplicates);
  } else if (common.input == "-") {
    std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    st = hs_hypergraph_parse(text.c_str(), &raw, &duplicates);
  } else if (!common.input.empty()) {
    st = hs_hypergraph_read_file(common.input.c_str(), &raw, &duplicates);
  } else {
    std::cerr << "error: no input; pass a file, '-' or --inline\n";
    exit_code = kInputError;
    return std::nullopt;
  }
  if (st != HS_OK) {
    exit_code = report_failure(st);
    return std::nullopt;
  }
  if (duplicates > 0) std::cerr << "warning: " << duplicates << " duplicate edge(s) removed\n";
  return GraphPtr(raw);
}

std::string text_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void add_common(CLI::App* sub, CommonOptions& common, bool with_input = true) {
  if (with_input) {
    sub->add_option("input", common.input, "edge-list file, or '-' for stdin");
    sub->add_option("--inline", common.inline_text, "edge list given directly, e.g. \"3 4\\n0 1 2\"");
  }
  sub->add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "text", "tsv"}));
  sub->add_option("--tol", common.tol, "solver bracket tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--max-iter", common.max_iter, "solver iteration cap")->check(CLI::PositiveNumber);
  sub->add_option("--shift", common.shift, "power-iteration shift")->check(CLI::PositiveNumber);
}

int cmd_rho(const CommonOptions& common) {
  int code = kSuccess;
  auto graph = load_graph(common, code);
  if (!graph) return code;
  const hs_solver_options opt = solver_options(common);
  hs_solution* raw = nullptr;
  if (hs_status st = hs_spectral_radius(graph->get(), &opt, &raw); st != HS_OK) return report_failure(st);
  std::unique_ptr<hs_solution, SolutionDeleter> sol(raw);

  const double* perron = hs_solution_perron(raw);
  const uint32_t* comp = hs_solution_component(raw);
  const bool converged = hs_solution_converged(raw);
  if (common.format == "json") {
    json out;
    out["rho"] = hs_solution_rho(raw);
    out["residual"] = hs_solution_residual(raw);
    out["iterations"] = hs_solution_iterations(raw);
    out["converged"] = converged;
    out["perron"] = std::vector<double>(perron, perron + hs_solution_vertex_count(raw));
    out["component"] = std::vector<uint32_t>(comp, comp + hs_solution_component_size(raw));
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "rho\t" << text_number(hs_solution_rho(raw)) << "\n"
              << "residual\t" << text_number(hs_solution_residual(raw)) << "\n"
              << "iterations\t" << hs_solution_iterations(raw) << "\n"
              << "converged\t" << (converged ? "yes" : "no") << "\n";
  }
  if (!converged) {
    std::cerr << "error: power iteration did not converge\n";
    return kNonConvergence;
  }
  return kSuccess;
}

int cmd_bound(const CommonOptions& common) {
  int code = kSuccess;
  auto graph = load_graph(common, code);
  if (!graph) return code;
  const hs_solver_options opt = solver_options(common);
  hs_bound_report rep;
  if (hs_status st = hs_bound(graph->get(), &opt, &rep); st != HS_OK) return report_failure(st);
  const char* cls = hs_equality_class_name(rep.equality);
  if (common.format == "json") {
    json out;
    out["e"] = rep.e;
    out["f_r"] = rep.fr;
    out["rho"] = rep.rho;
    out["gap"] = rep.gap;
    out["equality_class"] = cls;
    out["converged"] = rep.converged != 0;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "e\t" << rep.e << "\nf_r\t" << text_number(rep.fr) << "\nrho\t" << text_number(rep.rho)
              << "\ngap\t" << text_number(rep.gap) << "\nequality_class\t" << cls << "\n";
  }
  if (!rep.converged) {
    std::cerr << "error: power iteration did not converge\n";
    return kNonConvergence;
  }
  if (rep.gap < -1e-6) {
    std::cerr << "error: spectral radius exceeds f_r(e)\n";
    return kBoundViolation;
  }
  return kSuccess;
}

int cmd_certify(const CommonOptions& common, bool combine, double cert_tol, const std::string& labeling_path) {
  int code = kSuccess;
  auto graph = load_graph(common, code);
  if (!graph) return code;
  const hs_solver_options opt = solver_options(common);
  hs_certificate cert;
  char* tsv = nullptr;
  const hs_status st =
      hs_certify(graph->get(), combine, &opt, cert_tol, &cert, labeling_path.empty() ? nullptr : &tsv);
  if (st != HS_OK) return report_failure(st);
  if (tsv) {
    std::ofstream(labeling_path, std::ios::binary) << tsv;
    hs_string_free(tsv);
  }

  std::string verdict;
  std::string failing;
  if (cert.combined) {
    verdict = cert.subnormal ? (cert.strictly_subnormal ? "strictly_subnormal" : "subnormal") : "not_subnormal";
    if (!cert.subnormal) failing = cert.vertex_slack > cert_tol ? "vertex_slack" : "edge_slack";
  } else {
    verdict = cert.normal && cert.consistent ? "consistently_normal" : cert.normal ? "normal" : "not_normal";
    if (!cert.normal) failing = cert.vertex_slack > cert_tol ? "vertex_slack" : "edge_slack";
    else if (!cert.consistent) failing = "consistency_defect";
  }

  if (common.format == "json") {
    json out;
    out["mode"] = cert.combined ? "combined" : "normal";
    out["rho"] = cert.rho;
    out["alpha"] = cert.alpha;
    out["bound"] = cert.bound;
    out["slacks"] = {{"vertex", cert.vertex_slack}, {"edge", cert.edge_slack}, {"consistency", cert.consistency_defect}};
    out["verdict"] = verdict;
    if (cert.combined) {
      out["vertex"] = cert.vertex;
      out["degree"] = cert.degree;
      out["f_r"] = cert.fr;
      out["x"] = cert.x;
      out["y"] = cert.y;
      out["alpha1"] = cert.alpha1;
      out["alpha2"] = cert.alpha2;
      out["empty_remainder"] = cert.empty_remainder != 0;
    }
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "verdict\t" << verdict << "\nalpha\t" << text_number(cert.alpha) << "\nbound\t"
              << text_number(cert.bound) << "\n";
    if (cert.combined)
      std::cout << "x\t" << text_number(cert.x) << "\ny\t" << text_number(cert.y) << "\n";
  }
  if (!failing.empty()) {
    std::cerr << "error: certificate failed on " << failing << "\n";
    return kCertificateFailure;
  }
  return kSuccess;
}

int cmd_search(const CommonOptions& common, const hs_search_space& space, const std::string& csv_path) {
  const hs_solver_options opt = solver_options(common);
  hs_search_result* raw = nullptr;
  if (hs_status st = hs_search(&space, &opt, &raw); st != HS_OK) return report_failure(st);
  std::unique_ptr<hs_search_result, SearchDeleter> result(raw);

  const std::size_t count = hs_search_result_count(raw);
  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path, std::ios::binary);
    csv << "class,rho,f_r,gap\n";
  }
  bool all_converged = true;
  for (std::size_t i = 0; i < count; ++i) {
    hs_class_certificate c;
    hs_search_result_get(raw, i, &c);
    all_converged = all_converged && c.converged;
    json line{{"id", c.id}, {"e", c.e}, {"rho", c.rho}, {"f_r", c.fr}, {"gap", c.gap},
              {"complete", c.complete != 0}, {"equality_class", hs_equality_class_name(c.equality)}};
    if (common.format == "json")
      std::cout << line.dump() << "\n";
    else
      std::cout << c.id << "\t" << text_number(c.rho) << "\t" << text_number(c.fr) << "\t"
                << hs_equality_class_name(c.equality) << "\n";
    if (csv) {
      char buf[128];
      std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g\n", c.rho, c.fr, c.gap);
      csv << '"' << c.id << '"' << buf;
    }
  }
  json summary;
  summary["rank"] = space.rank;
  summary["edges"] = space.edges;
  summary["max_vertices"] = space.max_vertices;
  summary["connected"] = space.connected != 0;
  summary["classes"] = count;
  summary["violations"] = hs_search_result_violations(raw);
  summary["equality_classes"] = hs_search_result_equality_classes(raw);
  summary["equality_exact"] = hs_search_result_equality_exact(raw) != 0;
  if (count > 0) {
    hs_class_certificate best;
    hs_search_result_get(raw, hs_search_result_maximizer(raw), &best);
    summary["maximizer"] = {{"id", best.id}, {"e", best.e}, {"rho", best.rho}, {"f_r", best.fr}, {"gap", best.gap},
                            {"equality_class", hs_equality_class_name(best.equality)},
                            {"complete", best.complete != 0}};
  }
  if (common.format == "json")
    std::cout << json{{"summary", summary}}.dump() << "\n";
  else
    std::cout << "classes\t" << count << "\nviolations\t" << hs_search_result_violations(raw) << "\n";

  if (!all_converged) return kNonConvergence;
  if (hs_search_result_violations(raw) > 0) return kBoundViolation;
  return kSuccess;
}

int cmd_fr(const CommonOptions& common, int rank, double from, double to, double step) {
  if (!(step > 0) || to < from) {
    std::cerr << "error: need --from <= --to and --step > 0\n";
    return kInputError;
  }
  json rows = json::array();
  const bool json_out = common.format == "json";
  if (!json_out) std::cout << "e\ts\tf_r\tf_r_prime\n";
  const long count = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
  for (long i = 0; i < count; ++i) {
    const double e = from + i * step;
    hs_fr_row row;
    if (hs_status st = hs_fr(rank, e, &row); st != HS_OK) return report_failure(st);
    if (json_out) {
      json r{{"e", row.e}, {"s", row.s}, {"f_r", row.value}};
      r["f_r_prime"] = row.has_derivative ? json(row.derivative) : json(nullptr);
      rows.push_back(r);
    } else {
      std::cout << text_number(row.e) << "\t" << text_number(row.s) << "\t" << text_number(row.value) << "\t"
                << (row.has_derivative ? text_number(row.derivative) : "nan") << "\n";
    }
  }
  if (json_out) std::cout << json{{"rank", rank}, {"rows", rows}}.dump() << "\n";
  return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral radii of uniform hypergraphs and edge-count bounds"};
  app.require_subcommand(1);

  CommonOptions rho_opts, bound_opts, cert_opts, search_opts, fr_opts;

  auto* rho = app.add_subcommand("rho", "spectral radius and Perron vector");
  add_common(rho, rho_opts);

  auto* bound = app.add_subcommand("bound", "compare the spectral radius with f_r(e)");
  add_common(bound, bound_opts);

  bool combine = false;
  double cert_tol = 1e-7;
  std::string labeling_path;
  auto* certify = app.add_subcommand("certify", "normal / subnormal labeling certificate");
  add_common(certify, cert_opts);
  certify->add_flag("--combine", combine, "glue link and remainder labelings at the Perron argmax");
  certify->add_option("--cert-tol", cert_tol, "labeling verification tolerance")->check(CLI::PositiveNumber);
  certify->add_option("--labeling", labeling_path, "write the verified labeling as TSV");

  hs_search_space space;
  hs_search_space_default(&space);
  bool all_graphs = false;
  std::string csv_path;
  auto* search = app.add_subcommand("search", "exhaustive audit of the bound over a small space");
  add_common(search, search_opts, false);
  search->add_option("--rank", space.rank, "uniformity r")->required();
  search->add_option("--edges", space.edges, "edge count e")->required();
  search->add_option("--max-vertices", space.max_vertices, "vertex budget")->required();
  search->add_flag("--connected", "keep connected hypergraphs only (default)");
  search->add_flag("--all", all_graphs, "include disconnected hypergraphs");
  search->add_option("--jobs", space.jobs, "worker threads")->check(CLI::PositiveNumber);
  search->add_option("--cap", space.cap, "largest admissible raw space size");
  search->add_option("--csv", csv_path, "also write class,rho,f_r,gap rows to this file");

  int fr_rank = 3;
  double from = 1, to = 10, step = 1;
  auto* fr = app.add_subcommand("fr", "tabulate f_r and its derivative");
  add_common(fr, fr_opts, false);
  fr->add_option("--rank", fr_rank, "uniformity r")->required();
  fr->add_option("--from", from, "first edge count");
  fr->add_option("--to", to, "last edge count");
  fr->add_option("--step", step, "increment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kInputError;
  }

  if (*rho) return cmd_rho(rho_opts);
  if (*bound) return cmd_bound(bound_opts);
  if (*certify) return cmd_certify(cert_opts, combine, cert_tol, labeling_path);
  if (*search) {
    space.connected = all_graphs ? 0 : 1;
    return cmd_search(search_opts, space, csv_path);
  }
  if (*fr) {
    if (fr_opts.format == "text") fr_opts.format = "tsv";
    return cmd_fr(fr_opts, fr_rank, from, to, step);
  }
  return kInputError;
}
