#include "hyperspec/labeling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>

#include "hyperspec/analytic.hpp"

namespace hyperspec {

namespace {

std::size_t position_in(const Edge& e, Vertex v) {
  auto it = std::lower_bound(e.begin(), e.end(), v);
  if (it == e.end() || *it != v) return e.size();
  return static_cast<std::size_t>(it - e.begin());
}

struct VertexSums {
  std::vector<double> sum;
  std::vector<bool> covered;
};

VertexSums vertex_sums(const WeightedIncidence& b) {
  const Hypergraph& h = b.host();
  VertexSums out{std::vector<double>(h.vertex_count(), 0.0), std::vector<bool>(h.vertex_count(), false)};
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const Edge& e = h.edge(i);
    const auto& w = b.edge_weights(i);
    for (std::size_t j = 0; j < e.size(); ++j) {
      out.sum[e[j]] += w[j];
      out.covered[e[j]] = true;
    }
  }
  return out;
}

double log_edge_product(const WeightedIncidence& b, std::size_t i) {
  double s = 0;
  for (double w : b.edge_weights(i)) s += std::log(w);
  return s;
}

void require_alpha(double alpha) {
  if (!(alpha > 0) || !std::isfinite(alpha))
    throw Error(ErrorCode::invalid_parameters, "alpha must be positive and finite");
}

LabelingReport check_sums_and_products(const WeightedIncidence& b, double alpha, double tol,
                                       LabelingCheck check) {
  require_alpha(alpha);
  LabelingReport rep;
  rep.check = check;
  rep.alpha = alpha;
  rep.tol = tol;
  const VertexSums sums = vertex_sums(b);
  rep.min_vertex_sum = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < sums.sum.size(); ++v) {
    if (!sums.covered[v]) continue;
    const double dev = sums.sum[v] - 1;
    rep.vertex_slack = std::max(rep.vertex_slack, check == LabelingCheck::normal ? std::abs(dev) : std::max(dev, 0.0));
    rep.min_vertex_sum = std::min(rep.min_vertex_sum, sums.sum[v]);
  }
  if (!std::isfinite(rep.min_vertex_sum)) rep.min_vertex_sum = 0;
  const double log_alpha = std::log(alpha);
  for (std::size_t i = 0; i < b.host().edge_count(); ++i) {
    const double dev = log_alpha - log_edge_product(b, i);
    rep.edge_slack = std::max(rep.edge_slack, check == LabelingCheck::normal ? std::abs(dev) : std::max(dev, 0.0));
  }
  rep.passed = rep.vertex_slack <= tol && rep.edge_slack <= tol;
  return rep;
}

}  // namespace

WeightedIncidence::WeightedIncidence(Hypergraph host) : host_(std::move(host)) {
  weights_.resize(host_.edge_count());
  for (std::size_t i = 0; i < host_.edge_count(); ++i) weights_[i].assign(host_.edge(i).size(), 0.0);
}

WeightedIncidence::WeightedIncidence(Hypergraph host, std::vector<std::vector<double>> weights)
    : host_(std::move(host)), weights_(std::move(weights)) {
  if (weights_.size() != host_.edge_count())
    throw Error(ErrorCode::dimension_mismatch, "one weight row per edge expected");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i].size() != host_.edge(i).size())
      throw Error(ErrorCode::dimension_mismatch, "one weight per incident vertex expected");
    for (double w : weights_[i])
      if (!(w > 0) || !std::isfinite(w))
        throw Error(ErrorCode::invalid_parameters, "incidence weights must be positive and finite");
  }
}

double WeightedIncidence::weight(Vertex v, std::size_t edge_index) const {
  const Edge& e = host_.edge(edge_index);
  const std::size_t pos = position_in(e, v);
  return pos == e.size() ? 0.0 : weights_[edge_index][pos];
}

void WeightedIncidence::set_weight(Vertex v, std::size_t edge_index, double w) {
  const Edge& e = host_.edge(edge_index);
  const std::size_t pos = position_in(e, v);
  if (pos == e.size()) throw Error(ErrorCode::vertex_not_in_edge, "weight outside the incidence pattern");
  if (!(w > 0) || !std::isfinite(w))
    throw Error(ErrorCode::invalid_parameters, "incidence weights must be positive and finite");
  weights_[edge_index][pos] = w;
}

NormalLabeling construct_normal_labeling(const Hypergraph& h, const SpectralSolution& sol) {
  if (!is_connected(h)) throw Error(ErrorCode::not_connected, "normal labeling needs a connected hypergraph");
  if (!sol.converged) throw Error(ErrorCode::not_converged, "spectral solution did not converge");
  if (sol.perron.size() != h.vertex_count())
    throw Error(ErrorCode::dimension_mismatch, "Perron vector length differs from vertex count");
  const int r = h.rank();
  const double log_rho = std::log(sol.rho);
  std::vector<std::vector<double>> weights(h.edge_count());
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const Edge& e = h.edge(i);
    double log_prod = 0;
    for (Vertex u : e) {
      if (!(sol.perron[u] > 0))
        throw Error(ErrorCode::invalid_parameters, "Perron vector must be positive on every edge");
      log_prod += std::log(sol.perron[u]);
    }
    weights[i].reserve(e.size());
    for (Vertex v : e) weights[i].push_back(std::exp(log_prod - log_rho - r * std::log(sol.perron[v])));
  }
  return {WeightedIncidence(h, std::move(weights)), std::exp(-r * log_rho)};
}

LabelingReport verify_normal(const WeightedIncidence& b, double alpha, double tol) {
  return check_sums_and_products(b, alpha, tol, LabelingCheck::normal);
}

LabelingReport verify_subnormal(const WeightedIncidence& b, double alpha, double tol) {
  LabelingReport rep = check_sums_and_products(b, alpha, tol, LabelingCheck::subnormal);
  if (rep.passed) {
    const LabelingReport normal = verify_normal(b, alpha, tol);
    rep.strictly_subnormal = !normal.passed;
  }
  return rep;
}

LabelingReport verify_consistency(const WeightedIncidence& b, double tol) {
  const Hypergraph& h = b.host();
  LabelingReport rep;
  rep.check = LabelingCheck::consistency;
  rep.tol = tol;
  if (h.edge_count() == 0) {
    rep.passed = true;
    return rep;
  }
  if (!is_connected(h)) throw Error(ErrorCode::not_connected, "consistency check needs a connected host");

  // Spanning tree of the vertex-edge incidence graph. Potentials p (vertices)
  // and q (edges) reproduce log B exactly on tree incidences; each non-tree
  // incidence closes one fundamental cycle whose log ratio product is
  // log B(v,e) - p(v) - q(e).
  const auto inc = h.incidence();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> p(h.vertex_count(), nan);
  std::vector<double> q(h.edge_count(), nan);
  std::vector<std::vector<char>> tree(h.edge_count(), std::vector<char>(h.rank(), 0));
  auto slot = [&](Vertex v, std::size_t i) {
    const Edge& e = h.edge(i);
    return static_cast<std::size_t>(std::lower_bound(e.begin(), e.end(), v) - e.begin());
  };
  const Vertex root = h.edge(0).front();
  p[root] = 0;
  std::deque<Vertex> queue{root};
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (std::size_t i : inc[v]) {
      if (!std::isnan(q[i])) continue;
      q[i] = std::log(b.weight(v, i)) - p[v];
      tree[i][slot(v, i)] = 1;
      for (Vertex u : h.edge(i)) {
        if (!std::isnan(p[u])) continue;
        p[u] = std::log(b.weight(u, i)) - q[i];
        tree[i][slot(u, i)] = 1;
        queue.push_back(u);
      }
    }
  }
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const Edge& e = h.edge(i);
    const auto& w = b.edge_weights(i);
    for (std::size_t j = 0; j < e.size(); ++j)
      if (!tree[i][j])
        rep.consistency_defect = std::max(rep.consistency_defect, std::abs(std::log(w[j]) - p[e[j]] - q[i]));
  }
  rep.passed = rep.consistency_defect <= tol;
  return rep;
}

double subnormal_bound(const LabelingReport& report, int rank) {
  if (report.check != LabelingCheck::subnormal || !report.passed)
    throw Error(ErrorCode::not_subnormal, "labeling is not verified subnormal");
  require_alpha(report.alpha);
  return std::pow(report.alpha, -1.0 / rank);
}

CombinedLabeling combine_subnormal(const Hypergraph& h, Vertex v, const WeightedIncidence& link,
                                   double alpha1, const WeightedIncidence* remainder, double alpha2,
                                   const CombineTolerances& tol) {
  const int r = h.rank();
  const Hypergraph g = link_graph(h, v);
  CombinedLabeling out;
  out.vertex = v;
  out.degree = g.edge_count();
  out.fr = f_r(r, static_cast<double>(h.edge_count())).value;
  if (static_cast<double>(out.degree) < out.fr - tol.degree)
    throw Error(ErrorCode::degree_too_small, "degree " + std::to_string(out.degree) + " is below f_r(e) = " +
                                                 std::to_string(out.fr));
  if (!(link.host() == g))
    throw Error(ErrorCode::invalid_parameters, "link labeling is not defined on the link of the vertex");
  require_alpha(alpha1);
  if (!verify_normal(link, alpha1, tol.normal).passed)
    throw Error(ErrorCode::link_not_normal, "link labeling is not alpha1-normal");

  const Hypergraph rest = delete_vertex(h, v);
  out.empty_remainder = rest.edge_count() == 0;
  out.alpha = std::pow(out.fr, -r);
  out.x = std::pow(out.degree * out.alpha / alpha1, 1.0 / (r - 1));
  if (!out.empty_remainder) {
    if (remainder == nullptr)
      throw Error(ErrorCode::invalid_parameters, "remainder labeling required when H - v has edges");
    if (nontrivial_component_count(rest) != 1)
      throw Error(ErrorCode::not_connected, "H - v has more than one non-trivial component");
    if (!(remainder->host() == rest))
      throw Error(ErrorCode::invalid_parameters, "remainder labeling is not defined on H - v");
    require_alpha(alpha2);
    if (!verify_normal(*remainder, alpha2, tol.normal).passed)
      throw Error(ErrorCode::base_not_normal, "remainder labeling is not alpha2-normal");
    out.y = std::pow(out.alpha / alpha2, 1.0 / r);
  }
  if (out.x + out.y > 1 + tol.overflow)
    throw Error(ErrorCode::weight_overflow, "x + y = " + std::to_string(out.x + out.y) + " exceeds 1");

  out.shadow_in_link = out.empty_remainder || is_subfamily(shadow(rest), g);

  std::vector<std::vector<double>> weights(h.edge_count());
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const Edge& f = h.edge(i);
    weights[i].reserve(f.size());
    if (std::binary_search(f.begin(), f.end(), v)) {
      Edge rest_of_f;
      for (Vertex u : f)
        if (u != v) rest_of_f.push_back(u);
      const std::size_t gi = *g.edge_index(rest_of_f);
      for (Vertex u : f) weights[i].push_back(u == v ? 1.0 / out.degree : out.x * link.weight(u, gi));
    } else {
      const std::size_t ri = *rest.edge_index(f);
      for (Vertex u : f) weights[i].push_back(out.y * remainder->weight(u, ri));
    }
  }
  out.labeling = WeightedIncidence(h, std::move(weights));
  return out;
}

CombinedCertificate certify_combined(const Hypergraph& h, Vertex v, const SolverOptions& options,
                                     double verify_tol) {
  if (h.rank() < 3) throw Error(ErrorCode::rank_too_small, "combined certificate needs rank >= 3");
  if (!is_connected(h)) throw Error(ErrorCode::not_connected, "combined certificate needs a connected hypergraph");
  CombinedCertificate cert;

  const Hypergraph g = link_graph(h, v);
  if (g.edge_count() == 0) throw Error(ErrorCode::degree_too_small, "vertex lies in no edge");
  const SpectralSolution link_sol = spectral_radius(g, options);
  if (!link_sol.converged) throw Error(ErrorCode::not_converged, "link solve did not converge");
  const NormalLabeling b1 = construct_normal_labeling(g, link_sol);
  cert.rho_link = link_sol.rho;
  cert.alpha1 = b1.alpha;

  const Hypergraph rest = delete_vertex(h, v);
  std::optional<NormalLabeling> b2;
  if (rest.edge_count() > 0) {
    const SpectralSolution rest_sol = spectral_radius(rest, options);
    if (!rest_sol.converged) throw Error(ErrorCode::not_converged, "remainder solve did not converge");
    b2 = construct_normal_labeling(rest, rest_sol);
    cert.rho_remainder = rest_sol.rho;
    cert.alpha2 = b2->alpha;
  }

  cert.combined = combine_subnormal(h, v, b1.labeling, b1.alpha, b2 ? &b2->labeling : nullptr,
                                    b2 ? b2->alpha : 1.0);
  cert.report = verify_subnormal(cert.combined.labeling, cert.combined.alpha, verify_tol);
  if (cert.report.passed) cert.bound = subnormal_bound(cert.report, h.rank());
  return cert;
}

std::string serialize_labeling_tsv(const WeightedIncidence& b) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < b.host().edge_count(); ++i) {
    const Edge& e = b.host().edge(i);
    for (std::size_t j = 0; j < e.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%u\t%zu\t%.17g\n", e[j], i, b.edge_weights(i)[j]);
      out += buf;
    }
  }
  return out;
}

WeightedIncidence parse_labeling_tsv(const Hypergraph& host, std::string_view text) {
  WeightedIncidence b(host);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    unsigned v = 0;
    std::size_t edge = 0;
    double w = 0;
    char tail = 0;
    if (std::sscanf(line.c_str(), "%u\t%zu\t%lf %c", &v, &edge, &w, &tail) != 3)
      throw ParseError(line_no, "expected 'vertex<TAB>edge_index<TAB>weight'");
    if (edge >= host.edge_count()) throw ParseError(line_no, "edge index out of range");
    try {
      b.set_weight(v, edge, w);
    } catch (const Error& err) {
      throw ParseError(line_no, err.what());
    }
  }
  for (std::size_t i = 0; i < host.edge_count(); ++i)
    for (double w : b.edge_weights(i))
      if (!(w > 0)) throw ParseError(line_no, "missing weight for edge " + std::to_string(i));
  return b;
}

}  // namespace hyperspec
