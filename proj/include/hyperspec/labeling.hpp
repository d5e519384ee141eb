#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperspec/hypergraph.hpp"
#include "hyperspec/spectral.hpp"

namespace hyperspec {

/// A weighted incidence matrix: a positive weight for every incident
/// (vertex, edge) pair and zero elsewhere. Weights are stored per edge in the
/// order of that edge's sorted vertices.
class WeightedIncidence {
 public:
  WeightedIncidence() = default;
  explicit WeightedIncidence(Hypergraph host);
  WeightedIncidence(Hypergraph host, std::vector<std::vector<double>> weights);

  const Hypergraph& host() const noexcept { return host_; }

  /// B(v, e); zero when v is not in edge e.
  double weight(Vertex v, std::size_t edge_index) const;
  void set_weight(Vertex v, std::size_t edge_index, double w);

  // Weights of edge i, aligned with host().edge(i).
  const std::vector<double>& edge_weights(std::size_t i) const { return weights_.at(i); }

 private:
  Hypergraph host_;
  std::vector<std::vector<double>> weights_;
};

enum class LabelingCheck { normal, subnormal, consistency };

/// Outcome of one labeling check.
///
/// Vertex slack is |sum_e B(v,e) - 1| for the normal check and
/// max(sum - 1, 0) for the subnormal one, maximized over non-isolated
/// vertices. Edge slack compares edge products with alpha in log space:
/// |log prod - log alpha| (normal) or max(log alpha - log prod, 0)
/// (subnormal). Consistency defect is the largest |log| of a fundamental
/// cycle ratio product of the vertex-edge incidence graph.
struct LabelingReport {
  LabelingCheck check = LabelingCheck::normal;
  double alpha = 0;
  double tol = 0;
  double vertex_slack = 0;
  double edge_slack = 0;
  double consistency_defect = 0;
  double min_vertex_sum = 0;
  bool passed = false;
  bool strictly_subnormal = false;
};

struct NormalLabeling {
  WeightedIncidence labeling;
  double alpha = 0;
};

/// B(v,e) = prod_{u in e} x_u / (rho x_v^r) with alpha = rho^{-r}, built from
/// a converged Perron pair of a connected hypergraph.
NormalLabeling construct_normal_labeling(const Hypergraph& h, const SpectralSolution& sol);

LabelingReport verify_normal(const WeightedIncidence& b, double alpha, double tol);
LabelingReport verify_subnormal(const WeightedIncidence& b, double alpha, double tol);
LabelingReport verify_consistency(const WeightedIncidence& b, double tol);

/// alpha^{-1/r}, an upper bound on the spectral radius of a subnormal host.
double subnormal_bound(const LabelingReport& report, int rank);

struct CombinedLabeling {
  WeightedIncidence labeling;
  double alpha = 0;   // f_r(e)^{-r}
  double x = 0;       // scale of the link labeling
  double y = 0;       // scale of the remainder labeling
  double fr = 0;
  std::size_t degree = 0;
  Vertex vertex = 0;
  bool empty_remainder = false;  // every edge passes through the vertex
  bool shadow_in_link = false;
};

struct CombineTolerances {
  double normal = 1e-7;
  double degree = 1e-9;
  double overflow = 1e-9;
};

/// Glues a normal labeling of the link of `v` (alpha1) and one of H - v
/// (alpha2) into a labeling of H whose edge products all equal
/// f_r(e)^{-r}. `remainder` may be omitted only when H - v has no edges; it
/// must cover the single non-trivial component of H - v.
CombinedLabeling combine_subnormal(const Hypergraph& h, Vertex v, const WeightedIncidence& link,
                                   double alpha1, const WeightedIncidence* remainder, double alpha2,
                                   const CombineTolerances& tol = {});

/// Full certificate pipeline at one vertex: solve the link and the remainder,
/// build their normal labelings, combine, and verify subnormality.
struct CombinedCertificate {
  CombinedLabeling combined;
  LabelingReport report;
  double bound = 0;
  double rho_link = 0;
  double rho_remainder = 0;
  double alpha1 = 0;
  double alpha2 = 0;
};

CombinedCertificate certify_combined(const Hypergraph& h, Vertex v, const SolverOptions& options = {},
                                     double verify_tol = 1e-7);

/// TSV rows `vertex<TAB>edge_index<TAB>weight`, edges in host order.
std::string serialize_labeling_tsv(const WeightedIncidence& b);
WeightedIncidence parse_labeling_tsv(const Hypergraph& host, std::string_view text);

}  // namespace hyperspec
