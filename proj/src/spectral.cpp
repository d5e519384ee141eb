#include "hyperspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hyperspec {

namespace {

constexpr double kTiny = 1e-300;

void check_dimension(const Hypergraph& h, std::span<const double> x) {
  if (x.size() != h.vertex_count())
    throw Error(ErrorCode::dimension_mismatch, "vector length differs from vertex count");
}

double norm_r(std::span<const double> x, int r) {
  double sum = 0;
  for (double v : x) sum += std::pow(std::abs(v), r);
  return std::pow(sum, 1.0 / r);
}

struct ComponentSolve {
  double rho = 0;
  double lower = 0;
  double upper = 0;
  std::vector<double> x;
  int iterations = 0;
  bool converged = false;
};

// Power iteration on a connected hypergraph without isolated vertices.
ComponentSolve solve_connected(const Hypergraph& h, const SolverOptions& opt) {
  const int r = h.rank();
  const std::size_t n = h.vertex_count();
  const double sigma = opt.shift;
  ComponentSolve out;
  out.x.assign(n, 1.0);
  const double start = norm_r(out.x, r);
  for (double& v : out.x) v /= start;

  std::vector<double> y(n);
  for (int it = 1; it <= opt.max_iter; ++it) {
    const std::vector<double> ax = apply_tensor(h, out.x);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t v = 0; v < n; ++v) {
      const double xr = std::pow(out.x[v], r - 1);
      y[v] = ax[v] + sigma * xr;
      const double ratio = y[v] / xr;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    out.lower = lo - sigma;
    out.upper = hi - sigma;
    out.iterations = it;
    if (opt.observer) opt.observer({it, out.lower, out.upper});
    if (out.upper - out.lower <= opt.tol) {
      out.converged = true;
      break;
    }
    for (std::size_t v = 0; v < n; ++v) out.x[v] = std::pow(y[v], 1.0 / (r - 1));
    const double norm = norm_r(out.x, r);
    for (double& v : out.x) v /= norm;
  }
  out.rho = 0.5 * (out.lower + out.upper);
  return out;
}

}  // namespace

std::vector<double> apply_tensor(const Hypergraph& h, std::span<const double> x) {
  check_dimension(h, x);
  std::vector<double> y(h.vertex_count(), 0.0);
  for (const Edge& e : h.edges()) {
    double full = 1;
    bool small = false;
    for (Vertex u : e) {
      full *= x[u];
      small = small || x[u] < kTiny;
    }
    if (!small) {
      for (Vertex v : e) y[v] += full / x[v];
      continue;
    }
    for (Vertex v : e) {
      double prod = 1;
      for (Vertex u : e)
        if (u != v) prod *= x[u];
      y[v] += prod;
    }
  }
  return y;
}

double polynomial_form(const Hypergraph& h, std::span<const double> x) {
  check_dimension(h, x);
  double sum = 0;
  for (const Edge& e : h.edges()) {
    double prod = 1;
    for (Vertex u : e) prod *= x[u];
    sum += prod;
  }
  return h.rank() * sum;
}

double eigen_residual(const Hypergraph& h, std::span<const double> x, double rho) {
  const std::vector<double> ax = apply_tensor(h, x);
  double worst = 0;
  for (std::size_t v = 0; v < ax.size(); ++v)
    worst = std::max(worst, std::abs(ax[v] - rho * std::pow(x[v], h.rank() - 1)));
  return worst;
}

SpectralSolution spectral_radius(const Hypergraph& h, const SolverOptions& options) {
  if (h.rank() < 2) throw Error(ErrorCode::invalid_rank, "spectral radius needs rank >= 2");
  if (h.edge_count() == 0) throw Error(ErrorCode::no_edges, "hypergraph has no edges");
  if (!(options.tol > 0) || options.max_iter < 1 || !(options.shift > 0))
    throw Error(ErrorCode::invalid_parameters, "solver needs tol > 0, max_iter >= 1, shift > 0");

  SpectralSolution best;
  bool have = false;
  for (const Component& comp : connected_components(h)) {
    if (comp.trivial) continue;
    std::vector<Vertex> ids;
    const Hypergraph local = compact(restrict_to(h, comp.vertices), &ids);
    ComponentSolve cs = solve_connected(local, options);
    if (have && cs.rho <= best.rho) continue;
    have = true;
    best.rho = cs.rho;
    best.lower = cs.lower;
    best.upper = cs.upper;
    best.iterations = cs.iterations;
    best.converged = cs.converged;
    best.component = ids;
    best.perron.assign(h.vertex_count(), 0.0);
    for (std::size_t i = 0; i < ids.size(); ++i) best.perron[ids[i]] = cs.x[i];
  }
  best.residual = eigen_residual(restrict_to(h, best.component), best.perron, best.rho);
  return best;
}

Vertex perron_argmax(const SpectralSolution& sol) {
  if (sol.perron.empty()) throw Error(ErrorCode::invalid_parameters, "empty Perron vector");
  return static_cast<Vertex>(std::max_element(sol.perron.begin(), sol.perron.end()) - sol.perron.begin());
}

}  // namespace hyperspec
