#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hyperspec/hypergraph.hpp"

namespace hyperspec {

/// Collatz-Wielandt bracket of one power-iteration step: every ratio
/// (A x^{r-1})_v / x_v^{r-1} lies in [lower, upper] and so does rho.
struct IterationState {
  int iteration = 0;
  double lower = 0;
  double upper = 0;
};

struct SolverOptions {
  double tol = 1e-10;
  int max_iter = 100000;
  double shift = 1.0;
  // Called once per iteration with the bracket of the current iterate.
  std::function<void(const IterationState&)> observer;
};

struct SpectralSolution {
  double rho = 0;
  // Length vertex_count; positive on `component`, zero elsewhere, ||x||_r = 1.
  std::vector<double> perron;
  double residual = 0;
  int iterations = 0;
  bool converged = false;
  double lower = 0;
  double upper = 0;
  std::vector<Vertex> component;
};

/// y_v = sum over edges e containing v of prod_{u in e, u != v} x_u.
std::vector<double> apply_tensor(const Hypergraph& h, std::span<const double> x);

/// r * sum over edges of prod x_u; equals sum_v x_v (A x^{r-1})_v.
double polynomial_form(const Hypergraph& h, std::span<const double> x);

/// max_v |(A x^{r-1})_v - rho x_v^{r-1}|.
double eigen_residual(const Hypergraph& h, std::span<const double> x, double rho);

/// Spectral radius by shifted normalized power iteration with
/// Collatz-Wielandt brackets. Disconnected input is split into components and
/// the largest component radius wins; non-convergence is reported through
/// `converged`, not by throwing.
SpectralSolution spectral_radius(const Hypergraph& h, const SolverOptions& options = {});

/// Index of the largest Perron entry, lowest id on ties.
Vertex perron_argmax(const SpectralSolution& sol);

}  // namespace hyperspec
