#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hyperspec/error.hpp"

namespace hyperspec {

/// Exact binomial coefficient; throws on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// If m == C(k, rank) for some integer k >= rank, returns that k.
std::optional<std::uint64_t> binomial_root(std::uint64_t m, int rank);

/// Real-argument binomial x(x-1)...(x-rank+1)/rank!.
double p_r(int rank, double x);

/// d/dx p_r(x).
double p_r_derivative(int rank, double x);

/// The root x >= rank-1 of p_r(x) = m. Monotone in m.
double p_r_inverse(int rank, double m);

struct FrEvaluation {
  double e = 0;
  double s = 0;                    // p_r(s) = e
  double value = 0;                // f_r(e) = p_{r-1}(s - 1)
  std::optional<double> derivative;
};

/// Evaluates f_r(e). Rank 2 uses the closed form (sqrt(8e+1) - 1) / 2.
FrEvaluation f_r(int rank, double e, bool with_derivative = false);

// Same as f_r but always through p_{r-1}(p_r^{-1}(e) - 1), rank 2 included.
double f_r_generic(int rank, double e);

/// f_r'(e) = (r/s) * sum_{i=1}^{r-1} 1/(s-i) / sum_{i=0}^{r-1} 1/(s-i), with
/// s = p_r^{-1}(e). Throws domain_error where s <= r-1.
double f_r_derivative(int rank, double e);

/// |p_r^{-1}(y) - r y / f_r(y)|; zero up to rounding.
double eta_identity_residual(int rank, double y);

/// The comparison function
///   F(x) = x^{1/(r-1)} f_{r-1}(x) / f_r(e)^{r/(r-1)} + f_r(e - x) / f_r(e)
/// on [f_r(e), e], with f_1 = 1.
double lemma_F(int rank, double e, double x);

struct LemmaAuditPoint {
  double x = 0;
  double F = 0;
  double t = 0;  // x = C(t, r-1)
  double s = 0;  // e = C(s, r)
  double u = 0;  // e - x = C(u, r)
};

struct LemmaAudit {
  int rank = 0;
  double e = 0;
  double fr = 0;
  std::vector<LemmaAuditPoint> grid;
  double max_F = 0;
  double F_at_left = 0;
  double left_slope = 0;            // forward difference at x = f_r(e)
  double max_second_difference = 0; // undivided, interior points
  bool tsu_ordered = true;          // t >= s-1 >= u everywhere
  bool max_ok = false;
  bool left_ok = false;
  bool slope_ok = false;
  bool concave_ok = false;

  bool passed() const { return max_ok && left_ok && slope_ok && concave_ok && tsu_ordered; }
};

struct LemmaAuditTolerances {
  double max_excess = 1e-9;
  double left_value = 1e-9;
  double second_difference = 1e-6;
  double ordering = 1e-9;
};

/// Samples F on `grid_size` equispaced points of [f_r(e), e] and checks the
/// value at the left end, the sign of the slope there, concavity and the
/// ordering of the auxiliary roots t, s-1, u.
LemmaAudit lemma_audit(int rank, double e, int grid_size, const LemmaAuditTolerances& tol = {});

/// Lower bound C(x, r-1) on the shadow of m r-sets where m = C(x, r).
double lovasz_shadow_bound(int rank, double m);

}  // namespace hyperspec
