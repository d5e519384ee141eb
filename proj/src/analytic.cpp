#include "hyperspec/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hyperspec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_rank(int rank, int min_rank) {
  if (rank < min_rank)
    throw Error(ErrorCode::invalid_rank,
                "rank " + std::to_string(rank) + " below minimum " + std::to_string(min_rank));
}

double factorial(int r) {
  double f = 1;
  for (int i = 2; i <= r; ++i) f *= i;
  return f;
}

// f_{r-1} with the convention f_1 = 1.
double f_lower(int rank_minus_one, double x) {
  if (rank_minus_one <= 1) return 1.0;
  return f_r(rank_minus_one, x).value;
}

}  // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    acc = acc * (n - i) / (i + 1);
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw Error(ErrorCode::invalid_parameters, "binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::optional<std::uint64_t> binomial_root(std::uint64_t m, int rank) {
  if (rank < 1 || m == 0) return std::nullopt;
  for (std::uint64_t k = static_cast<std::uint64_t>(rank);; ++k) {
    std::uint64_t c = binomial(k, rank);
    if (c == m) return k;
    if (c > m) return std::nullopt;
  }
}

double p_r(int rank, double x) {
  require_rank(rank, 0);
  double v = 1;
  for (int j = 0; j < rank; ++j) v *= (x - j) / (j + 1);
  return v;
}

double p_r_derivative(int rank, double x) {
  require_rank(rank, 0);
  double sum = 0;
  for (int j = 0; j < rank; ++j) {
    double prod = 1;
    for (int i = 0; i < rank; ++i)
      if (i != j) prod *= x - i;
    sum += prod;
  }
  return sum / factorial(rank);
}

double p_r_inverse(int rank, double m) {
  require_rank(rank, 1);
  if (!(m >= 0)) throw Error(ErrorCode::negative_input, "p_r inverse needs m >= 0");
  if (std::isinf(m)) return m;
  const double left = rank - 1;
  if (m == 0) return left;
  if (rank == 1) return m;

  // Bracket [lo, hi] with p(lo) <= m <= p(hi); p_r is increasing and convex
  // to the right of its largest root, so Newton is safe inside the bracket.
  double lo = left;
  double hi = left + std::max(static_cast<double>(rank), 2.0 * std::pow(m, 1.0 / rank) * rank);
  while (p_r(rank, hi) < m) hi = lo + 2 * (hi - lo);

  double x = rank / 2.0 - 0.5 + std::pow(factorial(rank) * m, 1.0 / rank);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);

  for (int iter = 0; iter < 200; ++iter) {
    const double fx = p_r(rank, x) - m;
    if (fx == 0) return x;
    if (fx < 0)
      lo = x;
    else
      hi = x;
    const double d = p_r_derivative(rank, x);
    double next = d > 0 ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 2 * kEps * std::abs(x) || hi - lo <= 2 * kEps * hi) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

FrEvaluation f_r(int rank, double e, bool with_derivative) {
  require_rank(rank, 2);
  if (!(e >= 0)) throw Error(ErrorCode::negative_input, "edge count must be nonnegative");
  FrEvaluation out;
  out.e = e;
  if (rank == 2) {
    const double root = std::sqrt(8 * e + 1);
    out.s = (1 + root) / 2;
    out.value = (root - 1) / 2;
  } else {
    out.s = p_r_inverse(rank, e);
    out.value = p_r(rank - 1, out.s - 1);
  }
  if (with_derivative && e > 0) out.derivative = f_r_derivative(rank, e);
  return out;
}

double f_r_generic(int rank, double e) {
  require_rank(rank, 2);
  if (!(e >= 0)) throw Error(ErrorCode::negative_input, "edge count must be nonnegative");
  return p_r(rank - 1, p_r_inverse(rank, e) - 1);
}

double f_r_derivative(int rank, double e) {
  require_rank(rank, 2);
  if (!(e >= 0)) throw Error(ErrorCode::negative_input, "edge count must be nonnegative");
  const double s = p_r_inverse(rank, e);
  if (!(s > rank - 1))
    throw Error(ErrorCode::domain_error, "derivative formula is singular at e = 0");
  double inner = 0;
  double all = 1 / s;
  for (int i = 1; i < rank; ++i) {
    inner += 1 / (s - i);
    all += 1 / (s - i);
  }
  return rank / s * inner / all;
}

double eta_identity_residual(int rank, double y) {
  if (!(y > 0)) throw Error(ErrorCode::domain_error, "eta identity needs y > 0");
  const FrEvaluation f = f_r(rank, y);
  return std::abs(f.s - rank * y / f.value);
}

double lemma_F(int rank, double e, double x) {
  require_rank(rank, 2);
  const double fr = f_r(rank, e).value;
  const double slack = 1e-12 * std::max(1.0, e);
  if (!(x >= fr - slack && x <= e + slack))
    throw Error(ErrorCode::domain_error, "x must lie in [f_r(e), e]");
  x = std::clamp(x, std::min(fr, e), e);
  const double r = rank;
  const double first = std::pow(x, 1 / (r - 1)) * f_lower(rank - 1, x) / std::pow(fr, r / (r - 1));
  const double second = f_r(rank, std::max(0.0, e - x)).value / fr;
  return first + second;
}

LemmaAudit lemma_audit(int rank, double e, int grid_size, const LemmaAuditTolerances& tol) {
  require_rank(rank, 2);
  if (!(e >= 1)) throw Error(ErrorCode::domain_error, "audit needs e >= 1");
  if (grid_size < 3) throw Error(ErrorCode::invalid_parameters, "grid needs at least 3 points");

  LemmaAudit audit;
  audit.rank = rank;
  audit.e = e;
  audit.fr = f_r(rank, e).value;
  const double left = std::min(audit.fr, e);
  const double width = e - left;
  const double s = p_r_inverse(rank, e);
  const double order_slack = tol.ordering * std::max(1.0, s);

  const int points = width > 0 ? grid_size : 1;
  audit.grid.reserve(points);
  for (int i = 0; i < points; ++i) {
    LemmaAuditPoint p;
    p.x = i + 1 == points && points > 1 ? e : left + width * i / (points - 1);
    p.F = lemma_F(rank, e, p.x);
    p.t = rank == 2 ? p.x : p_r_inverse(rank - 1, p.x);
    p.s = s;
    p.u = p_r_inverse(rank, std::max(0.0, e - p.x));
    if (p.t < s - 1 - order_slack || s - 1 < p.u - order_slack) audit.tsu_ordered = false;
    audit.grid.push_back(p);
  }

  audit.F_at_left = audit.grid.front().F;
  audit.max_F = audit.F_at_left;
  for (const auto& p : audit.grid) audit.max_F = std::max(audit.max_F, p.F);
  audit.max_ok = audit.max_F <= 1 + tol.max_excess;
  audit.left_ok = std::abs(audit.F_at_left - 1) <= tol.left_value;

  if (width > 0) {
    const double h = width * 1e-5;
    audit.left_slope = (lemma_F(rank, e, left + h) - audit.F_at_left) / h;
    audit.slope_ok = audit.left_slope < 0;
    audit.max_second_difference = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < audit.grid.size(); ++i) {
      const double d2 = audit.grid[i - 1].F - 2 * audit.grid[i].F + audit.grid[i + 1].F;
      audit.max_second_difference = std::max(audit.max_second_difference, d2);
    }
    audit.concave_ok = audit.max_second_difference <= tol.second_difference;
  } else {
    // e = 1: the interval is a single point, nothing to differentiate.
    audit.slope_ok = true;
    audit.concave_ok = true;
  }
  return audit;
}

double lovasz_shadow_bound(int rank, double m) {
  require_rank(rank, 2);
  if (!(m >= 0)) throw Error(ErrorCode::negative_input, "family size must be nonnegative");
  if (m < 1) throw Error(ErrorCode::not_applicable, "shadow bound needs at least one set");
  return p_r(rank - 1, p_r_inverse(rank, m));
}

}  // namespace hyperspec
