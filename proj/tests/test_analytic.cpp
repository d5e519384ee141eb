#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperspec/analytic.hpp"

using namespace hyperspec;
using doctest::Approx;

namespace {

// Central difference of f_r in e, with step proportional to e.
double numeric_derivative(int r, double e) {
  const double h = 1e-4 * std::max(1.0, e);
  return (f_r(r, e + h).value - f_r(r, e - h).value) / (2 * h);
}

}  // namespace

TEST_CASE("binomials") {
  CHECK(binomial(5, 3) == 10);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(40, 20) == 137846528820ULL);
  CHECK(binomial_root(10, 3) == 5u);
  CHECK(binomial_root(1, 4) == 4u);
  CHECK(!binomial_root(5, 3).has_value());
  CHECK(binomial_root(15, 2) == 6u);
}

TEST_CASE("p_r") {
  CHECK(p_r(3, 5) == Approx(10).epsilon(1e-15));
  CHECK(p_r(3, 2) == 0.0);
  CHECK(p_r(2, 4.5) == Approx(7.875).epsilon(1e-15));
  for (int r = 1; r <= 6; ++r)
    for (unsigned k = r; k <= 20; ++k)
      CHECK(p_r(r, k) == Approx(static_cast<double>(binomial(k, r))).epsilon(1e-13));
}

TEST_CASE("p_r inverse") {
  CHECK(p_r_inverse(3, 10) == Approx(5).epsilon(1e-13));
  CHECK(p_r_inverse(3, 0) == 2.0);
  CHECK(p_r_inverse(2, 7.875) == Approx(4.5).epsilon(1e-13));
  CHECK_THROWS_AS(p_r_inverse(3, -1), Error);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 6);
  for (int i = 0; i < 500; ++i) {
    const int r = 1 + i % 6;
    const double m = std::pow(10.0, u(rng)) - 1;
    const double s = p_r_inverse(r, m);
    CHECK(s >= r - 1);
    CHECK(p_r(r, s) == Approx(m).epsilon(1e-11).scale(1));
  }

  // Monotone in m.
  double prev = p_r_inverse(4, 0);
  for (double m = 0.25; m < 500; m += 0.25) {
    const double s = p_r_inverse(4, m);
    CHECK(s > prev);
    prev = s;
  }
}

TEST_CASE("f_r reference values") {
  CHECK(f_r(3, 4).value == Approx(3).epsilon(1e-12));
  CHECK(f_r(2, 6).value == Approx(3).epsilon(1e-12));
  CHECK(f_r(3, 10).value == Approx(6).epsilon(1e-12));
  CHECK(f_r(4, 1).value == Approx(1).epsilon(1e-12));
  CHECK(f_r(3, 0).value == Approx(0).epsilon(1e-12));
  CHECK_THROWS_AS(f_r(1, 3), Error);
  CHECK_THROWS_AS(f_r(3, -2), Error);

  // Lattice identity against exact integer binomials.
  for (int r = 2; r <= 6; ++r)
    for (unsigned n = r; n <= 30; ++n) {
      const double e = static_cast<double>(binomial(n, r));
      const double expected = static_cast<double>(binomial(n - 1, r - 1));
      CHECK(f_r(r, e).value == Approx(expected).epsilon(1e-12));
      CHECK(f_r(r, e).s == Approx(n).epsilon(1e-12));
    }
}

TEST_CASE("rank 2 generic path agrees with the closed form") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double e = u(rng);
    const double closed = (std::sqrt(8 * e + 1) - 1) / 2;
    CHECK(std::abs(f_r_generic(2, e) - closed) <= 1e-12 * std::max(1.0, closed));
    CHECK(f_r(2, e).value == closed);
  }
}

TEST_CASE("f_r derivative") {
  CHECK(f_r_derivative(3, 10) == Approx(0.6 * (0.25 + 1.0 / 3) / (0.2 + 0.25 + 1.0 / 3)).epsilon(1e-12));
  CHECK(f_r_derivative(2, 6) == Approx(2 / 7.0).epsilon(1e-12));
  CHECK_THROWS_AS(f_r_derivative(3, 0), Error);

  const auto row = f_r(3, 10, true);
  REQUIRE(row.derivative.has_value());
  CHECK(*row.derivative == Approx(f_r_derivative(3, 10)));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.5, 4);
  for (int i = 0; i < 200; ++i) {
    const int r = 2 + i % 4;
    const double e = std::pow(10.0, u(rng));
    const double expected = numeric_derivative(r, e);
    CHECK(std::abs(f_r_derivative(r, e) - expected) <= 1e-6 * std::abs(expected));
  }
}

TEST_CASE("eta identity") {
  CHECK(eta_identity_residual(3, 10) <= 1e-9);
  CHECK(eta_identity_residual(2, 6) <= 1e-9);
  CHECK(eta_identity_residual(5, 1) <= 1e-9);
  for (int r = 2; r <= 7; ++r)
    for (double y = 0.5; y < 1e5; y *= 1.7) CHECK(eta_identity_residual(r, y) <= 1e-9 * std::max(1.0, y));
}

TEST_CASE("lemma F") {
  CHECK(lemma_F(3, 4, 3) == Approx(1).epsilon(1e-12));
  CHECK(lemma_F(3, 10, 6) == Approx(1).epsilon(1e-12));
  CHECK(lemma_F(3, 10, 8) < 1.0);
  CHECK_THROWS_AS(lemma_F(3, 10, 11), Error);
  CHECK_THROWS_AS(lemma_F(3, 10, 5), Error);

  // Direct evaluation of the defining formula at rank 3, where f_2 is explicit.
  const double e = 7, fr = f_r(3, e).value;
  for (double x = fr; x <= e; x += (e - fr) / 9) {
    const double f2 = (std::sqrt(8 * x + 1) - 1) / 2;
    const double direct = std::sqrt(x) * f2 / std::pow(fr, 1.5) + f_r(3, e - x).value / fr;
    CHECK(lemma_F(3, e, x) == Approx(direct).epsilon(1e-12));
  }

  // Rank 2 uses f_1 = 1.
  const double f = f_r(2, 6).value;
  CHECK(lemma_F(2, 6, 4) == Approx(4 / (f * f) + f_r(2, 2).value / f).epsilon(1e-12));
}

TEST_CASE("lemma audit") {
  for (auto [r, e] : {std::pair{3, 10.0}, {4, 15.0}, {3, 7.0}}) {
    const LemmaAudit a = lemma_audit(r, e, 50);
    INFO("r=" << r << " e=" << e);
    CHECK(a.grid.size() == 50);
    CHECK(std::abs(a.F_at_left - 1) <= 1e-9);
    CHECK(a.left_slope < 0);
    CHECK(a.max_second_difference <= 1e-6);
    CHECK(a.tsu_ordered);
    CHECK(a.max_F <= 1 + 1e-9);
    CHECK(a.passed());
  }
  const LemmaAudit frac = lemma_audit(3, 7, 50);
  CHECK(frac.grid.front().s != std::floor(frac.grid.front().s));
}

TEST_CASE("property: F never exceeds one") {
  for (int r = 3; r <= 5; ++r)
    for (int e = 2; e <= 60; ++e) {
      const LemmaAudit a = lemma_audit(r, e, 40);
      for (const auto& p : a.grid) CHECK(p.F <= 1 + 1e-9);
    }
}

TEST_CASE("Lovasz shadow bound") {
  CHECK(lovasz_shadow_bound(3, 4) == Approx(6).epsilon(1e-12));
  CHECK(lovasz_shadow_bound(3, 10) == Approx(10).epsilon(1e-12));
  CHECK(lovasz_shadow_bound(2, 3) == Approx(3).epsilon(1e-12));
  CHECK_THROWS_AS(lovasz_shadow_bound(3, 0), Error);
}
