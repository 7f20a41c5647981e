#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "spinclone/errors.hpp"
#include "spinclone/fitting.hpp"

using namespace spinclone;

namespace {

std::vector<FidelityPoint> synthetic_curve(double alpha, double beta,
                                           double gamma) {
  std::vector<FidelityPoint> pts;
  for (int d = 3; d <= 16; ++d)
    pts.push_back({d, (alpha * d + beta) / (d + gamma)});
  return pts;
}

}  // namespace

TEST_CASE("exact rational data is recovered to machine precision") {
  const RationalFit fit = fit_rational(synthetic_curve(0.7, 0.1, 0.5));
  CHECK(std::abs(fit.alpha - 0.7) < 1e-9);
  CHECK(std::abs(fit.beta - 0.1) < 1e-9);
  CHECK(std::abs(fit.gamma - 0.5) < 1e-9);
  CHECK(fit.rms_residual < 1e-12);
  CHECK(fit.converged);
}

TEST_CASE("result does not depend on input order") {
  auto pts = synthetic_curve(0.68, 0.05, -0.3);
  const RationalFit sorted = fit_rational(pts);
  std::mt19937 rng(13579);
  std::shuffle(pts.begin(), pts.end(), rng);
  const RationalFit shuffled = fit_rational(pts);
  CHECK(sorted.alpha == shuffled.alpha);
  CHECK(sorted.beta == shuffled.beta);
  CHECK(sorted.gamma == shuffled.gamma);
}

TEST_CASE("gradient vanishes at the fitted point") {
  // Deterministic perturbation so the optimum is strictly interior.
  auto pts = synthetic_curve(0.7, 0.1, 0.5);
  for (size_t i = 0; i < pts.size(); ++i)
    pts[i].fidelity += ((i % 2 == 0) ? 1.0 : -1.0) * 1e-4;
  const RationalFit fit = fit_rational(pts);

  double g_alpha = 0.0, g_beta = 0.0, g_gamma = 0.0;
  for (const auto& p : pts) {
    const double den = p.dim + fit.gamma;
    const double num = fit.alpha * p.dim + fit.beta;
    const double r = num / den - p.fidelity;
    g_alpha += r * (p.dim / den);
    g_beta += r * (1.0 / den);
    g_gamma += r * (-num / (den * den));
  }
  CHECK(std::abs(g_alpha) < 1e-8);
  CHECK(std::abs(g_beta) < 1e-8);
  CHECK(std::abs(g_gamma) < 1e-8);
  CHECK(fit.rms_residual < 1e-3);
}

TEST_CASE("too few points are rejected") {
  std::vector<FidelityPoint> pts = {{2, 0.8}, {3, 0.77}, {4, 0.75}};
  CHECK_THROWS_AS(fit_rational(pts), std::invalid_argument);
}

TEST_CASE("duplicate dimensions are rejected") {
  std::vector<FidelityPoint> pts = {{2, 0.8}, {3, 0.77}, {3, 0.76}, {4, 0.75}};
  CHECK_THROWS_AS(fit_rational(pts), std::invalid_argument);
}

TEST_CASE("fidelities outside the physical window are rejected") {
  auto pts = synthetic_curve(0.7, 0.1, 0.5);
  pts[0].fidelity = 1.2;
  CHECK_THROWS_AS(fit_rational(pts), std::invalid_argument);
  pts[0].fidelity = 0.4;
  CHECK_THROWS_AS(fit_rational(pts), std::invalid_argument);
}

TEST_CASE("a constant curve makes the linearization singular") {
  std::vector<FidelityPoint> pts;
  for (int d = 2; d <= 10; ++d) pts.push_back({d, 0.75});
  CHECK_THROWS_AS(fit_rational(pts), numeric_error);
}
