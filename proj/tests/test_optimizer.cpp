#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "spinclone/errors.hpp"
#include "spinclone/optimizer.hpp"
#include "support/fixtures.hpp"

using namespace spinclone;
using Complex = std::complex<double>;

namespace {

const double kF2 = 5.0 / 6.0;
const double kF3 = (11.0 + std::sqrt(21.0)) / 20.0;
const double kF4 = (79.0 + std::sqrt(697.0)) / 140.0;

Eigen::VectorXcd basis_ket(int d, int n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  v[n] = 1.0;
  return v;
}

}  // namespace

TEST_CASE("closed-form optimal fidelities") {
  CHECK(std::abs(max_fidelity(2).fidelity - kF2) < 1e-12);
  CHECK(std::abs(max_fidelity(3).fidelity - kF3) < 1e-12);
  CHECK(std::abs(max_fidelity(4).fidelity - kF4) < 1e-12);
}

TEST_CASE("top eigenspace has multiplicity d with orthonormal vectors") {
  for (int d = 2; d <= 6; ++d) {
    const OptimalSolution sol = max_fidelity(d);
    CHECK(sol.multiplicity == d);
    CHECK(sol.fidelity == d * sol.lambda_max);
    const Eigen::MatrixXd gram =
        sol.eigenvectors.transpose() * sol.eigenvectors;
    CHECK((gram - Eigen::MatrixXd::Identity(d, d)).norm() < 1e-12);
  }
}

TEST_CASE("lambda_max dominates random Rayleigh quotients") {
  std::mt19937 rng(5150123);
  std::normal_distribution<double> dist;
  for (int d : {2, 3}) {
    const FidelityTensor tensor = build_fidelity_tensor(d);
    const OptimalSolution sol = max_fidelity(tensor);
    for (int trial = 0; trial < 10000; ++trial) {
      Eigen::VectorXd w(tensor.matrix.rows());
      for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = dist(rng);
      w.normalize();
      CHECK(w.dot(tensor.matrix * w) <= sol.lambda_max + 1e-12);
    }
  }
}

TEST_CASE("universal baseline formula") {
  CHECK(universal_fidelity(2) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
  CHECK(universal_fidelity(6) == doctest::Approx(9.0 / 14.0).epsilon(1e-15));
  CHECK(universal_fidelity(6) < 2.0 / 3.0);
  CHECK_THROWS_AS(universal_fidelity(1), invalid_dimension);
}

TEST_CASE("isometry from the top eigenspace satisfies the constraint") {
  for (int d = 2; d <= 5; ++d) {
    const OptimalSolution sol = max_fidelity(d);
    const CloningIsometry iso = build_isometry(sol);
    CHECK(iso.ancilla_dim == d);
    CHECK(iso.gram_residual < 1e-9);
    CHECK(std::abs(iso.fidelity - sol.fidelity) < 1e-9);

    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(d, d);
    for (const auto& block : iso.blocks) gram += block * block.transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(d, d)).norm() < 1e-9);
  }
}

TEST_CASE("isometry construction is deterministic") {
  const OptimalSolution sol = max_fidelity(3);
  const CloningIsometry a = build_isometry(sol);
  const CloningIsometry b = build_isometry(max_fidelity(3));
  REQUIRE(a.blocks.size() == b.blocks.size());
  for (size_t i = 0; i < a.blocks.size(); ++i)
    CHECK((a.blocks[i] - b.blocks[i]).norm() == 0.0);
}

TEST_CASE("truncated eigenspace raises degeneracy_deficit") {
  OptimalSolution sol = max_fidelity(3);
  sol.multiplicity -= 1;
  sol.eigenvectors = sol.eigenvectors.leftCols(sol.multiplicity).eval();
  CHECK_THROWS_AS(build_isometry(sol), degeneracy_deficit);
}

TEST_CASE("non-isometric coefficients raise constraint_infeasible") {
  const CloningIsometry iso = build_isometry(max_fidelity(2));
  auto scaled = iso.blocks;
  for (auto& block : scaled) block *= 1.1;
  CHECK_THROWS_AS(make_isometry(2, scaled), constraint_infeasible);
  try {
    make_isometry(2, scaled);
  } catch (const constraint_infeasible& e) {
    CHECK(e.best_residual > 0.1);
  }
}

TEST_CASE("clone outputs are symmetric with identical reductions") {
  const int d = 3;
  const CloningIsometry iso = build_isometry(max_fidelity(d));
  const Eigen::VectorXcd psi = coherent_amplitudes(d, {1.2, 0.4});
  const CloneOutput out = clone_state(iso, psi);

  CHECK(std::abs(out.pair_density.trace() - Complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(out.single_density.trace() - Complex(1.0, 0.0)) < 1e-12);

  // Pair state commutes with the clone swap.
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      for (int kp = 0; kp < d; ++kp)
        for (int lp = 0; lp < d; ++lp)
          CHECK(std::abs(out.pair_density(k * d + l, kp * d + lp) -
                         out.pair_density(l * d + k, lp * d + kp)) < 1e-10);

  // The two clones carry the same reduced state.
  Eigen::MatrixXcd second = Eigen::MatrixXcd::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int k = 0; k < d; ++k)
        second(a, b) += out.pair_density(k * d + a, k * d + b);
  CHECK((second - out.single_density).norm() < 1e-10);
}

TEST_CASE("clone fidelity is constant across the sphere") {
  const int d = 3;
  const OptimalSolution sol = max_fidelity(d);
  const CloningIsometry iso = build_isometry(sol);
  for (const CoherentPoint& p : coherent_grid(4, 5)) {
    const Eigen::VectorXcd psi = coherent_amplitudes(d, p);
    const CloneOutput out = clone_state(iso, psi);
    const double f = (psi.adjoint() * out.single_density * psi)(0, 0).real();
    CHECK(std::abs(f - sol.fidelity) < 1e-8);
  }
}

TEST_CASE("clone input validation") {
  const CloningIsometry iso = build_isometry(max_fidelity(2));
  Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(2);
  bad[0] = 2.0;
  CHECK_THROWS_AS(clone_state(iso, bad), std::invalid_argument);
  CHECK_THROWS_AS(clone_state(iso, Eigen::VectorXcd::Zero(3)),
                  std::invalid_argument);
}

TEST_CASE("universal reference machine reproduces the baseline") {
  for (int d = 2; d <= 5; ++d) {
    const CloningIsometry iso =
        make_isometry(d, support::universal_isometry_blocks(d));
    CHECK(iso.gram_residual < 1e-12);
    CHECK(std::abs(iso.fidelity - universal_fidelity(d)) < 1e-10);
  }
}

TEST_CASE("universal machine marginals for d = 3 basis input") {
  const CloningIsometry iso =
      make_isometry(3, support::universal_isometry_blocks(3));
  const CloneOutput out = clone_state(iso, basis_ket(3, 0));
  CHECK(std::abs(out.single_density(0, 0).real() - 0.75) < 1e-10);
  CHECK(std::abs(out.single_density(1, 1).real() - 0.125) < 1e-10);
  CHECK(std::abs(out.single_density(2, 2).real() - 0.125) < 1e-10);
}

TEST_CASE("closed-form coherent machine for d = 3 is optimal") {
  const CloningIsometry iso =
      make_isometry(3, support::coherent_isometry_blocks_d3());
  CHECK(iso.gram_residual < 1e-12);
  CHECK(std::abs(iso.fidelity - kF3) < 1e-12);
  CHECK(std::abs(iso.fidelity - build_isometry(max_fidelity(3)).fidelity) <
        1e-10);
}

TEST_CASE("sweep rows match individual solves") {
  const auto rows = sweep(2, 5);
  REQUIRE(rows.size() == 4);
  for (const SweepRow& row : rows) {
    CHECK(std::abs(row.f_coherent - max_fidelity(row.dim).fidelity) < 1e-11);
    CHECK(row.f_universal == universal_fidelity(row.dim));
  }
  CHECK_THROWS_AS(sweep(1, 3), invalid_dimension);
  CHECK_THROWS_AS(sweep(4, 3), std::invalid_argument);
}
