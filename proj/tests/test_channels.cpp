#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "spinclone/channels.hpp"
#include "spinclone/errors.hpp"
#include "spinclone/optimizer.hpp"
#include "spinclone/symmetric_space.hpp"
#include "support/fixtures.hpp"

using namespace spinclone;
using Complex = std::complex<double>;

namespace {

ChoiOperator optimal_choi(int d) {
  return choi_from_isometry(build_isometry(max_fidelity(d)));
}

Eigen::VectorXcd random_ket(int d, std::mt19937& rng) {
  std::normal_distribution<double> dist;
  Eigen::VectorXcd psi(d);
  for (int i = 0; i < d; ++i) psi[i] = Complex(dist(rng), dist(rng));
  psi.normalize();
  return psi;
}

}  // namespace

TEST_CASE("optimal channels preserve trace") {
  for (int d = 2; d <= 4; ++d)
    CHECK(trace_preservation_residual(optimal_choi(d)) < 1e-9);
}

TEST_CASE("optimal channels are rotation covariant") {
  const auto samples = coherent_grid(2, 3);
  for (int d = 2; d <= 3; ++d)
    CHECK(covariance_residual(optimal_choi(d), samples) < 1e-8);
}

TEST_CASE("optimal channels commute with the clone swap") {
  for (int d = 2; d <= 4; ++d)
    CHECK(permutation_residual(optimal_choi(d)) < 1e-9);
}

TEST_CASE("low-rank and dense covariance paths agree") {
  const ChoiOperator choi = optimal_choi(2);
  ChoiOperator dense = choi;
  dense.factors = Eigen::MatrixXd();
  const auto samples = coherent_grid(2, 2);
  CHECK(std::abs(covariance_residual(choi, samples) -
                 covariance_residual(dense, samples)) < 1e-10);
}

TEST_CASE("spectrum is flat on the support") {
  const Eigen::VectorXd s2 = choi_spectrum(optimal_choi(2));
  REQUIRE(s2.size() == 8);
  for (int i = 0; i < 2; ++i) CHECK(std::abs(s2[i] - 1.0) < 1e-8);
  for (int i = 2; i < 8; ++i) CHECK(std::abs(s2[i]) < 1e-8);

  const Eigen::VectorXd s3 = choi_spectrum(optimal_choi(3));
  REQUIRE(s3.size() == 27);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(s3[i] - 1.0) < 1e-8);
  for (int i = 3; i < 27; ++i) CHECK(std::abs(s3[i]) < 1e-8);
}

TEST_CASE("channel application reproduces the isometry output") {
  std::mt19937 rng(77120355);
  for (int d = 2; d <= 4; ++d) {
    const CloningIsometry iso = build_isometry(max_fidelity(d));
    const ChoiOperator choi = choi_from_isometry(iso);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::VectorXcd psi = random_ket(d, rng);
      const Eigen::MatrixXcd rho = psi * psi.adjoint();
      const Eigen::MatrixXcd via_channel = apply_channel(choi, rho);
      const Eigen::MatrixXcd direct = clone_state(iso, psi).pair_density;
      CHECK((via_channel - direct).norm() < 1e-9);
    }
  }
}

TEST_CASE("channel application is linear") {
  std::mt19937 rng(424241);
  const ChoiOperator choi = optimal_choi(2);
  const Eigen::VectorXcd a = random_ket(2, rng);
  const Eigen::VectorXcd b = random_ket(2, rng);
  const Eigen::MatrixXcd mix =
      0.3 * (a * a.adjoint()) + 0.7 * (b * b.adjoint());
  const Eigen::MatrixXcd combined = apply_channel(choi, mix);
  const Eigen::MatrixXcd split = 0.3 * apply_channel(choi, a * a.adjoint()) +
                                 0.7 * apply_channel(choi, b * b.adjoint());
  CHECK((combined - split).norm() < 1e-12);
}

TEST_CASE("dense storage is refused beyond the ceiling") {
  CHECK_THROWS_AS(choi_from_kraus(kChoiDimLimit + 1, {}), dimension_limit);
  CHECK_THROWS_AS(choi_from_kraus(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(choi_from_kraus(2, {Eigen::MatrixXd::Zero(3, 2)}),
                  std::invalid_argument);
}

TEST_CASE("unnormalized Kraus sets are flagged by the trace residual") {
  std::mt19937 rng(90210);
  std::normal_distribution<double> dist;
  const int d = 3;
  std::vector<Eigen::MatrixXd> kraus(5, Eigen::MatrixXd(d * d, d));
  for (auto& k : kraus)
    for (Eigen::Index r = 0; r < k.rows(); ++r)
      for (Eigen::Index c = 0; c < k.cols(); ++c) k(r, c) = dist(rng);
  CHECK(trace_preservation_residual(choi_from_kraus(d, kraus)) > 0.1);
}

TEST_CASE("a perturbed machine loses covariance") {
  const CloningIsometry iso = build_isometry(max_fidelity(2));
  auto blocks = iso.blocks;
  blocks[0](0, 1) += 0.1;
  const SymmetricBasis basis(2);
  std::vector<Eigen::MatrixXd> kraus;
  for (const auto& block : blocks)
    kraus.push_back(basis.embedding() * block.transpose());
  const ChoiOperator choi = choi_from_kraus(2, kraus);
  CHECK(covariance_residual(choi, coherent_grid(2, 3)) > 1e-3);
}

TEST_CASE("an asymmetric channel is flagged by the permutation residual") {
  // Identity on the first clone, |0><0| on the second.
  const int d = 2;
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(d * d, d);
  for (int n = 0; n < d; ++n) k(n * d + 0, n) = 1.0;
  const ChoiOperator choi = choi_from_kraus(d, {k});
  CHECK(trace_preservation_residual(choi) < 1e-12);
  CHECK(permutation_residual(choi) > 1.0);
}

TEST_CASE("breaking one symmetric ket breaks the swap symmetry") {
  const int d = 2;
  const SymmetricBasis basis(d);
  Eigen::MatrixXd embedding = basis.embedding();
  embedding.col(basis.index_of(0, 1)).setZero();
  embedding(0 * d + 1, basis.index_of(0, 1)) = 1.0;  // plain |01>
  std::vector<Eigen::MatrixXd> kraus;
  for (const auto& block : support::universal_isometry_blocks(d))
    kraus.push_back(embedding * block.transpose());
  const ChoiOperator choi = choi_from_kraus(d, kraus);
  CHECK(permutation_residual(choi) > 1e-3);
}

TEST_CASE("input shape is validated") {
  const ChoiOperator choi = optimal_choi(2);
  CHECK_THROWS_AS(apply_channel(choi, Eigen::MatrixXcd::Identity(3, 3)),
                  std::invalid_argument);
}
