#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "spinclone/symmetric_space.hpp"

using namespace spinclone;
using Complex = std::complex<double>;

TEST_CASE("pair enumeration is lexicographic with i <= j") {
  const SymmetricBasis basis(4);
  REQUIRE(basis.size() == 10);
  int s = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      CHECK(basis.index_of(i, j) == s);
      CHECK(basis.index_of(j, i) == s);
      const auto [a, b] = basis.pair_of(s);
      CHECK(a == i);
      CHECK(b == j);
      ++s;
    }
}

TEST_CASE("overlaps take the three allowed values") {
  const SymmetricBasis basis(3);
  const double r = 1.0 / std::sqrt(2.0);
  for (int s = 0; s < basis.size(); ++s) {
    const auto [i, j] = basis.pair_of(s);
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) {
        const double v = basis.overlap(k, l, s);
        if (i == j)
          CHECK(v == ((k == i && l == i) ? 1.0 : 0.0));
        else if ((k == i && l == j) || (k == j && l == i))
          CHECK(std::abs(v - r) < 1e-15);
        else
          CHECK(v == 0.0);
      }
  }
}

TEST_CASE("embedding columns are orthonormal") {
  for (int d = 2; d <= 6; ++d) {
    const SymmetricBasis basis(d);
    const Eigen::MatrixXd& e = basis.embedding();
    REQUIRE(e.rows() == d * d);
    REQUIRE(e.cols() == basis.size());
    const Eigen::MatrixXd gram = e.transpose() * e;
    CHECK((gram - Eigen::MatrixXd::Identity(basis.size(), basis.size()))
              .norm() < 1e-14);
  }
}

TEST_CASE("embedded states are swap invariant") {
  const int d = 4;
  const SymmetricBasis basis(d);
  const Eigen::MatrixXd& e = basis.embedding();
  for (int s = 0; s < basis.size(); ++s)
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l)
        CHECK(std::abs(e(k * d + l, s) - e(l * d + k, s)) < 1e-15);
}

TEST_CASE("embed then trace recovers the symmetric-space operator trace") {
  std::mt19937 rng(20240811);
  std::normal_distribution<double> dist;
  const int d = 3;
  const SymmetricBasis basis(d);
  const int s_dim = basis.size();

  Eigen::MatrixXcd m(s_dim, s_dim);
  for (int r = 0; r < s_dim; ++r)
    for (int c = 0; c < s_dim; ++c) m(r, c) = Complex(dist(rng), dist(rng));
  m = (m + m.adjoint()).eval();

  const Eigen::MatrixXcd lifted = basis.embed_operator(m);
  CHECK(std::abs(lifted.trace() - m.trace()) < 1e-12);
  CHECK((lifted - lifted.adjoint()).norm() < 1e-12);
}

TEST_CASE("partial trace over the second factor matches the direct sum") {
  std::mt19937 rng(987231);
  std::normal_distribution<double> dist;
  for (int d = 2; d <= 6; ++d) {
    const SymmetricBasis basis(d);
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::MatrixXcd m(d * d, d * d);
      for (int r = 0; r < d * d; ++r)
        for (int c = 0; c < d * d; ++c) m(r, c) = Complex(dist(rng), dist(rng));
      m = (m + m.adjoint()).eval();

      const Eigen::MatrixXcd reduced = basis.partial_trace_second(m);
      REQUIRE(reduced.rows() == d);

      Eigen::MatrixXcd direct = Eigen::MatrixXcd::Zero(d, d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          for (int l = 0; l < d; ++l) direct(a, b) += m(a * d + l, b * d + l);
      CHECK((reduced - direct).norm() < 1e-12);
      CHECK(std::abs(reduced.trace() - m.trace()) < 1e-11);
    }
  }
}

TEST_CASE("projector onto the symmetric subspace acts as identity there") {
  const int d = 5;
  const SymmetricBasis basis(d);
  const Eigen::MatrixXd& e = basis.embedding();
  const Eigen::MatrixXd proj = e * e.transpose();
  // Projector: idempotent, rank S, and symmetric kets are fixed points.
  CHECK((proj * proj - proj).norm() < 1e-12);
  CHECK(std::abs(proj.trace() - basis.size()) < 1e-12);
  CHECK((proj * e - e).norm() < 1e-13);
}
