#include "support/fixtures.hpp"

#include <cmath>
#include <initializer_list>

namespace support {
namespace {

int pair_index(int d, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * d - i * (i - 1) / 2 + (j - i);
}

struct Term {
  int n1, n2, n3;
  double coeff;
};

Eigen::VectorXd ket(int d, std::initializer_list<Term> terms) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d * d * d);
  for (const Term& t : terms) v[(t.n1 * d + t.n2) * d + t.n3] = t.coeff;
  return v;
}

}  // namespace

std::vector<Eigen::MatrixXd> universal_isometry_blocks(int dim) {
  const int s_dim = dim * (dim + 1) / 2;
  const double diag = std::sqrt(2.0 / (dim + 1));
  const double off = std::sqrt(1.0 / (dim + 1));
  std::vector<Eigen::MatrixXd> blocks(
      static_cast<size_t>(dim), Eigen::MatrixXd::Zero(dim, s_dim));
  for (int a = 0; a < dim; ++a)
    for (int n = 0; n < dim; ++n)
      blocks[static_cast<size_t>(a)](n, pair_index(dim, n, a)) =
          (a == n) ? diag : off;
  return blocks;
}

std::vector<Eigen::MatrixXd> coherent_isometry_blocks_d3() {
  const double r21 = std::sqrt(21.0);
  const double alpha = std::sqrt((63.0 + 13.0 * r21) / 210.0);
  const double beta = std::sqrt(1.0 / 5.0 - 4.0 / (5.0 * r21));
  const double gamma = std::sqrt((21.0 + r21) / 70.0);
  const double delta = std::sqrt(7.0 / 20.0 - 23.0 / (20.0 * r21));
  const double ah = alpha / std::sqrt(2.0);

  // Pair indices for d = 3: (0,0)=0 (0,1)=1 (0,2)=2 (1,1)=3 (1,2)=4 (2,2)=5.
  std::vector<Eigen::MatrixXd> w(3, Eigen::MatrixXd::Zero(3, 6));
  w[0](0, 0) = alpha;
  w[0](1, 1) = ah;
  w[0](2, 3) = beta;
  w[0](2, 2) = delta;

  w[1](0, 1) = ah;
  w[1](1, 3) = gamma;
  w[1](1, 2) = std::sqrt(2.0) * beta;
  w[1](2, 4) = ah;

  w[2](0, 3) = beta;
  w[2](0, 2) = delta;
  w[2](1, 4) = ah;
  w[2](2, 5) = alpha;
  return w;
}

std::vector<ReferenceSubspace> reference_subspaces_d2() {
  const double s2 = 1.0 / std::sqrt(2.0);
  const double s3 = 1.0 / std::sqrt(3.0);
  const double q23 = std::sqrt(2.0 / 3.0);
  const double q16 = std::sqrt(1.0 / 6.0);

  std::vector<ReferenceSubspace> out(3);

  out[0] = {2, 'A', true, {
      ket(2, {{0, 1, 1, -s2}, {1, 0, 1, s2}}),
      ket(2, {{0, 1, 0, s2}, {1, 0, 0, -s2}}),
  }};

  out[1] = {2, 'S', true, {
      ket(2, {{0, 0, 0, q23}, {0, 1, 1, q16}, {1, 0, 1, q16}}),
      ket(2, {{1, 1, 1, q23}, {0, 1, 0, q16}, {1, 0, 0, q16}}),
  }};

  out[2] = {4, 'S', true, {
      ket(2, {{0, 0, 1, 1.0}}),
      ket(2, {{0, 0, 0, -s3}, {0, 1, 1, s3}, {1, 0, 1, s3}}),
      ket(2, {{0, 1, 0, -s3}, {1, 0, 0, -s3}, {1, 1, 1, s3}}),
      ket(2, {{1, 1, 0, 1.0}}),
  }};
  return out;
}

std::vector<ReferenceSubspace> reference_subspaces_d3() {
  const double s2 = 1.0 / std::sqrt(2.0);
  const double s3 = 1.0 / std::sqrt(3.0);
  const double s6 = 1.0 / std::sqrt(6.0);
  const double s10 = 1.0 / std::sqrt(10.0);
  const double s15 = 1.0 / std::sqrt(15.0);
  const double t3 = 1.0 / (2.0 * std::sqrt(3.0));

  std::vector<ReferenceSubspace> out(7);

  out[0] = {1, 'A', true, {
      ket(3, {{0, 1, 0, -s6}, {0, 2, 1, -s6}, {1, 0, 0, s6},
              {1, 2, 2, -s6}, {2, 0, 1, s6}, {2, 1, 2, s6}}),
  }};

  // Third printed row breaks antisymmetry under swapping the first two
  // slots, so only the first two rows are kept.
  out[1] = {3, 'A', false, {
      ket(3, {{0, 1, 1, -0.5}, {0, 2, 2, -0.5}, {1, 0, 1, 0.5},
              {2, 0, 2, 0.5}}),
      ket(3, {{0, 1, 0, 0.5}, {1, 0, 0, -0.5}, {1, 2, 2, -0.5},
              {2, 1, 2, 0.5}}),
  }};

  out[2] = {3, 'S', true, {
      ket(3, {{0, 2, 2, s3}, {1, 1, 2, -s3}, {2, 0, 2, s3}}),
      ket(3, {{0, 2, 1, -s3}, {1, 1, 1, s3}, {2, 0, 1, -s3}}),
      ket(3, {{0, 2, 0, s3}, {1, 1, 0, -s3}, {2, 0, 0, s3}}),
  }};

  // Printed rows fail the swap-symmetry consistency check; the subspace is
  // pinned instead through orthonormality, invariance and completeness.
  out[3] = {3, 'S', false, {}};

  out[4] = {5, 'A', false, {
      ket(3, {{0, 1, 2, -s2}, {1, 0, 2, s2}}),
      ket(3, {{0, 1, 1, 0.5}, {0, 2, 2, -0.5}, {1, 0, 1, -0.5},
              {2, 0, 2, 0.5}}),
      ket(3, {{0, 2, 0, -0.5}, {1, 2, 1, 0.5}, {2, 0, 0, 0.5},
              {2, 1, 1, -0.5}}),
      ket(3, {{1, 2, 0, -s2}, {2, 1, 0, s2}}),
  }};

  out[5] = {5, 'S', true, {
      ket(3, {{0, 0, 1, 2 * s6}, {0, 1, 2, s6}, {1, 0, 2, s6}}),
      ket(3, {{0, 0, 0, -2 * t3}, {0, 1, 1, t3}, {0, 2, 2, t3},
              {1, 0, 1, t3}, {1, 1, 2, 2 * t3}, {2, 0, 2, t3}}),
      ket(3, {{0, 1, 0, -0.5}, {1, 0, 0, -0.5}, {1, 2, 2, 0.5},
              {2, 1, 2, 0.5}}),
      ket(3, {{0, 2, 0, -t3}, {1, 1, 0, -2 * t3}, {1, 2, 1, -t3},
              {2, 0, 0, -t3}, {2, 1, 1, -t3}, {2, 2, 2, 2 * t3}}),
      ket(3, {{2, 2, 1, -2 * s6}, {1, 2, 0, -s6}, {2, 1, 0, -s6}}),
  }};

  // Row at total weight -1 is omitted: as printed it is not orthogonal to
  // the (clean) same-weight row of the five-dimensional symmetric block.
  out[6] = {7, 'S', false, {
      ket(3, {{0, 0, 2, 1.0}}),
      ket(3, {{0, 0, 1, -s3}, {0, 1, 2, s3}, {1, 0, 2, s3}}),
      ket(3, {{0, 1, 0, s10}, {0, 2, 1, -s10}, {1, 0, 0, s10},
              {1, 1, 1, -2 * s10}, {1, 2, 2, s10}, {2, 0, 1, -s10},
              {2, 1, 2, s10}}),
      ket(3, {{0, 2, 0, s15}, {1, 1, 0, 2 * s15}, {1, 2, 1, -2 * s15},
              {2, 0, 0, s15}, {2, 1, 1, -2 * s15}, {2, 2, 2, s15}}),
      ket(3, {{1, 2, 0, s3}, {2, 1, 0, s3}, {2, 2, 1, -s3}}),
      ket(3, {{2, 2, 0, 1.0}}),
  }};
  return out;
}

}  // namespace support
