#include "spinclone/channels.hpp"

#include <cmath>
#include <complex>

#include "spinclone/errors.hpp"
#include "spinclone/symmetric_space.hpp"

namespace spinclone {

namespace {

using Complex = std::complex<double>;

void check_choi(const ChoiOperator& choi) {
  const Eigen::Index n3 = static_cast<Eigen::Index>(choi.dim) * choi.dim *
                          choi.dim;
  if (choi.dim < 2 || choi.matrix.rows() != n3 || choi.matrix.cols() != n3)
    throw std::invalid_argument("process matrix has inconsistent shape");
}

// R (x) R (x) conj(R) on the composite index (k*d + l)*d + n.
Eigen::MatrixXcd pair_rotation(int dim, const CoherentPoint& point) {
  const Eigen::MatrixXcd r = rotation_matrix(dim, point);
  const Eigen::MatrixXcd rc = r.conjugate();
  const Eigen::Index n3 = static_cast<Eigen::Index>(dim) * dim * dim;
  Eigen::MatrixXcd g(n3, n3);
  for (int k = 0; k < dim; ++k)
    for (int l = 0; l < dim; ++l)
      for (int n = 0; n < dim; ++n) {
        const Eigen::Index row =
            (static_cast<Eigen::Index>(k) * dim + l) * dim + n;
        for (int kp = 0; kp < dim; ++kp)
          for (int lp = 0; lp < dim; ++lp)
            for (int np = 0; np < dim; ++np)
              g(row, (static_cast<Eigen::Index>(kp) * dim + lp) * dim + np) =
                  r(k, kp) * r(l, lp) * rc(n, np);
      }
  return g;
}

}  // namespace

ChoiOperator choi_from_kraus(int dim,
                             const std::vector<Eigen::MatrixXd>& kraus) {
  if (dim < 2) throw invalid_dimension("dimension must be at least 2");
  if (dim > kChoiDimLimit)
    throw dimension_limit("dense process matrix storage is capped at d = " +
                          std::to_string(kChoiDimLimit));
  if (kraus.empty()) throw std::invalid_argument("no Kraus operators");
  const Eigen::Index dd = static_cast<Eigen::Index>(dim) * dim;
  for (const auto& k : kraus)
    if (k.rows() != dd || k.cols() != dim)
      throw std::invalid_argument("Kraus operator has wrong shape");

  const Eigen::Index n3 = dd * dim;
  ChoiOperator choi;
  choi.dim = dim;
  choi.factors.resize(n3, static_cast<Eigen::Index>(kraus.size()));
  for (size_t a = 0; a < kraus.size(); ++a) {
    for (Eigen::Index kl = 0; kl < dd; ++kl)
      for (int n = 0; n < dim; ++n)
        choi.factors(kl * dim + n, static_cast<Eigen::Index>(a)) =
            kraus[a](kl, n);
  }
  choi.matrix.noalias() = choi.factors * choi.factors.transpose();
  return choi;
}

ChoiOperator choi_from_isometry(const CloningIsometry& iso) {
  const SymmetricBasis basis(iso.dim);
  std::vector<Eigen::MatrixXd> kraus;
  kraus.reserve(iso.blocks.size());
  for (const auto& block : iso.blocks)
    kraus.push_back(basis.embedding() * block.transpose());
  return choi_from_kraus(iso.dim, kraus);
}

double trace_preservation_residual(const ChoiOperator& choi) {
  check_choi(choi);
  const int d = choi.dim;
  Eigen::MatrixXd reduced = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index kl = 0; kl < static_cast<Eigen::Index>(d) * d; ++kl)
    for (int n = 0; n < d; ++n)
      for (int m = 0; m < d; ++m)
        reduced(n, m) += choi.matrix(kl * d + n, kl * d + m);
  return (reduced - Eigen::MatrixXd::Identity(d, d)).norm();
}

double covariance_residual(const ChoiOperator& choi,
                           const std::vector<CoherentPoint>& samples) {
  check_choi(choi);
  if (samples.empty()) throw std::invalid_argument("no rotation samples");
  double total = 0.0;
  const bool low_rank = choi.factors.cols() > 0 &&
                        choi.factors.rows() == choi.matrix.rows();
  Eigen::MatrixXcd u;
  if (low_rank) u = choi.factors.cast<Complex>();
  for (const auto& point : samples) {
    const Eigen::MatrixXcd g = pair_rotation(choi.dim, point);
    Eigen::MatrixXcd comm;
    if (low_rank) {
      // P = U U^T, so [P, G] = U (U^T G) - (G U) U^T.
      comm.noalias() = u * (u.transpose() * g);
      comm.noalias() -= (g * u) * u.transpose();
    } else {
      const Eigen::MatrixXcd p = choi.matrix.cast<Complex>();
      comm = p * g - g * p;
    }
    total += comm.norm();
  }
  return total / static_cast<double>(samples.size());
}

double permutation_residual(const ChoiOperator& choi) {
  check_choi(choi);
  const int d = choi.dim;
  const Eigen::Index n3 = choi.matrix.rows();
  std::vector<Eigen::Index> swap_map(static_cast<size_t>(n3));
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      for (int n = 0; n < d; ++n)
        swap_map[static_cast<size_t>(
            (static_cast<Eigen::Index>(k) * d + l) * d + n)] =
            (static_cast<Eigen::Index>(l) * d + k) * d + n;
  double sq = 0.0;
  for (Eigen::Index x = 0; x < n3; ++x)
    for (Eigen::Index y = 0; y < n3; ++y) {
      const double diff = choi.matrix(x, swap_map[static_cast<size_t>(y)]) -
                          choi.matrix(swap_map[static_cast<size_t>(x)], y);
      sq += diff * diff;
    }
  return std::sqrt(sq);
}

Eigen::VectorXd choi_spectrum(const ChoiOperator& choi) {
  check_choi(choi);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.compute(choi.matrix, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error("process matrix eigensolve failed");
  return es.eigenvalues().reverse();
}

Eigen::MatrixXcd apply_channel(const ChoiOperator& choi,
                               const Eigen::MatrixXcd& rho) {
  check_choi(choi);
  const int d = choi.dim;
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("input density matrix has wrong dimension");
  const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dd, dd);
  for (Eigen::Index a = 0; a < dd; ++a)
    for (Eigen::Index b = 0; b < dd; ++b) {
      Complex acc(0.0, 0.0);
      for (int n2 = 0; n2 < d; ++n2)
        for (int n = 0; n < d; ++n)
          acc += rho(n2, n) * choi.matrix(a * d + n2, b * d + n);
      out(a, b) = acc;
    }
  return out;
}

}  // namespace spinclone
