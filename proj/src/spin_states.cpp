#include "spinclone/spin_states.hpp"

#include <cmath>
#include <complex>

#include "spinclone/errors.hpp"
#include "math_detail.hpp"

namespace spinclone {

namespace {

void check_dim(int dim) {
  if (dim < 2) throw invalid_dimension("dimension must be at least 2");
}

}  // namespace

Eigen::VectorXcd coherent_amplitudes(int dim, const CoherentPoint& point) {
  check_dim(dim);
  const double c = std::cos(point.theta / 2.0);
  const double s = std::sin(point.theta / 2.0);
  Eigen::VectorXcd out(dim);
  for (int n = 0; n < dim; ++n) {
    const double mag = std::sqrt(detail::binomial(dim - 1, n)) *
                       std::pow(s, n) * std::pow(c, dim - 1 - n);
    out(n) = std::polar(mag, -point.phi * n);
  }
  return out;
}

AngularMomentumOps angular_momentum_ops(int dim) {
  check_dim(dim);
  const double j = (dim - 1) / 2.0;
  Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) {
    const double m = n - j;
    jp(n + 1, n) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const Eigen::MatrixXcd jm = jp.adjoint();
  AngularMomentumOps ops;
  ops.jx = 0.5 * (jp + jm);
  ops.jy = std::complex<double>(0.0, -0.5) * (jp - jm);
  ops.jz = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) ops.jz(n, n) = n - j;
  return ops;
}

Eigen::MatrixXcd rotation_matrix(int dim, const CoherentPoint& point) {
  const AngularMomentumOps ops = angular_momentum_ops(dim);
  const Eigen::MatrixXcd h =
      std::sin(point.phi) * ops.jx - std::cos(point.phi) * ops.jy;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw numeric_error("rotation generator eigensolve failed");
  Eigen::VectorXcd phase(dim);
  for (int k = 0; k < dim; ++k)
    phase(k) = std::polar(1.0, -point.theta * es.eigenvalues()(k));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<CoherentPoint> coherent_grid(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1)
    throw std::invalid_argument("grid sizes must be positive");
  std::vector<CoherentPoint> grid;
  grid.reserve(static_cast<size_t>(n_theta) * n_phi);
  const double pi = std::acos(-1.0);
  for (int a = 0; a < n_theta; ++a) {
    // Interior theta values only; the poles are degenerate in phi.
    const double theta = pi * (a + 1) / (n_theta + 1);
    for (int b = 0; b < n_phi; ++b) {
      const double phi = 2.0 * pi * b / n_phi;
      grid.push_back({theta, phi});
    }
  }
  return grid;
}

}  // namespace spinclone
