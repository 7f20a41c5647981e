#pragma once

#include <Eigen/Dense>
#include <vector>

namespace spinclone {

// Point on the sphere parameterizing a spin coherent state.
struct CoherentPoint {
  double theta = 0.0;
  double phi = 0.0;
};

// Spin operators in the d-dimensional irrep with j = (d-1)/2. Basis index
// n = 0..d-1 carries magnetic number m = n - j, so index 0 is the lowest
// weight state and the ladder matrix elements follow the standard positive
// square-root convention.
struct AngularMomentumOps {
  Eigen::MatrixXcd jx;
  Eigen::MatrixXcd jy;
  Eigen::MatrixXcd jz;
};

// Amplitudes <n|theta, phi> of the rotated lowest-weight state:
// sqrt(C(d-1, n)) sin^n(theta/2) cos^(d-1-n)(theta/2) exp(-i n phi).
Eigen::VectorXcd coherent_amplitudes(int dim, const CoherentPoint& point);

AngularMomentumOps angular_momentum_ops(int dim);

// Rotation U = exp(-i theta (Jx sin phi - Jy cos phi)) that carries the
// lowest-weight state onto the coherent state at (theta, phi).
Eigen::MatrixXcd rotation_matrix(int dim, const CoherentPoint& point);

// Deterministic sphere grid (poles excluded) used by constancy checks.
std::vector<CoherentPoint> coherent_grid(int n_theta, int n_phi);

}  // namespace spinclone
