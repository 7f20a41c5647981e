#pragma once

#include <Eigen/Dense>

#include "spinclone/symmetric_space.hpp"

namespace spinclone {

// Real symmetric matrix A over the composite index (n, s) -> n*S + s.
// Its largest eigenvalue lambda gives the optimal cloning fidelity d*lambda,
// and the top eigenvectors encode the optimal isometry coefficients.
struct FidelityTensor {
  int dim_single = 0;
  int sym_dim = 0;
  Eigen::MatrixXd matrix;
};

// Sphere average of O*_{n'} O_{k'} O*_{k} O_{n} over coherent amplitudes,
// with the normalized measure sin(theta) dtheta dphi / (4 pi). Phase
// integration forces n + k' = n' + k; the theta integral reduces to a beta
// function of half the combined index weights.
double angular_moment(int dim, int n_prime, int k_prime, int k, int n);

// Assembles A for the given dimension. threads = 0 resolves the worker count
// from SPINCLONE_THREADS or hardware concurrency; rows are partitioned so
// assembly is deterministic regardless of thread count.
FidelityTensor build_fidelity_tensor(int dim, const SymmetricBasis& basis,
                                     int threads = 0);
FidelityTensor build_fidelity_tensor(int dim, int threads = 0);

}  // namespace spinclone
