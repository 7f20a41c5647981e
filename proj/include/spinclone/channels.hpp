#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spinclone/optimizer.hpp"
#include "spinclone/spin_states.hpp"

namespace spinclone {

// Process matrix of the cloning channel on output space K = H (x) H and
// input space H, stored densely as a d^3 x d^3 real symmetric matrix with
// composite row index (k*d + l)*d + n. Normalized so the partial trace over
// K equals the identity on H. The Kraus factor (one column per ancilla
// state) is kept alongside; low-rank paths use it to avoid d^3 x d^3
// products.
struct ChoiOperator {
  int dim = 0;
  Eigen::MatrixXd matrix;
  Eigen::MatrixXd factors;  // d^3 x rank, matrix = factors * factors^T
};

// Hard ceiling for dense d^3 x d^3 storage.
inline constexpr int kChoiDimLimit = 12;

ChoiOperator choi_from_isometry(const CloningIsometry& iso);

// Builds the process matrix from explicit Kraus operators (each d^2 x d).
ChoiOperator choi_from_kraus(int dim,
                             const std::vector<Eigen::MatrixXd>& kraus);

// Frobenius distance of the partial trace over the clone pair from the
// identity on the input space; zero for a trace-preserving channel.
double trace_preservation_residual(const ChoiOperator& choi);

// Frobenius norm of the commutator [P, R (x) R (x) conj(R)] averaged over the
// given rotations; zero for a covariant channel.
double covariance_residual(const ChoiOperator& choi,
                           const std::vector<CoherentPoint>& samples);

// Frobenius norm of the commutator with the clone-swap permutation.
double permutation_residual(const ChoiOperator& choi);

// Full spectrum in descending order.
Eigen::VectorXd choi_spectrum(const ChoiOperator& choi);

// Applies the channel encoded by the process matrix to an input density
// matrix, returning the joint clone-pair output.
Eigen::MatrixXcd apply_channel(const ChoiOperator& choi,
                               const Eigen::MatrixXcd& rho);

}  // namespace spinclone
