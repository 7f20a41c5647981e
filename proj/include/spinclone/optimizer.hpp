#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spinclone/fidelity_tensor.hpp"
#include "spinclone/spin_states.hpp"

namespace spinclone {

// Top eigenpair data of the fidelity tensor. Eigenvector columns span the
// leading eigenspace, grouped at relative tolerance 1e-9 on the eigenvalue.
struct OptimalSolution {
  int dim = 0;
  double lambda_max = 0.0;
  double fidelity = 0.0;  // d * lambda_max
  int multiplicity = 0;
  Eigen::MatrixXd eigenvectors;  // (d*S) x multiplicity, orthonormal
};

// Explicit symmetric cloning isometry |n> -> sum_{s,a} w_a(n, s) |s>|a>.
// blocks[a](n, s) holds the coefficients attached to ancilla state a.
struct CloningIsometry {
  int dim = 0;
  int ancilla_dim = 0;
  int sym_dim = 0;
  std::vector<Eigen::MatrixXd> blocks;
  double gram_residual = 0.0;  // Frobenius distance of sum_a w_a w_a^T from I
  double fidelity = 0.0;       // achieved single-copy coherent fidelity
};

// Output of running one input ket through the cloner and discarding the
// ancilla: the joint clone pair state and its one-clone reduction.
struct CloneOutput {
  Eigen::MatrixXcd pair_density;    // d^2 x d^2
  Eigen::MatrixXcd single_density;  // d x d
};

struct SweepRow {
  int dim = 0;
  double f_coherent = 0.0;
  double f_universal = 0.0;
};

OptimalSolution max_fidelity(const FidelityTensor& tensor);
OptimalSolution max_fidelity(int dim);

// Closed-form optimal fidelity (d + 3) / (2d + 2) of the universal cloner,
// the baseline the coherent-state machine is compared against.
double universal_fidelity(int dim);

// Solves for the isometry on the top eigenspace: finds the positive
// semidefinite mixing matrix M with sum_ij M_ij V_i V_j^T = I, takes its
// symmetric square root, and fixes signs so the result is deterministic.
CloningIsometry build_isometry(const OptimalSolution& solution);

// Constructs an isometry directly from coefficient blocks (d x S each).
// Validates the isometry condition and computes the achieved fidelity.
CloningIsometry make_isometry(int dim, std::vector<Eigen::MatrixXd> blocks);

CloneOutput clone_state(const CloningIsometry& iso,
                        const Eigen::VectorXcd& input);

// Optimal coherent fidelity against the universal baseline for each
// dimension in [dim_min, dim_max]; dimensions are solved independently so
// the rows can be computed in parallel.
std::vector<SweepRow> sweep(int dim_min, int dim_max, int threads = 0);

}  // namespace spinclone
