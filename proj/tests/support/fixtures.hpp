#pragma once

#include <Eigen/Dense>
#include <vector>

namespace support {

// Isometry blocks (one d x S matrix per ancilla index) of the optimal
// universal symmetric cloner: input |n> maps to
//   sqrt(2/(d+1)) |nn>_sym |A_n>  +  sqrt(1/(d+1)) sum_{a != n} |na>_sym |A_a>.
std::vector<Eigen::MatrixXd> universal_isometry_blocks(int dim);

// Closed-form optimal coherent-state cloner for d = 3.
std::vector<Eigen::MatrixXd> coherent_isometry_blocks_d3();

// Reference invariant subspace of H (x) H (x) H' in the product basis
// (n1*d + n2)*d + n3. `complete` marks subspaces whose printed basis is fully
// trustworthy, so the projector can be compared directly; otherwise only the
// listed rows are checked for containment. Rows are unit vectors.
struct ReferenceSubspace {
  int dimension = 0;
  char symmetry = '?';
  bool complete = false;
  std::vector<Eigen::VectorXd> vectors;
};

// Ordered as the decomposition sorts: by (dimension, symmetry, intermediate
// spin). d = 2: (2,A), (2,S), (4,S). d = 3: (1,A), (3,A), (3,S), (3,S),
// (5,A), (5,S), (7,S); the first (3,S) couples through pair spin 0.
std::vector<ReferenceSubspace> reference_subspaces_d2();
std::vector<ReferenceSubspace> reference_subspaces_d3();

}  // namespace support
