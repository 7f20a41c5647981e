#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "spinclone/channels.hpp"

namespace spinclone {

// One rotationally invariant subspace of H (x) H (x) conj(H). Spins are
// stored doubled so half-integer values stay exact. The basis matrix has one
// column per magnetic number, ascending; the intermediate spin labels how
// the first two (clone) factors were coupled and fixes the swap symmetry.
struct IrrepSubspace {
  int twice_spin = 0;          // 2J of the subspace
  int twice_intermediate = 0;  // 2J12 of the clone pair
  int dimension = 0;           // 2J + 1
  char symmetry = 'S';         // 'S' or 'A' under clone swap
  Eigen::MatrixXd basis;       // d^3 x dimension, orthonormal columns
};

struct TripleDecomposition {
  int dim = 0;
  std::vector<IrrepSubspace> subspaces;  // sorted by (dimension, A<S, 2J12)
};

// <j1 m1; j2 m2 | j m>, Condon-Shortley phases. Returns zero when selection
// rules fail (m != m1 + m2, triangle violation, out-of-range m); throws for
// arguments that are not half-integers or mix integer and half-integer
// ladders.
double clebsch_gordan(double j1, double j2, double j, double m1, double m2,
                      double m);

// Antiunitary-conjugation companion matrix Y with Y(d-1-n, n) = (-1)^n;
// satisfies Y conj(R) Y^-1 = R for every rotation R.
Eigen::MatrixXd conjugate_basis_map(int dim);

// Full decomposition of H (x) H (x) conj(H) into irreducible subspaces that
// commute with R (x) R (x) conj(R). The third factor is coupled through the
// conjugation map so the blocks are genuine rotation irreps.
TripleDecomposition decompose_triple(int dim);

// Frobenius distance of the stacked basis Gram matrix from the identity.
double completeness_residual(const TripleDecomposition& dec);

// Block decomposition of a process matrix over the irrep subspaces.
// Equivalent subspaces (same spin, same swap symmetry) may be coupled; all
// other blocks must vanish for a covariant permutation-invariant channel.
struct BlockStructure {
  std::vector<std::vector<double>> coefficient;  // c_ij on allowed pairs
  std::vector<std::vector<double>> mass;         // ||Q_i^T P Q_j||_F
  std::vector<std::vector<std::uint8_t>> allowed;
  double forbidden_mass = 0.0;  // joint Frobenius mass on forbidden pairs
  double schur_residual = 0.0;  // max deviation of allowed blocks from c*I
};

BlockStructure block_structure(const ChoiOperator& choi,
                               const TripleDecomposition& dec);

}  // namespace spinclone
