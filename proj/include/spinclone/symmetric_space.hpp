#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace spinclone {

// Orthonormal basis of the symmetric (bosonic) subspace of H (x) H.
// States are indexed by unordered pairs (i, j) with i <= j in lexicographic
// order, giving S = d(d+1)/2 of them; |i,j> = (|ij> + |ji>)/sqrt(2) for i < j.
class SymmetricBasis {
 public:
  explicit SymmetricBasis(int dim_single);

  int dim_single() const { return d_; }
  int size() const { return static_cast<int>(pairs_.size()); }

  // Index of the unordered pair {i, j}; argument order does not matter.
  int index_of(int i, int j) const;
  std::pair<int, int> pair_of(int s) const;

  // <k (x) l | s>. Real by construction: 1 on diagonal pairs, 1/sqrt(2) on
  // either ordering of an off-diagonal pair, 0 otherwise.
  double overlap(int k, int l, int s) const;

  // d^2 x S matrix whose columns are the basis states in the product basis
  // with row index k*d + l.
  const Eigen::MatrixXd& embedding() const { return embedding_; }

  // Lifts an S x S operator on the symmetric subspace to d^2 x d^2.
  Eigen::MatrixXcd embed_operator(const Eigen::MatrixXcd& m) const;

  // Reduced state on the first factor of a d^2 x d^2 two-party operator.
  Eigen::MatrixXcd partial_trace_second(const Eigen::MatrixXcd& m) const;

 private:
  int d_;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<int> index_;  // index_[i*d + j] with i <= j
  Eigen::MatrixXd embedding_;
};

}  // namespace spinclone
