#include "spinclone/symmetric_space.hpp"

#include <cmath>

#include "spinclone/errors.hpp"

namespace spinclone {

SymmetricBasis::SymmetricBasis(int dim_single) : d_(dim_single) {
  if (d_ < 2) throw invalid_dimension("dimension must be at least 2");
  index_.assign(static_cast<size_t>(d_) * d_, -1);
  for (int i = 0; i < d_; ++i) {
    for (int j = i; j < d_; ++j) {
      index_[static_cast<size_t>(i) * d_ + j] =
          static_cast<int>(pairs_.size());
      pairs_.emplace_back(i, j);
    }
  }
  const int s_dim = size();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  embedding_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d_) * d_, s_dim);
  for (int s = 0; s < s_dim; ++s) {
    const auto [i, j] = pairs_[static_cast<size_t>(s)];
    if (i == j) {
      embedding_(static_cast<Eigen::Index>(i) * d_ + j, s) = 1.0;
    } else {
      embedding_(static_cast<Eigen::Index>(i) * d_ + j, s) = inv_sqrt2;
      embedding_(static_cast<Eigen::Index>(j) * d_ + i, s) = inv_sqrt2;
    }
  }
}

int SymmetricBasis::index_of(int i, int j) const {
  if (i < 0 || j < 0 || i >= d_ || j >= d_)
    throw std::invalid_argument("pair index out of range");
  if (i > j) std::swap(i, j);
  return index_[static_cast<size_t>(i) * d_ + j];
}

std::pair<int, int> SymmetricBasis::pair_of(int s) const {
  if (s < 0 || s >= size())
    throw std::invalid_argument("symmetric index out of range");
  return pairs_[static_cast<size_t>(s)];
}

double SymmetricBasis::overlap(int k, int l, int s) const {
  if (k < 0 || l < 0 || k >= d_ || l >= d_)
    throw std::invalid_argument("product index out of range");
  if (s < 0 || s >= size())
    throw std::invalid_argument("symmetric index out of range");
  return embedding_(static_cast<Eigen::Index>(k) * d_ + l, s);
}

Eigen::MatrixXcd SymmetricBasis::embed_operator(
    const Eigen::MatrixXcd& m) const {
  if (m.rows() != size() || m.cols() != size())
    throw std::invalid_argument("operator does not match symmetric dimension");
  return embedding_ * m * embedding_.transpose();
}

Eigen::MatrixXcd SymmetricBasis::partial_trace_second(
    const Eigen::MatrixXcd& m) const {
  const Eigen::Index dd = static_cast<Eigen::Index>(d_) * d_;
  if (m.rows() != dd || m.cols() != dd)
    throw std::invalid_argument("operator does not match pair dimension");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d_, d_);
  for (int i = 0; i < d_; ++i)
    for (int k = 0; k < d_; ++k)
      for (int l = 0; l < d_; ++l)
        out(i, k) += m(static_cast<Eigen::Index>(i) * d_ + l,
                       static_cast<Eigen::Index>(k) * d_ + l);
  return out;
}

}  // namespace spinclone
