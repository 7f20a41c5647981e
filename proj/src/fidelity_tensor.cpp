#include "spinclone/fidelity_tensor.hpp"

#include <array>
#include <cmath>

#include "spinclone/errors.hpp"
#include "math_detail.hpp"

namespace spinclone {

double angular_moment(int dim, int n_prime, int k_prime, int k, int n) {
  if (dim < 2) throw invalid_dimension("dimension must be at least 2");
  for (int idx : {n_prime, k_prime, k, n})
    if (idx < 0 || idx >= dim)
      throw std::invalid_argument("level index out of range");
  // Phase integration selection rule.
  if (n + k_prime != n_prime + k) return 0.0;
  const int p = n + n_prime + k + k_prime;
  const int q = 4 * (dim - 1) - p;
  const double root =
      std::sqrt(detail::binomial(dim - 1, n_prime) *
                detail::binomial(dim - 1, k_prime) *
                detail::binomial(dim - 1, k) * detail::binomial(dim - 1, n));
  return root * detail::beta_int(p / 2 + 1, q / 2 + 1);
}

FidelityTensor build_fidelity_tensor(int dim, const SymmetricBasis& basis,
                                     int threads) {
  if (basis.dim_single() != dim)
    throw std::invalid_argument("basis dimension mismatch");
  const int s_dim = basis.size();
  const Eigen::Index total = static_cast<Eigen::Index>(dim) * s_dim;

  FidelityTensor tensor;
  tensor.dim_single = dim;
  tensor.sym_dim = s_dim;
  tensor.matrix = Eigen::MatrixXd::Zero(total, total);
  Eigen::MatrixXd& a = tensor.matrix;

  // Each (s_out, s_in) pair touches at most 2 x 2 product-basis supports with
  // a shared second slot, and the phase rule then fixes n_out from n_in.
  // Distinct s_out values write to disjoint rows, so the outer loop is safe
  // to parallelize without synchronization.
  auto fill_rows = [&](int s_out) {
    const auto [io, jo] = basis.pair_of(s_out);
    const std::array<std::pair<int, int>, 2> sup_out{{{io, jo}, {jo, io}}};
    const int n_sup_out = (io == jo) ? 1 : 2;
    for (int s_in = 0; s_in < s_dim; ++s_in) {
      const auto [ii, ji] = basis.pair_of(s_in);
      const std::array<std::pair<int, int>, 2> sup_in{{{ii, ji}, {ji, ii}}};
      const int n_sup_in = (ii == ji) ? 1 : 2;
      for (int a_out = 0; a_out < n_sup_out; ++a_out) {
        const auto [k_out, l_out] = sup_out[static_cast<size_t>(a_out)];
        for (int a_in = 0; a_in < n_sup_in; ++a_in) {
          const auto [k_in, l_in] = sup_in[static_cast<size_t>(a_in)];
          if (l_in != l_out) continue;
          const double weight = basis.overlap(k_in, l_in, s_in) *
                                basis.overlap(k_out, l_out, s_out);
          for (int n_in = 0; n_in < dim; ++n_in) {
            const int n_out = n_in + k_out - k_in;
            if (n_out < 0 || n_out >= dim) continue;
            a(static_cast<Eigen::Index>(n_out) * s_dim + s_out,
              static_cast<Eigen::Index>(n_in) * s_dim + s_in) +=
                weight * angular_moment(dim, n_out, k_out, k_in, n_in);
          }
        }
      }
    }
  };

  detail::parallel_for(0, s_dim, detail::resolve_threads(threads), fill_rows);
  return tensor;
}

FidelityTensor build_fidelity_tensor(int dim, int threads) {
  return build_fidelity_tensor(dim, SymmetricBasis(dim), threads);
}

}  // namespace spinclone
