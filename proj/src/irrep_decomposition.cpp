#include "spinclone/irrep_decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include "spinclone/errors.hpp"

namespace spinclone {

namespace {

// Exact factorials in extended precision; covers every spin reachable here.
long double fact(int n) {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(257);
    t[0] = 1.0L;
    for (size_t i = 1; i < t.size(); ++i)
      t[i] = t[i - 1] * static_cast<long double>(i);
    return t;
  }();
  if (n < 0 || n >= static_cast<int>(table.size()))
    throw std::invalid_argument("factorial argument out of range");
  return table[static_cast<size_t>(n)];
}

int doubled(double x) {
  const double t = 2.0 * x;
  const long long r = std::llround(t);
  if (std::abs(t - static_cast<double>(r)) > 1e-9)
    throw std::invalid_argument("spin arguments must be half-integers");
  return static_cast<int>(r);
}

// Racah sum over doubled-integer quantum numbers; all factorial arguments
// are exact integers so half-integer spins never round.
double cg_doubled(int tj1, int tm1, int tj2, int tm2, int tj, int tm) {
  if (tj1 < 0 || tj2 < 0 || tj < 0)
    throw std::invalid_argument("spins must be non-negative");
  if (((tj1 + tm1) & 1) || ((tj2 + tm2) & 1) || ((tj + tm) & 1))
    throw std::invalid_argument("magnetic number off the spin ladder");
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm) > tj)
    return 0.0;
  if (tm1 + tm2 != tm) return 0.0;
  if ((tj1 + tj2 + tj) & 1) return 0.0;
  if (tj < std::abs(tj1 - tj2) || tj > tj1 + tj2) return 0.0;

  const int t1 = (tj1 + tj2 - tj) / 2;
  const int t2 = (tj1 - tj2 + tj) / 2;
  const int t3 = (-tj1 + tj2 + tj) / 2;
  const int t4 = (tj1 + tj2 + tj) / 2 + 1;
  const int a1 = (tj + tm) / 2;
  const int a2 = (tj - tm) / 2;
  const int b1 = (tj1 - tm1) / 2;
  const int b2 = (tj1 + tm1) / 2;
  const int b3 = (tj2 - tm2) / 2;
  const int b4 = (tj2 + tm2) / 2;
  const int c1 = (tj - tj2 + tm1) / 2;
  const int c2 = (tj - tj1 - tm2) / 2;

  const long double pref = sqrtl(
      (tj + 1.0L) * fact(t1) * fact(t2) * fact(t3) / fact(t4) * fact(a1) *
      fact(a2) * fact(b1) * fact(b2) * fact(b3) * fact(b4));
  const int kmin = std::max({0, -c1, -c2});
  const int kmax = std::min({t1, b1, b4});
  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double term = 1.0L / (fact(k) * fact(t1 - k) * fact(b1 - k) *
                                     fact(b4 - k) * fact(c1 + k) *
                                     fact(c2 + k));
    sum += (k & 1) ? -term : term;
  }
  return static_cast<double>(pref * sum);
}

}  // namespace

double clebsch_gordan(double j1, double j2, double j, double m1, double m2,
                      double m) {
  return cg_doubled(doubled(j1), doubled(m1), doubled(j2), doubled(m2),
                    doubled(j), doubled(m));
}

Eigen::MatrixXd conjugate_basis_map(int dim) {
  if (dim < 2) throw invalid_dimension("dimension must be at least 2");
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n)
    y(dim - 1 - n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return y;
}

TripleDecomposition decompose_triple(int dim) {
  if (dim < 2) throw invalid_dimension("dimension must be at least 2");
  const int tj = dim - 1;
  TripleDecomposition dec;
  dec.dim = dim;
  const Eigen::Index n3 = static_cast<Eigen::Index>(dim) * dim * dim;

  for (int tj12 = 0; tj12 <= 2 * tj; tj12 += 2) {
    // The clone pair lives in the symmetric combination exactly when
    // 2j - J12 is even; otherwise the coupled pair is antisymmetric.
    const char sym = ((tj - tj12 / 2) % 2 == 0) ? 'S' : 'A';
    for (int tj_tot = std::abs(tj12 - tj); tj_tot <= tj12 + tj; tj_tot += 2) {
      IrrepSubspace sub;
      sub.twice_spin = tj_tot;
      sub.twice_intermediate = tj12;
      sub.dimension = tj_tot + 1;
      sub.symmetry = sym;
      sub.basis = Eigen::MatrixXd::Zero(n3, sub.dimension);
      for (int col = 0; col < sub.dimension; ++col) {
        const int tm_tot = -tj_tot + 2 * col;
        for (int n1 = 0; n1 < dim; ++n1) {
          const int tm1 = 2 * n1 - tj;
          for (int n2 = 0; n2 < dim; ++n2) {
            const int tm2 = 2 * n2 - tj;
            const int tm12 = tm1 + tm2;
            if (std::abs(tm12) > tj12) continue;
            const double c12 = cg_doubled(tj, tm1, tj, tm2, tj12, tm12);
            if (c12 == 0.0) continue;
            const int tm3 = tm_tot - tm12;
            if (std::abs(tm3) > tj) continue;
            const double c3 = cg_doubled(tj12, tm12, tj, tm3, tj_tot, tm_tot);
            if (c3 == 0.0) continue;
            // Conjugate the third factor: |n> -> (-1)^(d-1-n) |d-1-n>.
            const int n3_pre = (tm3 + tj) / 2;
            const int n3_idx = dim - 1 - n3_pre;
            const double sign = (n3_idx % 2 == 0) ? 1.0 : -1.0;
            sub.basis(
                (static_cast<Eigen::Index>(n1) * dim + n2) * dim + n3_idx,
                col) += c12 * c3 * sign;
          }
        }
      }
      dec.subspaces.push_back(std::move(sub));
    }
  }

  std::sort(dec.subspaces.begin(), dec.subspaces.end(),
            [](const IrrepSubspace& a, const IrrepSubspace& b) {
              return std::make_tuple(a.dimension, a.symmetry,
                                     a.twice_intermediate) <
                     std::make_tuple(b.dimension, b.symmetry,
                                     b.twice_intermediate);
            });
  return dec;
}

double completeness_residual(const TripleDecomposition& dec) {
  const Eigen::Index n3 =
      static_cast<Eigen::Index>(dec.dim) * dec.dim * dec.dim;
  Eigen::Index total = 0;
  for (const auto& sub : dec.subspaces) total += sub.dimension;
  Eigen::MatrixXd stacked(n3, total);
  Eigen::Index col = 0;
  for (const auto& sub : dec.subspaces) {
    stacked.middleCols(col, sub.dimension) = sub.basis;
    col += sub.dimension;
  }
  Eigen::MatrixXd gram;
  gram.noalias() = stacked.transpose() * stacked;
  gram -= Eigen::MatrixXd::Identity(total, total);
  return gram.norm();
}

BlockStructure block_structure(const ChoiOperator& choi,
                               const TripleDecomposition& dec) {
  if (choi.dim != dec.dim)
    throw std::invalid_argument("process matrix and decomposition disagree");
  const size_t m = dec.subspaces.size();
  const bool low_rank = choi.factors.cols() > 0 &&
                        choi.factors.rows() == choi.matrix.rows();

  std::vector<Eigen::MatrixXd> projected(m);
  for (size_t jj = 0; jj < m; ++jj) {
    const Eigen::MatrixXd& q = dec.subspaces[jj].basis;
    if (low_rank)
      projected[jj].noalias() =
          choi.factors * (choi.factors.transpose() * q);
    else
      projected[jj].noalias() = choi.matrix * q;
  }

  BlockStructure out;
  out.coefficient.assign(m, std::vector<double>(m, 0.0));
  out.mass.assign(m, std::vector<double>(m, 0.0));
  out.allowed.assign(m, std::vector<std::uint8_t>(m, 0));
  double forbidden_sq = 0.0;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      const Eigen::MatrixXd block =
          dec.subspaces[i].basis.transpose() * projected[j];
      out.mass[i][j] = block.norm();
      const bool ok =
          dec.subspaces[i].twice_spin == dec.subspaces[j].twice_spin &&
          dec.subspaces[i].symmetry == dec.subspaces[j].symmetry;
      out.allowed[i][j] = ok ? 1 : 0;
      if (ok) {
        const double c = block.trace() / dec.subspaces[i].dimension;
        out.coefficient[i][j] = c;
        const double dev =
            (block - c * Eigen::MatrixXd::Identity(block.rows(), block.cols()))
                .norm();
        out.schur_residual = std::max(out.schur_residual, dev);
      } else {
        forbidden_sq += out.mass[i][j] * out.mass[i][j];
      }
    }
  }
  out.forbidden_mass = std::sqrt(forbidden_sq);
  return out;
}

}  // namespace spinclone
