#include "spinclone/optimizer.hpp"

#include <cmath>

#include "spinclone/errors.hpp"
#include "math_detail.hpp"

namespace spinclone {

namespace {

constexpr double kDegeneracyRelTol = 1e-9;
constexpr double kGramTol = 1e-9;

// Flattens a d x S coefficient block to the composite index n*S + s.
Eigen::VectorXd flatten(const Eigen::MatrixXd& block) {
  Eigen::VectorXd v(block.size());
  for (Eigen::Index n = 0; n < block.rows(); ++n)
    for (Eigen::Index s = 0; s < block.cols(); ++s)
      v(n * block.cols() + s) = block(n, s);
  return v;
}

double achieved_fidelity(int dim, const std::vector<Eigen::MatrixXd>& blocks) {
  const FidelityTensor tensor = build_fidelity_tensor(dim, 1);
  double f = 0.0;
  for (const auto& block : blocks) {
    const Eigen::VectorXd w = flatten(block);
    f += w.dot(tensor.matrix * w);
  }
  return f;
}

double gram_residual_of(int dim, const std::vector<Eigen::MatrixXd>& blocks) {
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& block : blocks) gram += block * block.transpose();
  return (gram - Eigen::MatrixXd::Identity(dim, dim)).norm();
}

// Makes the first non-negligible entry of each block positive; the ancilla
// basis phase is otherwise arbitrary and this pins a deterministic gauge.
void fix_signs(std::vector<Eigen::MatrixXd>& blocks) {
  for (auto& block : blocks) {
    bool done = false;
    for (Eigen::Index n = 0; n < block.rows() && !done; ++n) {
      for (Eigen::Index s = 0; s < block.cols() && !done; ++s) {
        if (std::abs(block(n, s)) > 1e-10) {
          if (block(n, s) < 0.0) block = -block;
          done = true;
        }
      }
    }
  }
}

}  // namespace

OptimalSolution max_fidelity(const FidelityTensor& tensor) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tensor.matrix);
  if (es.info() != Eigen::Success)
    throw numeric_error("fidelity tensor eigensolve failed");
  const Eigen::Index total = tensor.matrix.rows();
  const double lambda_max = es.eigenvalues()(total - 1);
  const double tol = kDegeneracyRelTol * std::max(1.0, std::abs(lambda_max));
  Eigen::Index first = total;
  while (first > 0 && es.eigenvalues()(first - 1) >= lambda_max - tol) --first;

  OptimalSolution sol;
  sol.dim = tensor.dim_single;
  sol.lambda_max = lambda_max;
  sol.fidelity = tensor.dim_single * lambda_max;
  sol.multiplicity = static_cast<int>(total - first);
  sol.eigenvectors.resize(total, total - first);
  // Columns ordered by descending eigenvalue.
  for (Eigen::Index c = 0; c < total - first; ++c)
    sol.eigenvectors.col(c) = es.eigenvectors().col(total - 1 - c);
  return sol;
}

OptimalSolution max_fidelity(int dim) {
  return max_fidelity(build_fidelity_tensor(dim));
}

double universal_fidelity(int dim) {
  if (dim < 2) throw invalid_dimension("dimension must be at least 2");
  return (dim + 3.0) / (2.0 * dim + 2.0);
}

CloningIsometry build_isometry(const OptimalSolution& solution) {
  const int d = solution.dim;
  const int g = solution.multiplicity;
  if (d < 2) throw invalid_dimension("dimension must be at least 2");
  if (g < d)
    throw degeneracy_deficit(
        "top eigenspace multiplicity " + std::to_string(g) +
        " is below the dimension " + std::to_string(d));
  const int s_dim = d * (d + 1) / 2;
  if (solution.eigenvectors.rows() != static_cast<Eigen::Index>(d) * s_dim ||
      solution.eigenvectors.cols() != g)
    throw std::invalid_argument("eigenvector block has inconsistent shape");

  // Reshape each eigenvector to a d x S coefficient matrix.
  std::vector<Eigen::MatrixXd> v(static_cast<size_t>(g));
  for (int i = 0; i < g; ++i) {
    v[static_cast<size_t>(i)].resize(d, s_dim);
    for (int n = 0; n < d; ++n)
      for (int s = 0; s < s_dim; ++s)
        v[static_cast<size_t>(i)](n, s) =
            solution.eigenvectors(static_cast<Eigen::Index>(n) * s_dim + s, i);
  }

  // Isometry condition: sum_ij M_ij V_i V_j^T = I with M symmetric PSD.
  // Both sides are symmetric d x d, so match upper triangles; unknowns are
  // the upper-triangle entries of M.
  const int n_eq = d * (d + 1) / 2;
  const int n_un = g * (g + 1) / 2;
  Eigen::MatrixXd lhs(n_eq, n_un);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_eq);
  {
    int eq = 0;
    for (int r = 0; r < d; ++r)
      for (int c = r; c < d; ++c, ++eq)
        if (r == c) rhs(eq) = 1.0;
  }
  {
    int un = 0;
    for (int i = 0; i < g; ++i) {
      for (int j = i; j < g; ++j, ++un) {
        Eigen::MatrixXd contrib =
            v[static_cast<size_t>(i)] * v[static_cast<size_t>(j)].transpose();
        if (i != j) contrib += contrib.transpose().eval();
        int eq = 0;
        for (int r = 0; r < d; ++r)
          for (int c = r; c < d; ++c, ++eq) lhs(eq, un) = contrib(r, c);
      }
    }
  }
  const Eigen::VectorXd m_upper =
      lhs.completeOrthogonalDecomposition().solve(rhs);

  Eigen::MatrixXd mix(g, g);
  {
    int un = 0;
    for (int i = 0; i < g; ++i)
      for (int j = i; j < g; ++j, ++un)
        mix(i, j) = mix(j, i) = m_upper(un);
  }

  double residual = (lhs * m_upper - rhs).norm();
  if (!(residual <= kGramTol))
    throw constraint_infeasible(
        "isometry constraint unsatisfiable on the top eigenspace", residual);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mix);
  if (es.info() != Eigen::Success)
    throw numeric_error("mixing matrix eigensolve failed");
  const double mu_max = std::max(es.eigenvalues().maxCoeff(), 0.0);
  if (es.eigenvalues().minCoeff() < -1e-8 * std::max(1.0, mu_max))
    throw constraint_infeasible("mixing matrix is not positive semidefinite",
                                residual);

  const double rank_tol = 1e-12 * std::max(1.0, mu_max);
  std::vector<int> kept;
  for (int i = g - 1; i >= 0; --i)
    if (es.eigenvalues()(i) > rank_tol) kept.push_back(i);

  CloningIsometry iso;
  iso.dim = d;
  iso.sym_dim = s_dim;
  if (static_cast<int>(kept.size()) == g) {
    // Full rank: use the symmetric square root so M = I yields the
    // eigenvectors themselves as coefficient blocks.
    Eigen::VectorXd sqrt_mu = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::MatrixXd root =
        es.eigenvectors() * sqrt_mu.asDiagonal() * es.eigenvectors().transpose();
    iso.ancilla_dim = g;
    iso.blocks.assign(static_cast<size_t>(g), Eigen::MatrixXd());
    for (int a = 0; a < g; ++a) {
      Eigen::MatrixXd block = Eigen::MatrixXd::Zero(d, s_dim);
      for (int i = 0; i < g; ++i) block += root(a, i) * v[static_cast<size_t>(i)];
      iso.blocks[static_cast<size_t>(a)] = std::move(block);
    }
  } else {
    // Rank-deficient mixing: one ancilla state per retained eigenvalue.
    iso.ancilla_dim = static_cast<int>(kept.size());
    for (int idx : kept) {
      const double w = std::sqrt(es.eigenvalues()(idx));
      Eigen::MatrixXd block = Eigen::MatrixXd::Zero(d, s_dim);
      for (int i = 0; i < g; ++i)
        block += w * es.eigenvectors()(i, idx) * v[static_cast<size_t>(i)];
      iso.blocks.push_back(std::move(block));
    }
  }

  fix_signs(iso.blocks);
  iso.gram_residual = gram_residual_of(d, iso.blocks);
  if (!(iso.gram_residual <= kGramTol))
    throw constraint_infeasible("isometry coefficients fail the unitarity check",
                                iso.gram_residual);
  iso.fidelity = achieved_fidelity(d, iso.blocks);
  return iso;
}

CloningIsometry make_isometry(int dim, std::vector<Eigen::MatrixXd> blocks) {
  if (dim < 2) throw invalid_dimension("dimension must be at least 2");
  const int s_dim = dim * (dim + 1) / 2;
  if (blocks.empty()) throw std::invalid_argument("no coefficient blocks");
  for (const auto& block : blocks)
    if (block.rows() != dim || block.cols() != s_dim)
      throw std::invalid_argument("coefficient block has wrong shape");

  CloningIsometry iso;
  iso.dim = dim;
  iso.ancilla_dim = static_cast<int>(blocks.size());
  iso.sym_dim = s_dim;
  iso.blocks = std::move(blocks);
  iso.gram_residual = gram_residual_of(dim, iso.blocks);
  if (!(iso.gram_residual <= 1e-8))
    throw constraint_infeasible("coefficients do not form an isometry",
                                iso.gram_residual);
  iso.fidelity = achieved_fidelity(dim, iso.blocks);
  return iso;
}

CloneOutput clone_state(const CloningIsometry& iso,
                        const Eigen::VectorXcd& input) {
  if (input.size() != iso.dim)
    throw std::invalid_argument("input ket has wrong dimension");
  if (std::abs(input.squaredNorm() - 1.0) > 1e-8)
    throw std::invalid_argument("input ket must be normalized");

  const SymmetricBasis basis(iso.dim);
  // Joint amplitudes c(s, a) = sum_n psi_n w_a(n, s).
  Eigen::MatrixXcd joint(iso.sym_dim, iso.ancilla_dim);
  for (int a = 0; a < iso.ancilla_dim; ++a)
    joint.col(a) =
        iso.blocks[static_cast<size_t>(a)].transpose().cast<std::complex<double>>() *
        input;
  const Eigen::MatrixXcd rho_sym = joint * joint.adjoint();

  CloneOutput out;
  out.pair_density = basis.embed_operator(rho_sym);
  out.single_density = basis.partial_trace_second(out.pair_density);
  return out;
}

std::vector<SweepRow> sweep(int dim_min, int dim_max, int threads) {
  if (dim_min < 2) throw invalid_dimension("dimension must be at least 2");
  if (dim_max < dim_min)
    throw std::invalid_argument("empty dimension range");
  std::vector<SweepRow> rows(static_cast<size_t>(dim_max - dim_min + 1));
  auto solve_one = [&](int i) {
    const int d = dim_min + i;
    const FidelityTensor tensor = build_fidelity_tensor(d, 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.compute(tensor.matrix, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw numeric_error("fidelity tensor eigensolve failed");
    const double lambda_max = es.eigenvalues().maxCoeff();
    rows[static_cast<size_t>(i)] = {d, d * lambda_max, universal_fidelity(d)};
  };
  detail::parallel_for(0, static_cast<int>(rows.size()),
                       detail::resolve_threads(threads), solve_one);
  return rows;
}

}  // namespace spinclone
