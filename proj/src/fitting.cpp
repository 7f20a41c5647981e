#include "spinclone/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "spinclone/errors.hpp"

namespace spinclone {

namespace {

double cost(const std::vector<FidelityPoint>& points, double alpha,
            double beta, double gamma) {
  double sq = 0.0;
  for (const auto& p : points) {
    const double den = p.dim + gamma;
    if (std::abs(den) < 1e-9) return std::numeric_limits<double>::infinity();
    const double r = (alpha * p.dim + beta) / den - p.fidelity;
    sq += r * r;
  }
  return sq;
}

}  // namespace

RationalFit fit_rational(const std::vector<FidelityPoint>& raw_points) {
  // Sort by dimension so the result is independent of input order.
  std::vector<FidelityPoint> points = raw_points;
  std::sort(points.begin(), points.end(),
            [](const FidelityPoint& a, const FidelityPoint& b) {
              return a.dim < b.dim;
            });
  const int n = static_cast<int>(points.size());
  if (n < 4)
    throw std::invalid_argument("need at least four points to fit");
  for (int i = 0; i < n; ++i) {
    if (i > 0 && points[static_cast<size_t>(i)].dim ==
                     points[static_cast<size_t>(i - 1)].dim)
      throw std::invalid_argument("dimensions must be distinct");
    const double f = points[static_cast<size_t>(i)].fidelity;
    if (!(f >= 0.5 && f <= 1.0))
      throw std::invalid_argument("fidelities must lie in [1/2, 1]");
  }

  // Linearized seed: alpha*d + beta - gamma*f = f*d.
  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const auto& p = points[static_cast<size_t>(i)];
    a(i, 0) = p.dim;
    a(i, 1) = 1.0;
    a(i, 2) = -p.fidelity;
    b(i) = p.fidelity * p.dim;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues()(2) < 1e-12 * svd.singularValues()(0))
    throw numeric_error("linearized fit system is singular");
  Eigen::Vector3d x = svd.solve(b);

  RationalFit fit;
  fit.alpha = x(0);
  fit.beta = x(1);
  fit.gamma = x(2);
  double best = cost(points, fit.alpha, fit.beta, fit.gamma);

  constexpr int kMaxIter = 100;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    fit.iterations = iter + 1;
    Eigen::MatrixXd jac(n, 3);
    Eigen::VectorXd res(n);
    for (int i = 0; i < n; ++i) {
      const auto& p = points[static_cast<size_t>(i)];
      const double den = p.dim + fit.gamma;
      const double num = fit.alpha * p.dim + fit.beta;
      res(i) = num / den - p.fidelity;
      jac(i, 0) = p.dim / den;
      jac(i, 1) = 1.0 / den;
      jac(i, 2) = -num / (den * den);
    }
    const Eigen::Vector3d step =
        jac.completeOrthogonalDecomposition().solve(-res);
    if (step.norm() < 1e-12) {
      fit.converged = true;
      break;
    }
    // Backtracking line search keeps the iterate from jumping over the pole.
    double scale = 1.0;
    bool improved = false;
    for (int h = 0; h < 30; ++h, scale *= 0.5) {
      const double c = cost(points, fit.alpha + scale * step(0),
                            fit.beta + scale * step(1),
                            fit.gamma + scale * step(2));
      if (c < best) {
        fit.alpha += scale * step(0);
        fit.beta += scale * step(1);
        fit.gamma += scale * step(2);
        best = c;
        improved = true;
        break;
      }
    }
    if (!improved) break;  // stuck at the numerical floor; report best iterate
  }

  fit.rms_residual = std::sqrt(best / n);
  return fit;
}

}  // namespace spinclone
