#pragma once

#include <vector>

namespace spinclone {

struct FidelityPoint {
  int dim = 0;
  double fidelity = 0.0;
};

// Least-squares fit of f(d) = (alpha*d + beta) / (d + gamma) to a fidelity
// curve. The linearized system seeds a damped Gauss-Newton refinement.
struct RationalFit {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double rms_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Requires at least four points with distinct dimensions and fidelities in
// [1/2, 1]; points are sorted internally, so the result does not depend on
// input order. A singular linearized system (for instance a constant curve)
// raises numeric_error; failure to converge within the iteration budget
// returns the best iterate with converged = false.
RationalFit fit_rational(const std::vector<FidelityPoint>& points);

}  // namespace spinclone
