#pragma once

#include <stdexcept>
#include <string>

namespace spinclone {

// Hilbert-space dimension outside the supported range.
class invalid_dimension : public std::invalid_argument {
 public:
  explicit invalid_dimension(const std::string& what)
      : std::invalid_argument(what) {}
};

// Request exceeds a hard storage ceiling (dense d^3 x d^3 process matrices).
class dimension_limit : public std::runtime_error {
 public:
  explicit dimension_limit(const std::string& what)
      : std::runtime_error(what) {}
};

// Top eigenspace of the fidelity tensor is too small to carry a full isometry.
class degeneracy_deficit : public std::runtime_error {
 public:
  explicit degeneracy_deficit(const std::string& what)
      : std::runtime_error(what) {}
};

// The isometry constraint has no positive semidefinite solution at tolerance.
// Carries the best residual reached so callers can report how close it got.
class constraint_infeasible : public std::runtime_error {
 public:
  constraint_infeasible(const std::string& what, double residual)
      : std::runtime_error(what), best_residual(residual) {}
  double best_residual;
};

// Generic numerical failure: eigensolver breakdown, singular linear systems.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace spinclone
