#include "spinclone/capi.h"

#include <cmath>
#include <complex>
#include <cstring>
#include <limits>
#include <random>
#include <string>

#include "spinclone/channels.hpp"
#include "spinclone/errors.hpp"
#include "spinclone/fidelity_tensor.hpp"
#include "spinclone/fitting.hpp"
#include "spinclone/irrep_decomposition.hpp"
#include "spinclone/optimizer.hpp"
#include "spinclone/spin_states.hpp"
#include "spinclone/symmetric_space.hpp"

struct sc_solution {
  spinclone::OptimalSolution impl;
};
struct sc_isometry {
  spinclone::CloningIsometry impl;
};
struct sc_choi {
  spinclone::ChoiOperator impl;
};
struct sc_decomposition {
  spinclone::TripleDecomposition impl;
};

namespace {

thread_local std::string g_last_error;

sc_status fail(sc_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <typename Fn>
sc_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const spinclone::invalid_dimension& e) {
    return fail(SC_INVALID_DIMENSION, e.what());
  } catch (const spinclone::dimension_limit& e) {
    return fail(SC_DIMENSION_LIMIT, e.what());
  } catch (const spinclone::degeneracy_deficit& e) {
    return fail(SC_DEGENERACY_DEFICIT, e.what());
  } catch (const spinclone::constraint_infeasible& e) {
    return fail(SC_CONSTRAINT_INFEASIBLE,
                std::string(e.what()) + " (best residual " +
                    std::to_string(e.best_residual) + ")");
  } catch (const spinclone::numeric_error& e) {
    return fail(SC_NUMERIC_ERROR, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SC_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(SC_NUMERIC_ERROR, e.what());
  }
}

void write_complex(const Eigen::MatrixXcd& m, double* out) {
  size_t idx = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out[idx++] = m(r, c).real();
      out[idx++] = m(r, c).imag();
    }
}

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

extern "C" {

const char* sc_version(void) { return "1.0.0"; }

const char* sc_status_name(sc_status status) {
  switch (status) {
    case SC_OK: return "ok";
    case SC_NULL_POINTER: return "null pointer";
    case SC_INVALID_ARGUMENT: return "invalid argument";
    case SC_INVALID_DIMENSION: return "invalid dimension";
    case SC_DIMENSION_LIMIT: return "dimension limit exceeded";
    case SC_DEGENERACY_DEFICIT: return "degeneracy deficit";
    case SC_CONSTRAINT_INFEASIBLE: return "constraint infeasible";
    case SC_NUMERIC_ERROR: return "numeric error";
    case SC_BUFFER_TOO_SMALL: return "buffer too small";
  }
  return "unknown";
}

const char* sc_last_error(void) { return g_last_error.c_str(); }

sc_status sc_coherent_amplitudes(int dim, double theta, double phi,
                                 double* out_reim) {
  if (!out_reim) return fail(SC_NULL_POINTER, "output buffer is null");
  return guarded([&] {
    const Eigen::VectorXcd amp =
        spinclone::coherent_amplitudes(dim, {theta, phi});
    for (int n = 0; n < dim; ++n) {
      out_reim[2 * n] = amp(n).real();
      out_reim[2 * n + 1] = amp(n).imag();
    }
    return SC_OK;
  });
}

sc_status sc_universal_fidelity(int dim, double* out) {
  if (!out) return fail(SC_NULL_POINTER, "output pointer is null");
  return guarded([&] {
    *out = spinclone::universal_fidelity(dim);
    return SC_OK;
  });
}

sc_status sc_angular_moment(int dim, int n_out, int k_out, int k_in, int n_in,
                            double* out) {
  if (!out) return fail(SC_NULL_POINTER, "output pointer is null");
  return guarded([&] {
    *out = spinclone::angular_moment(dim, n_out, k_out, k_in, n_in);
    return SC_OK;
  });
}

sc_status sc_fidelity_tensor(int dim, double* out, size_t out_len) {
  if (!out) return fail(SC_NULL_POINTER, "output buffer is null");
  return guarded([&] {
    const spinclone::FidelityTensor tensor =
        spinclone::build_fidelity_tensor(dim);
    const size_t need = static_cast<size_t>(tensor.matrix.size());
    if (out_len < need)
      return fail(SC_BUFFER_TOO_SMALL, "tensor buffer needs " +
                                           std::to_string(need) + " doubles");
    size_t idx = 0;
    for (Eigen::Index r = 0; r < tensor.matrix.rows(); ++r)
      for (Eigen::Index c = 0; c < tensor.matrix.cols(); ++c)
        out[idx++] = tensor.matrix(r, c);
    return SC_OK;
  });
}

sc_status sc_solve(int dim, sc_solution** out) {
  if (!out) return fail(SC_NULL_POINTER, "output handle is null");
  *out = nullptr;
  return guarded([&] {
    auto* handle = new sc_solution{spinclone::max_fidelity(dim)};
    *out = handle;
    return SC_OK;
  });
}

void sc_solution_destroy(sc_solution* sol) { delete sol; }

int sc_solution_dim(const sc_solution* sol) {
  if (!sol) { fail(SC_NULL_POINTER, "solution handle is null"); return 0; }
  return sol->impl.dim;
}

double sc_solution_lambda_max(const sc_solution* sol) {
  if (!sol) { fail(SC_NULL_POINTER, "solution handle is null"); return quiet_nan(); }
  return sol->impl.lambda_max;
}

double sc_solution_fidelity(const sc_solution* sol) {
  if (!sol) { fail(SC_NULL_POINTER, "solution handle is null"); return quiet_nan(); }
  return sol->impl.fidelity;
}

int sc_solution_multiplicity(const sc_solution* sol) {
  if (!sol) { fail(SC_NULL_POINTER, "solution handle is null"); return 0; }
  return sol->impl.multiplicity;
}

sc_status sc_isometry_build(const sc_solution* sol, sc_isometry** out) {
  if (!sol) return fail(SC_NULL_POINTER, "solution handle is null");
  if (!out) return fail(SC_NULL_POINTER, "output handle is null");
  *out = nullptr;
  return guarded([&] {
    auto* handle = new sc_isometry{spinclone::build_isometry(sol->impl)};
    *out = handle;
    return SC_OK;
  });
}

sc_status sc_isometry_from_coefficients(int dim, int ancilla_dim,
                                        const double* coeffs, size_t len,
                                        sc_isometry** out) {
  if (!coeffs || !out)
    return fail(SC_NULL_POINTER, "coefficient or output pointer is null");
  *out = nullptr;
  return guarded([&] {
    if (dim < 2) throw spinclone::invalid_dimension("dimension must be at least 2");
    if (ancilla_dim < 1)
      throw std::invalid_argument("ancilla dimension must be positive");
    const int s_dim = dim * (dim + 1) / 2;
    const size_t need = static_cast<size_t>(ancilla_dim) * dim * s_dim;
    if (len < need)
      return fail(SC_BUFFER_TOO_SMALL, "coefficient buffer needs " +
                                           std::to_string(need) + " doubles");
    std::vector<Eigen::MatrixXd> blocks(static_cast<size_t>(ancilla_dim));
    for (int a = 0; a < ancilla_dim; ++a) {
      Eigen::MatrixXd block(dim, s_dim);
      for (int n = 0; n < dim; ++n)
        for (int s = 0; s < s_dim; ++s)
          block(n, s) =
              coeffs[(static_cast<size_t>(a) * dim + n) * s_dim + s];
      blocks[static_cast<size_t>(a)] = std::move(block);
    }
    auto* handle =
        new sc_isometry{spinclone::make_isometry(dim, std::move(blocks))};
    *out = handle;
    return SC_OK;
  });
}

void sc_isometry_destroy(sc_isometry* iso) { delete iso; }

int sc_isometry_dim(const sc_isometry* iso) {
  if (!iso) { fail(SC_NULL_POINTER, "isometry handle is null"); return 0; }
  return iso->impl.dim;
}

int sc_isometry_ancilla_dim(const sc_isometry* iso) {
  if (!iso) { fail(SC_NULL_POINTER, "isometry handle is null"); return 0; }
  return iso->impl.ancilla_dim;
}

int sc_isometry_sym_dim(const sc_isometry* iso) {
  if (!iso) { fail(SC_NULL_POINTER, "isometry handle is null"); return 0; }
  return iso->impl.sym_dim;
}

double sc_isometry_gram_residual(const sc_isometry* iso) {
  if (!iso) { fail(SC_NULL_POINTER, "isometry handle is null"); return quiet_nan(); }
  return iso->impl.gram_residual;
}

double sc_isometry_fidelity(const sc_isometry* iso) {
  if (!iso) { fail(SC_NULL_POINTER, "isometry handle is null"); return quiet_nan(); }
  return iso->impl.fidelity;
}

sc_status sc_isometry_coefficients(const sc_isometry* iso, double* out,
                                   size_t out_len) {
  if (!iso) return fail(SC_NULL_POINTER, "isometry handle is null");
  if (!out) return fail(SC_NULL_POINTER, "output buffer is null");
  const size_t need = static_cast<size_t>(iso->impl.ancilla_dim) *
                      iso->impl.dim * iso->impl.sym_dim;
  if (out_len < need)
    return fail(SC_BUFFER_TOO_SMALL,
                "coefficient buffer needs " + std::to_string(need) + " doubles");
  size_t idx = 0;
  for (const auto& block : iso->impl.blocks)
    for (int n = 0; n < iso->impl.dim; ++n)
      for (int s = 0; s < iso->impl.sym_dim; ++s) out[idx++] = block(n, s);
  return SC_OK;
}

sc_status sc_isometry_clone(const sc_isometry* iso, const double* input_reim,
                            double* pair_reim, size_t pair_len,
                            double* single_reim, size_t single_len) {
  if (!iso) return fail(SC_NULL_POINTER, "isometry handle is null");
  if (!input_reim) return fail(SC_NULL_POINTER, "input buffer is null");
  const int d = iso->impl.dim;
  const size_t pair_need = 2 * static_cast<size_t>(d) * d * d * d;
  const size_t single_need = 2 * static_cast<size_t>(d) * d;
  if (pair_reim && pair_len < pair_need)
    return fail(SC_BUFFER_TOO_SMALL,
                "pair buffer needs " + std::to_string(pair_need) + " doubles");
  if (single_reim && single_len < single_need)
    return fail(SC_BUFFER_TOO_SMALL, "single buffer needs " +
                                         std::to_string(single_need) +
                                         " doubles");
  return guarded([&] {
    Eigen::VectorXcd input(d);
    for (int n = 0; n < d; ++n)
      input(n) = {input_reim[2 * n], input_reim[2 * n + 1]};
    const spinclone::CloneOutput result =
        spinclone::clone_state(iso->impl, input);
    if (pair_reim) write_complex(result.pair_density, pair_reim);
    if (single_reim) write_complex(result.single_density, single_reim);
    return SC_OK;
  });
}

sc_status sc_sweep(int dim_min, int dim_max, int threads, double* out,
                   size_t out_len) {
  if (!out) return fail(SC_NULL_POINTER, "output buffer is null");
  return guarded([&] {
    if (dim_max >= dim_min) {
      const size_t need = 3 * (static_cast<size_t>(dim_max - dim_min) + 1);
      if (out_len < need)
        return fail(SC_BUFFER_TOO_SMALL,
                    "sweep buffer needs " + std::to_string(need) + " doubles");
    }
    const auto rows = spinclone::sweep(dim_min, dim_max, threads);
    size_t idx = 0;
    for (const auto& row : rows) {
      out[idx++] = row.dim;
      out[idx++] = row.f_coherent;
      out[idx++] = row.f_universal;
    }
    return SC_OK;
  });
}

sc_status sc_choi_build(const sc_isometry* iso, sc_choi** out) {
  if (!iso) return fail(SC_NULL_POINTER, "isometry handle is null");
  if (!out) return fail(SC_NULL_POINTER, "output handle is null");
  *out = nullptr;
  return guarded([&] {
    auto* handle = new sc_choi{spinclone::choi_from_isometry(iso->impl)};
    *out = handle;
    return SC_OK;
  });
}

void sc_choi_destroy(sc_choi* choi) { delete choi; }

int sc_choi_dim(const sc_choi* choi) {
  if (!choi) { fail(SC_NULL_POINTER, "process-matrix handle is null"); return 0; }
  return choi->impl.dim;
}

sc_status sc_choi_spectrum(const sc_choi* choi, double* out, size_t out_len) {
  if (!choi) return fail(SC_NULL_POINTER, "process-matrix handle is null");
  if (!out) return fail(SC_NULL_POINTER, "output buffer is null");
  const size_t need = static_cast<size_t>(choi->impl.matrix.rows());
  if (out_len < need)
    return fail(SC_BUFFER_TOO_SMALL,
                "spectrum buffer needs " + std::to_string(need) + " doubles");
  return guarded([&] {
    const Eigen::VectorXd spec = spinclone::choi_spectrum(choi->impl);
    for (Eigen::Index i = 0; i < spec.size(); ++i) out[i] = spec(i);
    return SC_OK;
  });
}

sc_status sc_choi_trace_residual(const sc_choi* choi, double* out) {
  if (!choi) return fail(SC_NULL_POINTER, "process-matrix handle is null");
  if (!out) return fail(SC_NULL_POINTER, "output pointer is null");
  return guarded([&] {
    *out = spinclone::trace_preservation_residual(choi->impl);
    return SC_OK;
  });
}

sc_status sc_choi_covariance_residual(const sc_choi* choi, int n_samples,
                                      unsigned long long seed, double* out) {
  if (!choi) return fail(SC_NULL_POINTER, "process-matrix handle is null");
  if (!out) return fail(SC_NULL_POINTER, "output pointer is null");
  return guarded([&] {
    if (n_samples < 1)
      throw std::invalid_argument("sample count must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<spinclone::CoherentPoint> samples;
    samples.reserve(static_cast<size_t>(n_samples));
    const double pi = std::acos(-1.0);
    for (int i = 0; i < n_samples; ++i) {
      const double theta = std::acos(1.0 - 2.0 * unit(rng));
      const double phi = 2.0 * pi * unit(rng);
      samples.push_back({theta, phi});
    }
    *out = spinclone::covariance_residual(choi->impl, samples);
    return SC_OK;
  });
}

sc_status sc_choi_permutation_residual(const sc_choi* choi, double* out) {
  if (!choi) return fail(SC_NULL_POINTER, "process-matrix handle is null");
  if (!out) return fail(SC_NULL_POINTER, "output pointer is null");
  return guarded([&] {
    *out = spinclone::permutation_residual(choi->impl);
    return SC_OK;
  });
}

sc_status sc_decompose(int dim, sc_decomposition** out) {
  if (!out) return fail(SC_NULL_POINTER, "output handle is null");
  *out = nullptr;
  return guarded([&] {
    auto* handle = new sc_decomposition{spinclone::decompose_triple(dim)};
    *out = handle;
    return SC_OK;
  });
}

void sc_decomposition_destroy(sc_decomposition* dec) { delete dec; }

int sc_decomposition_count(const sc_decomposition* dec) {
  if (!dec) { fail(SC_NULL_POINTER, "decomposition handle is null"); return 0; }
  return static_cast<int>(dec->impl.subspaces.size());
}

sc_status sc_decomposition_subspace(const sc_decomposition* dec, int index,
                                    int* twice_spin, int* twice_intermediate,
                                    int* dimension, char* symmetry) {
  if (!dec) return fail(SC_NULL_POINTER, "decomposition handle is null");
  if (index < 0 || index >= static_cast<int>(dec->impl.subspaces.size()))
    return fail(SC_INVALID_ARGUMENT, "subspace index out of range");
  const auto& sub = dec->impl.subspaces[static_cast<size_t>(index)];
  if (twice_spin) *twice_spin = sub.twice_spin;
  if (twice_intermediate) *twice_intermediate = sub.twice_intermediate;
  if (dimension) *dimension = sub.dimension;
  if (symmetry) *symmetry = sub.symmetry;
  return SC_OK;
}

sc_status sc_decomposition_basis(const sc_decomposition* dec, int index,
                                 double* out, size_t out_len) {
  if (!dec) return fail(SC_NULL_POINTER, "decomposition handle is null");
  if (!out) return fail(SC_NULL_POINTER, "output buffer is null");
  if (index < 0 || index >= static_cast<int>(dec->impl.subspaces.size()))
    return fail(SC_INVALID_ARGUMENT, "subspace index out of range");
  const auto& basis = dec->impl.subspaces[static_cast<size_t>(index)].basis;
  const size_t need = static_cast<size_t>(basis.size());
  if (out_len < need)
    return fail(SC_BUFFER_TOO_SMALL,
                "basis buffer needs " + std::to_string(need) + " doubles");
  size_t idx = 0;
  for (Eigen::Index r = 0; r < basis.rows(); ++r)
    for (Eigen::Index c = 0; c < basis.cols(); ++c) out[idx++] = basis(r, c);
  return SC_OK;
}

sc_status sc_decomposition_completeness(const sc_decomposition* dec,
                                        double* out) {
  if (!dec) return fail(SC_NULL_POINTER, "decomposition handle is null");
  if (!out) return fail(SC_NULL_POINTER, "output pointer is null");
  return guarded([&] {
    *out = spinclone::completeness_residual(dec->impl);
    return SC_OK;
  });
}

sc_status sc_clebsch_gordan(double j1, double j2, double j, double m1,
                            double m2, double m, double* out) {
  if (!out) return fail(SC_NULL_POINTER, "output pointer is null");
  return guarded([&] {
    *out = spinclone::clebsch_gordan(j1, j2, j, m1, m2, m);
    return SC_OK;
  });
}

sc_status sc_choi_blocks(const sc_choi* choi, const sc_decomposition* dec,
                         double* coeff, double* mass, size_t len,
                         double* forbidden_mass, double* schur_residual) {
  if (!choi || !dec)
    return fail(SC_NULL_POINTER, "process-matrix or decomposition handle is null");
  if (!coeff || !mass)
    return fail(SC_NULL_POINTER, "output buffer is null");
  const size_t m = dec->impl.subspaces.size();
  if (len < m * m)
    return fail(SC_BUFFER_TOO_SMALL,
                "block buffers need " + std::to_string(m * m) + " doubles");
  return guarded([&] {
    const spinclone::BlockStructure blocks =
        spinclone::block_structure(choi->impl, dec->impl);
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j) {
        coeff[i * m + j] = blocks.coefficient[i][j];
        mass[i * m + j] = blocks.mass[i][j];
      }
    if (forbidden_mass) *forbidden_mass = blocks.forbidden_mass;
    if (schur_residual) *schur_residual = blocks.schur_residual;
    return SC_OK;
  });
}

sc_status sc_fit_rational(const double* dims, const double* fidelities,
                          int count, double* alpha, double* beta,
                          double* gamma, double* rms, int* converged) {
  if (!dims || !fidelities)
    return fail(SC_NULL_POINTER, "input buffer is null");
  if (!alpha || !beta || !gamma)
    return fail(SC_NULL_POINTER, "output pointer is null");
  return guarded([&] {
    if (count < 1) throw std::invalid_argument("empty fit input");
    std::vector<spinclone::FidelityPoint> points;
    points.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
      const double d = dims[i];
      if (std::abs(d - std::llround(d)) > 1e-9)
        throw std::invalid_argument("dimensions must be integers");
      points.push_back(
          {static_cast<int>(std::llround(d)), fidelities[i]});
    }
    const spinclone::RationalFit fit = spinclone::fit_rational(points);
    *alpha = fit.alpha;
    *beta = fit.beta;
    *gamma = fit.gamma;
    if (rms) *rms = fit.rms_residual;
    if (converged) *converged = fit.converged ? 1 : 0;
    return SC_OK;
  });
}

}  // extern "C"
