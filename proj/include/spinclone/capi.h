#ifndef SPINCLONE_CAPI_H
#define SPINCLONE_CAPI_H

/* C interface to the spin coherent-state cloning library.
 *
 * Conventions:
 *  - complex buffers interleave re/im pairs, so a d-dimensional ket
 *    occupies 2*d doubles and a d x d matrix 2*d*d doubles (row-major);
 *  - every fallible call returns sc_status and writes through out-pointers
 *    only on SC_OK; sc_last_error() describes the most recent failure on
 *    the calling thread;
 *  - handles are created by sc_*_build/sc_solve/sc_decompose calls and
 *    must be released with the matching destroy function.
 */

#include <stddef.h>

#if defined(_WIN32)
#define SC_API __declspec(dllexport)
#else
#define SC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_NULL_POINTER = 1,
  SC_INVALID_ARGUMENT = 2,
  SC_INVALID_DIMENSION = 3,
  SC_DIMENSION_LIMIT = 4,
  SC_DEGENERACY_DEFICIT = 5,
  SC_CONSTRAINT_INFEASIBLE = 6,
  SC_NUMERIC_ERROR = 7,
  SC_BUFFER_TOO_SMALL = 8
} sc_status;

SC_API const char* sc_version(void);
SC_API const char* sc_status_name(sc_status status);
SC_API const char* sc_last_error(void);

/* Coherent-state amplitudes <n|theta, phi>; out holds 2*dim doubles. */
SC_API sc_status sc_coherent_amplitudes(int dim, double theta, double phi,
                                        double* out_reim);

/* Closed-form optimal universal cloning fidelity (d + 3) / (2d + 2). */
SC_API sc_status sc_universal_fidelity(int dim, double* out);

/* Sphere average of four coherent amplitudes indexed (n_out k_out k_in n_in). */
SC_API sc_status sc_angular_moment(int dim, int n_out, int k_out, int k_in,
                                   int n_in, double* out);

/* Fidelity tensor over the composite index n*S + s with S = dim*(dim+1)/2;
 * out is row-major (dim*S) x (dim*S). */
SC_API sc_status sc_fidelity_tensor(int dim, double* out, size_t out_len);

/* ---- optimal solution ------------------------------------------------ */

typedef struct sc_solution sc_solution;

SC_API sc_status sc_solve(int dim, sc_solution** out);
SC_API void sc_solution_destroy(sc_solution* sol);
SC_API int sc_solution_dim(const sc_solution* sol);
SC_API double sc_solution_lambda_max(const sc_solution* sol);
SC_API double sc_solution_fidelity(const sc_solution* sol);
SC_API int sc_solution_multiplicity(const sc_solution* sol);

/* ---- cloning isometry -------------------------------------------------- */

typedef struct sc_isometry sc_isometry;

SC_API sc_status sc_isometry_build(const sc_solution* sol, sc_isometry** out);

/* Builds an isometry from raw real coefficients laid out as
 * coeffs[(a*dim + n)*S + s] for ancilla a, level n, symmetric index s.
 * The isometry condition is validated. */
SC_API sc_status sc_isometry_from_coefficients(int dim, int ancilla_dim,
                                               const double* coeffs,
                                               size_t len, sc_isometry** out);
SC_API void sc_isometry_destroy(sc_isometry* iso);
SC_API int sc_isometry_dim(const sc_isometry* iso);
SC_API int sc_isometry_ancilla_dim(const sc_isometry* iso);
SC_API int sc_isometry_sym_dim(const sc_isometry* iso);
SC_API double sc_isometry_gram_residual(const sc_isometry* iso);
SC_API double sc_isometry_fidelity(const sc_isometry* iso);
SC_API sc_status sc_isometry_coefficients(const sc_isometry* iso, double* out,
                                          size_t out_len);

/* Runs a ket (2*dim doubles) through the cloner. pair_reim receives the
 * d^2 x d^2 clone-pair density, single_reim the d x d one-clone reduction;
 * either output may be NULL to skip it. */
SC_API sc_status sc_isometry_clone(const sc_isometry* iso,
                                   const double* input_reim, double* pair_reim,
                                   size_t pair_len, double* single_reim,
                                   size_t single_len);

/* Optimal coherent fidelity vs the universal baseline for each dimension in
 * [dim_min, dim_max]; out receives 3 doubles per row (d, coherent,
 * universal). threads = 0 picks up SPINCLONE_THREADS or the hardware count. */
SC_API sc_status sc_sweep(int dim_min, int dim_max, int threads, double* out,
                          size_t out_len);

/* ---- process matrix ----------------------------------------------------- */

typedef struct sc_choi sc_choi;

SC_API sc_status sc_choi_build(const sc_isometry* iso, sc_choi** out);
SC_API void sc_choi_destroy(sc_choi* choi);
SC_API int sc_choi_dim(const sc_choi* choi);

/* Full spectrum, descending; out holds dim^3 doubles. */
SC_API sc_status sc_choi_spectrum(const sc_choi* choi, double* out,
                                  size_t out_len);
SC_API sc_status sc_choi_trace_residual(const sc_choi* choi, double* out);

/* Commutator norm with R (x) R (x) conj(R) averaged over n_samples random
 * rotations drawn deterministically from the seed. */
SC_API sc_status sc_choi_covariance_residual(const sc_choi* choi,
                                             int n_samples,
                                             unsigned long long seed,
                                             double* out);
SC_API sc_status sc_choi_permutation_residual(const sc_choi* choi,
                                              double* out);

/* ---- rotation irrep decomposition ---------------------------------------- */

typedef struct sc_decomposition sc_decomposition;

SC_API sc_status sc_decompose(int dim, sc_decomposition** out);
SC_API void sc_decomposition_destroy(sc_decomposition* dec);
SC_API int sc_decomposition_count(const sc_decomposition* dec);

/* Labels of one subspace: doubled total spin, doubled intermediate spin of
 * the clone pair, dimension, and swap symmetry 'S' or 'A'. */
SC_API sc_status sc_decomposition_subspace(const sc_decomposition* dec,
                                           int index, int* twice_spin,
                                           int* twice_intermediate,
                                           int* dimension, char* symmetry);

/* Basis of one subspace, row-major dim^3 x subspace_dimension. */
SC_API sc_status sc_decomposition_basis(const sc_decomposition* dec, int index,
                                        double* out, size_t out_len);
SC_API sc_status sc_decomposition_completeness(const sc_decomposition* dec,
                                               double* out);

SC_API sc_status sc_clebsch_gordan(double j1, double j2, double j, double m1,
                                   double m2, double m, double* out);

/* Schur decomposition of a process matrix over the irrep subspaces.
 * coeff and mass are count x count row-major; coeff is zero on pairs of
 * inequivalent subspaces, mass holds ||Q_i^T P Q_j||_F for every pair.
 * forbidden_mass aggregates the mass on disallowed pairs and schur_residual
 * is the worst deviation of an allowed block from coeff * identity. */
SC_API sc_status sc_choi_blocks(const sc_choi* choi,
                                const sc_decomposition* dec, double* coeff,
                                double* mass, size_t len,
                                double* forbidden_mass,
                                double* schur_residual);

/* Fits f(d) = (alpha*d + beta)/(d + gamma) to a fidelity curve. */
SC_API sc_status sc_fit_rational(const double* dims, const double* fidelities,
                                 int count, double* alpha, double* beta,
                                 double* gamma, double* rms, int* converged);

#ifdef __cplusplus
}
#endif

#endif /* SPINCLONE_CAPI_H */
