/* qgeo — state-space geometry of parametric quantum evolution.
 *
 * C API of the shared library. All objects are opaque handles created and
 * destroyed through these functions; every fallible call returns a
 * qgeo_status and writes results through out-parameters. Complex data
 * crosses the boundary as interleaved doubles (re0, im0, re1, im1, ...).
 * On any non-OK status, qgeo_last_error_message() carries a thread-local
 * human-readable detail string.
 */
#ifndef QGEO_H
#define QGEO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define QGEO_API __declspec(dllexport)
#else
#  define QGEO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qgeo_status {
  QGEO_OK = 0,
  QGEO_ERR_INVALID_ARGUMENT = 1,
  QGEO_ERR_DIMENSION_MISMATCH = 2,
  QGEO_ERR_NOT_HERMITIAN = 3,
  QGEO_ERR_NOT_NORMALIZED = 4,
  QGEO_ERR_DEGENERATE_PAIR = 5,
  QGEO_ERR_RANGE = 6,
  QGEO_ERR_COINCIDENT_ENDPOINTS = 7,
  QGEO_ERR_STEP_TOO_COARSE = 8,
  QGEO_ERR_NUMERICAL = 9,
  QGEO_ERR_IO = 10
} qgeo_status;

QGEO_API const char* qgeo_status_name(qgeo_status status);
QGEO_API const char* qgeo_last_error_message(void);
QGEO_API const char* qgeo_version(void);

/* ---- context: unit convention (hbar) and numeric tolerances ---- */

typedef struct qgeo_context qgeo_context;

QGEO_API qgeo_status qgeo_context_create(qgeo_context** out);
QGEO_API void qgeo_context_destroy(qgeo_context* ctx);
QGEO_API qgeo_status qgeo_context_set_hbar(qgeo_context* ctx, double hbar);
QGEO_API double qgeo_context_hbar(const qgeo_context* ctx);
/* The PBUR bound h/4 = pi*hbar/2. */
QGEO_API double qgeo_context_bound(const qgeo_context* ctx);
/* name: norm | herm | saturation_rel | residual_abs | rank_cutoff */
QGEO_API qgeo_status qgeo_context_set_tolerance(qgeo_context* ctx, const char* name,
                                                double value);

/* ---- states ---- */

typedef struct qgeo_state qgeo_state;

/* re_im holds 2*dim doubles; the vector must be unit norm (within the norm
 * tolerance). qgeo_state_create_normalized rescales first. */
QGEO_API qgeo_status qgeo_state_create(const qgeo_context* ctx, size_t dim,
                                       const double* re_im, qgeo_state** out);
QGEO_API qgeo_status qgeo_state_create_normalized(const qgeo_context* ctx, size_t dim,
                                                  const double* re_im, qgeo_state** out);
QGEO_API qgeo_status qgeo_state_create_basis(const qgeo_context* ctx, size_t dim,
                                             size_t k, qgeo_state** out);
QGEO_API void qgeo_state_destroy(qgeo_state* state);
QGEO_API size_t qgeo_state_dim(const qgeo_state* state);
/* out must hold 2*dim doubles. */
QGEO_API qgeo_status qgeo_state_amplitudes(const qgeo_state* state, double* re_im_out);
/* <a|b>, conjugate-linear in a. */
QGEO_API qgeo_status qgeo_inner_product(const qgeo_state* a, const qgeo_state* b,
                                        double* re_out, double* im_out);
/* S0 = 2*arccos(|<a|b>|) in [0, pi]. */
QGEO_API qgeo_status qgeo_bargmann_angle(const qgeo_state* a, const qgeo_state* b,
                                         double* out);

/* ---- Hermitian generators ---- */

typedef struct qgeo_generator qgeo_generator;

/* re_im holds 2*dim*dim doubles, row-major. */
QGEO_API qgeo_status qgeo_generator_create(const qgeo_context* ctx, size_t dim,
                                           const double* re_im, qgeo_generator** out);
/* A = a0*I + a1*(|i><j| + |j><i|) in the standard basis; a1 > 0, i != j. */
QGEO_API qgeo_status qgeo_generator_create_split(const qgeo_context* ctx, size_t dim,
                                                 size_t i, size_t j, double a0, double a1,
                                                 qgeo_generator** out);
QGEO_API void qgeo_generator_destroy(qgeo_generator* gen);
QGEO_API size_t qgeo_generator_dim(const qgeo_generator* gen);
/* Ascending; out must hold dim doubles. */
QGEO_API qgeo_status qgeo_generator_eigenvalues(const qgeo_generator* gen, double* out);
QGEO_API qgeo_status qgeo_generator_is_degenerate(const qgeo_generator* gen, int* out);
QGEO_API qgeo_status qgeo_generator_eigenstate(const qgeo_generator* gen, size_t k,
                                               qgeo_state** out);
QGEO_API qgeo_status qgeo_expectation(const qgeo_generator* gen, const qgeo_state* psi,
                                      double* out);
QGEO_API qgeo_status qgeo_uncertainty(const qgeo_generator* gen, const qgeo_state* psi,
                                      double* out);
/* exp(-i*A*lambda/hbar)|psi0> via the spectral decomposition. */
QGEO_API qgeo_status qgeo_evolve_exact(const qgeo_context* ctx, const qgeo_generator* gen,
                                       const qgeo_state* psi0, double lambda,
                                       qgeo_state** out);

/* ---- sampled evolution paths ---- */

typedef struct qgeo_path qgeo_path;

/* Spectral propagation of psi0 onto a uniform grid of n >= 3 samples over
 * [lambda1, lambda2]. */
QGEO_API qgeo_status qgeo_path_sample(const qgeo_context* ctx, const qgeo_generator* gen,
                                      const qgeo_state* psi0, double lambda1,
                                      double lambda2, size_t n, qgeo_path** out);
/* Same grid, but integrated with fixed-step RK4 (renormalized each step):
 * the independent cross-check of the spectral route. Fails with
 * QGEO_ERR_STEP_TOO_COARSE when a step drifts the norm by more than 1e-6.
 * *drift_out (optional) receives the largest pre-renormalization drift. */
QGEO_API qgeo_status qgeo_path_sample_ode(const qgeo_context* ctx,
                                          const qgeo_generator* gen,
                                          const qgeo_state* psi0, double lambda1,
                                          double lambda2, size_t n, double* drift_out,
                                          qgeo_path** out);
QGEO_API void qgeo_path_destroy(qgeo_path* path);
QGEO_API size_t qgeo_path_n_samples(const qgeo_path* path);
QGEO_API qgeo_status qgeo_path_state(const qgeo_path* path, size_t k, qgeo_state** out);

typedef struct qgeo_geometry_report {
  double fs_length;          /* S  = (2/hbar) * integral of Delta A          */
  double geodesic_distance;  /* S0 between the endpoints                     */
  double transported_length; /* l, with S = 2l on resolved grids             */
  double residual_max;       /* geodesic residual at v = <Delta A>/hbar      */
  int gram_rank;
  double speed;              /* the v used for the residual                  */
  double quad_error_s;       /* Richardson estimates                         */
  double quad_error_l;
  double transport_defect;   /* max |<psibar|dpsibar/dlambda>| interior      */
} qgeo_geometry_report;

QGEO_API qgeo_status qgeo_path_geometry(const qgeo_context* ctx, const qgeo_path* path,
                                        const qgeo_generator* gen,
                                        qgeo_geometry_report* out);

typedef struct qgeo_pbur_report {
  double avg_uncertainty; /* <Delta A>                                    */
  double delta_lambda;    /* (pi/S0)(lambda2 - lambda1)                   */
  double product;
  double bound;           /* h/4 = pi*hbar/2                              */
  double ratio;           /* product / bound                              */
  int saturated;
  int bound_violated;     /* ratio < 1 - tol: numerical diagnostic        */
  double saturation_rel;  /* effective tolerance applied                  */
  double quad_error;
} qgeo_pbur_report;

QGEO_API qgeo_status qgeo_path_pbur(const qgeo_context* ctx, const qgeo_path* path,
                                    const qgeo_generator* gen, qgeo_pbur_report* out);

/* ---- intelligent-state families ---- */

typedef struct qgeo_family qgeo_family;

/* Equal superposition of eigenstates i, j (ascending order) of gen; the
 * eigenvalue pair must be non-degenerate. */
QGEO_API qgeo_status qgeo_family_horesh_mann(const qgeo_context* ctx,
                                             const qgeo_generator* gen, size_t i, size_t j,
                                             qgeo_family** out);
/* Split-generator family with strictly non-orthogonal endpoints. */
QGEO_API qgeo_status qgeo_family_nonorthogonal(const qgeo_context* ctx, size_t dim,
                                               size_t i, size_t j, double a0, double a1,
                                               qgeo_family** out);
QGEO_API void qgeo_family_destroy(qgeo_family* family);
/* Largest admissible endpoint; *inclusive_out tells whether it is attained. */
QGEO_API qgeo_status qgeo_family_lambda_sup(const qgeo_family* family, double* out,
                                            int* inclusive_out);
QGEO_API qgeo_status qgeo_family_state(const qgeo_family* family, double lambda,
                                       qgeo_state** out);
QGEO_API qgeo_status qgeo_family_sample(const qgeo_family* family, double lambda2,
                                        size_t n, qgeo_path** out);
QGEO_API qgeo_status qgeo_family_generator(const qgeo_family* family,
                                           qgeo_generator** out);

typedef struct qgeo_theorem_report {
  double residual_max;
  int gram_rank;
  double eq7_max_deviation;        /* vs the cos/sin geodesic reconstruction */
  int eq7_match;
  double endpoint_form_deviation;  /* vs the canonical initial data          */
  double fd_tangent_deviation;
  double transport_defect;
  double speed;
  double speed_defect;
} qgeo_theorem_report;

/* Verifies the geodesic theorem on [0, lambda2] with n samples. */
QGEO_API qgeo_status qgeo_family_verify(const qgeo_family* family, double lambda2,
                                        size_t n, qgeo_theorem_report* out);

typedef struct qgeo_counterexample_report {
  double ratio;
  double residual_max;
  int gram_rank;
  double lambda_star;
  double speed;
} qgeo_counterexample_report;

/* Equal three-eigenstate superposition under diag(0,1,3)*scale evolved to the
 * first fidelity minimum: rank 3, non-geodesic, ratio > 1. */
QGEO_API qgeo_status qgeo_counterexample_three_level(const qgeo_context* ctx, double scale,
                                                     qgeo_counterexample_report* out);

/* ---- command runner (the CLI is a thin wrapper over this) ---- */

/* config_json follows the documented RunConfig schema ("command" plus
 * optional fields). On success *report_out receives a malloc'd report string
 * (free with qgeo_string_free) and *exit_code_out is 0 (all checks pass) or
 * 1 (some check failed). Configuration errors return a non-OK status and
 * leave *report_out untouched; callers map those to exit code 2. */
QGEO_API qgeo_status qgeo_run(const char* config_json, char** report_out,
                              int* exit_code_out);
QGEO_API void qgeo_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* QGEO_H */
