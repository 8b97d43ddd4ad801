/* C interface to the sum-rule laboratory. All state lives behind opaque
 * handles; every function returns an sr_status, with outputs through
 * pointers. On failure sr_last_error() describes the problem (thread-local).
 */
#ifndef SUMRULE_H
#define SUMRULE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SR_API __declspec(dllexport)
#elif defined(__GNUC__)
#define SR_API __attribute__((visibility("default")))
#else
#define SR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sr_status {
  SR_OK = 0,
  SR_ERR_DOMAIN = 1,     /* argument outside the operation's domain */
  SR_ERR_VALIDATION = 2, /* object violates a structural invariant */
  SR_ERR_NUMERIC = 3,    /* breakdown or non-convergence */
  SR_ERR_ACCURACY = 4,   /* quadrature residual above tolerance */
  SR_ERR_NULLPTR = 5,
  SR_ERR_BUFFER = 6,     /* output buffer too small */
  SR_ERR_INTERNAL = 7
} sr_status;

SR_API const char* sr_status_name(sr_status s);
SR_API const char* sr_last_error(void);

/* ---- opaque handles ---- */
typedef struct sr_measure sr_measure;       /* scalar measure, line or circle */
typedef struct sr_jacobi sr_jacobi;         /* Jacobi coefficients */
typedef struct sr_rng sr_rng;               /* counter-based random stream */
typedef struct sr_qv sr_qv;                 /* moment polynomial Q_V */

/* ---- law catalog ---- */
SR_API sr_status sr_law_sc(sr_measure** out);
SR_API sr_status sr_law_mp(double tau, sr_measure** out);
SR_API sr_status sr_law_gw(double g, sr_measure** out);
SR_API sr_status sr_law_lebesgue_circle(sr_measure** out);
SR_API sr_status sr_law_spiked_sc(double theta, sr_measure** out);
SR_API sr_status sr_law_spiked_mp(double tau, double theta, sr_measure** out);
SR_API sr_status sr_law_spiked_gw(double g, double phi, sr_measure** out);
SR_API sr_status sr_law_meixner(double b, double c, int normalized, sr_measure** out);
SR_API void sr_measure_free(sr_measure* m);

/* ---- measure queries ---- */
SR_API int sr_measure_on_circle(const sr_measure* m);
SR_API sr_status sr_measure_mass(const sr_measure* m, double* mass);
SR_API sr_status sr_measure_support(const sr_measure* m, double* lo, double* hi);
SR_API sr_status sr_measure_density(const sr_measure* m, double x, double* value);
SR_API sr_status sr_measure_atom_count(const sr_measure* m, int* count);
SR_API sr_status sr_measure_atom(const sr_measure* m, int index, double* location,
                          double* mass);
SR_API sr_status sr_moments_line(const sr_measure* m, int K, double* out);
SR_API sr_status sr_moments_circle(const sr_measure* m, int K, double* out_re,
                            double* out_im);
SR_API sr_status sr_affine_map(const sr_measure* m, double r, double s,
                        sr_measure** out);

/* classification and atoms of the free Meixner family */
SR_API sr_status sr_meixner_classify(double b, double c, char* buf, size_t buflen);
SR_API sr_status sr_meixner_atoms(double b, double c, double* locations,
                           double* masses, int capacity, int* count);

/* ---- Jacobi coefficients ---- */
SR_API sr_status sr_jacobi_create(const double* b, int nb, const double* a, int na,
                           sr_jacobi** out);
SR_API sr_status sr_jacobi_create_tail(const double* b, int nb, const double* a,
                                int na, double tail_b, double tail_a,
                                sr_jacobi** out);
SR_API void sr_jacobi_free(sr_jacobi* j);
SR_API sr_status sr_jacobi_size(const sr_jacobi* j, int* prefix, int* has_tail);
SR_API sr_status sr_jacobi_entry(const sr_jacobi* j, int k, double* b, double* a);
SR_API sr_status sr_lanczos(const double* points, const double* weights, int npoints,
                     int depth, sr_jacobi** out);
SR_API sr_status sr_golub_welsch(const sr_jacobi* j, int n, double* points,
                          double* weights);
SR_API sr_status sr_jacobi_moments(const sr_jacobi* j, int K, double* out);
SR_API sr_status sr_jacobi_affine(const sr_jacobi* j, double r, double s,
                           sr_jacobi** out);
SR_API sr_status sr_z_decompose(const sr_jacobi* j, double* z, int capacity,
                         int* count);
SR_API sr_status sr_z_compose(const double* z, int nz, sr_jacobi** out);

/* discretization of a line law on n Chebyshev nodes plus its atoms */
SR_API sr_status sr_discretize(const sr_measure* m, int nodes, double* points,
                        double* weights, int capacity, int* count);

/* ---- Verblunsky / OPUC ---- */
SR_API sr_status sr_gw_alpha(double g, int n, double* re, double* im);
SR_API sr_status sr_schur_verblunsky(const double* c_re, const double* c_im, int K,
                              double* a_re, double* a_im, int* count,
                              int* finite);
SR_API sr_status sr_verblunsky_moments(const double* a_re, const double* a_im, int n,
                                int K, double* c_re, double* c_im);
SR_API sr_status sr_caratheodory(const sr_measure* m, double z_re, double z_im,
                          double* f_re, double* f_im);
SR_API sr_status sr_aleksandrov_measure(const sr_measure* m, double phi,
                                 sr_measure** out);

/* ---- rate functions ---- */
SR_API double sr_g_func(double x);
SR_API double sr_f_hermite(double x);
SR_API sr_status sr_f_laguerre(double x, double tau, double* out);
SR_API double sr_kl_gw_lambda0(double g);
SR_API sr_status sr_reversed_kl(const sr_measure* ref, const sr_measure* mu,
                         double* out);
SR_API sr_status sr_rate_meas_hermite(const sr_measure* mu, double* out);
SR_API sr_status sr_rate_meas_laguerre(const sr_measure* mu, double tau, double* out);
SR_API sr_status sr_rate_meas_gw(const sr_measure* mu, double g, double* out);
SR_API sr_status sr_rate_coeff_hermite(const sr_jacobi* j, double* out);
SR_API sr_status sr_rate_coeff_gw(const double* a_re, const double* a_im, int n,
                           double g, double* out);
SR_API sr_status sr_rate_spiked_hermite(const sr_measure* mu, double theta,
                                 double* out);
SR_API sr_status sr_rate_spiked_laguerre(const sr_measure* mu, double tau,
                                  double theta, double* out);
SR_API sr_status sr_rate_spiked_gw(const sr_measure* mu, double g, double phi,
                            double* out);

/* ---- sum-rule audits ---- */
#define SR_AUDIT_MAX_OUTLIERS 8
typedef struct sr_audit_report {
  double measure_side;
  double coeff_side;
  double kl_term;
  double discrepancy;
  int n_outliers;
  double outlier_location[SR_AUDIT_MAX_OUTLIERS];
  double outlier_value[SR_AUDIT_MAX_OUTLIERS];
} sr_audit_report;

SR_API sr_status sr_audit_hermite_spiked(double theta, sr_audit_report* out);
SR_API sr_status sr_audit_laguerre_spiked(double tau, double theta,
                                   sr_audit_report* out);
SR_API sr_status sr_audit_meixner(double b, double c, sr_audit_report* out);
SR_API sr_status sr_audit_szego_gw(double g, int terms, sr_audit_report* out);
SR_API sr_status sr_audit_gw_lambda0(double g, sr_audit_report* out);

/* ---- random ensembles ---- */
SR_API sr_status sr_rng_create(uint64_t seed, uint64_t stream, sr_rng** out);
SR_API void sr_rng_free(sr_rng* r);
SR_API sr_status sr_sample_spiked_gue(int n, double theta, sr_rng* rng,
                               sr_jacobi** out);
SR_API sr_status sr_sample_spiked_lue(int n, int N, double theta, sr_rng* rng,
                               sr_jacobi** out);
SR_API sr_status sr_sample_cue(int n, sr_rng* rng, double* a_re, double* a_im);
/* Metropolis sampler for the Gross-Witten coefficient law; acceptance rate
 * and m_1 of the final state are returned alongside the coefficients. */
SR_API sr_status sr_sample_gw(int n, double g, int sweeps, sr_rng* rng, double* a_re,
                       double* a_im, double* acceptance);
SR_API sr_status sr_spectral_measure(const sr_jacobi* j, int n, double* points,
                              double* weights);
SR_API sr_status sr_spectral_measure_verblunsky(const double* a_re,
                                         const double* a_im, int n,
                                         double* angles, double* weights);

/* ---- Q_V moment polynomials ---- */
SR_API sr_status sr_qv_reduce(const double* v, int degree, sr_qv** out);
SR_API void sr_qv_free(sr_qv* q);
SR_API int sr_qv_term_count(const sr_qv* q);
SR_API sr_status sr_qv_term(const sr_qv* q, int index, double* coeff, int* theta_pow,
                     int* moment_js, int capacity, int* n_moments);
SR_API sr_status sr_qv_format(const sr_qv* q, char* buf, size_t buflen);
/* direct-trace check on `trials` random Hermitian matrices of size `size` */
SR_API sr_status sr_qv_check_random(const sr_qv* q, const double* v, int degree,
                             int trials, int size, uint64_t seed,
                             double* max_residual);

#ifdef __cplusplus
}
#endif

#endif /* SUMRULE_H */
