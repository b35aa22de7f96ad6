/* entdyn.h — C interface of the entdyn shared library.
 *
 * Simulates the entanglement dynamics of two two-level atoms coupled to
 * separate electromagnetic cavities, one of which carries light-cone
 * fluctuations of strength sigma2. All quantities are in natural units
 * (hbar = c = 1).
 *
 * Every function returns an entdyn_status code; results go through output
 * pointers. Handles are opaque and must be released with the matching
 * destroy call. entdyn_last_error() describes the most recent failure on
 * the calling thread.
 */
#ifndef ENTDYN_H
#define ENTDYN_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum entdyn_status {
    ENTDYN_OK = 0,
    ENTDYN_ERR_INVALID_ARGUMENT = 1,
    ENTDYN_ERR_REGIME = 2,  /* physics-regime abort (e.g. singlet beyond critical disorder) */
    ENTDYN_ERR_NUMERIC = 3,
    ENTDYN_ERR_UNPHYSICAL = 4
} entdyn_status;

typedef enum entdyn_regime {
    ENTDYN_REGIME_CP_VALID = 0,
    ENTDYN_REGIME_EXTENDED = 1,
    ENTDYN_REGIME_OUT_OF_MODEL = 2
} entdyn_regime;

typedef enum entdyn_method {
    ENTDYN_METHOD_RK4 = 0,
    ENTDYN_METHOD_CLOSED_FORM = 1
} entdyn_method;

/* Physical configuration: transition frequency, squared dipole norms of the
 * two atoms, and the disorder strength of the second cavity. */
typedef struct entdyn_model entdyn_model;

/* A sampled trajectory with per-sample diagnostics. */
typedef struct entdyn_trajectory entdyn_trajectory;

typedef struct entdyn_sample {
    double tau;
    double bloch[16]; /* row-major rho_{mu nu}, rho_00 = 1 */
    double concurrence;
    int concurrence_clamped;
    double trace_err;
    double herm_err;
    double min_eig;
} entdyn_sample;

const char* entdyn_status_string(int status);
/* Detail message of the last failure on this thread; empty string if none. */
const char* entdyn_last_error(void);

int entdyn_model_create(double omega0, double p1_sq, double p2_sq, double sigma2,
                        entdyn_model** out);
void entdyn_model_destroy(entdyn_model* model);

/* Kossakowski decay rates A11 (empty cavity) and A22 (disordered cavity). */
int entdyn_model_coefficients(const entdyn_model* model, double* a11, double* a22);
int entdyn_model_regime(const entdyn_model* model, int* regime);

/* Stateless parameter queries. */
int entdyn_critical_sigma(double omega0, double* out);     /* 12 pi / omega0^3 */
int entdyn_cp_bound(double omega0, double* out);           /* 6 pi / omega0^3 */
int entdyn_classify_regime(double omega0, double sigma2, int* regime);

/* Closed-form concurrence of the evolved singlet, exp(-2 tau (A11 + A22)).
 * Fails with ENTDYN_ERR_REGIME when the rate sum is negative. */
int entdyn_singlet_concurrence(const entdyn_model* model, double tau, double* out);

/* Closed-form Bloch matrix of an evolved Werner state. */
int entdyn_evolve_werner(const entdyn_model* model, double kappa, double tau,
                         double bloch_out[16]);

/* Wootters concurrence of an arbitrary Bloch state (rho_00 must be 1). */
int entdyn_concurrence(const double bloch[16], double* value, int* clamped);

/* Full trajectory run from the Werner state `kappa`. Applies the regime
 * policy: kappa = 1 with sigma2 above critical fails with ENTDYN_ERR_REGIME;
 * other regime violations proceed with warnings. */
int entdyn_model_run(const entdyn_model* model, double kappa, double tau_max, double dt,
                     long stride, int method, entdyn_trajectory** out);

int entdyn_trajectory_size(const entdyn_trajectory* traj, size_t* count);
int entdyn_trajectory_sample(const entdyn_trajectory* traj, size_t index,
                             entdyn_sample* out);
int entdyn_trajectory_warning_count(const entdyn_trajectory* traj, size_t* count);
const char* entdyn_trajectory_warning(const entdyn_trajectory* traj, size_t index);
void entdyn_trajectory_destroy(entdyn_trajectory* traj);

/* Runs the full verification suite. The callback receives one line per check
 * (measured error vs tolerance); pass a NULL callback to run silently.
 * Returns ENTDYN_OK if every check passed, ENTDYN_ERR_NUMERIC otherwise. */
typedef void (*entdyn_verify_callback)(const char* name, double measured, double tolerance,
                                       int pass, void* user);
int entdyn_verify_run(entdyn_verify_callback callback, void* user);

#ifdef __cplusplus
}
#endif

#endif /* ENTDYN_H */
