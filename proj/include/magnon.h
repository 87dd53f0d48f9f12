/* C API of the magnon-walk core library.
 *
 * All functions return MW_OK (0) on success or a negative mw_status code;
 * mw_strerror gives the generic description, mw_last_error the detailed
 * message of the most recent failure on the calling thread.
 *
 * Conventions: sites are addressed by coordinates (m, n) with m in [0, nx),
 * n in [0, ny); flattened arrays are indexed n*nx + m. Couplings must be
 * ferromagnetic (j1 <= 0, j2 <= 0, not both zero). Time is in units of
 * hbar/|J1| = 1.
 */
#ifndef MAGNON_H
#define MAGNON_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mw_model mw_model;     /* couplings + periodic lattice */
typedef struct mw_circuit mw_circuit; /* qubit gate sequence */

typedef enum mw_status {
    MW_OK = 0,
    MW_ERR_INVALID_ARGUMENT = -1,
    MW_ERR_TOO_LARGE = -2,
    MW_ERR_NEVER_DECLINES = -3,
    MW_ERR_DEGENERATE_FIT = -4,
    MW_ERR_EMPTY_FRAME = -5,
    MW_ERR_UNSUPPORTED_GATE = -6,
    MW_ERR_PARSE = -7,
    MW_ERR_DIMENSION_MISMATCH = -8,
    MW_ERR_BUFFER_TOO_SMALL = -9,
    MW_ERR_INTERNAL = -10
} mw_status;

typedef enum mw_direction { MW_DIRECTION_AXIAL = 0, MW_DIRECTION_DIAGONAL = 1 } mw_direction;

const char* mw_version(void);
const char* mw_strerror(int status);
const char* mw_last_error(void); /* thread-local detail of the last failure */

/* ---- model ---- */

int mw_model_create(double j1, double j2, int nx, int ny, mw_model** out);
void mw_model_free(mw_model* model);
int mw_model_sites(const mw_model* model, int* out);

/* ---- lattice core ---- */

double mw_gamma1(double kx, double ky);
double mw_gamma2(double kx, double ky);
int mw_dispersion(const mw_model* model, double kx, double ky, double* out);
int mw_group_velocity(const mw_model* model, double kx, double ky, double* vx, double* vy);
/* omega over the full k grid: out[q*nx + p] for k = (2 pi p/nx, 2 pi q/ny) */
int mw_dispersion_grid(const mw_model* model, double* out, size_t cap);

/* ---- quantum walk ---- */

int mw_wavefunction(const mw_model* model, int dx, int dy, double t, double* re, double* im);
int mw_density(const mw_model* model, int dx, int dy, double t, double* out);
/* xi over all sites at one time (transform fast path), out[n*nx + m] */
int mw_density_field(const mw_model* model, double t, int r0_m, int r0_n, double* out,
                     size_t cap);
/* dense spin-exchange matrix, out[row*N + col], N = nx*ny */
int mw_hop_matrix(const mw_model* model, double* out, size_t cap);
/* largest |r| along the direction with field > threshold * max(field) */
int mw_front_radius(const mw_model* model, const double* field, int r0_m, int r0_n,
                    mw_direction direction, double threshold, double* out);
/* |psi(r,t)|^2 via eigendecomposition of the hop matrix (oracle path) */
int mw_single_magnon_density(const mw_model* model, int r0_m, int r0_n, double t, double* out,
                             size_t cap);

/* ---- OTOC ---- */

int mw_omega_pair(const mw_model* model, int dx, int dy, double t, double* re1, double* im1,
                  double* re2, double* im2);
int mw_otoc(const mw_model* model, int dx, int dy, double t, double* out);
int mw_otoc_series(const mw_model* model, int dx, int dy, const double* times, size_t ntimes,
                   double* out);
/* first time F < 1-epsilon on a sampled series, linear interpolation */
int mw_detect_td(const double* times, const double* values, size_t n, double epsilon,
                 double* out);

typedef struct mw_td_fit {
    double slope;
    double intercept;
    double v_b;
    size_t points; /* count of (r, td) pairs used by the fit */
} mw_td_fit;

/* distances are Euclidean separations |r| (diagonal: multiples of sqrt(2));
 * td_out (optional, cap >= ndist) receives t_d per kept distance */
int mw_butterfly_velocity(const mw_model* model, mw_direction direction, const double* distances,
                          size_t ndist, double epsilon, double fit_min, double fit_max,
                          double t_max, double dt, mw_td_fit* fit, double* r_out, double* td_out,
                          size_t out_cap);
int mw_velocity_oracle(const mw_model* model, mw_direction direction, double* out);

/* ---- exact diagonalization oracles (<= 14 sites) ---- */

int mw_ed_density_field(const mw_model* model, int r0_m, int r0_n, double t, double* out,
                        size_t cap);
int mw_ed_otoc(const mw_model* model, int r0_m, int r0_n, int dx, int dy, double t, double* out);
int mw_ed_otoc_series(const mw_model* model, int r0_m, int r0_n, int dx, int dy,
                      const double* times, size_t ntimes, double* out);

/* ---- Trotterized circuit (<= 20 qubits) ---- */

/* prep at flip_site (-1: none) + ceil(t/max_delta_t) symmetric split steps */
int mw_trotter_circuit_create(int nqubits, double total_t, double max_delta_t, double j1,
                              int periodic, int flip_site, mw_circuit** out);
void mw_circuit_free(mw_circuit* circuit);
int mw_circuit_qubits(const mw_circuit* circuit, int* out);
int mw_circuit_gate_count(const mw_circuit* circuit, size_t* out);
/* run from |0...0> through all gates, then <n_i> per qubit */
int mw_circuit_run_densities(const mw_circuit* circuit, double* out, size_t cap);
/* exact reference: chain Hamiltonian evolution of the single flip */
int mw_chain_exact_densities(int nqubits, double j1, int periodic, int flip_site, double t,
                             double* out, size_t cap);
/* OpenQASM 2.0 text; free with mw_string_free */
int mw_circuit_to_qasm(const mw_circuit* circuit, char** out);
void mw_string_free(char* text);
/* parse OpenQASM 2.0 (the emitted subset) and return <n_i> of the final state */
int mw_qasm_densities(const char* text, double* out, size_t cap, int* nqubits);

#ifdef __cplusplus
}
#endif

#endif /* MAGNON_H */
