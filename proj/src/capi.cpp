#include "magnon.h"

#include <cstring>
#include <string>

#include "magnon/circuit.hpp"
#include "magnon/ed.hpp"
#include "magnon/errors.hpp"
#include "magnon/lattice.hpp"
#include "magnon/otoc.hpp"
#include "magnon/qasm.hpp"
#include "magnon/walk.hpp"

using namespace magnon;

struct mw_model {
    Couplings params;
    Lattice lattice;
};

struct mw_circuit {
    Circuit circuit;
};

namespace {

thread_local std::string g_last_error;

int set_error(int status, const std::string& message) {
    g_last_error = message;
    return status;
}

int status_from(const Error& e) {
    switch (e.code()) {
        case Errc::invalid_argument: return MW_ERR_INVALID_ARGUMENT;
        case Errc::too_large: return MW_ERR_TOO_LARGE;
        case Errc::never_declines: return MW_ERR_NEVER_DECLINES;
        case Errc::degenerate_fit: return MW_ERR_DEGENERATE_FIT;
        case Errc::empty_frame: return MW_ERR_EMPTY_FRAME;
        case Errc::unsupported_gate: return MW_ERR_UNSUPPORTED_GATE;
        case Errc::parse_error: return MW_ERR_PARSE;
        case Errc::dimension_mismatch: return MW_ERR_DIMENSION_MISMATCH;
    }
    return MW_ERR_INTERNAL;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const Error& e) {
        return set_error(status_from(e), e.what());
    } catch (const std::exception& e) {
        return set_error(MW_ERR_INTERNAL, e.what());
    } catch (...) {
        return set_error(MW_ERR_INTERNAL, "unknown error");
    }
}

int require(bool ok, const char* message) {
    return ok ? MW_OK : set_error(MW_ERR_INVALID_ARGUMENT, message);
}

int check_cap(size_t cap, size_t needed) {
    if (cap < needed) return set_error(MW_ERR_BUFFER_TOO_SMALL, "output buffer too small");
    return MW_OK;
}

FrontDirection to_direction(mw_direction d) {
    return d == MW_DIRECTION_AXIAL ? FrontDirection::axial : FrontDirection::diagonal;
}

}  // namespace

extern "C" {

const char* mw_version(void) { return "1.0.0"; }

const char* mw_strerror(int status) {
    switch (status) {
        case MW_OK: return "ok";
        case MW_ERR_INVALID_ARGUMENT: return "invalid argument";
        case MW_ERR_TOO_LARGE: return "problem size exceeds cap";
        case MW_ERR_NEVER_DECLINES: return "series never declines";
        case MW_ERR_DEGENERATE_FIT: return "degenerate fit";
        case MW_ERR_EMPTY_FRAME: return "empty frame";
        case MW_ERR_UNSUPPORTED_GATE: return "unsupported gate kind";
        case MW_ERR_PARSE: return "parse error";
        case MW_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
        case MW_ERR_BUFFER_TOO_SMALL: return "output buffer too small";
        case MW_ERR_INTERNAL: return "internal error";
        default: return "unknown status";
    }
}

const char* mw_last_error(void) { return g_last_error.c_str(); }

int mw_model_create(double j1, double j2, int nx, int ny, mw_model** out) {
    if (int rc = require(out != nullptr, "out must not be null")) return rc;
    return guarded([&] {
        if (j1 > 0.0 || j2 > 0.0)
            return set_error(MW_ERR_INVALID_ARGUMENT,
                             "ferromagnetic regime requires j1 <= 0 and j2 <= 0");
        if (j1 == 0.0 && j2 == 0.0)
            return set_error(MW_ERR_INVALID_ARGUMENT, "j1 and j2 must not both be zero");
        *out = new mw_model{Couplings{j1, j2}, Lattice(nx, ny)};
        return MW_OK;
    });
}

void mw_model_free(mw_model* model) { delete model; }

int mw_model_sites(const mw_model* model, int* out) {
    if (int rc = require(model && out, "null argument")) return rc;
    *out = model->lattice.sites();
    return MW_OK;
}

double mw_gamma1(double kx, double ky) { return gamma1(kx, ky); }
double mw_gamma2(double kx, double ky) { return gamma2(kx, ky); }

int mw_dispersion(const mw_model* model, double kx, double ky, double* out) {
    if (int rc = require(model && out, "null argument")) return rc;
    *out = dispersion(kx, ky, model->params);
    return MW_OK;
}

int mw_group_velocity(const mw_model* model, double kx, double ky, double* vx, double* vy) {
    if (int rc = require(model && vx && vy, "null argument")) return rc;
    Velocity v = group_velocity(kx, ky, model->params);
    *vx = v.vx;
    *vy = v.vy;
    return MW_OK;
}

int mw_dispersion_grid(const mw_model* model, double* out, size_t cap) {
    if (int rc = require(model && out, "null argument")) return rc;
    if (int rc = check_cap(cap, static_cast<size_t>(model->lattice.sites()))) return rc;
    return guarded([&] {
        KGrid grid(model->lattice);
        for (std::size_t i = 0; i < grid.size(); ++i)
            out[i] = dispersion(grid[i].kx, grid[i].ky, model->params);
        return MW_OK;
    });
}

int mw_wavefunction(const mw_model* model, int dx, int dy, double t, double* re, double* im) {
    if (int rc = require(model && re && im, "null argument")) return rc;
    return guarded([&] {
        auto psi = wavefunction({dx, dy}, t, model->params, model->lattice);
        *re = psi.real();
        *im = psi.imag();
        return MW_OK;
    });
}

int mw_density(const mw_model* model, int dx, int dy, double t, double* out) {
    if (int rc = require(model && out, "null argument")) return rc;
    return guarded([&] {
        *out = density({dx, dy}, t, model->params, model->lattice);
        return MW_OK;
    });
}

int mw_density_field(const mw_model* model, double t, int r0_m, int r0_n, double* out,
                     size_t cap) {
    if (int rc = require(model && out, "null argument")) return rc;
    if (int rc = check_cap(cap, static_cast<size_t>(model->lattice.sites()))) return rc;
    return guarded([&] {
        auto frame = density_field_fft(t, model->params, model->lattice,
                                       model->lattice.site_index(r0_m, r0_n));
        std::memcpy(out, frame.values.data(), frame.values.size() * sizeof(double));
        return MW_OK;
    });
}

int mw_hop_matrix(const mw_model* model, double* out, size_t cap) {
    if (int rc = require(model && out, "null argument")) return rc;
    const size_t n = static_cast<size_t>(model->lattice.sites());
    if (int rc = check_cap(cap, n * n)) return rc;
    return guarded([&] {
        Eigen::MatrixXd dense = hop_matrix(model->params, model->lattice).dense();
        for (size_t row = 0; row < n; ++row)
            for (size_t col = 0; col < n; ++col)
                out[row * n + col] = dense(static_cast<Eigen::Index>(row),
                                           static_cast<Eigen::Index>(col));
        return MW_OK;
    });
}

int mw_front_radius(const mw_model* model, const double* field, int r0_m, int r0_n,
                    mw_direction direction, double threshold, double* out) {
    if (int rc = require(model && field && out, "null argument")) return rc;
    return guarded([&] {
        DensityField frame;
        frame.nx = model->lattice.nx();
        frame.ny = model->lattice.ny();
        frame.origin = model->lattice.site_index(r0_m, r0_n);
        frame.values.assign(field, field + model->lattice.sites());
        *out = front_radius(frame, to_direction(direction), threshold);
        return MW_OK;
    });
}

int mw_single_magnon_density(const mw_model* model, int r0_m, int r0_n, double t, double* out,
                             size_t cap) {
    if (int rc = require(model && out, "null argument")) return rc;
    const size_t n = static_cast<size_t>(model->lattice.sites());
    if (int rc = check_cap(cap, n)) return rc;
    return guarded([&] {
        SingleMagnonEvolver evolver(hop_matrix(model->params, model->lattice));
        auto psi = evolver.evolve_delta(model->lattice.site_index(r0_m, r0_n), t);
        for (size_t i = 0; i < n; ++i)
            out[i] = std::norm(psi.amplitudes(static_cast<Eigen::Index>(i)));
        return MW_OK;
    });
}

int mw_omega_pair(const mw_model* model, int dx, int dy, double t, double* re1, double* im1,
                  double* re2, double* im2) {
    if (int rc = require(model && re1 && im1 && re2 && im2, "null argument")) return rc;
    return guarded([&] {
        auto [o1, o2] = omega_pair({dx, dy}, t, model->params, model->lattice);
        *re1 = o1.real();
        *im1 = o1.imag();
        *re2 = o2.real();
        *im2 = o2.imag();
        return MW_OK;
    });
}

int mw_otoc(const mw_model* model, int dx, int dy, double t, double* out) {
    if (int rc = require(model && out, "null argument")) return rc;
    return guarded([&] {
        *out = otoc({dx, dy}, t, model->params, model->lattice);
        return MW_OK;
    });
}

int mw_otoc_series(const mw_model* model, int dx, int dy, const double* times, size_t ntimes,
                   double* out) {
    if (int rc = require(model && times && out && ntimes > 0, "null argument")) return rc;
    return guarded([&] {
        auto series = otoc_series({dx, dy}, std::vector<double>(times, times + ntimes),
                                  model->params, model->lattice);
        std::memcpy(out, series.values.data(), series.values.size() * sizeof(double));
        return MW_OK;
    });
}

int mw_detect_td(const double* times, const double* values, size_t n, double epsilon,
                 double* out) {
    if (int rc = require(times && values && out && n > 0, "null argument")) return rc;
    return guarded([&] {
        OtocSeries series;
        series.times.assign(times, times + n);
        series.values.assign(values, values + n);
        *out = detect_td(series, epsilon);
        return MW_OK;
    });
}

int mw_butterfly_velocity(const mw_model* model, mw_direction direction, const double* distances,
                          size_t ndist, double epsilon, double fit_min, double fit_max,
                          double t_max, double dt, mw_td_fit* fit, double* r_out, double* td_out,
                          size_t out_cap) {
    if (int rc = require(model && distances && fit && ndist > 0, "null argument")) return rc;
    return guarded([&] {
        ButterflyConfig config{epsilon, fit_min, fit_max, t_max, dt};
        TdLine line = butterfly_velocity(model->params, model->lattice, to_direction(direction),
                                         std::vector<double>(distances, distances + ndist),
                                         config);
        fit->slope = line.slope;
        fit->intercept = line.intercept;
        fit->v_b = line.v_b;
        fit->points = line.points.size();
        if (r_out || td_out) {
            if (int rc = check_cap(out_cap, line.points.size())) return rc;
            for (std::size_t i = 0; i < line.points.size(); ++i) {
                if (r_out) r_out[i] = line.points[i].r;
                if (td_out) td_out[i] = line.points[i].td;
            }
        }
        return MW_OK;
    });
}

int mw_velocity_oracle(const mw_model* model, mw_direction direction, double* out) {
    if (int rc = require(model && out, "null argument")) return rc;
    return guarded([&] {
        *out = velocity_oracle(model->params, to_direction(direction));
        return MW_OK;
    });
}

int mw_ed_density_field(const mw_model* model, int r0_m, int r0_n, double t, double* out,
                        size_t cap) {
    if (int rc = require(model && out, "null argument")) return rc;
    if (int rc = check_cap(cap, static_cast<size_t>(model->lattice.sites()))) return rc;
    return guarded([&] {
        auto frame = ed_density(model->params, model->lattice,
                                model->lattice.site_index(r0_m, r0_n), t);
        std::memcpy(out, frame.values.data(), frame.values.size() * sizeof(double));
        return MW_OK;
    });
}

int mw_ed_otoc(const mw_model* model, int r0_m, int r0_n, int dx, int dy, double t, double* out) {
    if (int rc = require(model && out, "null argument")) return rc;
    return guarded([&] {
        *out = ed_otoc(model->params, model->lattice, model->lattice.site_index(r0_m, r0_n),
                       {dx, dy}, t);
        return MW_OK;
    });
}

int mw_ed_otoc_series(const mw_model* model, int r0_m, int r0_n, int dx, int dy,
                      const double* times, size_t ntimes, double* out) {
    if (int rc = require(model && times && out && ntimes > 0, "null argument")) return rc;
    return guarded([&] {
        FullEd ed(model->params, model->lattice);
        auto values = ed.otoc_series(model->lattice.site_index(r0_m, r0_n), {dx, dy},
                                     std::span<const double>(times, ntimes));
        std::memcpy(out, values.data(), values.size() * sizeof(double));
        return MW_OK;
    });
}

int mw_trotter_circuit_create(int nqubits, double total_t, double max_delta_t, double j1,
                              int periodic, int flip_site, mw_circuit** out) {
    if (int rc = require(out != nullptr, "out must not be null")) return rc;
    return guarded([&] {
        *out = new mw_circuit{
            build_walk_circuit(nqubits, total_t, max_delta_t, j1, flip_site, periodic != 0)};
        return MW_OK;
    });
}

void mw_circuit_free(mw_circuit* circuit) { delete circuit; }

int mw_circuit_qubits(const mw_circuit* circuit, int* out) {
    if (int rc = require(circuit && out, "null argument")) return rc;
    *out = circuit->circuit.qubits;
    return MW_OK;
}

int mw_circuit_gate_count(const mw_circuit* circuit, size_t* out) {
    if (int rc = require(circuit && out, "null argument")) return rc;
    *out = circuit->circuit.gates.size();
    return MW_OK;
}

int mw_circuit_run_densities(const mw_circuit* circuit, double* out, size_t cap) {
    if (int rc = require(circuit && out, "null argument")) return rc;
    if (int rc = check_cap(cap, static_cast<size_t>(circuit->circuit.qubits))) return rc;
    return guarded([&] {
        auto final_state = run(circuit->circuit, Statevector(circuit->circuit.qubits));
        auto densities = measure_densities(final_state);
        std::memcpy(out, densities.data(), densities.size() * sizeof(double));
        return MW_OK;
    });
}

int mw_chain_exact_densities(int nqubits, double j1, int periodic, int flip_site, double t,
                             double* out, size_t cap) {
    if (int rc = require(out != nullptr, "null argument")) return rc;
    if (int rc = check_cap(cap, static_cast<size_t>(nqubits < 0 ? 0 : nqubits))) return rc;
    return guarded([&] {
        auto densities = chain_exact_densities(nqubits, j1, periodic != 0, flip_site, t);
        std::memcpy(out, densities.data(), densities.size() * sizeof(double));
        return MW_OK;
    });
}

int mw_circuit_to_qasm(const mw_circuit* circuit, char** out) {
    if (int rc = require(circuit && out, "null argument")) return rc;
    return guarded([&] {
        std::string text = export_qasm(circuit->circuit);
        char* buffer = new char[text.size() + 1];
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *out = buffer;
        return MW_OK;
    });
}

void mw_string_free(char* text) { delete[] text; }

int mw_qasm_densities(const char* text, double* out, size_t cap, int* nqubits) {
    if (int rc = require(text && out, "null argument")) return rc;
    return guarded([&] {
        Circuit circuit = parse_qasm(text);
        if (int rc = check_cap(cap, static_cast<size_t>(circuit.qubits))) return rc;
        auto final_state = run(circuit, Statevector(circuit.qubits));
        auto densities = measure_densities(final_state);
        std::memcpy(out, densities.data(), densities.size() * sizeof(double));
        if (nqubits) *nqubits = circuit.qubits;
        return MW_OK;
    });
}

}  // extern "C"
