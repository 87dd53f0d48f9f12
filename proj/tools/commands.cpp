#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include "magnon.h"

namespace mwcli {

namespace {

struct ModelDeleter {
    void operator()(mw_model* m) const { mw_model_free(m); }
};
using ModelPtr = std::unique_ptr<mw_model, ModelDeleter>;

struct CircuitDeleter {
    void operator()(mw_circuit* c) const { mw_circuit_free(c); }
};
using CircuitPtr = std::unique_ptr<mw_circuit, CircuitDeleter>;

[[nodiscard]] int fail(int exit_code, const std::string& message) {
    std::fprintf(stderr, "error: %s\n", message.c_str());
    return exit_code;
}

int api_exit_code(int status) {
    switch (status) {
        case MW_ERR_INVALID_ARGUMENT:
        case MW_ERR_TOO_LARGE:
        case MW_ERR_BUFFER_TOO_SMALL:
            return kExitUsage;
        default:
            return kExitTolerance;
    }
}

[[nodiscard]] int fail_api(int status) {
    std::fprintf(stderr, "error: %s (%s)\n", mw_strerror(status), mw_last_error());
    return api_exit_code(status);
}

ModelPtr make_model(double j1, double j2, int nx, int ny, int& status) {
    mw_model* raw = nullptr;
    status = mw_model_create(j1, j2, nx, ny, &raw);
    return ModelPtr(raw);
}

bool prepare_out_dir(const std::string& dir, std::string& error) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        error = "cannot create output directory '" + dir + "': " + ec.message();
        return false;
    }
    return true;
}

std::string time_label(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", t);
    return buf;
}

nlohmann::json params_json(double j1, double j2, int nx, int ny) {
    nlohmann::json j;
    j["j1"] = j1;
    j["j2"] = j2;
    j["nx"] = nx;
    j["ny"] = ny;
    return j;
}

std::vector<double> time_grid(double t0, double t1, double dt) {
    std::vector<double> times;
    for (double t = t0; t <= t1 + 1e-12; t += dt) times.push_back(t);
    return times;
}

}  // namespace

int cmd_dispersion(const CommonOptions& opt) {
    int status = MW_OK;
    ModelPtr model = make_model(opt.j1, opt.j2, opt.nx, opt.ny, status);
    if (status != MW_OK) return fail_api(status);
    std::string err;
    if (!prepare_out_dir(opt.out_dir, err)) return fail(kExitIo, err);

    const int sites = opt.nx * opt.ny;
    std::vector<double> omega(static_cast<std::size_t>(sites));
    if ((status = mw_dispersion_grid(model.get(), omega.data(), omega.size())) != MW_OK)
        return fail_api(status);

    Table table;
    table.columns = {"kx", "ky", "omega", "gamma1", "gamma2"};
    for (int q = 0; q < opt.ny; ++q) {
        double ky = 2.0 * M_PI * q / opt.ny;
        for (int p = 0; p < opt.nx; ++p) {
            double kx = 2.0 * M_PI * p / opt.nx;
            table.rows.push_back({kx, ky, omega[static_cast<std::size_t>(q) * opt.nx + p],
                                  mw_gamma1(kx, ky), mw_gamma2(kx, ky)});
        }
    }

    try {
        Manifest manifest(opt.out_dir, "dispersion");
        manifest.root()["params"] = params_json(opt.j1, opt.j2, opt.nx, opt.ny);
        manifest.add_file(write_table(opt.out_dir, "dispersion", table, opt.format));
        manifest.flush();
    } catch (const std::exception& e) {
        return fail(kExitIo, e.what());
    }
    return kExitOk;
}

int cmd_walk(const WalkOptions& opt) {
    int status = MW_OK;
    ModelPtr model = make_model(opt.j1, opt.j2, opt.nx, opt.ny, status);
    if (status != MW_OK) return fail_api(status);
    if (opt.dt <= 0.0) return fail(kExitUsage, "dt must be positive");
    if (opt.t1 < opt.t0) return fail(kExitUsage, "t1 must be >= t0");
    std::string err;
    if (!prepare_out_dir(opt.out_dir, err)) return fail(kExitIo, err);

    const int r0m = opt.r0_m >= 0 ? opt.r0_m : opt.nx / 2;
    const int r0n = opt.r0_n >= 0 ? opt.r0_n : opt.ny / 2;
    if (r0m >= opt.nx || r0n >= opt.ny) return fail(kExitUsage, "flip site outside the lattice");

    auto times = time_grid(opt.t0, opt.t1, opt.dt);
    const std::size_t sites = static_cast<std::size_t>(opt.nx) * opt.ny;
    std::vector<std::vector<double>> frames(times.size(), std::vector<double>(sites));
    double global_max = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if ((status = mw_density_field(model.get(), times[i], r0m, r0n, frames[i].data(),
                                       sites)) != MW_OK)
            return fail_api(status);
        global_max = std::max(global_max, *std::max_element(frames[i].begin(), frames[i].end()));
    }

    // wrap-around guard: report when density reaches the displacement edge
    auto edge_density = [&](const std::vector<double>& values) {
        double worst = 0.0;
        for (int n = 0; n < opt.ny; ++n) {
            for (int m = 0; m < opt.nx; ++m) {
                int dm = std::abs(m - r0m);
                dm = std::min(dm, opt.nx - dm);
                int dn = std::abs(n - r0n);
                dn = std::min(dn, opt.ny - dn);
                bool edge = (opt.nx > 4 && dm >= opt.nx / 2 - 2) || (opt.ny > 4 && dn >= opt.ny / 2 - 2);
                if (edge) worst = std::max(worst, values[static_cast<std::size_t>(n) * opt.nx + m]);
            }
        }
        return worst;
    };

    try {
        Manifest manifest(opt.out_dir, "walk");
        manifest.root()["params"] = params_json(opt.j1, opt.j2, opt.nx, opt.ny);
        manifest.root()["params"]["r0"] = {r0m, r0n};
        manifest.root()["times"] = times;
        manifest.root()["front_threshold"] = opt.front_threshold;
        manifest.root()["normalization"] = opt.global_norm ? "global" : "per-frame";
        auto frames_meta = nlohmann::json::array();

        for (std::size_t i = 0; i < times.size(); ++i) {
            char base[32];
            std::snprintf(base, sizeof(base), "walk_%03zu", i);

            Table table;
            table.columns = {"m", "n", "xi"};
            for (int n = 0; n < opt.ny; ++n)
                for (int m = 0; m < opt.nx; ++m)
                    table.rows.push_back({static_cast<double>(m), static_cast<double>(n),
                                          frames[i][static_cast<std::size_t>(n) * opt.nx + m]});
            std::string csv_name = write_table(opt.out_dir, base, table, opt.format);
            manifest.add_file(csv_name);

            nlohmann::json meta;
            meta["time"] = times[i];
            meta["file"] = csv_name;

            double fr_axial = 0.0, fr_diag = 0.0;
            if (mw_front_radius(model.get(), frames[i].data(), r0m, r0n, MW_DIRECTION_AXIAL,
                                opt.front_threshold, &fr_axial) == MW_OK)
                meta["front_axial"] = fr_axial;
            if (mw_front_radius(model.get(), frames[i].data(), r0m, r0n, MW_DIRECTION_DIAGONAL,
                                opt.front_threshold, &fr_diag) == MW_OK)
                meta["front_diagonal"] = fr_diag;

            double edge = edge_density(frames[i]);
            if (edge > 1e-6)
                std::fprintf(stderr,
                             "warning: boundary touch at t=%s (edge density %.3g); "
                             "enlarge the lattice to avoid wrap-around\n",
                             time_label(times[i]).c_str(), edge);

            if (opt.image) {
                std::string ppm_name = std::string(base) + ".ppm";
                double frame_max = *std::max_element(frames[i].begin(), frames[i].end());
                write_ppm(std::filesystem::path(opt.out_dir) / ppm_name, opt.nx, opt.ny,
                          frames[i].data(), opt.global_norm ? global_max : frame_max);
                manifest.add_file(ppm_name);
                meta["image"] = ppm_name;
            }
            frames_meta.push_back(meta);
        }
        manifest.root()["frames"] = frames_meta;
        manifest.flush();
    } catch (const std::exception& e) {
        return fail(kExitIo, e.what());
    }
    return kExitOk;
}

int cmd_otoc(const OtocOptions& opt) {
    if (opt.distances.empty()) return fail(kExitUsage, "distance list must not be empty");
    if (opt.direction != "axial" && opt.direction != "diagonal")
        return fail(kExitUsage, "direction must be axial or diagonal");
    int status = MW_OK;
    ModelPtr model = make_model(opt.j1, opt.j2, opt.nx, opt.ny, status);
    if (status != MW_OK) return fail_api(status);
    std::string err;
    if (!prepare_out_dir(opt.out_dir, err)) return fail(kExitIo, err);

    const bool axial = opt.direction == "axial";
    const double step_norm = axial ? 1.0 : std::sqrt(2.0);
    auto times = time_grid(0.0, opt.t1, opt.dt);

    try {
        Manifest manifest(opt.out_dir, "otoc");
        manifest.root()["params"] = params_json(opt.j1, opt.j2, opt.nx, opt.ny);
        manifest.root()["direction"] = opt.direction;
        manifest.root()["epsilon"] = opt.epsilon;

        Table td_table;
        td_table.columns = {"r", "td"};
        for (int steps : opt.distances) {
            if (steps < 0 || steps >= std::min(opt.nx, opt.ny) / 2 + 1)
                return fail(kExitUsage, "separation does not fit on the lattice");
            int dx = steps;
            int dy = axial ? 0 : steps;
            std::vector<double> values(times.size());
            if ((status = mw_otoc_series(model.get(), dx, dy, times.data(), times.size(),
                                         values.data())) != MW_OK)
                return fail_api(status);

            double r = steps * step_norm;
            Table series;
            series.columns = {"t", "F"};
            for (std::size_t i = 0; i < times.size(); ++i)
                series.rows.push_back({times[i], values[i]});
            manifest.add_file(
                write_table(opt.out_dir, "otoc_r" + format_value(r), series, opt.format));

            double td = 0.0;
            if ((status = mw_detect_td(times.data(), values.data(), times.size(), opt.epsilon,
                                       &td)) != MW_OK)
                return fail_api(status);
            td_table.rows.push_back({r, td});
        }
        manifest.add_file(write_table(opt.out_dir, "td_table", td_table, opt.format));

        // fitted line over the distances inside the window
        std::vector<double> rs;
        for (int steps : opt.distances) rs.push_back(steps * step_norm);
        mw_td_fit fit{};
        std::vector<double> fit_r(rs.size()), fit_td(rs.size());
        status = mw_butterfly_velocity(model.get(),
                                       axial ? MW_DIRECTION_AXIAL : MW_DIRECTION_DIAGONAL,
                                       rs.data(), rs.size(), opt.epsilon, opt.fit_min,
                                       opt.fit_max, opt.t1, opt.dt, &fit, fit_r.data(),
                                       fit_td.data(), fit_r.size());
        if (status != MW_OK) return fail_api(status);

        nlohmann::json line;
        line["schema"] = "magnon-walk v1";
        line["direction"] = opt.direction;
        line["slope"] = fit.slope;
        line["intercept"] = fit.intercept;
        line["v_b"] = fit.v_b;
        auto points = nlohmann::json::array();
        for (std::size_t i = 0; i < fit.points; ++i)
            points.push_back({{"r", fit_r[i]}, {"td", fit_td[i]}});
        line["points"] = points;
        write_text_file(std::filesystem::path(opt.out_dir) / "td_line.json", line.dump(2) + "\n");
        manifest.add_file("td_line.json");
        manifest.flush();
    } catch (const std::exception& e) {
        return fail(kExitIo, e.what());
    }
    return kExitOk;
}

int cmd_butterfly(const ButterflyOptions& opt) {
    std::vector<double> grid = opt.j2_grid;
    if (grid.empty())
        for (int i = 0; i <= 10; ++i) grid.push_back(-0.1 * i);
    std::string err;
    if (!prepare_out_dir(opt.out_dir, err)) return fail(kExitIo, err);

    // distances: every axial/diagonal separation inside the fit window
    std::vector<double> axial_r, diag_r;
    for (int m = 1; m <= opt.nx / 2; ++m) {
        if (m >= opt.fit_min - 1e-9 && m <= opt.fit_max + 1e-9) axial_r.push_back(m);
        double rd = m * std::sqrt(2.0);
        if (rd >= opt.fit_min - 1e-9 && rd <= opt.fit_max + 1e-9) diag_r.push_back(rd);
    }

    const double epsilons[3] = {1e-2, 1e-3, 1e-4};
    Table table;
    table.columns = {"j2",
                     "vb_axial",
                     "vb_diagonal",
                     "vb_axial_eps1e-2",
                     "vb_axial_eps1e-3",
                     "vb_axial_eps1e-4",
                     "vb_diagonal_eps1e-2",
                     "vb_diagonal_eps1e-3",
                     "vb_diagonal_eps1e-4",
                     "oracle_axial",
                     "oracle_diagonal"};

    for (double j2 : grid) {
        int status = MW_OK;
        ModelPtr model = make_model(opt.j1, j2, opt.nx, opt.ny, status);
        if (status != MW_OK) return fail_api(status);

        auto vb_at = [&](mw_direction dir, const std::vector<double>& rs, double eps,
                         double& out) {
            mw_td_fit fit{};
            int rc = mw_butterfly_velocity(model.get(), dir, rs.data(), rs.size(), eps,
                                           opt.fit_min, opt.fit_max, opt.t_max, opt.dt, &fit,
                                           nullptr, nullptr, 0);
            if (rc == MW_OK) out = fit.v_b;
            return rc;
        };

        std::vector<double> row{j2};
        double vb = 0.0;
        if ((status = vb_at(MW_DIRECTION_AXIAL, axial_r, opt.epsilon, vb)) != MW_OK)
            return fail_api(status);
        row.push_back(vb);
        if ((status = vb_at(MW_DIRECTION_DIAGONAL, diag_r, opt.epsilon, vb)) != MW_OK)
            return fail_api(status);
        row.push_back(vb);
        for (double eps : epsilons) {
            if ((status = vb_at(MW_DIRECTION_AXIAL, axial_r, eps, vb)) != MW_OK)
                return fail_api(status);
            row.push_back(vb);
        }
        for (double eps : epsilons) {
            if ((status = vb_at(MW_DIRECTION_DIAGONAL, diag_r, eps, vb)) != MW_OK)
                return fail_api(status);
            row.push_back(vb);
        }
        double oracle = 0.0;
        if ((status = mw_velocity_oracle(model.get(), MW_DIRECTION_AXIAL, &oracle)) != MW_OK)
            return fail_api(status);
        row.push_back(oracle);
        if ((status = mw_velocity_oracle(model.get(), MW_DIRECTION_DIAGONAL, &oracle)) != MW_OK)
            return fail_api(status);
        row.push_back(oracle);
        table.rows.push_back(std::move(row));
    }

    try {
        Manifest manifest(opt.out_dir, "butterfly");
        manifest.root()["params"] = params_json(opt.j1, 0.0, opt.nx, opt.ny);
        manifest.root()["params"].erase("j2");
        manifest.root()["j2_grid"] = grid;
        manifest.root()["epsilon"] = opt.epsilon;
        manifest.add_file(write_table(opt.out_dir, "butterfly", table, opt.format));
        manifest.flush();
    } catch (const std::exception& e) {
        return fail(kExitIo, e.what());
    }
    return kExitOk;
}

int cmd_ed_compare(const EdCompareOptions& opt) {
    struct Panel {
        std::string name;
        double j1, j2;
        int nx, ny, dx, dy;
    };
    std::vector<Panel> panels;
    if (opt.custom) {
        panels.push_back({"custom", opt.j1, opt.j2, opt.nx, opt.ny, opt.dx, opt.dy});
    } else {
        panels = {
            {"chain3_onsite", -1.0, 0.0, 3, 1, 0, 0},
            {"chain7_onsite", -1.0, 0.0, 7, 1, 0, 0},
            {"chain11_onsite", -1.0, 0.0, 11, 1, 0, 0},
            {"lattice3x3_onsite", -1.0, -1.0, 3, 3, 0, 0},
            {"lattice3x3_nn", -1.0, -1.0, 3, 3, 1, 0},
            {"lattice3x3_nnn", -1.0, -1.0, 3, 3, 1, 1},
        };
    }
    std::string err;
    if (!prepare_out_dir(opt.out_dir, err)) return fail(kExitIo, err);
    auto times = time_grid(0.0, opt.t1, opt.dt);

    bool tolerance_ok = true;
    try {
        Manifest manifest(opt.out_dir, "ed-compare");
        manifest.root()["tolerance"] = opt.tolerance;
        auto summary = nlohmann::json::array();

        for (const auto& panel : panels) {
            int status = MW_OK;
            ModelPtr model = make_model(panel.j1, panel.j2, panel.nx, panel.ny, status);
            if (status != MW_OK) return fail_api(status);

            std::vector<double> f_sw(times.size()), f_ed(times.size());
            if ((status = mw_otoc_series(model.get(), panel.dx, panel.dy, times.data(),
                                         times.size(), f_sw.data())) != MW_OK)
                return fail_api(status);
            if ((status = mw_ed_otoc_series(model.get(), 0, 0, panel.dx, panel.dy, times.data(),
                                            times.size(), f_ed.data())) != MW_OK)
                return fail_api(status);

            double max_diff = 0.0;
            Table table;
            table.columns = {"t", "F_sw", "F_ed", "diff"};
            for (std::size_t i = 0; i < times.size(); ++i) {
                double diff = std::abs(f_sw[i] - f_ed[i]);
                max_diff = std::max(max_diff, diff);
                table.rows.push_back({times[i], f_sw[i], f_ed[i], diff});
            }
            manifest.add_file(
                write_table(opt.out_dir, "ed_compare_" + panel.name, table, opt.format));

            bool ok = max_diff < opt.tolerance;
            tolerance_ok = tolerance_ok && ok;
            std::printf("%-20s max|F_sw - F_ed| = %.3e  %s\n", panel.name.c_str(), max_diff,
                        ok ? "ok" : "EXCEEDS TOLERANCE");
            nlohmann::json row;
            row["panel"] = panel.name;
            row["max_diff"] = max_diff;
            row["ok"] = ok;
            summary.push_back(row);
        }
        manifest.root()["panels"] = summary;
        manifest.flush();
    } catch (const std::exception& e) {
        return fail(kExitIo, e.what());
    }
    if (!tolerance_ok) return fail(kExitTolerance, "SW vs ED disagreement exceeds tolerance");
    return kExitOk;
}

int cmd_trotter(const TrotterOptions& opt) {
    if (opt.delta_t < 0.0) return fail(kExitUsage, "delta-t must be nonnegative");
    std::string err;
    if (!prepare_out_dir(opt.out_dir, err)) return fail(kExitIo, err);
    const int flip = opt.flip >= 0 ? opt.flip : opt.qubits / 2;

    try {
        Manifest manifest(opt.out_dir, "trotter");
        manifest.root()["qubits"] = opt.qubits;
        manifest.root()["delta_t"] = opt.delta_t;
        manifest.root()["j1"] = opt.j1;
        manifest.root()["flip"] = flip;
        manifest.root()["times"] = opt.times;

        for (double t : opt.times) {
            // delta_t = 0 pins the circuit to the prepared state
            double step = opt.delta_t > 0.0 ? opt.delta_t : t;
            mw_circuit* raw = nullptr;
            int status = mw_trotter_circuit_create(opt.qubits, opt.delta_t > 0.0 ? t : 0.0, step,
                                                   opt.j1, opt.periodic ? 1 : 0, flip, &raw);
            if (status != MW_OK) return fail_api(status);
            CircuitPtr circuit(raw);

            std::vector<double> n_circuit(static_cast<std::size_t>(opt.qubits));
            std::vector<double> n_exact(static_cast<std::size_t>(opt.qubits));
            if ((status = mw_circuit_run_densities(circuit.get(), n_circuit.data(),
                                                   n_circuit.size())) != MW_OK)
                return fail_api(status);
            if ((status = mw_chain_exact_densities(opt.qubits, opt.j1, opt.periodic ? 1 : 0, flip,
                                                   opt.delta_t > 0.0 ? t : 0.0, n_exact.data(),
                                                   n_exact.size())) != MW_OK)
                return fail_api(status);

            Table table;
            table.columns = {"site", "n_circuit", "n_exact"};
            for (int i = 0; i < opt.qubits; ++i)
                table.rows.push_back({static_cast<double>(i),
                                      n_circuit[static_cast<std::size_t>(i)],
                                      n_exact[static_cast<std::size_t>(i)]});
            manifest.add_file(
                write_table(opt.out_dir, "trotter_t" + time_label(t), table, opt.format));

            if (opt.qasm) {
                char* text = nullptr;
                if ((status = mw_circuit_to_qasm(circuit.get(), &text)) != MW_OK)
                    return fail_api(status);
                std::string qasm_name = "circuit_t" + time_label(t) + ".qasm";
                write_text_file(std::filesystem::path(opt.out_dir) / qasm_name, text);
                mw_string_free(text);
                manifest.add_file(qasm_name);
            }
        }
        manifest.flush();
    } catch (const std::exception& e) {
        return fail(kExitIo, e.what());
    }
    return kExitOk;
}

}  // namespace mwcli
