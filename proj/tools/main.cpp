#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "magnon.h"

namespace {

using namespace mwcli;

void add_common(CLI::App* cmd, CommonOptions& opt, std::string& format) {
    cmd->add_option("--j1", opt.j1, "nearest-neighbor coupling (<= 0)");
    cmd->add_option("--j2", opt.j2, "next-nearest-neighbor coupling (<= 0)");
    cmd->add_option("--nx", opt.nx, "lattice sites along x");
    cmd->add_option("--ny", opt.ny, "lattice sites along y");
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--format", format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
}

Format parse_format(const std::string& format) {
    return format == "json" ? Format::json : Format::csv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("magnon-walk toolkit ") + mw_version()};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file (flags override)");

    std::string fmt_dispersion = "csv", fmt_walk = "csv", fmt_otoc = "csv",
                fmt_butterfly = "csv", fmt_ed = "csv", fmt_trotter = "csv";

    CommonOptions dispersion_opt;
    dispersion_opt.nx = 64;
    dispersion_opt.ny = 64;
    auto* dispersion = app.add_subcommand("dispersion", "magnon dispersion over the k grid");
    add_common(dispersion, dispersion_opt, fmt_dispersion);

    WalkOptions walk_opt;
    auto* walk = app.add_subcommand("walk", "single-flip quantum walk frames");
    add_common(walk, walk_opt, fmt_walk);
    walk->add_option("--r0x", walk_opt.r0_m, "flip site m (default: center)");
    walk->add_option("--r0y", walk_opt.r0_n, "flip site n (default: center)");
    walk->add_option("--t0", walk_opt.t0, "first frame time");
    walk->add_option("--t1", walk_opt.t1, "last frame time");
    walk->add_option("--dt", walk_opt.dt, "frame spacing");
    walk->add_flag("--image", walk_opt.image, "emit P6 pixmap per frame");
    walk->add_flag("--global-norm", walk_opt.global_norm,
                   "normalize images to the set-wide maximum instead of per frame");
    walk->add_option("--front-threshold", walk_opt.front_threshold,
                     "front radius threshold (fraction of frame max)");

    OtocOptions otoc_opt;
    otoc_opt.nx = 41;
    otoc_opt.ny = 41;
    auto* otoc = app.add_subcommand("otoc", "OTOC series and first-decline times");
    add_common(otoc, otoc_opt, fmt_otoc);
    otoc->add_option("--direction", otoc_opt.direction, "axial|diagonal")
        ->check(CLI::IsMember({"axial", "diagonal"}));
    otoc->add_option("--distances", otoc_opt.distances,
                     "separations in lattice steps along the direction");
    otoc->add_option("--t1", otoc_opt.t1, "series end time");
    otoc->add_option("--dt", otoc_opt.dt, "series time step");
    otoc->add_option("--epsilon", otoc_opt.epsilon, "decline threshold");
    otoc->add_option("--fit-min", otoc_opt.fit_min, "fit window lower |r|");
    otoc->add_option("--fit-max", otoc_opt.fit_max, "fit window upper |r|");

    ButterflyOptions butterfly_opt;
    butterfly_opt.nx = 41;
    butterfly_opt.ny = 41;
    auto* butterfly = app.add_subcommand("butterfly", "butterfly velocities over a J2 grid");
    add_common(butterfly, butterfly_opt, fmt_butterfly);
    butterfly->get_option("--j2")->description("ignored; use --j2-grid");
    butterfly->add_option("--j2-grid", butterfly_opt.j2_grid,
                          "J2 values (default 0,-0.1,...,-1)");
    butterfly->add_option("--epsilon", butterfly_opt.epsilon, "decline threshold");
    butterfly->add_option("--fit-min", butterfly_opt.fit_min, "fit window lower |r|");
    butterfly->add_option("--fit-max", butterfly_opt.fit_max, "fit window upper |r|");
    butterfly->add_option("--t-max", butterfly_opt.t_max, "detection window end");
    butterfly->add_option("--dt", butterfly_opt.dt, "detection time step");

    EdCompareOptions ed_opt;
    auto* ed = app.add_subcommand(
        "ed-compare", "spin-wave vs exact-diagonalization OTOC panels (nonzero exit on mismatch)");
    add_common(ed, ed_opt, fmt_ed);
    ed->add_option("--dx", ed_opt.dx, "separation x (custom panel)");
    ed->add_option("--dy", ed_opt.dy, "separation y (custom panel)");
    ed->add_option("--t1", ed_opt.t1, "series end time");
    ed->add_option("--dt", ed_opt.dt, "series time step");
    ed->add_option("--tol", ed_opt.tolerance, "max allowed |F_sw - F_ed|");

    TrotterOptions trotter_opt;
    auto* trotter = app.add_subcommand("trotter", "Trotterized chain circuit vs exact densities");
    trotter->add_option("--qubits", trotter_opt.qubits, "chain length");
    trotter->add_option("--delta-t", trotter_opt.delta_t, "max step size");
    trotter->add_option("--j1", trotter_opt.j1, "chain coupling");
    trotter->add_option("--times", trotter_opt.times, "snapshot times");
    trotter->add_option("--flip", trotter_opt.flip, "flip qubit (default: center)");
    trotter->add_flag("--periodic", trotter_opt.periodic, "wrap the chain");
    trotter->add_flag("--qasm", trotter_opt.qasm, "emit OpenQASM 2.0 per circuit");
    trotter->add_option("--out", trotter_opt.out_dir, "output directory");
    trotter->add_option("--format", fmt_trotter, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    // lattice/ED size validation happens inside the library; flag-level
    // validation happened above
    if (dispersion->parsed()) {
        dispersion_opt.format = parse_format(fmt_dispersion);
        return cmd_dispersion(dispersion_opt);
    }
    if (walk->parsed()) {
        walk_opt.format = parse_format(fmt_walk);
        return cmd_walk(walk_opt);
    }
    if (otoc->parsed()) {
        otoc_opt.format = parse_format(fmt_otoc);
        return cmd_otoc(otoc_opt);
    }
    if (butterfly->parsed()) {
        butterfly_opt.format = parse_format(fmt_butterfly);
        return cmd_butterfly(butterfly_opt);
    }
    if (ed->parsed()) {
        ed_opt.format = parse_format(fmt_ed);
        ed_opt.custom = ed->get_option("--nx")->count() > 0 || ed->get_option("--dx")->count() > 0;
        return cmd_ed_compare(ed_opt);
    }
    if (trotter->parsed()) {
        trotter_opt.format = parse_format(fmt_trotter);
        return cmd_trotter(trotter_opt);
    }
    return kExitUsage;
}
