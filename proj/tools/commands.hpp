#pragma once

#include <string>
#include <vector>

#include "writers.hpp"

namespace mwcli {

// exit codes shared by every subcommand
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTolerance = 3;
inline constexpr int kExitIo = 4;

struct CommonOptions {
    double j1 = -1.0;
    double j2 = 0.0;
    int nx = 101;
    int ny = 101;
    std::string out_dir = "out";
    Format format = Format::csv;
};

struct WalkOptions : CommonOptions {
    int r0_m = -1;  // -1: lattice center
    int r0_n = -1;
    double t0 = 0.0;
    double t1 = 25.0;
    double dt = 5.0;
    bool image = false;
    bool global_norm = false;
    double front_threshold = 0.25;
};

struct OtocOptions : CommonOptions {
    std::string direction = "axial";
    std::vector<int> distances = {0, 2, 4, 6, 8};  // steps along the direction
    double t1 = 20.0;
    double dt = 0.02;
    double epsilon = 1e-3;
    double fit_min = 4.0;
    double fit_max = 12.0;
};

struct ButterflyOptions : CommonOptions {
    std::vector<double> j2_grid;  // empty: 0 .. -1 in steps of 0.1
    double epsilon = 1e-3;
    double fit_min = 4.0;
    double fit_max = 12.0;
    double t_max = 16.0;
    double dt = 0.02;
};

struct EdCompareOptions : CommonOptions {
    bool custom = false;  // run a single custom panel instead of the standard six
    int dx = 0;
    int dy = 0;
    double t1 = 10.0;
    double dt = 0.05;
    double tolerance = 1e-8;
};

struct TrotterOptions {
    int qubits = 5;
    double delta_t = 0.1;
    double j1 = -1.0;
    std::vector<double> times = {0.0, 0.25, 0.5, 0.75};
    int flip = -1;  // -1: center qubit
    bool periodic = false;
    bool qasm = false;
    std::string out_dir = "out";
    Format format = Format::csv;
};

int cmd_dispersion(const CommonOptions& opt);
int cmd_walk(const WalkOptions& opt);
int cmd_otoc(const OtocOptions& opt);
int cmd_butterfly(const ButterflyOptions& opt);
int cmd_ed_compare(const EdCompareOptions& opt);
int cmd_trotter(const TrotterOptions& opt);

}  // namespace mwcli
