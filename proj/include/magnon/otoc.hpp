#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "magnon/lattice.hpp"
#include "magnon/walk.hpp"

namespace magnon {

struct OtocSeries {
    Displacement separation;
    std::vector<double> times;
    std::vector<double> values;
};

struct TdPoint {
    double r = 0.0;   // Euclidean separation
    double td = 0.0;  // first-decline time
};

struct TdLine {
    FrontDirection direction = FrontDirection::axial;
    std::vector<TdPoint> points;
    double slope = 0.0;
    double intercept = 0.0;
    double v_b = 0.0;  // butterfly velocity = 1/slope
};

// (Omega_1, Omega_2) of Eq.-11 form:
//   Omega_1 = sum_k exp(-i k.(r0 - r_mn)) exp(+i w_k t)
//   Omega_2 = sum_k exp(+i k.(r0 - r_mn)) exp(-i w_k t)
// Omega_2 = conj(Omega_1) to rounding since w is even in k.
std::pair<std::complex<double>, std::complex<double>> omega_pair(Displacement r, double t,
                                                                 const Couplings& c,
                                                                 const Lattice& lattice);

// F = 1 - (8/N^2) O1 O2 + (8/N^4) (O1 O2)^2 = 1 - 8u + 8u^2, u = |O1|^2/N^2.
double otoc(Displacement r, double t, const Couplings& c, const Lattice& lattice);

// Element-wise otoc over a strictly increasing time grid starting at 0;
// evaluated via the whole-lattice transform fast path.
OtocSeries otoc_series(Displacement r, const std::vector<double>& times, const Couplings& c,
                       const Lattice& lattice);

// Earliest t with F(t) < 1 - epsilon, linearly interpolated between the
// bracketing samples. Throws Errc::never_declines when no sample crosses.
double detect_td(const OtocSeries& series, double epsilon);

struct ButterflyConfig {
    double epsilon = 1e-3;
    double fit_min = 4.0;
    double fit_max = 12.0;
    double t_max = 16.0;
    double dt = 0.02;
};

// Least-squares t_d line over the Euclidean distances inside the fit window;
// v_b = 1/slope. Throws degenerate_fit on coincident or too few distances.
TdLine butterfly_velocity(const Couplings& c, const Lattice& lattice, FrontDirection direction,
                          const std::vector<double>& distances, const ButterflyConfig& config);

// Ballistic-cone reference: max over a fine momentum grid of the group
// velocity component along the direction unit vector.
double velocity_oracle(const Couplings& c, FrontDirection direction);

}  // namespace magnon
