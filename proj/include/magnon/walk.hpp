#pragma once

#include <complex>
#include <memory>
#include <vector>

#include <Eigen/SparseCore>

#include "magnon/lattice.hpp"

namespace magnon {

// xi(r, t) over all sites at one time. values[n*nx + m] = xi at site (m, n);
// origin is the site index of the initial flip r0.
struct DensityField {
    double time = 0.0;
    int nx = 0;
    int ny = 0;
    int origin = 0;
    std::vector<double> values;

    double at(int m, int n) const { return values[Lattice::wrap(n, ny) * nx + Lattice::wrap(m, nx)]; }

    double at_displacement(int dx, int dy) const {
        int m = Lattice::wrap(origin % nx + dx, nx);
        int n = Lattice::wrap(origin / nx + dy, ny);
        return values[n * nx + m];
    }
};

struct WalkFrameSet {
    Couplings params;
    Lattice lattice;
    std::vector<double> times;
    std::vector<DensityField> frames;
};

// Psi(r, t) = (1/N) sum_k exp(i(k.r - w_k t)), direct sum over the k grid.
std::complex<double> wavefunction(Displacement r, double t, const Couplings& c,
                                  const Lattice& lattice);

// |Psi(r, t)|^2
double density(Displacement r, double t, const Couplings& c, const Lattice& lattice);

// Computes whole-lattice phase fields with one inverse transform per call.
// `phase_sign` picks exp(sign * i * w_k * t): -1 for the walk density
// (Eq. 8 convention), +1 for the Omega_1 field of the OTOC. The two give
// identical moduli (w is even in k); both signs are kept so each formula is
// evaluated as written.
//
// Not thread-safe per instance; use one engine per thread.
class WalkEngine {
public:
    WalkEngine(const Couplings& c, const Lattice& lattice, int phase_sign = -1);
    ~WalkEngine();
    WalkEngine(const WalkEngine&) = delete;
    WalkEngine& operator=(const WalkEngine&) = delete;

    const Lattice& lattice() const { return lattice_; }

    // One walk frame; values agree with the per-site direct sum to < 1e-10.
    DensityField density_field(double t, int r0_site) const;

    // Psi (or Omega_1/N) for every displacement: entry [n*nx+m] is the
    // amplitude at displacement (m, n) from the flip site, wrapped.
    std::vector<std::complex<double>> amplitude_field(double t) const;

private:
    Couplings params_;
    Lattice lattice_;
    int phase_sign_;
    std::vector<double> omega_;
    struct PlanState;
    std::unique_ptr<PlanState> plan_;
};

DensityField density_field_fft(double t, const Couplings& c, const Lattice& lattice, int r0_site);

// Per-site direct k sums; the slow contract partner of density_field_fft.
DensityField density_field_naive(double t, const Couplings& c, const Lattice& lattice,
                                 int r0_site);

// Real-space spin-exchange matrix P of the single-magnon sector:
// per directed neighbor offset J/2, on-site 2(J1+J2); coincident entries on
// small lattices merge by summation (including aliases onto the diagonal).
class HopMatrix {
public:
    HopMatrix(const Couplings& c, const Lattice& lattice);

    static HopMatrix from_matrix(Eigen::SparseMatrix<double> m);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Eigen::SparseMatrix<double>& matrix() const { return matrix_; }
    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix_); }

private:
    HopMatrix() = default;
    Eigen::SparseMatrix<double> matrix_;
};

inline HopMatrix hop_matrix(const Couplings& c, const Lattice& lattice) {
    return HopMatrix(c, lattice);
}

enum class FrontDirection { axial, diagonal };

// Largest |r| along the direction whose density exceeds threshold*max(frame).
// threshold in (0,1); throws Errc::empty_frame on an all-zero frame.
double front_radius(const DensityField& frame, FrontDirection direction, double threshold);

}  // namespace magnon
