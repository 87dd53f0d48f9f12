#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "magnon/lattice.hpp"
#include "magnon/walk.hpp"

namespace magnon {

inline constexpr int kMaxEdSites = 14;  // dense 2^L x 2^L memory guard

struct SingleMagnonState {
    Eigen::VectorXcd amplitudes;
};

// Spin-1/2 Heisenberg J1-J2 Hamiltonian on the periodic lattice in the
// computational basis (bit 1 = flipped spin). Every directed neighbor offset
// contributes J/2 * S_i.S_j; self-aliases on degenerate lattices are dropped,
// coincident pairs sum. Hermitian; commutes with total S^z.
Eigen::MatrixXcd build_full_hamiltonian(const Couplings& c, const Lattice& lattice);

// Full 2^L Hilbert-space reference: eigendecomposes once, then evolves and
// evaluates observables at any number of times.
class FullEd {
public:
    FullEd(const Couplings& c, const Lattice& lattice);

    const Lattice& lattice() const { return lattice_; }
    const Eigen::MatrixXcd& hamiltonian() const { return hamiltonian_; }

    Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi, double t) const;

    // <n_r> per site after evolving the single flip at r0.
    DensityField density(int r0_site, double t) const;
    std::vector<DensityField> density_series(int r0_site, std::span<const double> times) const;

    // Six-operator OTOC expectation, normalized to F(0) = 1.
    double otoc(int r0_site, Displacement r, double t) const;
    std::vector<double> otoc_series(int r0_site, Displacement r,
                                    std::span<const double> times) const;

private:
    Lattice lattice_;
    Eigen::MatrixXcd hamiltonian_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXcd eigenvectors_;
};

DensityField ed_density(const Couplings& c, const Lattice& lattice, int r0_site, double t);

double ed_otoc(const Couplings& c, const Lattice& lattice, int r0_site, Displacement r, double t);

// psi(t) = exp(-i H t) psi0 via eigendecomposition of the N x N hop matrix.
SingleMagnonState single_magnon_evolve(const HopMatrix& hop, const SingleMagnonState& psi0,
                                       double t);

// Eigendecomposition cached across times.
class SingleMagnonEvolver {
public:
    explicit SingleMagnonEvolver(const HopMatrix& hop);
    SingleMagnonState evolve(const SingleMagnonState& psi0, double t) const;
    SingleMagnonState evolve_delta(int site, double t) const;

private:
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd eigenvectors_;
};

}  // namespace magnon
