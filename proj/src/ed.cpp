#include "magnon/ed.hpp"

#include <cmath>
#include <complex>

#include <lapacke.h>

namespace magnon {

namespace {

struct Bond {
    int i;
    int j;
    double coupling;  // already carries the per-directed-offset factor J/2
};

// Every directed neighbor offset contributes J/2 * S_i.S_j. Self-aliases on
// degenerate lattices (ny = 1 makes (0,+-1) point back to the site) only add
// constants and are dropped; coincident pairs keep their multiplicity.
std::vector<Bond> directed_bonds(const Couplings& c, const Lattice& lattice) {
    struct Offset {
        int dm, dn;
        double coupling;
    };
    const Offset offsets[] = {
        {1, 0, c.j1},  {-1, 0, c.j1}, {0, 1, c.j1},  {0, -1, c.j1},
        {1, 1, c.j2},  {1, -1, c.j2}, {-1, 1, c.j2}, {-1, -1, c.j2},
    };
    std::vector<Bond> bonds;
    for (int n = 0; n < lattice.ny(); ++n) {
        for (int m = 0; m < lattice.nx(); ++m) {
            int i = lattice.site_index(m, n);
            for (const auto& o : offsets) {
                int j = lattice.site_index(m + o.dm, n + o.dn);
                if (j == i || o.coupling == 0.0) continue;
                bonds.push_back({i, j, 0.5 * o.coupling});
            }
        }
    }
    return bonds;
}

void check_site_cap(const Lattice& lattice) {
    if (lattice.sites() > kMaxEdSites)
        throw Error(Errc::too_large,
                    "too large: full Hilbert-space path is capped at " +
                        std::to_string(kMaxEdSites) + " sites");
}

// Hermitian eigendecomposition; divide-and-conquer LAPACK for anything big.
void hermitian_eig(const Eigen::MatrixXcd& h, Eigen::VectorXd& evals, Eigen::MatrixXcd& evecs) {
    const int dim = static_cast<int>(h.rows());
    if (dim >= 64) {
        evecs = h;
        evals.resize(dim);
        int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', dim,
                                  reinterpret_cast<lapack_complex_double*>(evecs.data()), dim,
                                  evals.data());
        if (info != 0) throw Error(Errc::invalid_argument, "eigendecomposition failed");
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
        evals = solver.eigenvalues();
        evecs = solver.eigenvectors();
    }
}

}  // namespace

Eigen::MatrixXcd build_full_hamiltonian(const Couplings& c, const Lattice& lattice) {
    check_site_cap(lattice);
    const int sites = lattice.sites();
    const std::size_t dim = std::size_t{1} << sites;
    auto bonds = directed_bonds(c, lattice);

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (std::size_t s = 0; s < dim; ++s) {
        for (const auto& b : bonds) {
            int bi = (s >> b.i) & 1u;
            int bj = (s >> b.j) & 1u;
            double szi = 0.5 - bi;  // bit 1 = flipped spin
            double szj = 0.5 - bj;
            h(s, s) += b.coupling * szi * szj;
            if (bi != bj) {
                std::size_t flipped = s ^ (std::size_t{1} << b.i) ^ (std::size_t{1} << b.j);
                h(flipped, s) += 0.5 * b.coupling;
            }
        }
    }
    return h;
}

FullEd::FullEd(const Couplings& c, const Lattice& lattice)
    : lattice_(lattice), hamiltonian_(build_full_hamiltonian(c, lattice)) {
    hermitian_eig(hamiltonian_, eigenvalues_, eigenvectors_);
}

Eigen::VectorXcd FullEd::evolve(const Eigen::VectorXcd& psi, double t) const {
    Eigen::VectorXcd modes = eigenvectors_.adjoint() * psi;
    for (Eigen::Index i = 0; i < modes.size(); ++i)
        modes(i) *= std::polar(1.0, -eigenvalues_(i) * t);
    return eigenvectors_ * modes;
}

std::vector<DensityField> FullEd::density_series(int r0_site,
                                                 std::span<const double> times) const {
    const Eigen::Index dim = hamiltonian_.rows();
    const int sites = lattice_.sites();
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
    psi0(std::size_t{1} << r0_site) = 1.0;
    Eigen::VectorXcd modes = eigenvectors_.adjoint() * psi0;

    std::vector<DensityField> frames;
    frames.reserve(times.size());
    for (double t : times) {
        Eigen::VectorXcd phased = modes;
        for (Eigen::Index i = 0; i < phased.size(); ++i)
            phased(i) *= std::polar(1.0, -eigenvalues_(i) * t);
        Eigen::VectorXcd psi = eigenvectors_ * phased;

        DensityField frame;
        frame.time = t;
        frame.nx = lattice_.nx();
        frame.ny = lattice_.ny();
        frame.origin = r0_site;
        frame.values.assign(static_cast<std::size_t>(sites), 0.0);
        for (Eigen::Index s = 0; s < dim; ++s) {
            double w = std::norm(psi(s));
            if (w == 0.0) continue;
            for (int site = 0; site < sites; ++site)
                if ((static_cast<std::size_t>(s) >> site) & 1u)
                    frame.values[static_cast<std::size_t>(site)] += w;
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

DensityField FullEd::density(int r0_site, double t) const {
    return density_series(r0_site, std::span<const double>(&t, 1)).front();
}

std::vector<double> FullEd::otoc_series(int r0_site, Displacement r,
                                        std::span<const double> times) const {
    const Eigen::Index dim = hamiltonian_.rows();
    const int nt = static_cast<int>(times.size());
    const int site_m = lattice_.site_index(lattice_.site_m(r0_site) + r.dx,
                                           lattice_.site_n(r0_site) + r.dy);

    Eigen::VectorXd sz0(dim), szm(dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
        sz0(s) = 0.5 - ((static_cast<std::size_t>(s) >> r0_site) & 1u);
        szm(s) = 0.5 - ((static_cast<std::size_t>(s) >> site_m) & 1u);
    }
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
    psi0(std::size_t{1} << r0_site) = 1.0;

    // one column per time sample; evolutions are batched matrix products
    Eigen::MatrixXcd block(dim, nt);
    Eigen::VectorXcd v1 = sz0.cast<std::complex<double>>().cwiseProduct(psi0);
    for (int j = 0; j < nt; ++j) block.col(j) = v1;

    Eigen::MatrixXcd phases(dim, nt);
    for (int j = 0; j < nt; ++j)
        for (Eigen::Index i = 0; i < dim; ++i)
            phases(i, j) = std::polar(1.0, -eigenvalues_(i) * times[j]);

    auto evolve_block = [&](bool forward) {
        block = eigenvectors_.adjoint() * block;
        if (forward)
            block = block.cwiseProduct(phases);
        else
            block = block.cwiseProduct(phases.conjugate());
        block = eigenvectors_ * block;
    };
    auto apply_diag = [&](const Eigen::VectorXd& d) {
        block = d.cast<std::complex<double>>().asDiagonal() * block;
    };

    // S^z_m(t) S^z_0 S^z_m(t) S^z_0 |psi0>, S^z_m(t) = U^dag(t) S^z_m U(t)
    evolve_block(true);
    apply_diag(szm);
    evolve_block(false);
    apply_diag(sz0);
    evolve_block(true);
    apply_diag(szm);
    evolve_block(false);

    std::vector<double> out(static_cast<std::size_t>(nt));
    for (int j = 0; j < nt; ++j) {
        // (S^z)^2 = 1/4 twice anchors the raw value at 1/16; normalize to 1
        out[static_cast<std::size_t>(j)] = 16.0 * (psi0.dot(block.col(j))).real();
    }
    return out;
}

double FullEd::otoc(int r0_site, Displacement r, double t) const {
    return otoc_series(r0_site, r, std::span<const double>(&t, 1)).front();
}

DensityField ed_density(const Couplings& c, const Lattice& lattice, int r0_site, double t) {
    return FullEd(c, lattice).density(r0_site, t);
}

double ed_otoc(const Couplings& c, const Lattice& lattice, int r0_site, Displacement r,
               double t) {
    return FullEd(c, lattice).otoc(r0_site, r, t);
}

SingleMagnonEvolver::SingleMagnonEvolver(const HopMatrix& hop) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hop.dense());
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();
}

SingleMagnonState SingleMagnonEvolver::evolve(const SingleMagnonState& psi0, double t) const {
    if (psi0.amplitudes.size() != eigenvectors_.rows())
        throw Error(Errc::dimension_mismatch, "state dimension does not match hop matrix");
    Eigen::VectorXcd modes = eigenvectors_.transpose().cast<std::complex<double>>() *
                             psi0.amplitudes;
    for (Eigen::Index i = 0; i < modes.size(); ++i)
        modes(i) *= std::polar(1.0, -eigenvalues_(i) * t);
    return {eigenvectors_.cast<std::complex<double>>() * modes};
}

SingleMagnonState SingleMagnonEvolver::evolve_delta(int site, double t) const {
    SingleMagnonState psi0{Eigen::VectorXcd::Zero(eigenvectors_.rows())};
    psi0.amplitudes(site) = 1.0;
    return evolve(psi0, t);
}

SingleMagnonState single_magnon_evolve(const HopMatrix& hop, const SingleMagnonState& psi0,
                                       double t) {
    return SingleMagnonEvolver(hop).evolve(psi0, t);
}

}  // namespace magnon
