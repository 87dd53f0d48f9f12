#include "magnon/walk.hpp"

#include <algorithm>
#include <mutex>

#include <fftw3.h>

namespace magnon {

namespace {

// FFTW planning is not thread-safe; executions on distinct plans are.
std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

std::complex<double> wavefunction(Displacement r, double t, const Couplings& c,
                                  const Lattice& lattice) {
    if (t < 0.0) throw Error(Errc::invalid_argument, "time must be nonnegative");
    std::complex<double> sum{0.0, 0.0};
    for (int q = 0; q < lattice.ny(); ++q) {
        double ky = 2.0 * M_PI * q / lattice.ny();
        for (int p = 0; p < lattice.nx(); ++p) {
            double kx = 2.0 * M_PI * p / lattice.nx();
            double phase = kx * r.dx + ky * r.dy - dispersion(kx, ky, c) * t;
            sum += std::polar(1.0, phase);
        }
    }
    return sum / static_cast<double>(lattice.sites());
}

double density(Displacement r, double t, const Couplings& c, const Lattice& lattice) {
    return std::norm(wavefunction(r, t, c, lattice));
}

struct WalkEngine::PlanState {
    fftw_plan plan = nullptr;
    std::vector<std::complex<double>> in;
    std::vector<std::complex<double>> out;

    ~PlanState() {
        if (plan) {
            std::lock_guard<std::mutex> lock(fftw_plan_mutex());
            fftw_destroy_plan(plan);
        }
    }
};

WalkEngine::WalkEngine(const Couplings& c, const Lattice& lattice, int phase_sign)
    : params_(c), lattice_(lattice), phase_sign_(phase_sign >= 0 ? 1 : -1) {
    omega_.resize(static_cast<std::size_t>(lattice_.sites()));
    for (int q = 0; q < lattice_.ny(); ++q) {
        double ky = 2.0 * M_PI * q / lattice_.ny();
        for (int p = 0; p < lattice_.nx(); ++p) {
            double kx = 2.0 * M_PI * p / lattice_.nx();
            omega_[static_cast<std::size_t>(q) * lattice_.nx() + p] = dispersion(kx, ky, params_);
        }
    }
    plan_ = std::make_unique<PlanState>();
    plan_->in.resize(omega_.size());
    plan_->out.resize(omega_.size());
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    // row count = ny (slow index), column count = nx (fast index)
    plan_->plan = fftw_plan_dft_2d(lattice_.ny(), lattice_.nx(),
                                   reinterpret_cast<fftw_complex*>(plan_->in.data()),
                                   reinterpret_cast<fftw_complex*>(plan_->out.data()),
                                   FFTW_BACKWARD, FFTW_ESTIMATE);
}

WalkEngine::~WalkEngine() = default;

std::vector<std::complex<double>> WalkEngine::amplitude_field(double t) const {
    if (t < 0.0) throw Error(Errc::invalid_argument, "time must be nonnegative");
    const double inv_n = 1.0 / lattice_.sites();
    for (std::size_t i = 0; i < omega_.size(); ++i)
        plan_->in[i] = std::polar(1.0, phase_sign_ * omega_[i] * t);
    fftw_execute(plan_->plan);  // unnormalized backward: sum_k e^{+ik.r} in[k]
    std::vector<std::complex<double>> field(plan_->out.size());
    for (std::size_t i = 0; i < field.size(); ++i) field[i] = plan_->out[i] * inv_n;
    return field;
}

DensityField WalkEngine::density_field(double t, int r0_site) const {
    auto amps = amplitude_field(t);
    DensityField frame;
    frame.time = t;
    frame.nx = lattice_.nx();
    frame.ny = lattice_.ny();
    frame.origin = r0_site;
    frame.values.resize(amps.size());
    const int r0m = lattice_.site_m(r0_site);
    const int r0n = lattice_.site_n(r0_site);
    for (int n = 0; n < lattice_.ny(); ++n) {
        int sn = Lattice::wrap(n - r0n, lattice_.ny());
        for (int m = 0; m < lattice_.nx(); ++m) {
            int sm = Lattice::wrap(m - r0m, lattice_.nx());
            frame.values[static_cast<std::size_t>(n) * lattice_.nx() + m] =
                std::norm(amps[static_cast<std::size_t>(sn) * lattice_.nx() + sm]);
        }
    }
    return frame;
}

DensityField density_field_fft(double t, const Couplings& c, const Lattice& lattice,
                               int r0_site) {
    return WalkEngine(c, lattice).density_field(t, r0_site);
}

DensityField density_field_naive(double t, const Couplings& c, const Lattice& lattice,
                                 int r0_site) {
    DensityField frame;
    frame.time = t;
    frame.nx = lattice.nx();
    frame.ny = lattice.ny();
    frame.origin = r0_site;
    frame.values.resize(static_cast<std::size_t>(lattice.sites()));
    for (int site = 0; site < lattice.sites(); ++site) {
        Displacement r = lattice.displacement(site, r0_site);
        frame.values[static_cast<std::size_t>(site)] = density(r, t, c, lattice);
    }
    return frame;
}

HopMatrix::HopMatrix(const Couplings& c, const Lattice& lattice) {
    const int n_sites = lattice.sites();
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(n_sites) * 9);
    struct Offset {
        int dm, dn;
        double coupling;
    };
    const Offset offsets[] = {
        {1, 0, c.j1},  {-1, 0, c.j1}, {0, 1, c.j1},  {0, -1, c.j1},
        {1, 1, c.j2},  {1, -1, c.j2}, {-1, 1, c.j2}, {-1, -1, c.j2},
    };
    for (int n = 0; n < lattice.ny(); ++n) {
        for (int m = 0; m < lattice.nx(); ++m) {
            int i = lattice.site_index(m, n);
            entries.emplace_back(i, i, 2.0 * (c.j1 + c.j2));
            for (const auto& o : offsets)
                entries.emplace_back(i, lattice.site_index(m + o.dm, n + o.dn), 0.5 * o.coupling);
        }
    }
    matrix_.resize(n_sites, n_sites);
    matrix_.setFromTriplets(entries.begin(), entries.end());  // duplicates merge by summation
    matrix_.prune([](int, int, double v) { return v != 0.0; });
    matrix_.makeCompressed();
}

HopMatrix HopMatrix::from_matrix(Eigen::SparseMatrix<double> m) {
    if (m.rows() != m.cols())
        throw Error(Errc::invalid_argument, "hop matrix must be square");
    HopMatrix hop;
    hop.matrix_ = std::move(m);
    hop.matrix_.makeCompressed();
    return hop;
}

double front_radius(const DensityField& frame, FrontDirection direction, double threshold) {
    if (threshold <= 0.0 || threshold >= 1.0)
        throw Error(Errc::invalid_argument, "threshold must lie in (0,1)");
    double peak = *std::max_element(frame.values.begin(), frame.values.end());
    if (peak <= 0.0) throw Error(Errc::empty_frame, "empty frame");
    const double cut = threshold * peak;
    double radius = 0.0;
    if (direction == FrontDirection::axial) {
        for (int d = 1; d <= frame.nx / 2; ++d)
            if (frame.at_displacement(d, 0) > cut || frame.at_displacement(-d, 0) > cut)
                radius = std::max(radius, static_cast<double>(d));
        for (int d = 1; d <= frame.ny / 2; ++d)
            if (frame.at_displacement(0, d) > cut || frame.at_displacement(0, -d) > cut)
                radius = std::max(radius, static_cast<double>(d));
    } else {
        int dmax = std::min(frame.nx, frame.ny) / 2;
        for (int d = 1; d <= dmax; ++d) {
            bool hit = frame.at_displacement(d, d) > cut || frame.at_displacement(-d, d) > cut ||
                       frame.at_displacement(d, -d) > cut || frame.at_displacement(-d, -d) > cut;
            if (hit) radius = std::max(radius, d * std::sqrt(2.0));
        }
    }
    return radius;
}

}  // namespace magnon
