#include "magnon/otoc.hpp"

#include <algorithm>
#include <cmath>

namespace magnon {

namespace {

double otoc_from_u(double u) { return 1.0 - 8.0 * u + 8.0 * u * u; }

void validate_times(const std::vector<double>& times) {
    if (times.empty() || times.front() != 0.0)
        throw Error(Errc::invalid_argument, "time grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw Error(Errc::invalid_argument, "time grid must be strictly increasing");
}

}  // namespace

std::pair<std::complex<double>, std::complex<double>> omega_pair(Displacement r, double t,
                                                                 const Couplings& c,
                                                                 const Lattice& lattice) {
    if (t < 0.0) throw Error(Errc::invalid_argument, "time must be nonnegative");
    std::complex<double> omega1{0.0, 0.0};
    std::complex<double> omega2{0.0, 0.0};
    for (int q = 0; q < lattice.ny(); ++q) {
        double ky = 2.0 * M_PI * q / lattice.ny();
        for (int p = 0; p < lattice.nx(); ++p) {
            double kx = 2.0 * M_PI * p / lattice.nx();
            // -k.(r0 - r_mn) = +k.r
            double phase = kx * r.dx + ky * r.dy + dispersion(kx, ky, c) * t;
            omega1 += std::polar(1.0, phase);
            omega2 += std::polar(1.0, -phase);
        }
    }
    return {omega1, omega2};
}

double otoc(Displacement r, double t, const Couplings& c, const Lattice& lattice) {
    auto [omega1, omega2] = omega_pair(r, t, c, lattice);
    const double n = static_cast<double>(lattice.sites());
    return otoc_from_u(std::norm(omega1) / (n * n));
}

OtocSeries otoc_series(Displacement r, const std::vector<double>& times, const Couplings& c,
                       const Lattice& lattice) {
    validate_times(times);
    WalkEngine engine(c, lattice, +1);  // Omega_1 field
    OtocSeries series;
    series.separation = r;
    series.times = times;
    series.values.reserve(times.size());
    for (double t : times) {
        auto field = engine.amplitude_field(t);
        int m = Lattice::wrap(r.dx, lattice.nx());
        int n = Lattice::wrap(r.dy, lattice.ny());
        double u = std::norm(field[static_cast<std::size_t>(n) * lattice.nx() + m]);
        series.values.push_back(otoc_from_u(u));
    }
    return series;
}

double detect_td(const OtocSeries& series, double epsilon) {
    if (epsilon <= 0.0) throw Error(Errc::invalid_argument, "epsilon must be positive");
    if (series.values.empty() || std::abs(series.values.front() - 1.0) > 1e-6)
        throw Error(Errc::invalid_argument, "series must start at F = 1");
    const double threshold = 1.0 - epsilon;
    for (std::size_t i = 1; i < series.values.size(); ++i) {
        if (series.values[i] < threshold) {
            double f0 = series.values[i - 1];
            double f1 = series.values[i];
            double t0 = series.times[i - 1];
            double t1 = series.times[i];
            return t0 + (f0 - threshold) / (f0 - f1) * (t1 - t0);
        }
    }
    throw Error(Errc::never_declines, "never declines");
}

TdLine butterfly_velocity(const Couplings& c, const Lattice& lattice, FrontDirection direction,
                          const std::vector<double>& distances, const ButterflyConfig& config) {
    std::vector<double> times;
    for (double t = 0.0; t <= config.t_max + 1e-12; t += config.dt) times.push_back(t);

    WalkEngine engine(c, lattice, +1);
    TdLine line;
    line.direction = direction;

    // separations within the fit window
    struct Probe {
        double r;
        int dx, dy;
    };
    std::vector<Probe> probes;
    for (double r : distances) {
        if (r < config.fit_min - 1e-9 || r > config.fit_max + 1e-9) continue;
        int steps = direction == FrontDirection::axial
                        ? static_cast<int>(std::lround(r))
                        : static_cast<int>(std::lround(r / std::sqrt(2.0)));
        if (steps <= 0) continue;
        double actual = direction == FrontDirection::axial ? steps : steps * std::sqrt(2.0);
        if (std::abs(actual - r) > 1e-6)
            throw Error(Errc::invalid_argument, "distance does not land on a lattice separation");
        probes.push_back({actual, steps, direction == FrontDirection::axial ? 0 : steps});
    }
    if (probes.size() < 3)
        throw Error(Errc::degenerate_fit, "need at least 3 distances inside the fit window");
    std::sort(probes.begin(), probes.end(), [](const Probe& a, const Probe& b) { return a.r < b.r; });
    if (probes.front().r == probes.back().r)
        throw Error(Errc::degenerate_fit, "degenerate fit: all distances equal");

    // shared Omega field per time sample serves every separation
    std::vector<std::vector<double>> values(probes.size());
    for (auto& v : values) v.reserve(times.size());
    for (double t : times) {
        auto field = engine.amplitude_field(t);
        for (std::size_t i = 0; i < probes.size(); ++i) {
            int m = Lattice::wrap(probes[i].dx, lattice.nx());
            int n = Lattice::wrap(probes[i].dy, lattice.ny());
            double u = std::norm(field[static_cast<std::size_t>(n) * lattice.nx() + m]);
            values[i].push_back(1.0 - 8.0 * u + 8.0 * u * u);
        }
    }

    for (std::size_t i = 0; i < probes.size(); ++i) {
        OtocSeries series;
        series.separation = {probes[i].dx, probes[i].dy};
        series.times = times;
        series.values = std::move(values[i]);
        line.points.push_back({probes[i].r, detect_td(series, config.epsilon)});
    }

    // least squares td = slope * r + intercept
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : line.points) {
        sx += p.r;
        sy += p.td;
        sxx += p.r * p.r;
        sxy += p.r * p.td;
    }
    const double np = static_cast<double>(line.points.size());
    const double denom = np * sxx - sx * sx;
    if (denom <= 0.0) throw Error(Errc::degenerate_fit, "degenerate fit");
    line.slope = (np * sxy - sx * sy) / denom;
    line.intercept = (sy - line.slope * sx) / np;
    if (line.slope <= 0.0) throw Error(Errc::degenerate_fit, "nonpositive slope");
    line.v_b = 1.0 / line.slope;
    return line;
}

double velocity_oracle(const Couplings& c, FrontDirection direction) {
    // 1024 is a multiple of 4, so the sin extrema at k = pi/2 are grid points.
    constexpr int kGrid = 1024;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    double best = 0.0;
    for (int q = 0; q < kGrid; ++q) {
        double ky = 2.0 * M_PI * q / kGrid;
        for (int p = 0; p < kGrid; ++p) {
            double kx = 2.0 * M_PI * p / kGrid;
            Velocity v = group_velocity(kx, ky, c);
            double proj = direction == FrontDirection::axial ? std::abs(v.vx)
                                                             : std::abs(v.vx + v.vy) * inv_sqrt2;
            best = std::max(best, proj);
        }
    }
    return best;
}

}  // namespace magnon
