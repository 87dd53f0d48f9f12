#pragma once

#include <cmath>
#include <vector>

#include "magnon/errors.hpp"

namespace magnon {

// Exchange constants in units of |J1| with lattice constant a = 1.
// The dispersion below is total over all real (j1, j2); the ferromagnetic
// restriction j1 <= 0, j2 <= 0 is enforced at the API boundaries.
struct Couplings {
    double j1 = -1.0;
    double j2 = 0.0;

    // |j1| if nonzero, else |j2|. Both zero has no energy scale.
    double reference_scale() const {
        if (j1 != 0.0) return std::abs(j1);
        if (j2 != 0.0) return std::abs(j2);
        throw Error(Errc::invalid_argument, "reference scale undefined: j1 and j2 both zero");
    }
};

// Site separation r = r_{m,n} - r_0 in lattice units.
struct Displacement {
    int dx = 0;
    int dy = 0;

    double norm() const { return std::hypot(static_cast<double>(dx), static_cast<double>(dy)); }
};

// Periodic square lattice, sites (m, n) with m in [0,nx), n in [0,ny).
// Site index = n*nx + m.
class Lattice {
public:
    Lattice(int nx, int ny) : nx_(nx), ny_(ny) {
        if (nx < 1 || ny < 1)
            throw Error(Errc::invalid_argument, "lattice dimensions must be >= 1");
    }

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int sites() const { return nx_ * ny_; }

    static int wrap(int v, int n) {
        int w = v % n;
        return w < 0 ? w + n : w;
    }

    int site_index(int m, int n) const { return wrap(n, ny_) * nx_ + wrap(m, nx_); }
    int site_m(int index) const { return index % nx_; }
    int site_n(int index) const { return index / nx_; }

    // Wrapped displacement from `origin` to `site`, components in
    // (-n/2, n/2] so that norms are minimal on the torus.
    Displacement displacement(int site, int origin) const {
        int dm = wrap(site_m(site) - site_m(origin), nx_);
        int dn = wrap(site_n(site) - site_n(origin), ny_);
        if (dm > nx_ / 2) dm -= nx_;
        if (dn > ny_ / 2) dn -= ny_;
        return {dm, dn};
    }

private:
    int nx_;
    int ny_;
};

struct KPoint {
    double kx = 0.0;
    double ky = 0.0;
};

// Conjugate momentum grid, k = (2*pi*p/nx, 2*pi*q/ny), p fastest.
// Closed under k -> -k modulo 2*pi.
class KGrid {
public:
    explicit KGrid(const Lattice& lattice) {
        points_.reserve(static_cast<std::size_t>(lattice.sites()));
        for (int q = 0; q < lattice.ny(); ++q)
            for (int p = 0; p < lattice.nx(); ++p)
                points_.push_back({2.0 * M_PI * p / lattice.nx(), 2.0 * M_PI * q / lattice.ny()});
    }

    std::size_t size() const { return points_.size(); }
    const KPoint& operator[](std::size_t i) const { return points_[i]; }
    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

private:
    std::vector<KPoint> points_;
};

inline double gamma1(double kx, double ky) { return 0.5 * (std::cos(kx) + std::cos(ky)); }

inline double gamma2(double kx, double ky) {
    return 0.5 * (std::cos(kx + ky) + std::cos(kx - ky));
}

// Magnon dispersion w_k = 2[J1(1-gamma1) + J2(1-gamma2)], hbar = 1.
inline double dispersion(double kx, double ky, const Couplings& c) {
    return 2.0 * (c.j1 * (1.0 - gamma1(kx, ky)) + c.j2 * (1.0 - gamma2(kx, ky)));
}

struct Velocity {
    double vx = 0.0;
    double vy = 0.0;
};

// Analytic gradient of the dispersion.
inline Velocity group_velocity(double kx, double ky, const Couplings& c) {
    double vx = c.j1 * std::sin(kx) + 2.0 * c.j2 * std::sin(kx) * std::cos(ky);
    double vy = c.j1 * std::sin(ky) + 2.0 * c.j2 * std::cos(kx) * std::sin(ky);
    return {vx, vy};
}

}  // namespace magnon
