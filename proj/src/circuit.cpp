#include "magnon/circuit.hpp"

#include <cmath>

namespace magnon {

namespace {

using complexd = std::complex<double>;

void apply_1q(Eigen::VectorXcd& amps, int qubit, const Eigen::Matrix2cd& u) {
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
    for (std::uint64_t s = 0; s < dim; ++s) {
        if (s & bit) continue;
        complexd a0 = amps(static_cast<Eigen::Index>(s));
        complexd a1 = amps(static_cast<Eigen::Index>(s | bit));
        amps(static_cast<Eigen::Index>(s)) = u(0, 0) * a0 + u(0, 1) * a1;
        amps(static_cast<Eigen::Index>(s | bit)) = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void apply_cnot(Eigen::VectorXcd& amps, int control, int target) {
    const std::uint64_t cbit = std::uint64_t{1} << control;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
    for (std::uint64_t s = 0; s < dim; ++s)
        if ((s & cbit) && !(s & tbit))
            std::swap(amps(static_cast<Eigen::Index>(s)),
                      amps(static_cast<Eigen::Index>(s | tbit)));
}

void apply_2q(Eigen::VectorXcd& amps, int q0, int q1, const Eigen::Matrix4cd& u) {
    const std::uint64_t b0 = std::uint64_t{1} << q0;
    const std::uint64_t b1 = std::uint64_t{1} << q1;
    const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
    for (std::uint64_t s = 0; s < dim; ++s) {
        if (s & (b0 | b1)) continue;
        std::uint64_t idx[4] = {s, s | b0, s | b1, s | b0 | b1};
        Eigen::Vector4cd v;
        for (int i = 0; i < 4; ++i) v(i) = amps(static_cast<Eigen::Index>(idx[i]));
        v = u * v;
        for (int i = 0; i < 4; ++i) amps(static_cast<Eigen::Index>(idx[i])) = v(i);
    }
}

void check_qubit(int qubit, int nqubits) {
    if (qubit < 0 || qubit >= nqubits)
        throw Error(Errc::invalid_argument, "gate target out of range");
}

}  // namespace

Statevector::Statevector(int nqubits) : qubits(nqubits) {
    if (nqubits < 1) throw Error(Errc::invalid_argument, "qubit count must be >= 1");
    if (nqubits > kMaxQubits)
        throw Error(Errc::too_large,
                    "too large: statevector capped at " + std::to_string(kMaxQubits) + " qubits");
    amplitudes = Eigen::VectorXcd::Zero(Eigen::Index{1} << nqubits);
    amplitudes(0) = 1.0;
}

Statevector Statevector::basis_state(int nqubits, std::uint64_t bits) {
    Statevector sv(nqubits);
    if (bits >= (std::uint64_t{1} << nqubits))
        throw Error(Errc::invalid_argument, "basis state out of range");
    sv.amplitudes(0) = 0.0;
    sv.amplitudes(static_cast<Eigen::Index>(bits)) = 1.0;
    return sv;
}

Eigen::Matrix2cd Gate::matrix1q() const {
    Eigen::Matrix2cd u;
    const double half = 0.5 * angle;
    switch (kind) {
        case GateKind::phase:
            u << 1.0, 0.0, 0.0, std::polar(1.0, angle);
            return u;
        case GateKind::rot_y:
            u << std::cos(half), -std::sin(half), std::sin(half), std::cos(half);
            return u;
        case GateKind::rot_z:
            u << std::polar(1.0, -half), 0.0, 0.0, std::polar(1.0, half);
            return u;
        default:
            throw Error(Errc::invalid_argument, "not a single-qubit gate");
    }
}

Circuit build_u1(int qubits, double delta_t) {
    if (qubits < 1) throw Error(Errc::invalid_argument, "qubit count must be >= 1");
    Circuit c;
    c.qubits = qubits;
    c.meta.delta_t = delta_t;
    for (int q = 0; q < qubits; ++q)
        c.gates.push_back({GateKind::phase, -delta_t, q, -1, {}});
    return c;
}

Circuit build_u2_pair(double delta_t) {
    // exp(+i dt (s+ s- + s- s+)) == CNOT(0,1) CRX(1->0, phi) CNOT(0,1)
    // with phi = -2 dt and the controlled rotation in ABC form (cx/ry/rz).
    const double phi = -2.0 * delta_t;
    const double quarter = M_PI / 2.0;
    Circuit c;
    c.qubits = 2;
    c.meta.delta_t = delta_t;
    auto cnot = [](int control, int target) { return Gate{GateKind::cnot, 0.0, target, control, {}}; };
    c.gates.push_back(cnot(0, 1));
    c.gates.push_back({GateKind::rot_z, quarter, 0, -1, {}});
    c.gates.push_back(cnot(1, 0));
    c.gates.push_back({GateKind::rot_y, -0.5 * phi, 0, -1, {}});
    c.gates.push_back(cnot(1, 0));
    c.gates.push_back({GateKind::rot_y, 0.5 * phi, 0, -1, {}});
    c.gates.push_back({GateKind::rot_z, -quarter, 0, -1, {}});
    c.gates.push_back(cnot(0, 1));
    return c;
}

void append(Circuit& circuit, const Circuit& fragment, const std::vector<int>& qubit_map) {
    if (static_cast<int>(qubit_map.size()) != fragment.qubits)
        throw Error(Errc::dimension_mismatch, "qubit map size does not match fragment");
    for (int q : qubit_map) check_qubit(q, circuit.qubits);
    for (Gate g : fragment.gates) {
        g.target = qubit_map[static_cast<std::size_t>(g.target)];
        if (g.control >= 0) g.control = qubit_map[static_cast<std::size_t>(g.control)];
        circuit.gates.push_back(g);
    }
}

Circuit build_trotter_step(int qubits, double delta_t, double j1, bool periodic) {
    if (qubits < 2) throw Error(Errc::invalid_argument, "step needs at least 2 qubits");
    Circuit step;
    step.qubits = qubits;
    step.meta = {delta_t, 1, j1};

    // flank phases: exp(+i j1 sum_n n_n dt) each side, totaling the on-site
    // -2 j1 coefficient; they commute with the hopping so the split is exact
    const double onsite_phase = j1 * delta_t;
    auto u1_flank = [&]() {
        for (int q = 0; q < qubits; ++q)
            step.gates.push_back({GateKind::phase, onsite_phase, q, -1, {}});
    };
    // hopping factor per bond: exp(-i j1 dt hop)
    auto u2_bond = [&](int a, int b, double dt) {
        append(step, build_u2_pair(-j1 * dt), {a, b});
    };

    std::vector<std::pair<int, int>> even, odd;
    for (int i = 0; i + 1 < qubits; ++i)
        (i % 2 == 0 ? even : odd).push_back({i, i + 1});
    if (periodic && qubits > 2) odd.push_back({qubits - 1, 0});

    u1_flank();
    for (auto [a, b] : even) u2_bond(a, b, 0.5 * delta_t);
    for (auto [a, b] : odd) u2_bond(a, b, delta_t);
    for (auto it = even.rbegin(); it != even.rend(); ++it) u2_bond(it->first, it->second, 0.5 * delta_t);
    u1_flank();
    return step;
}

Circuit build_walk_circuit(int qubits, double total_t, double max_delta_t, double j1,
                           int flip_site, bool periodic) {
    if (total_t < 0.0) throw Error(Errc::invalid_argument, "time must be nonnegative");
    if (max_delta_t <= 0.0 && total_t > 0.0)
        throw Error(Errc::invalid_argument, "step size must be positive");
    Circuit c;
    c.qubits = qubits;
    if (flip_site >= 0) {
        check_qubit(flip_site, qubits);
        c.gates.push_back({GateKind::rot_y, M_PI, flip_site, -1, {}});
    }
    int steps = total_t > 0.0 ? static_cast<int>(std::ceil(total_t / max_delta_t - 1e-12)) : 0;
    if (steps > 0) {
        double dt = total_t / steps;
        Circuit step = build_trotter_step(qubits, dt, j1, periodic);
        std::vector<int> identity_map(static_cast<std::size_t>(qubits));
        for (int q = 0; q < qubits; ++q) identity_map[static_cast<std::size_t>(q)] = q;
        for (int s = 0; s < steps; ++s) append(c, step, identity_map);
        c.meta = {dt, steps, j1};
    } else {
        c.meta = {0.0, 0, j1};
    }
    return c;
}

Statevector run(const Circuit& circuit, Statevector state) {
    if (state.qubits != circuit.qubits)
        throw Error(Errc::dimension_mismatch, "statevector does not match circuit width");
    for (const Gate& g : circuit.gates) {
        check_qubit(g.target, circuit.qubits);
        switch (g.kind) {
            case GateKind::phase:
            case GateKind::rot_y:
            case GateKind::rot_z:
                apply_1q(state.amplitudes, g.target, g.matrix1q());
                break;
            case GateKind::cnot:
                check_qubit(g.control, circuit.qubits);
                apply_cnot(state.amplitudes, g.control, g.target);
                break;
            case GateKind::unitary2q:
                check_qubit(g.control, circuit.qubits);
                apply_2q(state.amplitudes, g.target, g.control, g.matrix);
                break;
        }
    }
    return state;
}

std::vector<double> measure_densities(const Statevector& state) {
    std::vector<double> out(static_cast<std::size_t>(state.qubits), 0.0);
    const std::uint64_t dim = static_cast<std::uint64_t>(state.amplitudes.size());
    for (std::uint64_t s = 0; s < dim; ++s) {
        double w = std::norm(state.amplitudes(static_cast<Eigen::Index>(s)));
        if (w == 0.0) continue;
        for (int q = 0; q < state.qubits; ++q)
            if ((s >> q) & 1u) out[static_cast<std::size_t>(q)] += w;
    }
    return out;
}

Eigen::MatrixXd chain_hopping_hamiltonian(int qubits, double j1, bool periodic) {
    if (qubits < 1) throw Error(Errc::invalid_argument, "qubit count must be >= 1");
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(qubits, qubits);
    for (int i = 0; i < qubits; ++i) h(i, i) = -2.0 * j1;
    for (int i = 0; i + 1 < qubits; ++i) h(i, i + 1) = h(i + 1, i) = j1;
    if (periodic && qubits > 2) h(qubits - 1, 0) = h(0, qubits - 1) = j1;
    return h;
}

std::vector<double> chain_exact_densities(int qubits, double j1, bool periodic, int flip_site,
                                          double t) {
    check_qubit(flip_site, qubits);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        chain_hopping_hamiltonian(qubits, j1, periodic));
    Eigen::VectorXcd modes = solver.eigenvectors().row(flip_site).transpose().conjugate().cast<std::complex<double>>();
    for (Eigen::Index i = 0; i < modes.size(); ++i)
        modes(i) *= std::polar(1.0, -solver.eigenvalues()(i) * t);
    Eigen::VectorXcd psi = solver.eigenvectors().cast<std::complex<double>>() * modes;
    std::vector<double> out(static_cast<std::size_t>(qubits));
    for (int i = 0; i < qubits; ++i) out[static_cast<std::size_t>(i)] = std::norm(psi(i));
    return out;
}

}  // namespace magnon
