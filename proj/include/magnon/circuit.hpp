#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "magnon/errors.hpp"

namespace magnon {

inline constexpr int kMaxQubits = 20;  // statevector memory guard

struct Statevector {
    int qubits = 0;
    Eigen::VectorXcd amplitudes;

    explicit Statevector(int nqubits);
    static Statevector basis_state(int nqubits, std::uint64_t bits);

    double norm() const { return amplitudes.norm(); }
};

enum class GateKind { phase, rot_y, rot_z, cnot, unitary2q };

struct Gate {
    GateKind kind = GateKind::phase;
    double angle = 0.0;
    int target = 0;
    int control = -1;         // cnot / unitary2q second qubit
    Eigen::Matrix4cd matrix;  // unitary2q only

    // phase: diag(1, e^{i angle}); rot_y/rot_z: exp(-i angle sigma/2).
    Eigen::Matrix2cd matrix1q() const;
};

struct CircuitMeta {
    double delta_t = 0.0;
    int steps = 0;
    double j1 = -1.0;
};

struct Circuit {
    int qubits = 0;
    std::vector<Gate> gates;
    CircuitMeta meta;
};

// One phase gate per qubit implementing exp(-i delta_t sum_n n_n)
// (the on-site flank of the split step at J1 = -1).
Circuit build_u1(int qubits, double delta_t);

// Two-qubit fragment on qubits (0, 1) whose composed unitary equals
// exp(+i delta_t (s+ s- + s- s+)) exactly (hopping factor at J1 = -1),
// realized as CNOT-conjugated controlled rotation (cx/ry/rz only).
Circuit build_u2_pair(double delta_t);

// Symmetric split step for the 1D bosonic chain Hamiltonian
// H = -2 j1 sum_n n_n + j1 sum_n (hop_n), constant dropped. The on-site
// phases commute with every hopping term; the hopping bonds split into
// even/odd sublayers arranged palindromically (even half, odd full, even
// half) so the composed step is second-order accurate.
Circuit build_trotter_step(int qubits, double delta_t, double j1, bool periodic = false);

// Prep (ry(pi) at flip_site, if >= 0) followed by ceil(t/max_delta_t)
// identical steps of size t/steps.
Circuit build_walk_circuit(int qubits, double total_t, double max_delta_t, double j1,
                           int flip_site, bool periodic = false);

void append(Circuit& circuit, const Circuit& fragment, const std::vector<int>& qubit_map);

Statevector run(const Circuit& circuit, Statevector state);

// <n_i> per qubit.
std::vector<double> measure_densities(const Statevector& state);

// Single-particle matrix of the chain Hamiltonian above (diag -2 j1,
// off-diagonal j1); the exact reference the circuit converges to.
Eigen::MatrixXd chain_hopping_hamiltonian(int qubits, double j1, bool periodic = false);

std::vector<double> chain_exact_densities(int qubits, double j1, bool periodic, int flip_site,
                                          double t);

}  // namespace magnon
