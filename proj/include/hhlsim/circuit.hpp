#pragma once

#include <string>
#include <vector>

#include "hhlsim/statevector.hpp"

namespace hhl {

enum class GateKind {
    H,
    X,
    RY,
    CU3,   // controlled three-angle rotation; qubits = {control, target}
    U1,    // single-qubit phase; carries the global phase of a controlled unitary
    CRY,   // controlled RY; qubits = {control, target}
    CP,    // controlled phase; qubits = {control, target}
    Swap,
    Measure,
};

const char* gate_name(GateKind kind);

struct GateOp {
    GateKind kind;
    std::vector<double> params;  // radians
    std::vector<int> qubits;     // layout indices; controls precede targets
    std::vector<int> clbits;     // Measure only
};

struct CircuitIR {
    RegisterLayout layout;
    std::vector<GateOp> gates;

    int classical_bits() const { return layout.nb + 1; }
};

/// Gate sequence computing the Fourier transform on `count` adjacent qubits
/// starting at `first`: for each qubit from the top down, a Hadamard followed
/// by controlled phases from the lower qubits, then a reversal swap layer.
std::vector<GateOp> qft_decomposition(int first, int count);

/// The inverse transform: the reversed gate list with negated phases.
std::vector<GateOp> iqft_decomposition(int first, int count);

/// Applies the gate ops to a state in order. Measure ops are skipped.
Statevector apply_gate_list(const Statevector& state, const std::vector<GateOp>& ops);

/// Applies the gate list to |0...0>. Measure ops are skipped, so the result
/// is the pre-measurement state.
Statevector replay_circuit(const CircuitIR& ir);

}  // namespace hhl
