#include "hhlsim/circuit.hpp"

#include <algorithm>
#include <numbers>

#include "hhlsim/gates.hpp"

namespace hhl {

namespace {
constexpr double kPi = std::numbers::pi;
}

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "h";
        case GateKind::X: return "x";
        case GateKind::RY: return "ry";
        case GateKind::CU3: return "cu3";
        case GateKind::U1: return "u1";
        case GateKind::CRY: return "cry";
        case GateKind::CP: return "cp";
        case GateKind::Swap: return "swap";
        case GateKind::Measure: return "measure";
    }
    return "?";
}

std::vector<GateOp> qft_decomposition(int first, int count) {
    if (first < 0 || count < 1) throw DomainError("qft_decomposition: bad register");
    std::vector<GateOp> ops;
    for (int i = count - 1; i >= 0; --i) {
        ops.push_back(GateOp{GateKind::H, {}, {first + i}, {}});
        for (int m = i - 1; m >= 0; --m)
            ops.push_back(GateOp{GateKind::CP,
                                 {kPi / static_cast<double>(1 << (i - m))},
                                 {first + m, first + i},
                                 {}});
    }
    for (int j = 0; j < count / 2; ++j)
        ops.push_back(GateOp{GateKind::Swap, {}, {first + j, first + count - 1 - j}, {}});
    return ops;
}

std::vector<GateOp> iqft_decomposition(int first, int count) {
    std::vector<GateOp> ops = qft_decomposition(first, count);
    std::reverse(ops.begin(), ops.end());
    for (GateOp& op : ops)
        if (op.kind == GateKind::CP) op.params[0] = -op.params[0];
    return ops;
}

Statevector apply_gate_list(const Statevector& state, const std::vector<GateOp>& ops) {
    Statevector st = state;
    for (const GateOp& op : ops) {
        switch (op.kind) {
            case GateKind::H:
                st = apply_unitary(st, hadamard(), op.qubits);
                break;
            case GateKind::X:
                st = apply_unitary(st, pauli_x(), op.qubits);
                break;
            case GateKind::RY:
                st = apply_unitary(st, ry(op.params.at(0)), op.qubits);
                break;
            case GateKind::CU3: {
                const U3Params p(op.params.at(0), op.params.at(1), op.params.at(2), 0.0);
                st = apply_controlled(st, u3_matrix(p), {op.qubits.at(0)}, {op.qubits.at(1)});
                break;
            }
            case GateKind::U1:
                st = apply_unitary(st, phase_gate(op.params.at(0)), op.qubits);
                break;
            case GateKind::CRY:
                st = apply_controlled(st, ry(op.params.at(0)), {op.qubits.at(0)},
                                      {op.qubits.at(1)});
                break;
            case GateKind::CP:
                st = apply_controlled(st, phase_gate(op.params.at(0)), {op.qubits.at(0)},
                                      {op.qubits.at(1)});
                break;
            case GateKind::Swap:
                st = apply_unitary(st, swap_gate(), op.qubits);
                break;
            case GateKind::Measure:
                break;
        }
    }
    return st;
}

Statevector replay_circuit(const CircuitIR& ir) {
    return apply_gate_list(init_basis_state(ir.layout, 0), ir.gates);
}

}  // namespace hhl
