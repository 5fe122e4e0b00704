#include "hhlsim/qasm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <sstream>

namespace hhl {

namespace {

constexpr double kPi = std::numbers::pi;

/// Prints an angle as a small multiple of pi when it is one (pi, -pi/2,
/// 3*pi/4, ...), otherwise with 17 significant digits.
std::string format_angle(double v) {
    if (v == 0.0) return "0";
    for (int q : {1, 2, 3, 4, 6, 8, 12, 16}) {
        const double scaled = v * static_cast<double>(q) / kPi;
        const double rounded = std::round(scaled);
        if (rounded == 0.0 || std::abs(rounded) > 64.0) continue;
        // A fraction may replace the numeric literal only when it reproduces
        // the angle to a couple of ulp, so the text round-trips losslessly.
        if (std::abs(v - rounded * kPi / static_cast<double>(q)) > 4.0e-16 * std::abs(v))
            continue;
        long p = static_cast<long>(rounded);
        long den = q;
        const long g = std::gcd(std::abs(p), den);
        p /= g;
        den /= g;
        std::string out = p < 0 ? "-" : "";
        const long pa = std::abs(p);
        if (pa != 1) out += std::to_string(pa) + "*";
        out += "pi";
        if (den != 1) out += "/" + std::to_string(den);
        return out;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// RY angle that prepares a real two-component unit vector from |0>,
/// or an X gate when b is exactly |1>.
void append_state_prep(std::vector<GateOp>& ops, const Eigen::VectorXcd& b, int qubit) {
    Eigen::VectorXcd bn = b / b.norm();
    for (Eigen::Index j = 0; j < bn.size(); ++j)
        if (std::abs(bn[j].imag()) > 1e-12)
            throw EmissionError(
                "build_circuit_ir: complex b has no RY state preparation; only real b is "
                "supported");
    const double b0 = bn[0].real();
    const double b1 = bn[1].real();
    if (std::abs(b0) < 1e-15 && b1 > 0.0) {
        ops.push_back(GateOp{GateKind::X, {}, {qubit}, {}});
        return;
    }
    const double theta = 2.0 * std::atan2(b1, b0);
    ops.push_back(GateOp{GateKind::RY, {theta}, {qubit}, {}});
}

void append_controlled_power(std::vector<GateOp>& ops, const EncodingPlan& plan, int k,
                             bool inverse, const RegisterLayout& layout) {
    const GateMatrix u = unitary_from_hamiltonian(plan, std::uint64_t{1} << k, inverse);
    const U3Params p = cu3_params_from_unitary(u.entries());
    ops.push_back(GateOp{GateKind::CU3,
                         {p.theta, p.phi, p.lam},
                         {layout.clock_qubit(k), layout.b_qubit(0)},
                         {}});
    // The controlled gate's global phase lands on the control qubit.
    if (std::abs(p.gamma) > 1e-12)
        ops.push_back(GateOp{GateKind::U1, {p.gamma}, {layout.clock_qubit(k)}, {}});
}

}  // namespace

CircuitIR build_circuit_ir(const HermitianSystem& system, const EncodingPlan& plan,
                           const EmitOptions& options) {
    if (plan.mode != EncodingMode::Exact)
        throw EmissionError("build_circuit_ir: only exact-mode plans have a faithful circuit");
    if (system.nb() != plan.nb)
        throw DomainError("build_circuit_ir: plan does not match the system");
    if (plan.nb != 1)
        throw EmissionError(
            "build_circuit_ir: only a one-qubit b-register is supported for emission");

    const RegisterLayout layout(plan.nb, plan.n);
    CircuitIR ir{layout, {}};

    append_state_prep(ir.gates, system.b, layout.b_qubit(0));

    for (int k = 0; k < plan.n; ++k)
        ir.gates.push_back(GateOp{GateKind::H, {}, {layout.clock_qubit(k)}, {}});

    for (int k = 0; k < plan.n; ++k)
        append_controlled_power(ir.gates, plan, k, false, layout);

    for (GateOp& op : iqft_decomposition(layout.clock_qubit(0), plan.n))
        ir.gates.push_back(std::move(op));

    const std::vector<double> angles = per_qubit_rotation_angles(plan, plan.lambda_tilde);
    for (int k = plan.n - 1; k >= 0; --k) {
        if (std::abs(angles[k]) < 1e-12) continue;
        ir.gates.push_back(GateOp{GateKind::CRY,
                                  {angles[k]},
                                  {layout.clock_qubit(k), layout.ancilla_qubit()},
                                  {}});
    }

    for (GateOp& op : qft_decomposition(layout.clock_qubit(0), plan.n))
        ir.gates.push_back(std::move(op));

    for (int k = plan.n - 1; k >= 0; --k)
        append_controlled_power(ir.gates, plan, k, true, layout);

    for (int k = 0; k < plan.n; ++k)
        ir.gates.push_back(GateOp{GateKind::H, {}, {layout.clock_qubit(k)}, {}});

    if (options.include_measurements) {
        ir.gates.push_back(
            GateOp{GateKind::Measure, {}, {layout.ancilla_qubit()}, {0}});
        for (int j = 0; j < plan.nb; ++j)
            ir.gates.push_back(GateOp{GateKind::Measure, {}, {layout.b_qubit(j)}, {1 + j}});
    }
    return ir;
}

std::string emit_qasm(const CircuitIR& ir) {
    std::ostringstream os;
    os << "OPENQASM 2.0;\n";
    os << "include \"qelib1.inc\";\n";
    os << "qreg q[" << ir.layout.total_qubits() << "];\n";
    os << "creg c[" << ir.classical_bits() << "];\n";

    for (const GateOp& op : ir.gates) {
        if (op.kind == GateKind::Measure) {
            if (op.qubits.size() != 1 || op.clbits.size() != 1)
                throw EmissionError("emit_qasm: malformed measure op");
            os << "measure q[" << op.qubits[0] << "] -> c[" << op.clbits[0] << "];\n";
            continue;
        }
        const char* name = gate_name(op.kind);
        switch (op.kind) {
            case GateKind::H:
            case GateKind::X:
            case GateKind::RY:
            case GateKind::U1:
            case GateKind::CU3:
            case GateKind::CRY:
            case GateKind::CP:
            case GateKind::Swap:
                break;
            default:
                throw EmissionError(std::string("emit_qasm: gate '") + name +
                                    "' has no OpenQASM 2.0 form");
        }
        os << name;
        if (!op.params.empty()) {
            os << "(";
            for (std::size_t i = 0; i < op.params.size(); ++i) {
                if (i) os << ",";
                os << format_angle(op.params[i]);
            }
            os << ")";
        }
        os << " ";
        for (std::size_t i = 0; i < op.qubits.size(); ++i) {
            if (i) os << ",";
            os << "q[" << op.qubits[i] << "]";
        }
        os << ";\n";
    }
    return os.str();
}

}  // namespace hhl
