#pragma once

#include <string>

#include "hhlsim/circuit.hpp"
#include "hhlsim/solver.hpp"

namespace hhl {

struct EmitOptions {
    bool include_measurements = true;
};

/// Builds the explicit gate-level circuit of a solver run: state preparation,
/// Hadamard layer, controlled powers, inverse Fourier decomposition, per-qubit
/// ancilla rotations, Fourier decomposition, inverse controlled powers,
/// Hadamard layer, measurements. Requires an exact-mode plan, a one-qubit
/// b-register, real b, and a valid per-qubit rotation decomposition.
CircuitIR build_circuit_ir(const HermitianSystem& system, const EncodingPlan& plan,
                           const EmitOptions& options = {});

/// Renders the circuit as OpenQASM 2.0. Byte-deterministic: the same IR
/// always yields the same text. Angles that are small multiples of pi print
/// symbolically (pi/2, 3*pi/4, ...), everything else with 17 significant
/// digits.
std::string emit_qasm(const CircuitIR& ir);

}  // namespace hhl
