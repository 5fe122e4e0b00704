#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hhlsim/encoding.hpp"

namespace hhl {

enum class AncillaMode {
    Exact,     // one conditioned rotation per populated clock value
    PerQubit,  // controlled-RY(theta_k) from each clock qubit
};

struct SolveOptions {
    EncodingMode encoding = EncodingMode::Exact;
    AncillaMode ancilla = AncillaMode::Exact;
    bool with_trace = false;
};

/// One named intermediate state of the pipeline.
struct StageSnapshot {
    std::string label;  // "Psi0" .. "Psi9"
    Statevector state;
};

struct HHLResult {
    Eigen::VectorXcd solution;            // unit-norm solution direction
    double success_probability = 0.0;     // ancilla = 1 mass
    std::vector<double> outcome_ratios;   // |x_i|^2 relative to the first nonzero component
    Eigen::VectorXcd classical_solution;  // A^{-1} applied to the normalized b
    double solution_fidelity = 0.0;       // overlap^2 with the normalized classical solution
    EncodingPlan plan;
    std::optional<std::vector<StageSnapshot>> trace;
};

/// Loads the normalized b into the b-register of the all-zeros state.
Statevector prepare_b(const Statevector& state, const Eigen::VectorXcd& b);

/// Phase estimation: Hadamard layer on the clock, controlled U^{2^k} from
/// clock qubit k onto the b-register, then the inverse Fourier transform on
/// the clock. Requires the clock register in |0...0>.
Statevector qpe_forward(const Statevector& state, const EncodingPlan& plan);

/// Rotates the ancilla by RY(2 arcsin(C/c)) conditioned on each populated
/// clock value c. Requires the ancilla in |0> and C <= c for every populated
/// c. PerQubit mode instead derives one angle per clock qubit and throws
/// DecompositionError when no consistent assignment exists.
Statevector ancilla_rotation(const Statevector& state, const EncodingPlan& plan, AncillaMode mode);

/// Projects the ancilla onto |1>. Throws ImpossibleOutcomeError when the
/// success probability is numerically zero.
Postselection postselect_ancilla(const Statevector& state);

/// Inverse phase estimation: Fourier transform on the clock, inverse
/// controlled powers (highest first), Hadamard layer. Returns the clock to
/// |0...0> up to numerical residue.
Statevector iqpe_uncompute(const Statevector& state, const EncodingPlan& plan);

/// Direct linear solve of A x = b, independent of the quantum pipeline.
Eigen::VectorXcd classical_solve(const HermitianSystem& system);

/// Full pipeline: prepare, phase-estimate, rotate, uncompute, post-select.
HHLResult solve(const HermitianSystem& system, int n, std::optional<double> C = std::nullopt,
                const SolveOptions& options = {});

/// The ten stage snapshots Psi0..Psi9 of a run. Psi6 is the post-selected
/// branch of Psi5, recorded for inspection; the pipeline itself continues
/// from Psi5 and post-selects only after the uncompute.
std::vector<StageSnapshot> trace_run(const HermitianSystem& system, int n,
                                     std::optional<double> C = std::nullopt,
                                     const SolveOptions& options = {});

/// Per-clock-qubit RY angles theta_k with sum_k theta_k c_k = 2 arcsin(C/c)
/// for every clock value c in `clock_values`. Throws DecompositionError when
/// the system has no solution.
std::vector<double> per_qubit_rotation_angles(const EncodingPlan& plan,
                                              const std::vector<long>& clock_values);

}  // namespace hhl
