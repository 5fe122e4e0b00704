#include "hhlsim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hhl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kResidualTol = 1e-12;
constexpr double kPopulatedMass = 1e-12;
constexpr double kAngleResidualTol = 1e-9;

void check_plan_matches(const RegisterLayout& layout, const EncodingPlan& plan,
                        const char* what) {
    if (layout.n != plan.n || layout.nb != plan.nb)
        throw DomainError(std::string(what) + ": plan and state layout disagree");
}

std::vector<int> clock_qubits(const RegisterLayout& layout) {
    std::vector<int> qs(layout.n);
    for (int k = 0; k < layout.n; ++k) qs[k] = layout.clock_qubit(k);
    return qs;
}

std::vector<int> b_qubits(const RegisterLayout& layout) {
    std::vector<int> qs(layout.nb);
    for (int j = 0; j < layout.nb; ++j) qs[j] = layout.b_qubit(j);
    return qs;
}

double mass_outside_clock_zero(const Statevector& state) {
    const RegisterLayout& layout = state.layout_or_throw();
    double mass = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i)
        if (layout.clock_value(i) != 0) mass += std::norm(state.amplitudes()[i]);
    return mass;
}

Statevector clock_hadamard_layer(const Statevector& state) {
    const RegisterLayout& layout = state.layout_or_throw();
    Statevector out = state;
    const GateMatrix h = hadamard();
    for (int k = 0; k < layout.n; ++k) out = apply_unitary(out, h, {layout.clock_qubit(k)});
    return out;
}

Statevector controlled_powers(const Statevector& state, const EncodingPlan& plan, bool inverse) {
    const RegisterLayout& layout = state.layout_or_throw();
    Statevector out = state;
    const std::vector<int> targets = b_qubits(layout);
    if (!inverse) {
        for (int k = 0; k < layout.n; ++k) {
            const GateMatrix u = unitary_from_hamiltonian(plan, std::uint64_t{1} << k, false);
            out = apply_controlled(out, u, {layout.clock_qubit(k)}, targets);
        }
    } else {
        for (int k = layout.n - 1; k >= 0; --k) {
            const GateMatrix u = unitary_from_hamiltonian(plan, std::uint64_t{1} << k, true);
            out = apply_controlled(out, u, {layout.clock_qubit(k)}, targets);
        }
    }
    return out;
}

Statevector clock_fourier(const Statevector& state, bool inverse) {
    const RegisterLayout& layout = state.layout_or_throw();
    const GateMatrix f = inverse ? iqft(layout.n) : qft(layout.n);
    return apply_unitary(state, f, clock_qubits(layout));
}

/// Clock values carrying more than kPopulatedMass probability while the
/// ancilla is |0>.
std::vector<long> populated_clock_values(const Statevector& state) {
    const RegisterLayout& layout = state.layout_or_throw();
    std::vector<double> mass(std::size_t{1} << layout.n, 0.0);
    for (std::size_t i = 0; i < state.dimension(); ++i)
        mass[layout.clock_value(i)] += std::norm(state.amplitudes()[i]);
    std::vector<long> values;
    for (std::size_t c = 0; c < mass.size(); ++c)
        if (mass[c] > kPopulatedMass) values.push_back(static_cast<long>(c));
    return values;
}

double rotation_angle(double C, long c) {
    if (c < 1)
        throw DomainError("ancilla_rotation: clock value 0 is populated; the rotation angle "
                          "is undefined there");
    const double ratio = C / static_cast<double>(c);
    if (ratio > 1.0 + 1e-12)
        throw DomainError("ancilla_rotation: populated clock value " + std::to_string(c) +
                          " is below C = " + std::to_string(C) +
                          "; arcsin argument exceeds 1");
    return 2.0 * std::asin(std::min(ratio, 1.0));
}

}  // namespace

Statevector prepare_b(const Statevector& state, const Eigen::VectorXcd& b) {
    const RegisterLayout& layout = state.layout_or_throw();
    if (std::abs(state.amplitude(0) - Complex{1.0, 0.0}) > 1e-12)
        throw DomainError("prepare_b: state must be |0...0>");
    if (b.size() != Eigen::Index{1} << layout.nb)
        throw DomainError("prepare_b: b length does not match the b-register");
    const double norm = b.norm();
    if (norm < 1e-12) throw ValidationError("prepare_b: b must be nonzero");

    std::vector<Complex> amps(state.dimension(), Complex{0.0, 0.0});
    for (Eigen::Index j = 0; j < b.size(); ++j)
        amps[layout.basis_index(static_cast<std::size_t>(j), 0, 0)] = b[j] / norm;
    return Statevector(layout, std::move(amps));
}

Statevector qpe_forward(const Statevector& state, const EncodingPlan& plan) {
    check_plan_matches(state.layout_or_throw(), plan, "qpe_forward");
    if (mass_outside_clock_zero(state) > kResidualTol)
        throw DomainError("qpe_forward: clock register must be |0...0>");
    Statevector out = clock_hadamard_layer(state);
    out = controlled_powers(out, plan, false);
    return clock_fourier(out, true);
}

Statevector ancilla_rotation(const Statevector& state, const EncodingPlan& plan,
                             AncillaMode mode) {
    const RegisterLayout& layout = state.layout_or_throw();
    check_plan_matches(layout, plan, "ancilla_rotation");
    double ancilla_mass = 0.0;
    for (std::size_t i = 1; i < state.dimension(); i += 2)
        ancilla_mass += std::norm(state.amplitudes()[i]);
    if (ancilla_mass > kResidualTol)
        throw DomainError("ancilla_rotation: ancilla must be |0>");

    const std::vector<long> populated = populated_clock_values(state);

    if (mode == AncillaMode::PerQubit) {
        const std::vector<double> angles = per_qubit_rotation_angles(plan, populated);
        Statevector out = state;
        for (int k = 0; k < layout.n; ++k) {
            if (angles[k] == 0.0) continue;
            out = apply_controlled(out, ry(angles[k]), {layout.clock_qubit(k)},
                                   {layout.ancilla_qubit()});
        }
        return out;
    }

    // Rotate by 2 arcsin(C/c) on each populated clock branch. A rounded
    // encoding leaks small amplitude onto clock values with no defined
    // rotation (0, or below C); those branches stay unrotated and are
    // removed by the ancilla post-selection.
    const bool strict = plan.mode == EncodingMode::Exact;
    std::vector<double> cos_half(std::size_t{1} << layout.n, 1.0);
    std::vector<double> sin_half(std::size_t{1} << layout.n, 0.0);
    for (long c : populated) {
        if (!strict && (c < 1 || plan.C > static_cast<double>(c) * (1.0 + 1e-12))) continue;
        const double theta = rotation_angle(plan.C, c);
        cos_half[static_cast<std::size_t>(c)] = std::cos(theta / 2.0);
        sin_half[static_cast<std::size_t>(c)] = std::sin(theta / 2.0);
    }

    std::vector<Complex> amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (layout.ancilla_value(i) != 0) continue;
        const Complex a = amps[i];
        if (a == Complex{0.0, 0.0}) continue;
        const std::size_t c = layout.clock_value(i);
        amps[i] = a * cos_half[c];
        amps[i | 1] = a * sin_half[c];
    }
    return Statevector(layout, std::move(amps));
}

Postselection postselect_ancilla(const Statevector& state) {
    const RegisterLayout& layout = state.layout_or_throw();
    double p = 0.0;
    for (std::size_t i = 1; i < state.dimension(); i += 2) p += std::norm(state.amplitudes()[i]);
    if (p < 1e-14)
        throw ImpossibleOutcomeError(
            "postselect_ancilla: success probability is zero; the rotation constant C is "
            "misconfigured for this spectrum");
    return postselect(state, layout.ancilla_qubit(), 1);
}

Statevector iqpe_uncompute(const Statevector& state, const EncodingPlan& plan) {
    check_plan_matches(state.layout_or_throw(), plan, "iqpe_uncompute");
    Statevector out = clock_fourier(state, false);
    out = controlled_powers(out, plan, true);
    return clock_hadamard_layer(out);
}

Eigen::VectorXcd classical_solve(const HermitianSystem& system) {
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(system.A);
    if (!lu.isInvertible())
        throw ValidationError("classical_solve: A is singular");
    return lu.solve(system.b);
}

std::vector<double> per_qubit_rotation_angles(const EncodingPlan& plan,
                                              const std::vector<long>& clock_values) {
    if (clock_values.empty())
        throw DomainError("per_qubit_rotation_angles: no clock values given");

    Eigen::MatrixXd bits(static_cast<Eigen::Index>(clock_values.size()), plan.n);
    Eigen::VectorXd target(static_cast<Eigen::Index>(clock_values.size()));
    for (std::size_t r = 0; r < clock_values.size(); ++r) {
        const long c = clock_values[r];
        target[static_cast<Eigen::Index>(r)] = rotation_angle(plan.C, c);
        for (int k = 0; k < plan.n; ++k)
            bits(static_cast<Eigen::Index>(r), k) = (c >> k) & 1 ? 1.0 : 0.0;
    }

    Eigen::VectorXd theta = bits.colPivHouseholderQr().solve(target);
    const double residual = (bits * theta - target).cwiseAbs().maxCoeff();
    if (residual > kAngleResidualTol)
        throw DecompositionError(
            "per_qubit_rotation_angles: no per-qubit angle assignment reproduces "
            "2 arcsin(C/c) on all populated clock values (residual " +
            std::to_string(residual) + ")");
    return std::vector<double>(theta.data(), theta.data() + theta.size());
}

namespace {

struct PipelineRun {
    Statevector final_state;          // pre-measurement (Psi9)
    double success_probability = 0.0;
    std::vector<StageSnapshot> stages;
};

PipelineRun run_pipeline(const HermitianSystem& system, const EncodingPlan& plan,
                         const SolveOptions& options, bool record) {
    PipelineRun run{init_basis_state(RegisterLayout(plan.nb, plan.n), 0), 0.0, {}};
    auto snap = [&](const char* label, const Statevector& st) {
        if (record) run.stages.push_back(StageSnapshot{label, st});
    };

    Statevector st = run.final_state;
    snap("Psi0", st);
    st = prepare_b(st, system.b);
    snap("Psi1", st);
    st = clock_hadamard_layer(st);
    snap("Psi2", st);
    st = controlled_powers(st, plan, false);
    snap("Psi3", st);
    st = clock_fourier(st, true);
    snap("Psi4", st);
    st = ancilla_rotation(st, plan, options.ancilla);
    snap("Psi5", st);
    // The post-selected branch is recorded for inspection; the pipeline
    // keeps evolving the full state and selects after the uncompute.
    Postselection mid = postselect_ancilla(st);
    snap("Psi6", mid.state);
    st = clock_fourier(st, false);
    snap("Psi7", st);
    st = controlled_powers(st, plan, true);
    snap("Psi8", st);
    st = clock_hadamard_layer(st);
    snap("Psi9", st);

    run.final_state = st;
    run.success_probability = mid.probability;
    return run;
}

}  // namespace

HHLResult solve(const HermitianSystem& system, int n, std::optional<double> C,
                const SolveOptions& options) {
    const EncodingPlan plan = make_plan(system, n, C, options.encoding);
    PipelineRun run = run_pipeline(system, plan, options, options.with_trace);

    HHLResult result;
    result.plan = plan;
    result.success_probability = run.success_probability;
    if (options.with_trace) result.trace = std::move(run.stages);

    const Postselection post = postselect_ancilla(run.final_state);
    const RegisterLayout& layout = post.state.layout_or_throw();

    Eigen::VectorXcd x(system.dim());
    for (Eigen::Index j = 0; j < x.size(); ++j)
        x[j] = post.state.amplitude(layout.basis_index(static_cast<std::size_t>(j), 0, 1));
    const double xnorm = x.norm();
    if (xnorm < 1e-12)
        throw ImpossibleOutcomeError("solve: post-selected state has no b-register support");
    result.solution = x / xnorm;

    result.outcome_ratios.resize(static_cast<std::size_t>(x.size()));
    double ref = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double p = std::norm(result.solution[j]);
        result.outcome_ratios[static_cast<std::size_t>(j)] = p;
        if (ref == 0.0 && p > 1e-14) ref = p;
    }
    if (ref > 0.0)
        for (double& r : result.outcome_ratios) r /= ref;

    HermitianSystem normalized(system.A, system.b / system.b.norm());
    result.classical_solution = classical_solve(normalized);
    Eigen::VectorXcd xc = result.classical_solution / result.classical_solution.norm();
    result.solution_fidelity = std::norm(xc.dot(result.solution));
    return result;
}

std::vector<StageSnapshot> trace_run(const HermitianSystem& system, int n,
                                     std::optional<double> C, const SolveOptions& options) {
    const EncodingPlan plan = make_plan(system, n, C, options.encoding);
    return run_pipeline(system, plan, options, true).stages;
}

}  // namespace hhl
