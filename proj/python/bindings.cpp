#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hhlsim/problem.hpp"
#include "hhlsim/qasm.hpp"
#include "hhlsim/solver.hpp"

namespace py = pybind11;

namespace {

hhl::EncodingMode encoding_from_string(const std::string& mode) {
    if (mode == "exact") return hhl::EncodingMode::Exact;
    if (mode == "rounded") return hhl::EncodingMode::Rounded;
    throw hhl::DomainError("mode must be 'exact' or 'rounded'");
}

hhl::AncillaMode ancilla_from_string(const std::string& mode) {
    if (mode == "exact") return hhl::AncillaMode::Exact;
    if (mode == "per-qubit") return hhl::AncillaMode::PerQubit;
    throw hhl::DomainError("ancilla must be 'exact' or 'per-qubit'");
}

Eigen::VectorXcd amplitudes_vector(const hhl::Statevector& st) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(st.dimension()));
    for (std::size_t i = 0; i < st.dimension(); ++i)
        v[static_cast<Eigen::Index>(i)] = st.amplitudes()[i];
    return v;
}

py::dict plan_dict(const hhl::EncodingPlan& plan) {
    py::dict d;
    d["t"] = plan.t;
    d["lambda_tilde"] = plan.lambda_tilde;
    d["relative_error"] = plan.relative_error;
    d["C"] = plan.C;
    d["n"] = plan.n;
    d["nb"] = plan.nb;
    d["mode"] = plan.mode == hhl::EncodingMode::Exact ? "exact" : "rounded";
    d["eigenvalues"] = plan.eigs.values;
    return d;
}

hhl::SolveOptions make_options(const std::string& mode, const std::string& ancilla) {
    hhl::SolveOptions opts;
    opts.encoding = encoding_from_string(mode);
    opts.ancilla = ancilla_from_string(ancilla);
    return opts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "statevector simulator and quantum linear-system solver";

    py::register_exception<hhl::EncodingError>(m, "EncodingError", PyExc_ValueError);
    py::register_exception<hhl::DecompositionError>(m, "DecompositionError", PyExc_ValueError);
    py::register_exception<hhl::EmissionError>(m, "EmissionError", PyExc_ValueError);
    py::register_exception<hhl::ImpossibleOutcomeError>(m, "ImpossibleOutcomeError",
                                                        PyExc_ValueError);
    py::register_exception<hhl::ParseError>(m, "ParseError", PyExc_ValueError);

    m.def(
        "solve",
        [](const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, int n,
           std::optional<double> C, const std::string& mode, const std::string& ancilla) {
            const hhl::HermitianSystem system(A, b);
            const hhl::HHLResult r = hhl::solve(system, n, C, make_options(mode, ancilla));
            py::dict d;
            d["solution"] = r.solution;
            d["success_probability"] = r.success_probability;
            d["ratios"] = r.outcome_ratios;
            d["classical_solution"] = r.classical_solution;
            d["fidelity"] = r.solution_fidelity;
            d["plan"] = plan_dict(r.plan);
            return d;
        },
        py::arg("A"), py::arg("b"), py::arg("n"), py::arg("C") = std::nullopt,
        py::arg("mode") = "exact", py::arg("ancilla") = "exact",
        "Run the full pipeline on A x = b and return the solution summary.");

    m.def(
        "trace_run",
        [](const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, int n,
           std::optional<double> C, const std::string& mode, const std::string& ancilla) {
            const hhl::HermitianSystem system(A, b);
            const auto stages = hhl::trace_run(system, n, C, make_options(mode, ancilla));
            py::list out;
            for (const hhl::StageSnapshot& s : stages) {
                py::dict d;
                d["label"] = s.label;
                d["state"] = amplitudes_vector(s.state);
                out.append(d);
            }
            return out;
        },
        py::arg("A"), py::arg("b"), py::arg("n"), py::arg("C") = std::nullopt,
        py::arg("mode") = "exact", py::arg("ancilla") = "exact",
        "Return the ten intermediate states Psi0..Psi9 as dense vectors.");

    m.def(
        "sample",
        [](const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, int n, std::uint64_t shots,
           std::uint64_t seed, std::optional<double> C, const std::string& mode,
           const std::string& ancilla) {
            const hhl::HermitianSystem system(A, b);
            const auto stages = hhl::trace_run(system, n, C, make_options(mode, ancilla));
            const hhl::Statevector& final_state = stages.back().state;
            const hhl::RegisterLayout& layout = final_state.layout_or_throw();
            std::vector<int> qubits{layout.ancilla_qubit()};
            for (int j = 0; j < layout.nb; ++j) qubits.push_back(layout.b_qubit(j));
            const auto counts = hhl::sample(final_state, qubits, shots, seed);
            py::dict d;
            for (const auto& [key, count] : counts) {
                // key bit 0: ancilla; upper bits: b-register value
                py::tuple t = py::make_tuple(key >> 1, key & 1);
                d[t] = count;
            }
            py::dict out;
            out["counts"] = d;
            out["shots"] = shots;
            out["seed"] = seed;
            out["rng"] = hhl::kSampleAlgorithm;
            return out;
        },
        py::arg("A"), py::arg("b"), py::arg("n"), py::arg("shots") = 1024,
        py::arg("seed") = 1, py::arg("C") = std::nullopt, py::arg("mode") = "exact",
        py::arg("ancilla") = "exact",
        "Measure (b, ancilla) of the final pre-measurement state `shots` times.");

    m.def(
        "emit_qasm",
        [](const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b, int n,
           std::optional<double> C) {
            const hhl::HermitianSystem system(A, b);
            const hhl::EncodingPlan plan =
                hhl::make_plan(system, n, C, hhl::EncodingMode::Exact);
            return hhl::emit_qasm(hhl::build_circuit_ir(system, plan));
        },
        py::arg("A"), py::arg("b"), py::arg("n"), py::arg("C") = std::nullopt,
        "Render the solver circuit as OpenQASM 2.0 text.");

    m.def(
        "classical_solve",
        [](const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b) {
            return hhl::classical_solve(hhl::HermitianSystem(A, b));
        },
        py::arg("A"), py::arg("b"), "Direct linear solve of A x = b.");

    m.def(
        "eig_hermitian",
        [](const Eigen::MatrixXcd& A) {
            const hhl::Eigensystem e = hhl::eig_hermitian(A);
            return py::make_tuple(e.values, e.vectors);
        },
        py::arg("A"), "Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian A.");

    m.def(
        "choose_time_and_clock",
        [](const Eigen::VectorXd& eigenvalues, int n, const std::string& mode) {
            const hhl::ClockEncoding enc =
                hhl::choose_time_and_clock(eigenvalues, n, encoding_from_string(mode));
            py::dict d;
            d["t"] = enc.t;
            d["lambda_tilde"] = enc.lambda_tilde;
            d["relative_error"] = enc.relative_error;
            return d;
        },
        py::arg("eigenvalues"), py::arg("n"), py::arg("mode") = "exact",
        "Evolution time and integer clock encoding for the given spectrum.");

    m.def("hadamard", [] { return hhl::hadamard().entries(); });
    m.def("pauli_x", [] { return hhl::pauli_x().entries(); });
    m.def("ry", [](double theta) { return hhl::ry(theta).entries(); }, py::arg("theta"));
    m.def(
        "u3_matrix",
        [](double theta, double phi, double lam, double gamma) {
            return hhl::u3_matrix(hhl::U3Params(theta, phi, lam, gamma)).entries();
        },
        py::arg("theta"), py::arg("phi"), py::arg("lam"), py::arg("gamma") = 0.0);
    m.def("qft", [](int n) { return hhl::qft(n).entries(); }, py::arg("n"));
    m.def("iqft", [](int n) { return hhl::iqft(n).entries(); }, py::arg("n"));

    m.def(
        "cu3_params_from_unitary",
        [](const Eigen::Matrix2cd& U) {
            const hhl::U3Params p = hhl::cu3_params_from_unitary(U);
            return py::make_tuple(p.theta, p.phi, p.lam, p.gamma);
        },
        py::arg("U"), "Angles (theta, phi, lam, gamma) reproducing a 2x2 unitary.");
}
