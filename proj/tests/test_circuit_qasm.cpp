#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "hhlsim/qasm.hpp"
#include "hhlsim/solver.hpp"

using hhl::GateKind;
using hhl::Statevector;
using testutil::kPi;

namespace {

hhl::EncodingPlan example_plan() {
    return hhl::make_plan(testutil::example_system(), testutil::kExampleN, std::nullopt,
                          hhl::EncodingMode::Exact);
}

int count_kind(const hhl::CircuitIR& ir, GateKind kind) {
    return static_cast<int>(std::count_if(ir.gates.begin(), ir.gates.end(),
                                          [&](const hhl::GateOp& op) { return op.kind == kind; }));
}

}  // namespace

TEST_CASE("qft decomposition equals the dense transform") {
    std::mt19937_64 rng(555);
    for (int n = 1; n <= 4; ++n) {
        // Embed the clock at qubits 1..n of a (1, n) layout and compare on
        // random full-register states.
        const hhl::RegisterLayout layout(1, n);
        std::vector<int> clock;
        for (int k = 0; k < n; ++k) clock.push_back(layout.clock_qubit(k));

        for (int trial = 0; trial < 10; ++trial) {
            const Statevector st = testutil::random_state(layout.total_qubits(), rng);
            const Statevector dense = hhl::apply_unitary(st, hhl::qft(n), clock);
            const Statevector gates =
                hhl::apply_gate_list(st, hhl::qft_decomposition(layout.clock_qubit(0), n));
            for (std::size_t i = 0; i < st.dimension(); ++i)
                CHECK(std::abs(dense.amplitudes()[i] - gates.amplitudes()[i]) < 1e-12);
        }
    }
}

TEST_CASE("iqft decomposition is the reversed conjugate and inverts qft") {
    std::mt19937_64 rng(556);
    const hhl::RegisterLayout layout(1, 3);
    const Statevector st = testutil::random_state(layout.total_qubits(), rng);

    const Statevector dense = hhl::apply_unitary(st, hhl::iqft(3), {1, 2, 3});
    const Statevector gates = hhl::apply_gate_list(st, hhl::iqft_decomposition(1, 3));
    for (std::size_t i = 0; i < st.dimension(); ++i)
        CHECK(std::abs(dense.amplitudes()[i] - gates.amplitudes()[i]) < 1e-12);

    Statevector round = hhl::apply_gate_list(st, hhl::qft_decomposition(1, 3));
    round = hhl::apply_gate_list(round, hhl::iqft_decomposition(1, 3));
    for (std::size_t i = 0; i < st.dimension(); ++i)
        CHECK(std::abs(round.amplitudes()[i] - st.amplitudes()[i]) < 1e-12);
}

TEST_CASE("build_circuit_ir lays out the example circuit") {
    const hhl::CircuitIR ir = hhl::build_circuit_ir(testutil::example_system(), example_plan());

    CHECK(ir.layout.total_qubits() == 4);
    CHECK(ir.classical_bits() == 2);

    CHECK(count_kind(ir, GateKind::X) == 1);       // b = (0, 1)
    CHECK(count_kind(ir, GateKind::H) == 8);       // two clock layers + both Fourier blocks
    CHECK(count_kind(ir, GateKind::CU3) == 4);     // U, U^2 and their inverses
    CHECK(count_kind(ir, GateKind::U1) == 2);      // global phases of U and U^-1
    CHECK(count_kind(ir, GateKind::CRY) == 2);
    CHECK(count_kind(ir, GateKind::CP) == 2);      // one per Fourier decomposition
    CHECK(count_kind(ir, GateKind::Swap) == 2);
    CHECK(count_kind(ir, GateKind::Measure) == 2);

    // First gate prepares b on the top qubit; last ops measure ancilla and b.
    CHECK(ir.gates.front().kind == GateKind::X);
    CHECK(ir.gates.front().qubits == std::vector<int>{3});
    CHECK(ir.gates.back().kind == GateKind::Measure);
    CHECK(ir.gates.back().qubits == std::vector<int>{3});
    CHECK(ir.gates.back().clbits == std::vector<int>{1});
}

TEST_CASE("replaying the example circuit reproduces the final state") {
    const hhl::CircuitIR ir = hhl::build_circuit_ir(testutil::example_system(), example_plan());
    const Statevector replayed = hhl::replay_circuit(ir);
    CHECK(testutil::max_deviation(replayed, testutil::example_psi9()) < 1e-10);

    const auto stages = hhl::trace_run(testutil::example_system(), testutil::kExampleN);
    CHECK(hhl::fidelity(replayed, stages.back().state) > 1.0 - 1e-12);
}

TEST_CASE("replaying random circuits matches the operator pipeline") {
    std::mt19937_64 rng(9000);
    int built = 0;
    while (built < 25) {
        const testutil::ExactSystem sys = testutil::random_exact_system(rng, 2, true);
        const hhl::HermitianSystem system(sys.A, sys.b);
        const hhl::EncodingPlan plan =
            hhl::make_plan(system, sys.n, std::nullopt, hhl::EncodingMode::Exact);

        const hhl::CircuitIR ir = hhl::build_circuit_ir(system, plan);
        const Statevector replayed = hhl::replay_circuit(ir);
        const auto stages = hhl::trace_run(system, sys.n);
        CHECK(hhl::fidelity(replayed, stages.back().state) > 1.0 - 1e-10);
        ++built;
    }
}

TEST_CASE("build_circuit_ir rejects what it cannot express") {
    const hhl::HermitianSystem sys = testutil::example_system();

    hhl::EncodingPlan rounded = example_plan();
    rounded.mode = hhl::EncodingMode::Rounded;
    CHECK_THROWS_AS(hhl::build_circuit_ir(sys, rounded), hhl::EmissionError);

    Eigen::VectorXcd complex_b(2);
    complex_b << hhl::Complex{0.6, 0.0}, hhl::Complex{0.0, 0.8};
    const hhl::HermitianSystem sys_complex(sys.A, complex_b);
    CHECK_THROWS_AS(hhl::build_circuit_ir(sys_complex, example_plan()), hhl::EmissionError);

    // Four-dimensional b-register: no single-qubit preparation.
    std::mt19937_64 rng(4);
    const Eigen::MatrixXcd V = testutil::random_unitary(4, rng);
    Eigen::VectorXd lambda(4);
    lambda << 1.0, 2.0, 3.0, 5.0;
    Eigen::MatrixXcd A = V * lambda.asDiagonal() * V.adjoint();
    A = ((A + A.adjoint()) / 2.0).eval();
    Eigen::VectorXcd b4(4);
    b4 << 1.0, 0.0, 0.0, 0.0;
    const hhl::HermitianSystem big(A, b4);
    const hhl::EncodingPlan plan4 = hhl::make_plan(big, 3, std::nullopt,
                                                   hhl::EncodingMode::Exact);
    CHECK_THROWS_AS(hhl::build_circuit_ir(big, plan4), hhl::EmissionError);
}

TEST_CASE("real b vectors other than |1> prepare with a single RY") {
    std::mt19937_64 rng(606);
    const testutil::ExactSystem sys = testutil::random_exact_system(rng, 2, true);
    Eigen::VectorXcd b(2);
    b << 0.28, -0.96;
    const hhl::HermitianSystem system(sys.A, b);
    const hhl::EncodingPlan plan =
        hhl::make_plan(system, sys.n, std::nullopt, hhl::EncodingMode::Exact);
    const hhl::CircuitIR ir = hhl::build_circuit_ir(system, plan);

    CHECK(ir.gates.front().kind == GateKind::RY);
    const double theta = ir.gates.front().params.at(0);
    CHECK(std::cos(theta / 2.0) == doctest::Approx(0.28).epsilon(1e-12));
    CHECK(std::sin(theta / 2.0) == doctest::Approx(-0.96).epsilon(1e-12));
}

TEST_CASE("emit_qasm output is byte-deterministic") {
    const std::string once =
        hhl::emit_qasm(hhl::build_circuit_ir(testutil::example_system(), example_plan()));
    const std::string twice =
        hhl::emit_qasm(hhl::build_circuit_ir(testutil::example_system(), example_plan()));
    CHECK(once == twice);
}

TEST_CASE("emit_qasm renders the example circuit") {
    const std::string text =
        hhl::emit_qasm(hhl::build_circuit_ir(testutil::example_system(), example_plan()));

    const std::string expected =
        "OPENQASM 2.0;\n"
        "include \"qelib1.inc\";\n"
        "qreg q[4];\n"
        "creg c[2];\n"
        "x q[3];\n"
        "h q[1];\n"
        "h q[2];\n"
        "cu3(pi/2,-pi/2,pi/2) q[1],q[3];\n"
        "u1(3*pi/4) q[1];\n"
        "cu3(pi,pi,0) q[2],q[3];\n"
        "swap q[1],q[2];\n"
        "h q[1];\n"
        "cp(-pi/2) q[1],q[2];\n"
        "h q[2];\n"
        "cry(pi/3) q[2],q[0];\n"
        "cry(pi) q[1],q[0];\n"
        "h q[2];\n"
        "cp(pi/2) q[1],q[2];\n"
        "h q[1];\n"
        "swap q[1],q[2];\n"
        "cu3(pi,pi,0) q[2],q[3];\n"
        "cu3(pi/2,pi/2,-pi/2) q[1],q[3];\n"
        "u1(-3*pi/4) q[1];\n"
        "h q[1];\n"
        "h q[2];\n"
        "measure q[0] -> c[0];\n"
        "measure q[3] -> c[1];\n";
    CHECK(text == expected);
}

TEST_CASE("gate names cover the emission set") {
    CHECK(std::string(hhl::gate_name(GateKind::H)) == "h");
    CHECK(std::string(hhl::gate_name(GateKind::X)) == "x");
    CHECK(std::string(hhl::gate_name(GateKind::RY)) == "ry");
    CHECK(std::string(hhl::gate_name(GateKind::CU3)) == "cu3");
    CHECK(std::string(hhl::gate_name(GateKind::U1)) == "u1");
    CHECK(std::string(hhl::gate_name(GateKind::CRY)) == "cry");
    CHECK(std::string(hhl::gate_name(GateKind::CP)) == "cp");
    CHECK(std::string(hhl::gate_name(GateKind::Swap)) == "swap");
    CHECK(std::string(hhl::gate_name(GateKind::Measure)) == "measure");
}

namespace {

// Evaluates the emitted angle grammar: 0, [-]pi, [-]p*pi, [-]pi/q,
// [-]p*pi/q, or a plain numeric literal.
double parse_angle(const std::string& token) {
    const std::size_t at = token.find("pi");
    if (at == std::string::npos) return std::stod(token);
    double value = M_PI;
    std::string head = token.substr(0, at);
    if (!head.empty() && head.back() == '*') {
        head.pop_back();
        value *= std::stod(head.empty() ? "1" : head);
    } else if (head == "-") {
        value = -value;
    } else {
        REQUIRE(head.empty());
    }
    const std::string tail = token.substr(at + 2);
    if (!tail.empty()) {
        REQUIRE(tail.front() == '/');
        value /= std::stod(tail.substr(1));
    }
    return value;
}

std::vector<double> angles_in_line(const std::string& line) {
    const std::size_t open = line.find('(');
    if (open == std::string::npos) return {};
    const std::size_t close = line.find(')', open);
    std::vector<double> out;
    std::string token;
    for (std::size_t i = open + 1; i <= close; ++i) {
        if (line[i] == ',' || line[i] == ')') {
            out.push_back(parse_angle(token));
            token.clear();
        } else {
            token += line[i];
        }
    }
    return out;
}

}  // namespace

TEST_CASE("emitted angle parameters survive a text round-trip") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 20; ++trial) {
        const testutil::ExactSystem sys = testutil::random_exact_system(rng, 2, true);
        const hhl::HermitianSystem system(sys.A, sys.b);
        const hhl::EncodingPlan plan =
            hhl::make_plan(system, sys.n, std::nullopt, hhl::EncodingMode::Exact);
        const hhl::CircuitIR ir = hhl::build_circuit_ir(system, plan);

        std::vector<double> expected;
        for (const hhl::GateOp& op : ir.gates)
            for (double p : op.params) expected.push_back(p);

        std::vector<double> parsed;
        std::istringstream text(hhl::emit_qasm(ir));
        std::string line;
        while (std::getline(text, line)) {
            if (line.rfind("OPENQASM", 0) == 0 || line.rfind("include", 0) == 0 ||
                line.rfind("qreg", 0) == 0 || line.rfind("creg", 0) == 0)
                continue;
            for (double v : angles_in_line(line)) parsed.push_back(v);
        }

        REQUIRE(parsed.size() == expected.size());
        for (std::size_t i = 0; i < parsed.size(); ++i) {
            const double scale = std::max(1e-30, std::abs(expected[i]));
            CHECK(std::abs(parsed[i] - expected[i]) / scale < 1e-15);
        }
    }
}
