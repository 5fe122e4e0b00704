#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hhlsim/problem.hpp"
#include "hhlsim/qasm.hpp"
#include "hhlsim/render.hpp"
#include "hhlsim/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitIo = 3;
constexpr int kExitEncoding = 4;

struct CommandArgs {
    std::string input;
    std::string format = "human";
    std::string ancilla = "exact";
    std::string encoding;  // empty: use the problem file's mode
    std::string output;    // empty: stdout
    std::uint64_t shots = 1024;
    std::uint64_t seed = 1;
    bool replay = false;
};

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string gshort(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

hhl::SolveOptions solve_options(const CommandArgs& args, const hhl::Problem& problem) {
    hhl::SolveOptions opts;
    if (!args.encoding.empty())
        opts.encoding = args.encoding == "rounded" ? hhl::EncodingMode::Rounded
                                                   : hhl::EncodingMode::Exact;
    else
        opts.encoding = problem.mode.value_or(hhl::EncodingMode::Exact);
    opts.ancilla =
        args.ancilla == "per-qubit" ? hhl::AncillaMode::PerQubit : hhl::AncillaMode::Exact;
    return opts;
}

void write_output(const CommandArgs& args, const std::string& text) {
    if (args.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(args.output);
    if (!out) throw std::ios_base::failure("cannot open output file: " + args.output);
    out << text;
    out.flush();
    if (!out) throw std::ios_base::failure("cannot write output file: " + args.output);
}

std::string lambda_tilde_list(const hhl::EncodingPlan& plan) {
    std::string out = "[";
    for (std::size_t j = 0; j < plan.lambda_tilde.size(); ++j) {
        if (j) out += ", ";
        out += std::to_string(plan.lambda_tilde[j]);
    }
    return out + "]";
}

std::string ratio_string(const std::vector<double>& ratios) {
    std::string out;
    bool ref_seen = false;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        if (i) out += ":";
        if (!ref_seen && ratios[i] == 1.0) {
            out += "1";
            ref_seen = true;
        } else {
            out += fixed(ratios[i], 6);
        }
    }
    return out;
}

std::string complex_human(hhl::Complex v) { return hhl::format_amplitude_trim(v, 6); }

int cmd_solve(const CommandArgs& args) {
    const hhl::Problem problem = hhl::load_problem(args.input);
    const hhl::HermitianSystem system(problem.A, problem.b);
    const hhl::HHLResult result =
        hhl::solve(system, problem.n, problem.C, solve_options(args, problem));

    std::ostringstream os;
    if (args.format == "csv") {
        os << "index,solution_re,solution_im,probability,ratio,classical_re,classical_im,"
              "success_probability,fidelity\n";
        for (Eigen::Index j = 0; j < result.solution.size(); ++j) {
            os << j << "," << g17(result.solution[j].real()) << ","
               << g17(result.solution[j].imag()) << "," << g17(std::norm(result.solution[j]))
               << "," << g17(result.outcome_ratios[static_cast<std::size_t>(j)]) << ","
               << g17(result.classical_solution[j].real()) << ","
               << g17(result.classical_solution[j].imag()) << ","
               << g17(result.success_probability) << "," << g17(result.solution_fidelity)
               << "\n";
        }
    } else {
        os << "t                   : " << g17(result.plan.t) << "\n";
        os << "lambda_tilde        : " << lambda_tilde_list(result.plan) << "\n";
        os << "C                   : " << gshort(result.plan.C) << "\n";
        os << "mode                : "
           << (result.plan.mode == hhl::EncodingMode::Exact ? "exact" : "rounded") << "\n";
        if (result.plan.mode == hhl::EncodingMode::Rounded) {
            double worst = 0.0;
            for (double e : result.plan.relative_error) worst = std::max(worst, e);
            os << "max encoding error  : " << gshort(worst) << "\n";
        }
        os << "success probability : " << gshort(result.success_probability) << "\n";
        os << "solution            :\n";
        for (Eigen::Index j = 0; j < result.solution.size(); ++j)
            os << "  [" << j << "] " << complex_human(result.solution[j]) << "\n";
        os << "ratio               : " << ratio_string(result.outcome_ratios) << "\n";
        os << "classical solution  :";
        for (Eigen::Index j = 0; j < result.classical_solution.size(); ++j)
            os << " " << complex_human(result.classical_solution[j]);
        os << "\n";
        os << "fidelity            : " << fixed(result.solution_fidelity, 6) << "\n";
    }
    write_output(args, os.str());
    return kExitOk;
}

const char* stage_note(const std::string& label) {
    if (label == "Psi0") return "initial state";
    if (label == "Psi1") return "b loaded into the top register";
    if (label == "Psi2") return "Hadamard layer on the clock";
    if (label == "Psi3") return "controlled powers of U";
    if (label == "Psi4") return "inverse Fourier transform on the clock";
    if (label == "Psi5") return "ancilla rotated";
    if (label == "Psi6") return "ancilla = 1 branch, recorded only";
    if (label == "Psi7") return "Fourier transform on the clock";
    if (label == "Psi8") return "inverse controlled powers of U";
    if (label == "Psi9") return "clock disentangled, pre-measurement";
    return "";
}

int cmd_trace(const CommandArgs& args) {
    const hhl::Problem problem = hhl::load_problem(args.input);
    const hhl::HermitianSystem system(problem.A, problem.b);
    const hhl::SolveOptions opts = solve_options(args, problem);
    const std::vector<hhl::StageSnapshot> stages =
        hhl::trace_run(system, problem.n, problem.C, opts);

    std::optional<hhl::Statevector> replayed;
    if (args.replay) {
        const hhl::EncodingPlan plan =
            hhl::make_plan(system, problem.n, problem.C, opts.encoding);
        replayed = hhl::replay_circuit(hhl::build_circuit_ir(system, plan));
    }

    std::ostringstream os;
    if (args.format == "csv") {
        os << "stage,index,re,im\n";
        for (const hhl::StageSnapshot& snap : stages)
            for (std::size_t i = 0; i < snap.state.dimension(); ++i)
                os << snap.label << "," << i << "," << g17(snap.state.amplitudes()[i].real())
                   << "," << g17(snap.state.amplitudes()[i].imag()) << "\n";
        if (replayed) {
            for (std::size_t i = 0; i < replayed->dimension(); ++i)
                os << "replay," << i << "," << g17(replayed->amplitudes()[i].real()) << ","
                   << g17(replayed->amplitudes()[i].imag()) << "\n";
            os << "replay_fidelity,0," << g17(hhl::fidelity(*replayed, stages.back().state))
               << ",0\n";
        }
    } else {
        for (const hhl::StageSnapshot& snap : stages) {
            os << snap.label << "  [" << stage_note(snap.label) << "]\n";
            os << hhl::format_amplitude_list(snap.state, 4);
            const std::string terms = hhl::format_braket_terms(snap.state, 1e-9, 4);
            if (!terms.empty()) os << "  nonzero terms:\n" << terms;
            os << "\n";
        }
        if (replayed) {
            os << "replay  [circuit re-run from the emitted gate list]\n";
            os << hhl::format_braket_terms(*replayed, 1e-9, 4);
            os << "replay fidelity : " << fixed(hhl::fidelity(*replayed, stages.back().state), 12)
               << "\n";
        }
    }
    write_output(args, os.str());
    return kExitOk;
}

int cmd_sample(const CommandArgs& args) {
    const hhl::Problem problem = hhl::load_problem(args.input);
    const hhl::HermitianSystem system(problem.A, problem.b);
    const hhl::SolveOptions opts = solve_options(args, problem);

    const std::vector<hhl::StageSnapshot> stages =
        hhl::trace_run(system, problem.n, problem.C, opts);
    const hhl::Statevector& final_state = stages.back().state;
    const hhl::RegisterLayout& layout = final_state.layout_or_throw();

    std::vector<int> qubits{layout.ancilla_qubit()};
    for (int j = 0; j < layout.nb; ++j) qubits.push_back(layout.b_qubit(j));
    const auto counts = hhl::sample(final_state, qubits, args.shots, args.seed);

    const std::size_t outcomes = std::size_t{1} << (layout.nb + 1);
    std::vector<std::uint64_t> full(outcomes, 0);
    for (const auto& [key, count] : counts) full[key] = count;

    std::ostringstream os;
    if (args.format == "csv") {
        os << "b,a,count,frequency,shots,seed,rng\n";
        for (std::size_t b = 0; b < (std::size_t{1} << layout.nb); ++b)
            for (std::size_t a = 0; a < 2; ++a) {
                const std::size_t key = (b << 1) | a;
                os << b << "," << a << "," << full[key] << ","
                   << g17(static_cast<double>(full[key]) / static_cast<double>(args.shots))
                   << "," << args.shots << "," << args.seed << "," << hhl::kSampleAlgorithm
                   << "\n";
            }
    } else {
        os << "rng   : " << hhl::kSampleAlgorithm << "\n";
        os << "seed  : " << args.seed << "\n";
        os << "shots : " << args.shots << "\n";
        os << "counts (b a):\n";
        std::uint64_t success = 0;
        for (std::size_t b = 0; b < (std::size_t{1} << layout.nb); ++b)
            for (std::size_t a = 0; a < 2; ++a) {
                const std::size_t key = (b << 1) | a;
                os << "  b=" << b << " a=" << a << " : " << full[key] << "  "
                   << fixed(static_cast<double>(full[key]) / static_cast<double>(args.shots), 6)
                   << "\n";
                if (a == 1) success += full[key];
            }
        os << "P(b | a=1):\n";
        for (std::size_t b = 0; b < (std::size_t{1} << layout.nb); ++b) {
            const std::size_t key = (b << 1) | 1;
            const double p = success ? static_cast<double>(full[key]) /
                                           static_cast<double>(success)
                                     : 0.0;
            os << "  b=" << b << " : " << fixed(p, 6) << "\n";
        }
    }
    write_output(args, os.str());
    return kExitOk;
}

int cmd_emit_qasm(const CommandArgs& args) {
    const hhl::Problem problem = hhl::load_problem(args.input);
    const hhl::HermitianSystem system(problem.A, problem.b);
    const hhl::SolveOptions opts = solve_options(args, problem);
    const hhl::EncodingPlan plan = hhl::make_plan(system, problem.n, problem.C, opts.encoding);
    write_output(args, hhl::emit_qasm(hhl::build_circuit_ir(system, plan)));
    return kExitOk;
}

void add_common(CLI::App* cmd, CommandArgs& args) {
    cmd->add_option("--input", args.input, "problem file")->required();
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"human", "csv"}));
    cmd->add_option("--ancilla", args.ancilla, "ancilla rotation mode")
        ->check(CLI::IsMember({"exact", "per-qubit"}));
    cmd->add_option("--encoding", args.encoding, "eigenvalue encoding mode")
        ->check(CLI::IsMember({"exact", "rounded"}));
    cmd->add_option("--output", args.output, "write results to a file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"statevector simulator for quantum linear-system solves"};
    app.require_subcommand(1);

    CommandArgs args;
    CLI::App* solve = app.add_subcommand("solve", "run the solver and report the solution");
    add_common(solve, args);
    CLI::App* trace = app.add_subcommand("trace", "print every pipeline stage Psi0..Psi9");
    add_common(trace, args);
    trace->add_flag("--replay", args.replay,
                    "also re-run the emitted gate list and report its fidelity");
    CLI::App* sample = app.add_subcommand("sample", "measure the final state repeatedly");
    add_common(sample, args);
    sample->add_option("--shots", args.shots, "number of measurements")
        ->check(CLI::PositiveNumber);
    sample->add_option("--seed", args.seed, "RNG seed");
    CLI::App* emit = app.add_subcommand("emit-qasm", "write the circuit as OpenQASM 2.0");
    add_common(emit, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (solve->parsed()) return cmd_solve(args);
        if (trace->parsed()) return cmd_trace(args);
        if (sample->parsed()) return cmd_sample(args);
        if (emit->parsed()) return cmd_emit_qasm(args);
        std::cerr << "error: no subcommand\n";
        return kExitInvalidInput;
    } catch (const hhl::EncodingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (e.rounded_fallback()) {
            const hhl::RoundedEncoding& r = *e.rounded_fallback();
            double worst = 0.0;
            for (double err : r.relative_error) worst = std::max(worst, err);
            std::cerr << "hint: retry with --encoding rounded (t = " << g17(r.t)
                      << ", max relative error " << gshort(worst) << ")\n";
        }
        return kExitEncoding;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    }
}
