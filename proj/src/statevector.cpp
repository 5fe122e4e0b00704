#include "hhlsim/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace hhl {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kUnitaryTol = 1e-12;
constexpr double kZeroProbTol = 1e-14;

void check_norm(const std::vector<Complex>& amps) {
    double n2 = 0.0;
    for (const Complex& a : amps) n2 += std::norm(a);
    if (std::abs(n2 - 1.0) > kNormTol)
        throw ValidationError("Statevector: amplitudes are not normalized (|norm^2 - 1| = " +
                              std::to_string(std::abs(n2 - 1.0)) + ")");
}

int qubits_for_size(std::size_t size) {
    if (size < 2 || (size & (size - 1)) != 0)
        throw DomainError("Statevector: amplitude count must be a power of two, at least 2");
    int q = 0;
    while ((std::size_t{1} << q) < size) ++q;
    return q;
}

void check_qubits(int num_qubits, const std::vector<int>& qubits, const char* what) {
    if (qubits.empty()) throw DomainError(std::string(what) + ": empty qubit list");
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (qubits[i] < 0 || qubits[i] >= num_qubits)
            throw DomainError(std::string(what) + ": qubit index out of range");
        for (std::size_t j = i + 1; j < qubits.size(); ++j)
            if (qubits[i] == qubits[j])
                throw DomainError(std::string(what) + ": duplicate qubit index");
    }
}

}  // namespace

GateMatrix::GateMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 2)
        throw ValidationError("GateMatrix: matrix must be square with dimension at least 2");
    qubit_count_ = qubits_for_size(static_cast<std::size_t>(entries_.rows()));
    Eigen::MatrixXcd residual = entries_.adjoint() * entries_;
    residual -= Eigen::MatrixXcd::Identity(entries_.rows(), entries_.cols());
    double dev = residual.cwiseAbs().maxCoeff();
    if (dev > kUnitaryTol)
        throw ValidationError("GateMatrix: matrix is not unitary (deviation " +
                              std::to_string(dev) + ")");
}

Statevector::Statevector(int num_qubits, std::vector<Complex> amplitudes)
    : amps_(std::move(amplitudes)), num_qubits_(num_qubits) {
    if (num_qubits_ < 1 || num_qubits_ > 30) throw DomainError("Statevector: bad qubit count");
    if (amps_.size() != (std::size_t{1} << num_qubits_))
        throw DomainError("Statevector: amplitude count does not match qubit count");
    check_norm(amps_);
}

Statevector::Statevector(const RegisterLayout& layout, std::vector<Complex> amplitudes)
    : amps_(std::move(amplitudes)), layout_(layout), num_qubits_(layout.total_qubits()) {
    if (amps_.size() != layout.dimension())
        throw DomainError("Statevector: amplitude count does not match layout");
    check_norm(amps_);
}

Statevector Statevector::basis_state(int num_qubits, std::size_t index) {
    if (num_qubits < 1 || num_qubits > 30) throw DomainError("Statevector: bad qubit count");
    if (index >= (std::size_t{1} << num_qubits))
        throw DomainError("Statevector: basis index out of range");
    std::vector<Complex> amps(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amps[index] = Complex{1.0, 0.0};
    return Statevector(num_qubits, std::move(amps));
}

Complex Statevector::amplitude(std::size_t index) const {
    if (index >= amps_.size()) throw DomainError("Statevector: basis index out of range");
    return amps_[index];
}

const RegisterLayout& Statevector::layout_or_throw() const {
    if (!layout_) throw DomainError("Statevector: operation requires a register layout");
    return *layout_;
}

double Statevector::norm_squared() const {
    double n2 = 0.0;
    for (const Complex& a : amps_) n2 += std::norm(a);
    return n2;
}

/// Internal: result state with the same qubit count and layout annotation.
Statevector with_amplitudes(const Statevector& like, std::vector<Complex> amps) {
    Statevector out;
    out.amps_ = std::move(amps);
    out.layout_ = like.layout();
    out.num_qubits_ = like.num_qubits();
    check_norm(out.amps_);
    return out;
}

Statevector init_basis_state(const RegisterLayout& layout, std::size_t index) {
    if (index >= layout.dimension())
        throw DomainError("init_basis_state: basis index out of range");
    std::vector<Complex> amps(layout.dimension(), Complex{0.0, 0.0});
    amps[index] = Complex{1.0, 0.0};
    return Statevector(layout, std::move(amps));
}

namespace {

/// Shared core of apply_unitary / apply_controlled. Walks every basis index
/// whose target bits are zero (skipping those that miss the control pattern)
/// and mixes the 2^k-amplitude block it anchors.
std::vector<Complex> apply_blocks(const std::vector<Complex>& src, const Eigen::MatrixXcd& M,
                                  const std::vector<int>& targets, std::uint64_t control_mask) {
    const std::size_t dim = src.size();
    const std::size_t gdim = std::size_t{1} << targets.size();

    std::uint64_t target_mask = 0;
    for (int t : targets) target_mask |= std::uint64_t{1} << t;

    // offset[m] = basis offset of gate-local index m
    std::vector<std::size_t> offset(gdim, 0);
    for (std::size_t m = 1; m < gdim; ++m) {
        std::size_t off = 0;
        for (std::size_t bit = 0; bit < targets.size(); ++bit)
            if (m & (std::size_t{1} << bit)) off |= std::size_t{1} << targets[bit];
        offset[m] = off;
    }

    std::vector<Complex> out(src);
    std::vector<Complex> block(gdim);
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & target_mask) continue;
        if ((base & control_mask) != control_mask) continue;
        for (std::size_t m = 0; m < gdim; ++m) block[m] = src[base | offset[m]];
        for (std::size_t r = 0; r < gdim; ++r) {
            Complex acc{0.0, 0.0};
            for (std::size_t c = 0; c < gdim; ++c) acc += M(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * block[c];
            out[base | offset[r]] = acc;
        }
    }
    return out;
}

}  // namespace

Statevector apply_unitary(const Statevector& state, const GateMatrix& gate,
                          const std::vector<int>& targets) {
    check_qubits(state.num_qubits(), targets, "apply_unitary");
    if (gate.qubit_count() != static_cast<int>(targets.size()))
        throw DomainError("apply_unitary: gate size does not match target count");
    return with_amplitudes(state, apply_blocks(state.amplitudes(), gate.entries(), targets, 0));
}

Statevector apply_controlled(const Statevector& state, const GateMatrix& gate,
                             const std::vector<int>& controls, const std::vector<int>& targets) {
    check_qubits(state.num_qubits(), targets, "apply_controlled");
    if (controls.empty()) throw DomainError("apply_controlled: empty control list");
    std::vector<int> all = controls;
    all.insert(all.end(), targets.begin(), targets.end());
    check_qubits(state.num_qubits(), all, "apply_controlled");
    if (gate.qubit_count() != static_cast<int>(targets.size()))
        throw DomainError("apply_controlled: gate size does not match target count");

    std::uint64_t control_mask = 0;
    for (int c : controls) control_mask |= std::uint64_t{1} << c;
    return with_amplitudes(state,
                           apply_blocks(state.amplitudes(), gate.entries(), targets, control_mask));
}

Postselection postselect(const Statevector& state, int qubit, int outcome) {
    if (qubit < 0 || qubit >= state.num_qubits())
        throw DomainError("postselect: qubit index out of range");
    if (outcome != 0 && outcome != 1) throw DomainError("postselect: outcome must be 0 or 1");

    const std::uint64_t mask = std::uint64_t{1} << qubit;
    const auto& src = state.amplitudes();
    double p = 0.0;
    for (std::size_t i = 0; i < src.size(); ++i)
        if (static_cast<int>((i & mask) != 0) == outcome) p += std::norm(src[i]);
    if (p < kZeroProbTol)
        throw ImpossibleOutcomeError("postselect: outcome " + std::to_string(outcome) +
                                     " on qubit " + std::to_string(qubit) +
                                     " has zero probability");

    const double scale = 1.0 / std::sqrt(p);
    std::vector<Complex> amps(src.size(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < src.size(); ++i)
        if (static_cast<int>((i & mask) != 0) == outcome) amps[i] = src[i] * scale;
    return Postselection{with_amplitudes(state, std::move(amps)), p};
}

std::map<std::uint64_t, std::uint64_t> sample(const Statevector& state,
                                              const std::vector<int>& qubits,
                                              std::uint64_t shots, std::uint64_t seed) {
    check_qubits(state.num_qubits(), qubits, "sample");
    if (shots == 0) throw DomainError("sample: shots must be at least 1");
    if (qubits.size() > 20) throw DomainError("sample: too many measured qubits");

    // Marginal distribution over the measured qubits.
    const std::size_t outcomes = std::size_t{1} << qubits.size();
    std::vector<double> prob(outcomes, 0.0);
    const auto& amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        double p = std::norm(amps[i]);
        if (p == 0.0) continue;
        std::size_t key = 0;
        for (std::size_t bit = 0; bit < qubits.size(); ++bit)
            if (i & (std::uint64_t{1} << qubits[bit])) key |= std::size_t{1} << bit;
        prob[key] += p;
    }

    std::vector<double> cdf(outcomes);
    double total = 0.0;
    for (std::size_t k = 0; k < outcomes; ++k) {
        total += prob[k];
        cdf[k] = total;
    }
    for (double& c : cdf) c /= total;
    cdf.back() = 1.0;

    std::mt19937_64 rng(seed);
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        // 53-bit uniform draw in [0, 1); identical on every platform.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        const std::size_t k = static_cast<std::size_t>(
            std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        ++counts[std::min(k, outcomes - 1)];
    }
    return counts;
}

double fidelity(const Statevector& a, const Statevector& b) {
    if (a.dimension() != b.dimension())
        throw DomainError("fidelity: states have different dimensions");
    Complex overlap{0.0, 0.0};
    for (std::size_t i = 0; i < a.dimension(); ++i)
        overlap += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
    return std::norm(overlap);
}

}  // namespace hhl
