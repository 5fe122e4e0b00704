#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "hhlsim/errors.hpp"
#include "hhlsim/layout.hpp"

namespace hhl {

using Complex = std::complex<double>;

/// Dense k-qubit gate. Unitarity is checked once at construction
/// (max |U*U - I| below 1e-12); everything downstream relies on it.
class GateMatrix {
  public:
    explicit GateMatrix(Eigen::MatrixXcd entries);

    int qubit_count() const { return qubit_count_; }
    Eigen::Index dim() const { return entries_.rows(); }
    const Eigen::MatrixXcd& entries() const { return entries_; }

    /// Inverse gate.
    GateMatrix adjoint() const { return GateMatrix(entries_.adjoint()); }

  private:
    Eigen::MatrixXcd entries_;
    int qubit_count_;
};

/// Dense complex statevector, little-endian (qubit 0 = least significant bit
/// of the basis index). Operations return new states; an existing value is
/// never mutated. States constructed for a solver run carry a RegisterLayout;
/// bare states do not.
class Statevector {
  public:
    Statevector(int num_qubits, std::vector<Complex> amplitudes);
    Statevector(const RegisterLayout& layout, std::vector<Complex> amplitudes);

    static Statevector basis_state(int num_qubits, std::size_t index);

    int num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<Complex>& amplitudes() const { return amps_; }
    Complex amplitude(std::size_t index) const;
    const std::optional<RegisterLayout>& layout() const { return layout_; }
    const RegisterLayout& layout_or_throw() const;
    double norm_squared() const;

  private:
    Statevector() = default;

    std::vector<Complex> amps_;
    std::optional<RegisterLayout> layout_;
    int num_qubits_ = 0;

    friend Statevector with_amplitudes(const Statevector& like, std::vector<Complex> amps);
};

/// |index> on the registers described by layout.
Statevector init_basis_state(const RegisterLayout& layout, std::size_t index);

/// Applies gate to the given target qubits (targets[0] is the least
/// significant bit of the gate's index space). Strided in-place update; the
/// full 2^q matrix is never formed.
Statevector apply_unitary(const Statevector& state, const GateMatrix& gate,
                          const std::vector<int>& targets);

/// Applies gate to targets on the subspace where every control qubit is 1;
/// acts as the identity elsewhere.
Statevector apply_controlled(const Statevector& state, const GateMatrix& gate,
                             const std::vector<int>& controls, const std::vector<int>& targets);

struct Postselection {
    Statevector state;   // renormalized conditional state
    double probability;  // mass of the selected outcome before renormalization
};

/// Projects qubit onto |outcome> and renormalizes.
Postselection postselect(const Statevector& state, int qubit, int outcome);

/// Sampling algorithm identifier recorded alongside sampled counts.
inline constexpr const char* kSampleAlgorithm = "mt19937_64/inverse-cdf";

/// Measures the given qubits (qubits[0] = least significant bit of the
/// outcome key) for `shots` repetitions. Deterministic for a fixed seed on
/// every platform: draws come from mt19937_64 mapped to [0,1) via
/// (x >> 11) * 2^-53 and are placed by inverse-CDF walk over the outcome
/// distribution. Only outcomes with nonzero counts appear in the result.
std::map<std::uint64_t, std::uint64_t> sample(const Statevector& state,
                                              const std::vector<int>& qubits,
                                              std::uint64_t shots, std::uint64_t seed);

/// |<a|b>|^2; equals 1 exactly when the states match up to global phase.
double fidelity(const Statevector& a, const Statevector& b);

}  // namespace hhl
