#pragma once

#include <cstddef>
#include <cstdint>

#include "hhlsim/errors.hpp"

namespace hhl {

/// Qubit-index map for one solver run. Little-endian throughout: qubit 0 is
/// the least significant bit of a basis index. The ancilla sits at qubit 0,
/// the clock register at qubits 1..n (clock bit 0 first), and the b-register
/// occupies the top nb qubits, so |b c a> has index a + 2*c + 2^(n+1)*b.
struct RegisterLayout {
    int nb = 1;  // b-register qubits
    int n = 1;   // clock qubits

    RegisterLayout(int nb_, int n_) : nb(nb_), n(n_) {
        if (nb < 1) throw DomainError("RegisterLayout: nb must be at least 1");
        if (n < 1) throw DomainError("RegisterLayout: n must be at least 1");
        if (nb + n + 1 > 30) throw DomainError("RegisterLayout: too many qubits");
    }

    int total_qubits() const { return nb + n + 1; }
    std::size_t dimension() const { return std::size_t{1} << total_qubits(); }

    int ancilla_qubit() const { return 0; }
    int clock_qubit(int k) const {
        if (k < 0 || k >= n) throw DomainError("RegisterLayout: clock qubit out of range");
        return 1 + k;
    }
    int b_qubit(int j) const {
        if (j < 0 || j >= nb) throw DomainError("RegisterLayout: b qubit out of range");
        return 1 + n + j;
    }

    std::uint64_t clock_mask() const { return ((std::uint64_t{1} << n) - 1) << 1; }
    std::uint64_t b_mask() const { return ((std::uint64_t{1} << nb) - 1) << (1 + n); }

    /// Basis index of |b c a>.
    std::size_t basis_index(std::size_t b, std::size_t c, int a) const {
        if (b >= (std::size_t{1} << nb)) throw DomainError("RegisterLayout: b value out of range");
        if (c >= (std::size_t{1} << n)) throw DomainError("RegisterLayout: clock value out of range");
        if (a != 0 && a != 1) throw DomainError("RegisterLayout: ancilla value must be 0 or 1");
        return (b << (1 + n)) | (c << 1) | static_cast<std::size_t>(a);
    }

    std::size_t clock_value(std::size_t index) const { return (index >> 1) & ((std::size_t{1} << n) - 1); }
    std::size_t b_value(std::size_t index) const { return index >> (1 + n); }
    int ancilla_value(std::size_t index) const { return static_cast<int>(index & 1); }

    bool operator==(const RegisterLayout&) const = default;
};

}  // namespace hhl
