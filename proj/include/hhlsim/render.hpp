#pragma once

#include <string>

#include "hhlsim/statevector.hpp"

namespace hhl {

/// Bit string of a basis index, most significant qubit first, e.g. "1000".
std::string ket_bits(const Statevector& state, std::size_t index);

/// Fixed-point complex amplitude, e.g. "-0.4330+0.0000j".
std::string format_amplitude_fixed(Complex a, int decimals);

/// Compact amplitude with trailing zeros trimmed: "1.0", "0.25", "0.5+0.5j".
std::string format_amplitude_trim(Complex a, int decimals);

/// One "  |bits> : amp" line per basis state with |amplitude| above
/// threshold, index-ascending.
std::string format_braket_terms(const Statevector& state, double threshold, int decimals);

/// The full vector as one "  [ i] re+imj" line per basis index.
std::string format_amplitude_list(const Statevector& state, int decimals);

}  // namespace hhl
