#include "hhlsim/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hhl {

namespace {

std::string fixed_number(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    std::string s = buf;
    if (s == "-0." + std::string(static_cast<std::size_t>(decimals), '0')) s = s.substr(1);
    return s;
}

std::string trim_number(double v, int decimals) {
    std::string s = fixed_number(v, decimals);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.push_back('0');
    }
    return s;
}

}  // namespace

std::string ket_bits(const Statevector& state, std::size_t index) {
    std::string bits(static_cast<std::size_t>(state.num_qubits()), '0');
    for (int q = 0; q < state.num_qubits(); ++q)
        if (index & (std::size_t{1} << q))
            bits[static_cast<std::size_t>(state.num_qubits() - 1 - q)] = '1';
    return bits;
}

std::string format_amplitude_fixed(Complex a, int decimals) {
    std::string out = fixed_number(a.real(), decimals);
    const std::string im = fixed_number(std::abs(a.imag()), decimals);
    out += (a.imag() < 0.0 && im.find_first_not_of("0.") != std::string::npos) ? "-" : "+";
    out += im + "j";
    return out;
}

std::string format_amplitude_trim(Complex a, int decimals) {
    const double imag_rounded = std::round(std::abs(a.imag()) * std::pow(10.0, decimals));
    if (imag_rounded == 0.0) return trim_number(a.real(), decimals);
    std::string out = trim_number(a.real(), decimals);
    out += a.imag() < 0.0 ? "-" : "+";
    out += trim_number(std::abs(a.imag()), decimals) + "j";
    return out;
}

std::string format_braket_terms(const Statevector& state, double threshold, int decimals) {
    std::ostringstream os;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        const Complex a = state.amplitudes()[i];
        if (std::abs(a) <= threshold) continue;
        os << "  |" << ket_bits(state, i) << "> : " << format_amplitude_trim(a, decimals)
           << "\n";
    }
    return os.str();
}

std::string format_amplitude_list(const Statevector& state, int decimals) {
    int width = 1;
    for (std::size_t v = state.dimension() - 1; v >= 10; v /= 10) ++width;
    std::ostringstream os;
    char idx[32];
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        std::snprintf(idx, sizeof(idx), "  [%*zu] ", width, i);
        os << idx << format_amplitude_fixed(state.amplitudes()[i], decimals) << "\n";
    }
    return os.str();
}

}  // namespace hhl
