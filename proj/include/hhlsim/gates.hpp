#pragma once

#include "hhlsim/statevector.hpp"

namespace hhl {

/// Angles of the three-parameter rotation with an explicit global phase.
/// Canonicalized at construction: theta wraps to [0, 2pi), the phase angles
/// to (-pi, pi].
struct U3Params {
    double theta;
    double phi;
    double lam;
    double gamma;

    U3Params(double theta_, double phi_, double lam_, double gamma_);
};

GateMatrix hadamard();
GateMatrix pauli_x();

/// exp(-i theta Y / 2): rows (cos t/2, -sin t/2), (sin t/2, cos t/2).
GateMatrix ry(double theta);

/// diag(1, e^{i gamma}).
GateMatrix phase_gate(double gamma);

/// [[e^{ig} cos, -e^{i(g+l)} sin], [e^{i(g+p)} sin, e^{i(g+p+l)} cos]]
/// with the half-angle theta/2 inside sin and cos.
GateMatrix u3_matrix(const U3Params& p);

/// Two-qubit SWAP.
GateMatrix swap_gate();

/// Fourier transforms on an n-qubit register, N = 2^n. qft maps |k> to
/// (1/sqrt N) sum_y e^{+2 pi i y k / N} |y>; iqft uses the opposite sign.
/// Dense matrices; intended for small registers.
GateMatrix qft(int n);
GateMatrix iqft(int n);

}  // namespace hhl
