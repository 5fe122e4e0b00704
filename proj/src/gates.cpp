#include "hhlsim/gates.hpp"

#include <cmath>
#include <numbers>

namespace hhl {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_signed(double x) {  // to (-pi, pi]
    double y = std::fmod(x, 2.0 * kPi);
    if (y <= -kPi)
        y += 2.0 * kPi;
    else if (y > kPi)
        y -= 2.0 * kPi;
    return y;
}

double wrap_positive(double x) {  // to [0, 2pi)
    double y = std::fmod(x, 2.0 * kPi);
    if (y < 0.0) y += 2.0 * kPi;
    return y;
}

void check_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw ValidationError(std::string(what) + ": angle is not finite");
}

}  // namespace

U3Params::U3Params(double theta_, double phi_, double lam_, double gamma_) {
    check_finite(theta_, "U3Params");
    check_finite(phi_, "U3Params");
    check_finite(lam_, "U3Params");
    check_finite(gamma_, "U3Params");
    theta = wrap_positive(theta_);
    phi = wrap_signed(phi_);
    lam = wrap_signed(lam_);
    gamma = wrap_signed(gamma_);
}

GateMatrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd m;
    m << s, s, s, -s;
    return GateMatrix(m);
}

GateMatrix pauli_x() {
    Eigen::Matrix2cd m;
    m << 0, 1, 1, 0;
    return GateMatrix(m);
}

GateMatrix ry(double theta) {
    check_finite(theta, "ry");
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Eigen::Matrix2cd m;
    m << c, -s, s, c;
    return GateMatrix(m);
}

GateMatrix phase_gate(double gamma) {
    check_finite(gamma, "phase_gate");
    Eigen::Matrix2cd m;
    m << 1.0, 0.0, 0.0, std::polar(1.0, gamma);
    return GateMatrix(m);
}

GateMatrix u3_matrix(const U3Params& p) {
    const double c = std::cos(p.theta / 2.0);
    const double s = std::sin(p.theta / 2.0);
    Eigen::Matrix2cd m;
    m(0, 0) = std::polar(c, p.gamma);
    m(0, 1) = -std::polar(s, p.gamma + p.lam);
    m(1, 0) = std::polar(s, p.gamma + p.phi);
    m(1, 1) = std::polar(c, p.gamma + p.phi + p.lam);
    return GateMatrix(m);
}

GateMatrix swap_gate() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 3) = 1.0;
    return GateMatrix(m);
}

namespace {

GateMatrix fourier(int n, double sign) {
    if (n < 1 || n > 14) throw DomainError("fourier transform: register size out of range");
    const Eigen::Index N = Eigen::Index{1} << n;
    Eigen::MatrixXcd m(N, N);
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (Eigen::Index y = 0; y < N; ++y)
        for (Eigen::Index k = 0; k < N; ++k)
            m(y, k) = std::polar(scale, sign * 2.0 * kPi * static_cast<double>(y) *
                                            static_cast<double>(k) / static_cast<double>(N));
    return GateMatrix(m);
}

}  // namespace

GateMatrix qft(int n) { return fourier(n, +1.0); }

GateMatrix iqft(int n) { return fourier(n, -1.0); }

}  // namespace hhl
