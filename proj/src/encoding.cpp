#include "hhlsim/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace hhl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHermitianTol = 1e-10;
constexpr double kRatioTol = 1e-9;

bool is_power_of_two(std::size_t x) { return x >= 2 && (x & (x - 1)) == 0; }

/// Best rational approximation p/q of x with q <= maxden, by continued
/// fractions. x must be positive and finite.
std::pair<long, long> rationalize(double x, long maxden) {
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double fa = std::floor(v);
        if (fa > 1e15) break;
        const long a = static_cast<long>(fa);
        if (q1 != 0 && a > (std::numeric_limits<long>::max() - q0) / q1) break;
        const long p2 = a * p1 + p0;
        const long q2 = a * q1 + q0;
        if (q2 > maxden) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = v - fa;
        if (frac < 1e-12) break;
        v = 1.0 / frac;
    }
    if (q1 == 0) return {p0, q0};
    return {p1, q1};
}

std::string format_eigenvalue_list(const Eigen::VectorXd& values) {
    std::ostringstream os;
    os << "[";
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (i) os << ", ";
        os << values[i];
    }
    os << "]";
    return os.str();
}

/// Rounded encoding: scale the smallest eigenvalue to 1, round the rest.
/// Fails (nullopt + reason) on register overflow or integer collisions.
std::optional<ClockEncoding> rounded_encoding(const Eigen::VectorXd& values, long N,
                                              std::string* reason) {
    const double lambda_min = values[0];
    ClockEncoding enc;
    enc.t = 2.0 * kPi / (static_cast<double>(N) * lambda_min);
    enc.lambda_tilde.resize(values.size());
    enc.relative_error.resize(values.size());
    for (Eigen::Index j = 0; j < values.size(); ++j) {
        const double exact = values[j] / lambda_min;
        const long m = std::lround(exact);
        if (m < 1 || m > N - 1) {
            if (reason)
                *reason = "eigenvalue ratio " + std::to_string(exact) +
                          " does not fit a clock register of size " + std::to_string(N);
            return std::nullopt;
        }
        enc.lambda_tilde[j] = m;
        enc.relative_error[j] = std::abs(static_cast<double>(m) / exact - 1.0);
    }
    for (Eigen::Index i = 0; i < values.size(); ++i)
        for (Eigen::Index j = i + 1; j < values.size(); ++j)
            if (enc.lambda_tilde[i] == enc.lambda_tilde[j]) {
                if (reason)
                    *reason = "eigenvalues " + std::to_string(values[i]) + " and " +
                              std::to_string(values[j]) + " both encode as " +
                              std::to_string(enc.lambda_tilde[i]);
                return std::nullopt;
            }
    return enc;
}

}  // namespace

HermitianSystem::HermitianSystem(Eigen::MatrixXcd A_, Eigen::VectorXcd b_)
    : A(std::move(A_)), b(std::move(b_)) {
    if (A.rows() != A.cols()) throw ValidationError("HermitianSystem: A must be square");
    if (!is_power_of_two(static_cast<std::size_t>(A.rows())))
        throw ValidationError("HermitianSystem: dimension must be a power of two, at least 2");
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    const double dev = (A - A.adjoint()).cwiseAbs().maxCoeff();
    if (dev > kHermitianTol * scale)
        throw ValidationError("HermitianSystem: A is not Hermitian (deviation " +
                              std::to_string(dev) + ")");
    if (b.size() != A.rows())
        throw ValidationError("HermitianSystem: b length does not match A");
    if (b.norm() < 1e-12) throw ValidationError("HermitianSystem: b must be nonzero");
}

int HermitianSystem::nb() const {
    int k = 0;
    while ((Eigen::Index{1} << k) < A.rows()) ++k;
    return k;
}

Eigensystem eig_hermitian(const Eigen::MatrixXcd& A) {
    if (A.rows() != A.cols()) throw ValidationError("eig_hermitian: matrix must be square");
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    if ((A - A.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol * scale)
        throw ValidationError("eig_hermitian: matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(A);
    if (solver.info() != Eigen::Success)
        throw ValidationError("eig_hermitian: eigendecomposition failed");

    Eigensystem eigs{solver.eigenvalues(), solver.eigenvectors()};
    // Fix each column's phase: first component above tolerance becomes real
    // positive, so repeated runs and platforms agree.
    for (Eigen::Index c = 0; c < eigs.vectors.cols(); ++c) {
        for (Eigen::Index r = 0; r < eigs.vectors.rows(); ++r) {
            const Complex v = eigs.vectors(r, c);
            if (std::abs(v) > 1e-9) {
                eigs.vectors.col(c) *= std::conj(v) / std::abs(v);
                break;
            }
        }
    }
    return eigs;
}

ClockEncoding choose_time_and_clock(const Eigen::VectorXd& eigenvalues, int n, EncodingMode mode) {
    if (n < 1 || n > 24) throw DomainError("choose_time_and_clock: clock size out of range");
    if (eigenvalues.size() < 1) throw DomainError("choose_time_and_clock: no eigenvalues");
    for (Eigen::Index j = 0; j < eigenvalues.size(); ++j)
        if (!(eigenvalues[j] > 0.0))
            throw ValidationError(
                "choose_time_and_clock: eigenvalues must be positive, got " +
                format_eigenvalue_list(eigenvalues));
    for (Eigen::Index j = 1; j < eigenvalues.size(); ++j)
        if (eigenvalues[j] < eigenvalues[j - 1])
            throw DomainError("choose_time_and_clock: eigenvalues must be ascending");

    const long N = 1L << n;
    const double lambda0 = eigenvalues[0];

    if (mode == EncodingMode::Rounded) {
        std::string reason;
        auto enc = rounded_encoding(eigenvalues, N, &reason);
        if (!enc)
            throw EncodingError(reason.find("both encode") != std::string::npos
                                    ? EncodingError::Kind::Collision
                                    : EncodingError::Kind::OutOfRange,
                                "rounded encoding failed: " + reason);
        return *enc;
    }

    // Exact mode: every ratio lambda_j / lambda_0 must be rational with a
    // small denominator; the smallest valid scale is the lcm of those
    // denominators.
    std::string why;
    auto fallback = rounded_encoding(eigenvalues, N, &why);
    auto fail = [&](EncodingError::Kind kind, const std::string& message) -> EncodingError {
        if (fallback) {
            RoundedEncoding r{fallback->t, fallback->lambda_tilde, fallback->relative_error};
            return EncodingError(kind, message + "; a rounded encoding is available", r);
        }
        return EncodingError(kind, message);
    };

    std::vector<long> nums(eigenvalues.size()), dens(eigenvalues.size());
    for (Eigen::Index j = 0; j < eigenvalues.size(); ++j) {
        const double ratio = eigenvalues[j] / lambda0;
        auto [p, q] = rationalize(ratio, N - 1);
        if (q < 1 || p < 1 ||
            std::abs(ratio - static_cast<double>(p) / static_cast<double>(q)) >
                kRatioTol * std::max(1.0, ratio))
            throw fail(EncodingError::Kind::Infeasible,
                       "eigenvalue ratio " + std::to_string(ratio) +
                           " has no rational form with denominator below " + std::to_string(N));
        nums[j] = p;
        dens[j] = q;
    }

    long scale = 1;
    for (long q : dens) {
        scale = std::lcm(scale, q);
        if (scale > N - 1)
            throw fail(EncodingError::Kind::Infeasible,
                       "eigenvalue ratios need a scale beyond the clock register");
    }

    ClockEncoding enc;
    enc.lambda_tilde.resize(eigenvalues.size());
    enc.relative_error.assign(eigenvalues.size(), 0.0);
    for (Eigen::Index j = 0; j < eigenvalues.size(); ++j) {
        const long m = scale / dens[j] * nums[j];
        if (m < 1 || m > N - 1)
            throw fail(EncodingError::Kind::OutOfRange,
                       "encoded eigenvalue " + std::to_string(m) +
                           " does not fit a clock register of size " + std::to_string(N));
        enc.lambda_tilde[j] = m;
    }
    for (std::size_t i = 0; i < enc.lambda_tilde.size(); ++i)
        for (std::size_t j = i + 1; j < enc.lambda_tilde.size(); ++j)
            if (enc.lambda_tilde[i] == enc.lambda_tilde[j])
                throw fail(EncodingError::Kind::Collision,
                           "eigenvalues " + std::to_string(eigenvalues[i]) + " and " +
                               std::to_string(eigenvalues[j]) + " both encode as " +
                               std::to_string(enc.lambda_tilde[i]));

    enc.t = 2.0 * kPi * static_cast<double>(scale) / (static_cast<double>(N) * lambda0);
    for (Eigen::Index j = 0; j < eigenvalues.size(); ++j) {
        const double exact = static_cast<double>(N) * eigenvalues[j] * enc.t / (2.0 * kPi);
        enc.relative_error[j] = std::abs(static_cast<double>(enc.lambda_tilde[j]) / exact - 1.0);
    }
    return enc;
}

long EncodingPlan::min_lambda_tilde() const {
    return *std::min_element(lambda_tilde.begin(), lambda_tilde.end());
}

EncodingPlan make_plan(const HermitianSystem& system, int n, std::optional<double> C,
                       EncodingMode mode) {
    EncodingPlan plan;
    plan.eigs = eig_hermitian(system.A);
    plan.nb = system.nb();
    plan.n = n;  // range-checked by choose_time_and_clock
    plan.mode = mode;

    const double scale = plan.eigs.values.cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < plan.eigs.values.size(); ++j) {
        const double v = plan.eigs.values[j];
        if (std::abs(v) < 1e-12 * std::max(1.0, scale))
            throw ValidationError("make_plan: A is singular (eigenvalue " + std::to_string(v) +
                                  ")");
        if (v < 0.0)
            throw ValidationError(
                "make_plan: negative eigenvalues are not supported by the integer clock "
                "encoding; shift A until its spectrum is positive");
    }

    ClockEncoding enc = choose_time_and_clock(plan.eigs.values, n, mode);
    plan.N = std::size_t{1} << n;
    plan.t = enc.t;
    plan.lambda_tilde = std::move(enc.lambda_tilde);
    plan.relative_error = std::move(enc.relative_error);

    const double min_tilde = static_cast<double>(plan.min_lambda_tilde());
    plan.C = C.value_or(min_tilde);
    if (!(plan.C > 0.0) || plan.C > min_tilde + 1e-12)
        throw DomainError("make_plan: C must lie in (0, " + std::to_string(min_tilde) +
                          "], got " + std::to_string(plan.C));
    return plan;
}

GateMatrix unitary_from_hamiltonian(const EncodingPlan& plan, std::uint64_t power, bool inverse) {
    if (power == 0) throw DomainError("unitary_from_hamiltonian: power must be at least 1");
    const double sign = inverse ? -1.0 : 1.0;
    const Eigen::Index d = plan.eigs.values.size();
    Eigen::VectorXcd phases(d);
    for (Eigen::Index j = 0; j < d; ++j)
        phases[j] = std::polar(
            1.0, sign * plan.eigs.values[j] * plan.t * static_cast<double>(power));
    Eigen::MatrixXcd U =
        plan.eigs.vectors * phases.asDiagonal() * plan.eigs.vectors.adjoint();
    return GateMatrix(std::move(U));
}

U3Params cu3_params_from_unitary(const Eigen::Matrix2cd& U) {
    const double dev = (U.adjoint() * U - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (dev > 1e-10)
        throw ValidationError("cu3_params_from_unitary: matrix is not unitary");

    const double c = std::abs(U(0, 0));
    const double s = std::abs(U(1, 0));
    const double theta = 2.0 * std::atan2(s, c);
    constexpr double kEntryTol = 1e-8;

    double gamma, phi, lam;
    if (c > kEntryTol && s > kEntryTol) {
        gamma = std::arg(U(0, 0));
        phi = std::arg(U(1, 0)) - gamma;
        lam = std::arg(-U(0, 1)) - gamma;
    } else if (c > kEntryTol) {  // diagonal: theta ~ 0, lam is a free choice
        gamma = std::arg(U(0, 0));
        lam = 0.0;
        phi = std::arg(U(1, 1)) - gamma;
    } else {  // anti-diagonal: theta ~ pi
        lam = 0.0;
        gamma = std::arg(-U(0, 1));
        phi = std::arg(U(1, 0)) - gamma;
    }
    return U3Params(theta, phi, lam, gamma);
}

}  // namespace hhl
