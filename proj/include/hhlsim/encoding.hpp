#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hhlsim/gates.hpp"

namespace hhl {

/// Input pair (A, b). A must be Hermitian (to 1e-10) with power-of-two
/// dimension at least 2; b must be a nonzero vector of matching size.
struct HermitianSystem {
    Eigen::MatrixXcd A;
    Eigen::VectorXcd b;

    HermitianSystem(Eigen::MatrixXcd A_, Eigen::VectorXcd b_);

    Eigen::Index dim() const { return A.rows(); }
    int nb() const;  // log2 of the dimension
};

/// Spectral decomposition of a Hermitian matrix: eigenvalues ascending,
/// orthonormal eigenvector columns with the first nonzero component of each
/// column made real positive so results are reproducible.
struct Eigensystem {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

Eigensystem eig_hermitian(const Eigen::MatrixXcd& A);

enum class EncodingMode {
    Exact,    // require integer eigenvalue encodings; fail otherwise
    Rounded,  // scale the smallest eigenvalue to 1 and round the rest
};

/// Evolution time plus the integer clock encoding it induces.
struct ClockEncoding {
    double t = 0.0;
    std::vector<long> lambda_tilde;       // one per eigenvalue, same order
    std::vector<double> relative_error;   // |encoded/exact - 1| per eigenvalue
};

/// Chooses the smallest evolution time t > 0 such that every eigenvalue
/// encodes as an integer lambda~ = N lambda t / (2 pi) in [1, N-1], N = 2^n.
/// Exact mode throws EncodingError (with a rounded fallback attached when one
/// exists) if no such t exists; rounded mode takes t = 2 pi / (N lambda_min)
/// and rounds, reporting per-eigenvalue relative errors.
ClockEncoding choose_time_and_clock(const Eigen::VectorXd& eigenvalues, int n, EncodingMode mode);

/// Everything derived from (A, b, n, C, mode) that the pipeline needs.
struct EncodingPlan {
    Eigensystem eigs;
    int nb = 1;
    int n = 1;
    std::size_t N = 2;  // 2^n
    double t = 0.0;
    std::vector<long> lambda_tilde;
    std::vector<double> relative_error;
    double C = 1.0;
    EncodingMode mode = EncodingMode::Exact;

    long min_lambda_tilde() const;
};

/// Validates the system (positive spectrum, invertible), runs the time/clock
/// search, and fixes C (default: the smallest encoded eigenvalue).
EncodingPlan make_plan(const HermitianSystem& system, int n, std::optional<double> C,
                       EncodingMode mode);

/// U^power (or its inverse) where U = e^{i A t}, built from the plan's
/// eigendecomposition as V diag(e^{i lambda t power}) V*.
GateMatrix unitary_from_hamiltonian(const EncodingPlan& plan, std::uint64_t power,
                                    bool inverse = false);

/// Angles (theta, phi, lam, gamma) reproducing a 2x2 unitary via u3_matrix,
/// exact up to rounding. Throws ValidationError if U is not unitary.
U3Params cu3_params_from_unitary(const Eigen::Matrix2cd& U);

}  // namespace hhl
