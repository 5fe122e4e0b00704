#pragma once

// Shared test utilities: reference implementations built a different way than
// the library (dense embeddings, brute-force searches) plus fixed example
// systems with independently computed expected values.

#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "hhlsim/encoding.hpp"
#include "hhlsim/solver.hpp"

namespace testutil {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Dense reference embedding: builds the full 2^n x 2^n matrix of a (possibly
// controlled) gate column by column, with no shared code with apply_unitary.

inline Eigen::MatrixXcd dense_embed(int num_qubits, const Eigen::MatrixXcd& gate,
                                    const std::vector<int>& controls,
                                    const std::vector<int>& targets) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::Index control_mask = 0;
    for (int c : controls) control_mask |= Eigen::Index{1} << c;
    Eigen::Index target_mask = 0;
    for (int t : targets) target_mask |= Eigen::Index{1} << t;

    for (Eigen::Index col = 0; col < dim; ++col) {
        if ((col & control_mask) != control_mask) {
            M(col, col) = 1.0;
            continue;
        }
        Eigen::Index in_pattern = 0;
        for (std::size_t bit = 0; bit < targets.size(); ++bit)
            if (col & (Eigen::Index{1} << targets[bit])) in_pattern |= Eigen::Index{1} << bit;
        for (Eigen::Index out_pattern = 0; out_pattern < gate.rows(); ++out_pattern) {
            Eigen::Index row = col & ~target_mask;
            for (std::size_t bit = 0; bit < targets.size(); ++bit)
                if (out_pattern & (Eigen::Index{1} << bit))
                    row |= Eigen::Index{1} << targets[bit];
            M(row, col) = gate(out_pattern, in_pattern);
        }
    }
    return M;
}

inline Eigen::VectorXcd to_vector(const hhl::Statevector& st) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(st.dimension()));
    for (std::size_t i = 0; i < st.dimension(); ++i)
        v[static_cast<Eigen::Index>(i)] = st.amplitudes()[i];
    return v;
}

inline hhl::Statevector from_vector(const hhl::Statevector& like, const Eigen::VectorXcd& v) {
    std::vector<hhl::Complex> amps(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) amps[static_cast<std::size_t>(i)] = v[i];
    if (like.layout()) return hhl::Statevector(*like.layout(), std::move(amps));
    return hhl::Statevector(like.num_qubits(), std::move(amps));
}

// ---------------------------------------------------------------------------
// Randomized inputs.

inline hhl::Statevector random_state(int num_qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<hhl::Complex> amps(std::size_t{1} << num_qubits);
    double norm2 = 0.0;
    for (auto& a : amps) {
        a = hhl::Complex{gauss(rng), gauss(rng)};
        norm2 += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= scale;
    return hhl::Statevector(num_qubits, std::move(amps));
}

inline Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd G(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) G(r, c) = hhl::Complex{gauss(rng), gauss(rng)};
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
    Eigen::MatrixXcd Q = qr.householderQ();
    Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index c = 0; c < dim; ++c) {
        const hhl::Complex d = R(c, c);
        Q.col(c) *= d / std::abs(d);
    }
    return Q;
}

/// Random Hermitian system whose spectrum is an exact positive-integer
/// pattern times a random scale, so the exact clock encoding must succeed
/// with known integers.
struct ExactSystem {
    Eigen::MatrixXcd A;
    Eigen::VectorXcd b;
    int n;
    std::vector<long> expected_lambda_tilde;
    double expected_t;
};

inline ExactSystem random_exact_system(std::mt19937_64& rng, int n = 2, bool real_b = false) {
    const long N = 1L << n;
    std::uniform_int_distribution<long> pick(1, N - 1);
    long m0 = 0, m1 = 0;
    do {
        m0 = pick(rng);
        m1 = pick(rng);
    } while (m0 >= m1 || std::gcd(m0, m1) != 1);

    std::uniform_real_distribution<double> alpha_dist(0.25, 3.0);
    const double alpha = alpha_dist(rng);
    Eigen::VectorXd lambda(2);
    lambda << static_cast<double>(m0) * alpha, static_cast<double>(m1) * alpha;

    const Eigen::MatrixXcd V = random_unitary(2, rng);
    Eigen::MatrixXcd A = V * lambda.asDiagonal() * V.adjoint();
    A = ((A + A.adjoint()) / 2.0).eval();

    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd b(2);
    do {
        for (Eigen::Index j = 0; j < 2; ++j)
            b[j] = real_b ? hhl::Complex{gauss(rng), 0.0} : hhl::Complex{gauss(rng), gauss(rng)};
    } while (b.norm() < 0.3);

    ExactSystem sys{std::move(A), std::move(b), n, {m0, m1}, 0.0};
    sys.expected_t = 2.0 * kPi * static_cast<double>(m0) /
                     (static_cast<double>(N) * lambda[0]);
    return sys;
}

// ---------------------------------------------------------------------------
// Brute-force time search: smallest integer scale s such that s * ratio_j is
// within tolerance of a distinct integer in [1, N-1] for every eigenvalue.
// Independent check of the continued-fraction path.

inline std::optional<std::pair<double, std::vector<long>>> direct_time_search(
    const Eigen::VectorXd& lambda, int n) {
    const long N = 1L << n;
    for (long s = 1; s <= N - 1; ++s) {
        std::vector<long> tilde;
        bool ok = true;
        for (Eigen::Index j = 0; j < lambda.size() && ok; ++j) {
            const double x = static_cast<double>(s) * lambda[j] / lambda[0];
            const long m = std::lround(x);
            if (m < 1 || m > N - 1 || std::abs(x - static_cast<double>(m)) > 1e-9 * std::max(1.0, x))
                ok = false;
            else
                tilde.push_back(m);
        }
        for (std::size_t i = 0; ok && i < tilde.size(); ++i)
            for (std::size_t j = i + 1; j < tilde.size(); ++j)
                if (tilde[i] == tilde[j]) ok = false;
        if (ok)
            return std::make_pair(
                2.0 * kPi * static_cast<double>(s) / (static_cast<double>(N) * lambda[0]),
                tilde);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Fixed 2x2 example: A = [[1, -1/3], [-1/3, 1]], b = (0, 1), nb = 1, n = 2.
// Eigenvalues 2/3 and 4/3 encode as 1 and 2 with t = 3 pi / 4 and C = 1.
// Expected amplitudes below were computed by hand from the eigenbasis:
//   beta = (1/sqrt2, -1/sqrt2), clock branches c = 1, 2,
//   rotation angles 2 arcsin(1/1) = pi and 2 arcsin(1/2) = pi/3.

inline hhl::HermitianSystem example_system() {
    Eigen::MatrixXcd A(2, 2);
    A << 1.0, -1.0 / 3.0, -1.0 / 3.0, 1.0;
    Eigen::VectorXcd b(2);
    b << 0.0, 1.0;
    return hhl::HermitianSystem(A, b);
}

constexpr int kExampleN = 2;
constexpr double kExampleT = 3.0 * kPi / 4.0;

struct Amp {
    std::size_t index;
    hhl::Complex value;
};

// Basis index = a + 2 c + 8 b.
inline const std::vector<Amp>& example_psi2() {
    static const std::vector<Amp> v{
        {8, {0.5, 0.0}}, {10, {0.5, 0.0}}, {12, {0.5, 0.0}}, {14, {0.5, 0.0}}};
    return v;
}

inline const std::vector<Amp>& example_psi4() {
    static const std::vector<Amp> v{
        {2, {0.5, 0.0}}, {4, {-0.5, 0.0}}, {10, {0.5, 0.0}}, {12, {0.5, 0.0}}};
    return v;
}

inline const std::vector<Amp>& example_psi5() {
    static const double r3 = std::sqrt(3.0);
    static const std::vector<Amp> v{{3, {0.5, 0.0}},        {4, {-r3 / 4.0, 0.0}},
                                    {5, {-0.25, 0.0}},      {11, {0.5, 0.0}},
                                    {12, {r3 / 4.0, 0.0}},  {13, {0.25, 0.0}}};
    return v;
}

inline const std::vector<Amp>& example_psi6() {
    static const double a = std::sqrt(2.0 / 5.0);
    static const double c = std::sqrt(1.0 / 10.0);
    static const std::vector<Amp> v{
        {3, {a, 0.0}}, {5, {-c, 0.0}}, {11, {a, 0.0}}, {13, {c, 0.0}}};
    return v;
}

inline const std::vector<Amp>& example_psi9() {
    static const double r3 = std::sqrt(3.0);
    static const std::vector<Amp> v{
        {0, {-r3 / 4.0, 0.0}}, {1, {0.25, 0.0}}, {8, {r3 / 4.0, 0.0}}, {9, {0.75, 0.0}}};
    return v;
}

constexpr double kExampleSuccessProbability = 5.0 / 8.0;  // 1/4 + 1/4 + 1/16 + 1/16

/// Checks every amplitude of `st` against the sparse table (absent = zero).
inline double max_deviation(const hhl::Statevector& st, const std::vector<Amp>& table) {
    double worst = 0.0;
    for (std::size_t i = 0; i < st.dimension(); ++i) {
        hhl::Complex expected{0.0, 0.0};
        for (const Amp& a : table)
            if (a.index == i) expected = a.value;
        worst = std::max(worst, std::abs(st.amplitudes()[i] - expected));
    }
    return worst;
}

// U = e^{i A t} for the example system and its powers, entered from the
// closed forms (1/2)[[-1+i, 1+i], [1+i, -1+i]] etc.

inline Eigen::Matrix2cd example_U() {
    Eigen::Matrix2cd m;
    m << hhl::Complex{-0.5, 0.5}, hhl::Complex{0.5, 0.5}, hhl::Complex{0.5, 0.5},
        hhl::Complex{-0.5, 0.5};
    return m;
}

inline Eigen::Matrix2cd example_U2() {
    Eigen::Matrix2cd m;
    m << 0.0, -1.0, -1.0, 0.0;
    return m;
}

inline Eigen::Matrix2cd example_Uinv() { return example_U().adjoint(); }

}  // namespace testutil
