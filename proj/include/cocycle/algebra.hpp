#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "cocycle/rng.hpp"

namespace cocycle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kAlgebraTol = 1e-12;

/// Element of su(n): anti-Hermitian, traceless n x n matrix.
struct AlgebraElement {
    Matrix m;

    AlgebraElement() = default;
    explicit AlgebraElement(Matrix mat) : m(std::move(mat))
    {
        if (m.rows() != m.cols() || m.rows() < 1)
            throw std::invalid_argument("AlgebraElement: matrix must be square");
        if ((m + m.adjoint()).cwiseAbs().maxCoeff() > kAlgebraTol)
            throw std::invalid_argument("AlgebraElement: not anti-Hermitian");
        if (std::abs(m.trace()) > kAlgebraTol)
            throw std::invalid_argument("AlgebraElement: not traceless");
    }

    int n() const { return int(m.rows()); }
};

/// Element of SU(n): unitary with determinant 1.
struct GroupElement {
    Matrix m;

    GroupElement() = default;
    explicit GroupElement(Matrix mat) : m(std::move(mat))
    {
        if (m.rows() != m.cols() || m.rows() < 1)
            throw std::invalid_argument("GroupElement: matrix must be square");
        Matrix should_be_id = m * m.adjoint();
        should_be_id -= Matrix::Identity(m.rows(), m.cols());
        if (should_be_id.cwiseAbs().maxCoeff() > 1e-11)
            throw std::invalid_argument("GroupElement: not unitary");
        if (std::abs(Eigen::FullPivLU<Matrix>(m).determinant() - Complex(1, 0)) > 1e-10)
            throw std::invalid_argument("GroupElement: determinant != 1");
    }

    int n() const { return int(m.rows()); }
};

inline Matrix commutator(const Matrix& x, const Matrix& y)
{
    if (x.rows() != y.rows())
        throw std::invalid_argument("commutator: dimension mismatch");
    return x * y - y * x;
}

inline AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y)
{
    if (x.n() != y.n())
        throw std::invalid_argument("bracket: dimension mismatch");
    AlgebraElement r;
    r.m = commutator(x.m, y.m);
    return r;
}

// exp of an anti-Hermitian matrix via the spectral theorem: x = iH with H
// Hermitian, so exp(x) = V exp(i diag) V^*. Stable because x is normal.
inline Matrix exp_antihermitian(const Matrix& x)
{
    const Matrix h = x / Complex(0, 1); // Hermitian
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("exp_antihermitian: eigendecomposition failed");
    Eigen::VectorXcd phases(h.rows());
    for (int k = 0; k < h.rows(); ++k)
        phases(k) = std::exp(Complex(0, 1) * es.eigenvalues()(k));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline GroupElement exponential(const AlgebraElement& x)
{
    GroupElement g;
    g.m = exp_antihermitian(x.m);
    return g;
}

/// Trace of the ordered product of matrices.
inline Complex trace_product(std::span<const Matrix> ms)
{
    if (ms.empty())
        throw std::invalid_argument("trace_product: empty list");
    if (ms.size() == 1)
        return ms[0].trace();
    Matrix acc = ms[0];
    for (std::size_t i = 1; i + 1 < ms.size(); ++i) {
        if (acc.cols() != ms[i].rows())
            throw std::invalid_argument("trace_product: dimension mismatch");
        acc = acc * ms[i];
    }
    if (acc.cols() != ms.back().rows())
        throw std::invalid_argument("trace_product: dimension mismatch");
    return (acc * ms.back()).trace();
}

inline Complex trace_product(std::initializer_list<Matrix> ms)
{
    std::vector<Matrix> v(ms);
    return trace_product(std::span<const Matrix>(v));
}

/// Orthonormal basis of su(n) w.r.t. <X,Y> = tr(X^* Y): n^2 - 1 elements.
inline std::vector<Matrix> su_basis(int n)
{
    if (n < 2)
        throw std::invalid_argument("su_basis: n must be >= 2");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<Matrix> basis;
    basis.reserve(std::size_t(n) * n - 1);
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            Matrix a = Matrix::Zero(n, n);
            a(j, k) = Complex(inv_sqrt2, 0);
            a(k, j) = Complex(-inv_sqrt2, 0);
            basis.push_back(a);
            Matrix s = Matrix::Zero(n, n);
            s(j, k) = Complex(0, inv_sqrt2);
            s(k, j) = Complex(0, inv_sqrt2);
            basis.push_back(s);
        }
    }
    for (int m = 1; m < n; ++m) {
        Matrix d = Matrix::Zero(n, n);
        const double norm = 1.0 / std::sqrt(double(m) * (m + 1));
        for (int j = 0; j < m; ++j)
            d(j, j) = Complex(0, norm);
        d(m, m) = Complex(0, -double(m) * norm);
        basis.push_back(d);
    }
    return basis;
}

/// Deterministic seeded element: coefficients uniform in [-1,1] on the
/// orthonormal basis, drawn from SplitMix64 in basis order.
inline AlgebraElement random_algebra(std::uint64_t seed, int n)
{
    if (n < 2)
        throw std::invalid_argument("random_algebra: n must be >= 2");
    SplitMix64 rng(seed);
    const auto basis = su_basis(n);
    Matrix acc = Matrix::Zero(n, n);
    for (const auto& b : basis)
        acc += rng.next_symmetric() * b;
    AlgebraElement x;
    x.m = std::move(acc);
    return x;
}

/// Draw from an already-running stream (for sampling many elements).
inline AlgebraElement random_algebra(SplitMix64& rng, int n)
{
    if (n < 2)
        throw std::invalid_argument("random_algebra: n must be >= 2");
    const auto basis = su_basis(n);
    Matrix acc = Matrix::Zero(n, n);
    for (const auto& b : basis)
        acc += rng.next_symmetric() * b;
    AlgebraElement x;
    x.m = std::move(acc);
    return x;
}

inline Matrix pauli(int k)
{
    Matrix s(2, 2);
    switch (k) {
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 3: s << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("pauli: k must be 1, 2 or 3");
    }
    return s;
}

inline Matrix i_pauli(int k) { return Complex(0, 1) * pauli(k); }

} // namespace cocycle
