#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cocycle/algebra.hpp"
#include "cocycle/rng.hpp"

namespace cocycle {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Algebra-valued field on the uniform periodic grid phi_k = 2 pi k / N.
struct CircleAlgebraField {
    int n = 0;
    int N = 0;
    std::vector<Matrix> s; // N samples

    CircleAlgebraField() = default;
    CircleAlgebraField(int n_, int N_) : n(n_), N(N_), s(std::size_t(N_), Matrix::Zero(n_, n_))
    {
        validate_grid();
    }

    void validate_grid() const
    {
        if (N < 8 || N % 2 != 0)
            throw std::invalid_argument("CircleAlgebraField: N must be even and >= 8");
    }

    double phi(int k) const { return kTwoPi * k / N; }
};

struct CircleGroupField {
    int n = 0;
    int N = 0;
    std::vector<Matrix> s;

    CircleGroupField() = default;
    CircleGroupField(int n_, int N_)
        : n(n_), N(N_), s(std::size_t(N_), Matrix::Identity(n_, n_))
    {
        if (N < 8 || N % 2 != 0)
            throw std::invalid_argument("CircleGroupField: N must be even and >= 8");
    }
};

/// Path of group fields at t_j = j/T; frames[0] is the identity field.
struct GroupPath {
    int T = 0;
    std::vector<CircleGroupField> frames; // T+1 entries
};

namespace detail {

// Kernel of the periodic spectral differentiation matrix for even N
// (Trefethen): D_{jk} = (1/2)(-1)^{j-k} cot((j-k) h / 2), circulant in
// (j-k) mod N. Equals DFT differentiation with the Nyquist mode's
// derivative set to zero; exact for bandwidth < N/2.
inline std::vector<double> spectral_kernel(int N)
{
    std::vector<double> c(std::size_t(N), 0.0);
    const double h = kTwoPi / N;
    // antisymmetry c[N-m] = -c[m] enforced exactly so the matrix annihilates
    // constants to the last bit
    for (int m = 1; m < N / 2; ++m) {
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        c[std::size_t(m)] = 0.5 * sign / std::tan(0.5 * m * h);
        c[std::size_t(N - m)] = -c[std::size_t(m)];
    }
    c[std::size_t(N / 2)] = 0.0; // cot(pi/2)
    return c;
}

} // namespace detail

/// Entrywise spectral derivative d/dphi.
inline CircleAlgebraField spectral_derivative(const CircleAlgebraField& x)
{
    const auto c = detail::spectral_kernel(x.N);
    CircleAlgebraField d(x.n, x.N);
    for (int j = 0; j < x.N; ++j) {
        Matrix acc = Matrix::Zero(x.n, x.n);
        for (int m = 1; m < x.N; ++m)
            acc += c[std::size_t(m)] * x.s[std::size_t((j + m) % x.N)];
        // D_{jk} with k = j+m: offset k-j = m, and D depends on j-k = -m;
        // the kernel is odd so flip the sign.
        d.s[std::size_t(j)] = -acc;
    }
    return d;
}

inline std::vector<Matrix> spectral_derivative_samples(const std::vector<Matrix>& s, int N,
                                                       int n)
{
    CircleAlgebraField tmp;
    tmp.n = n;
    tmp.N = N;
    tmp.s = s;
    return spectral_derivative(tmp).s;
}

/// omega(x,y) = prefactor * integral tr(x y') dphi, trapezoid on the
/// periodic grid (exact for band-limited integrands).
inline double km_cocycle(const CircleAlgebraField& x, const CircleAlgebraField& y,
                         double prefactor = 1.0 / kTwoPi)
{
    if (x.N != y.N || x.n != y.n)
        throw std::invalid_argument("km_cocycle: grid mismatch");
    const CircleAlgebraField dy = spectral_derivative(y);
    Complex acc(0, 0);
    for (int k = 0; k < x.N; ++k)
        acc += (x.s[std::size_t(k)] * dy.s[std::size_t(k)]).trace();
    acc *= prefactor * kTwoPi / x.N;
    if (std::abs(acc.imag()) > 1e-10 * (1.0 + std::abs(acc.real())))
        throw std::runtime_error("km_cocycle: non-real cocycle value");
    return acc.real();
}

/// Pointwise commutator field [x, y].
inline CircleAlgebraField bracket_field(const CircleAlgebraField& x,
                                        const CircleAlgebraField& y)
{
    if (x.N != y.N || x.n != y.n)
        throw std::invalid_argument("bracket_field: grid mismatch");
    CircleAlgebraField r(x.n, x.N);
    for (int k = 0; k < x.N; ++k)
        r.s[std::size_t(k)] = commutator(x.s[std::size_t(k)], y.s[std::size_t(k)]);
    return r;
}

/// Pointwise f^-1 x f.
inline CircleAlgebraField adjoint_transform(const CircleAlgebraField& x,
                                            const CircleGroupField& f)
{
    if (x.N != f.N || x.n != f.n)
        throw std::invalid_argument("adjoint_transform: grid mismatch");
    CircleAlgebraField r(x.n, x.N);
    for (int k = 0; k < x.N; ++k) {
        const Matrix& g = f.s[std::size_t(k)];
        r.s[std::size_t(k)] = g.adjoint() * x.s[std::size_t(k)] * g;
    }
    return r;
}

/// Path f_t = exp(t z) sampled at t_j = j/T.
inline GroupPath exp_path(const CircleAlgebraField& z, int T)
{
    if (T < 2)
        throw std::invalid_argument("exp_path: T must be >= 2");
    GroupPath p;
    p.T = T;
    p.frames.reserve(std::size_t(T) + 1);
    for (int j = 0; j <= T; ++j) {
        CircleGroupField f(z.n, z.N);
        const double t = double(j) / T;
        for (int k = 0; k < z.N; ++k)
            f.s[std::size_t(k)] = exp_antihermitian(t * z.s[std::size_t(k)]);
        p.frames.push_back(std::move(f));
    }
    return p;
}

enum class TimeQuadrature { trapezoid, simpson };

namespace detail {

// 4th-order 5-point first-derivative stencils on a uniform grid. The
// interior stencil is centered; the first/last two frames use one-sided
// variants. 2nd-order stencils would put an O(dt^2) bias on the path
// integral, above the tolerances the quadrature has to meet.
inline Matrix path_time_derivative(const GroupPath& p, int j, int k)
{
    const double dt = 1.0 / p.T;
    auto F = [&](int jj) -> const Matrix& { return p.frames[std::size_t(jj)].s[std::size_t(k)]; };
    const int T = p.T;
    if (T < 4)
        throw std::invalid_argument("path derivative needs T >= 4");
    Matrix d;
    if (j >= 2 && j <= T - 2) {
        d = (F(j - 2) - 8.0 * F(j - 1) + 8.0 * F(j + 1) - F(j + 2)) / (12.0 * dt);
    } else if (j == 0) {
        d = (-25.0 * F(0) + 48.0 * F(1) - 36.0 * F(2) + 16.0 * F(3) - 3.0 * F(4)) /
            (12.0 * dt);
    } else if (j == 1) {
        d = (-3.0 * F(0) - 10.0 * F(1) + 18.0 * F(2) - 6.0 * F(3) + F(4)) / (12.0 * dt);
    } else if (j == T - 1) {
        d = (3.0 * F(T) + 10.0 * F(T - 1) - 18.0 * F(T - 2) + 6.0 * F(T - 3) - F(T - 4)) /
            (12.0 * dt);
    } else { // j == T
        d = (25.0 * F(T) - 48.0 * F(T - 1) + 36.0 * F(T - 2) - 16.0 * F(T - 3) +
             3.0 * F(T - 4)) /
            (12.0 * dt);
    }
    return d;
}

inline std::vector<double> time_weights(int T, TimeQuadrature q)
{
    std::vector<double> w(std::size_t(T) + 1);
    const double dt = 1.0 / T;
    if (q == TimeQuadrature::trapezoid) {
        for (int j = 0; j <= T; ++j)
            w[std::size_t(j)] = (j == 0 || j == T) ? 0.5 * dt : dt;
    } else {
        if (T % 2 != 0)
            throw std::invalid_argument("Simpson quadrature needs even T");
        for (int j = 0; j <= T; ++j) {
            double c = (j == 0 || j == T) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
            w[std::size_t(j)] = c * dt / 3.0;
        }
    }
    return w;
}

} // namespace detail

/// theta(z) = integral_0^1 omega(f^-1 fdot, f^-1 z f) dt along the path.
inline double path_coboundary(const GroupPath& p, const CircleAlgebraField& z,
                              TimeQuadrature q = TimeQuadrature::simpson,
                              double prefactor = 1.0 / kTwoPi)
{
    if (p.frames.empty() || p.frames.front().N != z.N || p.frames.front().n != z.n)
        throw std::invalid_argument("path_coboundary: grid mismatch");
    if (p.T < 4)
        throw std::invalid_argument("path_coboundary: T too small for quadrature");
    const auto w = detail::time_weights(p.T, q);
    double acc = 0.0;
    CircleAlgebraField u(z.n, z.N), v(z.n, z.N);
    for (int j = 0; j <= p.T; ++j) {
        const auto& f = p.frames[std::size_t(j)];
        for (int k = 0; k < z.N; ++k) {
            const Matrix& g = f.s[std::size_t(k)];
            u.s[std::size_t(k)] = g.adjoint() * detail::path_time_derivative(p, j, k);
            v.s[std::size_t(k)] = g.adjoint() * z.s[std::size_t(k)] * g;
        }
        acc += w[std::size_t(j)] * km_cocycle(u, v, prefactor);
    }
    return acc;
}

/// Closed form theta(z) = -prefactor * integral tr(f1' f1^-1 z) dphi.
inline double closed_form_coboundary(const CircleGroupField& f1, const CircleAlgebraField& z,
                                     double prefactor = 1.0 / kTwoPi)
{
    if (f1.N != z.N || f1.n != z.n)
        throw std::invalid_argument("closed_form_coboundary: grid mismatch");
    const auto df = spectral_derivative_samples(f1.s, f1.N, f1.n);
    Complex acc(0, 0);
    for (int k = 0; k < z.N; ++k)
        acc += (df[std::size_t(k)] * f1.s[std::size_t(k)].adjoint() * z.s[std::size_t(k)])
                   .trace();
    acc *= -prefactor * kTwoPi / z.N;
    if (std::abs(acc.imag()) > 1e-10 * (1.0 + std::abs(acc.real())))
        throw std::runtime_error("closed_form_coboundary: non-real value");
    return acc.real();
}

/// | omega(Ad_f x, Ad_f y) - omega(x, y) + theta([x,y]) | for the closed
/// form theta; zero in the continuum because the 1D cocycle does not see
/// the base point.
inline double conjugation_identity_residual(const CircleGroupField& f,
                                            const CircleAlgebraField& x,
                                            const CircleAlgebraField& y,
                                            double prefactor = 1.0 / kTwoPi)
{
    if (f.N != x.N || x.N != y.N || f.n != x.n || x.n != y.n)
        throw std::invalid_argument("conjugation_identity_residual: grid mismatch");
    const double lhs =
        km_cocycle(adjoint_transform(x, f), adjoint_transform(y, f), prefactor) -
        km_cocycle(x, y, prefactor);
    CircleAlgebraField br(x.n, x.N);
    for (int k = 0; k < x.N; ++k)
        br.s[std::size_t(k)] = commutator(x.s[std::size_t(k)], y.s[std::size_t(k)]);
    return std::abs(lhs + closed_form_coboundary(f, br, prefactor));
}

// ---------------------------------------------------------------------------
// Band-limited seeded fields. A spec is grid-independent (a finite Fourier
// series with matrix coefficients) so the same field can be sampled at any
// N for refinement studies.

struct CircleFieldSpec {
    int n = 2;
    int bandwidth = 4;
    std::vector<Matrix> cos_coeff; // index m = 0..bandwidth
    std::vector<Matrix> sin_coeff; // index m = 1..bandwidth (slot 0 unused)

    Matrix eval(double phi) const
    {
        Matrix acc = cos_coeff[0];
        for (int m = 1; m <= bandwidth; ++m)
            acc += std::cos(m * phi) * cos_coeff[std::size_t(m)] +
                   std::sin(m * phi) * sin_coeff[std::size_t(m)];
        return acc;
    }
};

/// Seeded band-limited su(n) field spec with coefficients scaled by
/// amplitude / bandwidth so norms stay O(amplitude).
inline CircleFieldSpec random_circle_spec(std::uint64_t seed, int n, int bandwidth,
                                          double amplitude = 1.0)
{
    CircleFieldSpec spec;
    spec.n = n;
    spec.bandwidth = bandwidth;
    SplitMix64 rng(seed);
    const double scale = amplitude / double(bandwidth);
    spec.cos_coeff.resize(std::size_t(bandwidth) + 1);
    spec.sin_coeff.resize(std::size_t(bandwidth) + 1);
    for (int m = 0; m <= bandwidth; ++m) {
        spec.cos_coeff[std::size_t(m)] = scale * random_algebra(rng, n).m;
        spec.sin_coeff[std::size_t(m)] = scale * random_algebra(rng, n).m;
    }
    return spec;
}

inline CircleAlgebraField sample(const CircleFieldSpec& spec, int N)
{
    CircleAlgebraField x(spec.n, N);
    for (int k = 0; k < N; ++k)
        x.s[std::size_t(k)] = spec.eval(x.phi(k));
    return x;
}

inline CircleGroupField sample_group(const CircleFieldSpec& spec, int N)
{
    CircleGroupField f(spec.n, N);
    for (int k = 0; k < N; ++k)
        f.s[std::size_t(k)] = exp_antihermitian(spec.eval(kTwoPi * k / N));
    return f;
}

} // namespace cocycle
