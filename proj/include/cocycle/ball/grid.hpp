#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cocycle/algebra.hpp"
#include "cocycle/circle.hpp"

namespace cocycle {

/// Spherical product grid on B^3 with half-offset nodes:
///   r_i = (i+1/2)/Nr, theta_j = (j+1/2) pi/Nt, phi_k = 2 pi k/Np.
/// No node sits at r = 0 or on the polar axis.
struct BallGrid {
    int Nr = 0, Nt = 0, Np = 0;

    BallGrid() = default;
    BallGrid(int nr, int nt, int np) : Nr(nr), Nt(nt), Np(np)
    {
        if (Nr < 8 || Nt < 8 || Np < 8 || Np % 2 != 0)
            throw std::invalid_argument("BallGrid: need Nr,Nt >= 8 and even Np >= 8");
    }

    bool operator==(const BallGrid& o) const
    {
        return Nr == o.Nr && Nt == o.Nt && Np == o.Np;
    }

    std::size_t size() const { return std::size_t(Nr) * Nt * Np; }
    std::size_t index(int i, int j, int k) const
    {
        return (std::size_t(i) * Nt + j) * Np + k;
    }

    double r(int i) const { return (i + 0.5) / Nr; }
    double theta(int j) const { return (j + 0.5) * std::numbers::pi / Nt; }
    double phi(int k) const { return kTwoPi * k / Np; }

    double dr() const { return 1.0 / Nr; }
    double dtheta() const { return std::numbers::pi / Nt; }
    double dphi() const { return kTwoPi / Np; }

    // cell-exact Jacobian weights: constants integrate exactly
    double weight_r(int i) const
    {
        double lo = double(i) / Nr, hi = double(i + 1) / Nr;
        return (hi * hi * hi - lo * lo * lo) / 3.0;
    }
    double weight_theta(int j) const
    {
        double lo = j * std::numbers::pi / Nt, hi = (j + 1) * std::numbers::pi / Nt;
        return std::cos(lo) - std::cos(hi);
    }
    double weight_phi() const { return kTwoPi / Np; }
};

using MatrixField = std::vector<Matrix>; // one matrix per grid node

namespace ball_detail {

// 4th-order 5-point first-derivative stencils on a uniform non-periodic
// axis; one-sided at the first and last two nodes.
struct Stencil {
    int offsets[5];
    double coeff[5];
};

inline Stencil stencil_for(int i, int N)
{
    if (i >= 2 && i <= N - 3)
        return {{-2, -1, 0, 1, 2}, {1, -8, 0, 8, -1}};
    if (i == 0)
        return {{0, 1, 2, 3, 4}, {-25, 48, -36, 16, -3}};
    if (i == 1)
        return {{-1, 0, 1, 2, 3}, {-3, -10, 18, -6, 1}};
    if (i == N - 2)
        return {{-3, -2, -1, 0, 1}, {-1, 6, -18, 10, 3}};
    // i == N - 1
    return {{-4, -3, -2, -1, 0}, {3, -16, 36, -48, 25}};
}

} // namespace ball_detail

/// d/dr applied entrywise (4th order).
inline MatrixField derivative_r(const BallGrid& g, const MatrixField& u)
{
    MatrixField out(g.size());
    const double inv = 1.0 / (12.0 * g.dr());
    for (int i = 0; i < g.Nr; ++i) {
        auto st = ball_detail::stencil_for(i, g.Nr);
        for (int j = 0; j < g.Nt; ++j)
            for (int k = 0; k < g.Np; ++k) {
                Matrix acc = st.coeff[0] * u[g.index(i + st.offsets[0], j, k)];
                for (int m = 1; m < 5; ++m)
                    acc += st.coeff[m] * u[g.index(i + st.offsets[m], j, k)];
                out[g.index(i, j, k)] = inv * acc;
            }
    }
    return out;
}

/// d/dtheta applied entrywise (4th order).
inline MatrixField derivative_theta(const BallGrid& g, const MatrixField& u)
{
    MatrixField out(g.size());
    const double inv = 1.0 / (12.0 * g.dtheta());
    for (int j = 0; j < g.Nt; ++j) {
        auto st = ball_detail::stencil_for(j, g.Nt);
        for (int i = 0; i < g.Nr; ++i)
            for (int k = 0; k < g.Np; ++k) {
                Matrix acc = st.coeff[0] * u[g.index(i, j + st.offsets[0], k)];
                for (int m = 1; m < 5; ++m)
                    acc += st.coeff[m] * u[g.index(i, j + st.offsets[m], k)];
                out[g.index(i, j, k)] = inv * acc;
            }
    }
    return out;
}

/// d/dphi by the periodic spectral differentiation matrix.
inline MatrixField derivative_phi(const BallGrid& g, const MatrixField& u)
{
    MatrixField out(g.size());
    const auto kernel = detail::spectral_kernel(g.Np);
    for (int i = 0; i < g.Nr; ++i)
        for (int j = 0; j < g.Nt; ++j)
            for (int k = 0; k < g.Np; ++k) {
                Matrix acc = Matrix::Zero(u[0].rows(), u[0].cols());
                for (int m = 1; m < g.Np; ++m)
                    acc += kernel[std::size_t(m)] * u[g.index(i, j, (k + m) % g.Np)];
                out[g.index(i, j, k)] = -acc;
            }
    return out;
}

/// Lagrange extrapolation weights from the last `pts` radial nodes to r = 1.
inline std::vector<double> boundary_extrapolation_weights(const BallGrid& g, int pts = 5)
{
    std::vector<double> w(static_cast<std::size_t>(pts), 0.0);
    for (int m = 0; m < pts; ++m) {
        double num = 1.0, den = 1.0;
        double rm = g.r(g.Nr - pts + m);
        for (int l = 0; l < pts; ++l) {
            if (l == m)
                continue;
            double rl = g.r(g.Nr - pts + l);
            num *= (1.0 - rl);
            den *= (rm - rl);
        }
        w[std::size_t(m)] = num / den;
    }
    return w;
}

/// Extrapolate a matrix field to the boundary sphere; result indexed (j,k).
inline MatrixField extrapolate_to_boundary(const BallGrid& g, const MatrixField& u, int pts = 5)
{
    const auto w = boundary_extrapolation_weights(g, pts);
    MatrixField out(std::size_t(g.Nt) * g.Np);
    for (int j = 0; j < g.Nt; ++j)
        for (int k = 0; k < g.Np; ++k) {
            Matrix acc = w[0] * u[g.index(g.Nr - pts, j, k)];
            for (int m = 1; m < pts; ++m)
                acc += w[std::size_t(m)] * u[g.index(g.Nr - pts + m, j, k)];
            out[std::size_t(j) * g.Np + k] = acc;
        }
    return out;
}

} // namespace cocycle
