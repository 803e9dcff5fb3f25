#pragma once

#include "cocycle/ball/fields.hpp"

namespace cocycle {

/// Lie-algebra-valued p-form on the ball grid, components in the orthonormal
/// coframe e^r = dr, e^t = r dtheta, e^p = r sin(theta) dphi. Component
/// order: p=1: (r, t, p); p=2: (rt, rp, tp); p=3: (rtp).
struct PForm {
    BallGrid grid;
    int n = 0;
    int degree = 0;
    std::vector<MatrixField> comps;

    PForm() = default;
    PForm(BallGrid g, int n_, int degree_) : grid(g), n(n_), degree(degree_)
    {
        if (degree_ < 0 || degree_ > 3)
            throw std::invalid_argument("PForm: degree must be 0..3");
        comps.assign(std::size_t(ncomp(degree_)),
                     MatrixField(g.size(), Matrix::Zero(n_, n_)));
    }

    static int ncomp(int degree) { return degree == 0 || degree == 3 ? 1 : 3; }

    /// Signed component lookup by index pair (p = 2 only).
    const Matrix component2(int a, int b, std::size_t node, int* sign) const
    {
        static const int slot[3][3] = {{-1, 0, 1}, {0, -1, 2}, {1, 2, -1}};
        if (a == b) {
            *sign = 0;
            return Matrix::Zero(n, n);
        }
        *sign = a < b ? 1 : -1;
        return comps[std::size_t(slot[a][b])][node];
    }
};

namespace ball_detail {

struct GeometryTables {
    std::vector<double> inv_r;        // 1/r_i
    std::vector<double> inv_sin;      // 1/sin(theta_j)
    std::vector<double> cot;          // cot(theta_j)

    explicit GeometryTables(const BallGrid& g)
    {
        inv_r.resize(std::size_t(g.Nr));
        for (int i = 0; i < g.Nr; ++i)
            inv_r[std::size_t(i)] = 1.0 / g.r(i);
        inv_sin.resize(std::size_t(g.Nt));
        cot.resize(std::size_t(g.Nt));
        for (int j = 0; j < g.Nt; ++j) {
            inv_sin[std::size_t(j)] = 1.0 / std::sin(g.theta(j));
            cot[std::size_t(j)] = std::cos(g.theta(j)) / std::sin(g.theta(j));
        }
    }
};

} // namespace ball_detail

/// d of a matrix-valued 0-form.
inline PForm exterior_derivative0(const BallGrid& g, int n, const MatrixField& u)
{
    ball_detail::GeometryTables geo(g);
    PForm d(g, n, 1);
    MatrixField dr = derivative_r(g, u);
    MatrixField dt = derivative_theta(g, u);
    MatrixField dp = derivative_phi(g, u);
    for (int i = 0; i < g.Nr; ++i)
        for (int j = 0; j < g.Nt; ++j)
            for (int k = 0; k < g.Np; ++k) {
                std::size_t id = g.index(i, j, k);
                d.comps[0][id] = dr[id];
                d.comps[1][id] = geo.inv_r[std::size_t(i)] * dt[id];
                d.comps[2][id] =
                    geo.inv_r[std::size_t(i)] * geo.inv_sin[std::size_t(j)] * dp[id];
            }
    return d;
}

inline PForm exterior_derivative(const BallAlgebraField& x)
{
    return exterior_derivative0(x.grid, x.n, x.s);
}

inline PForm exterior_derivative_group(const BallGroupField& f)
{
    return exterior_derivative0(f.grid, f.n, f.s);
}

/// d of a 1- or 2-form in the orthonormal coframe; the geometric factors are
/// expanded analytically (not differenced), so d.d = 0 holds only up to the
/// scheme error, which is what the structure checks measure.
inline PForm exterior_derivative(const PForm& a)
{
    const BallGrid& g = a.grid;
    ball_detail::GeometryTables geo(g);
    if (a.degree == 0)
        return exterior_derivative0(g, a.n, a.comps[0]);
    if (a.degree == 1) {
        PForm d(g, a.n, 2);
        MatrixField dr_at = derivative_r(g, a.comps[1]);
        MatrixField dr_ap = derivative_r(g, a.comps[2]);
        MatrixField dt_ar = derivative_theta(g, a.comps[0]);
        MatrixField dt_ap = derivative_theta(g, a.comps[2]);
        MatrixField dp_ar = derivative_phi(g, a.comps[0]);
        MatrixField dp_at = derivative_phi(g, a.comps[1]);
        for (int i = 0; i < g.Nr; ++i)
            for (int j = 0; j < g.Nt; ++j)
                for (int k = 0; k < g.Np; ++k) {
                    std::size_t id = g.index(i, j, k);
                    const double ir = geo.inv_r[std::size_t(i)];
                    const double is = geo.inv_sin[std::size_t(j)];
                    const double ct = geo.cot[std::size_t(j)];
                    // (rt)
                    d.comps[0][id] =
                        dr_at[id] + ir * a.comps[1][id] - ir * dt_ar[id];
                    // (rp)
                    d.comps[1][id] =
                        dr_ap[id] + ir * a.comps[2][id] - ir * is * dp_ar[id];
                    // (tp)
                    d.comps[2][id] = ir * (dt_ap[id] + ct * a.comps[2][id]) -
                                     ir * is * dp_at[id];
                }
        return d;
    }
    if (a.degree == 2) {
        PForm d(g, a.n, 3);
        MatrixField dr_tp = derivative_r(g, a.comps[2]);
        MatrixField dt_rp = derivative_theta(g, a.comps[1]);
        MatrixField dp_rt = derivative_phi(g, a.comps[0]);
        for (int i = 0; i < g.Nr; ++i)
            for (int j = 0; j < g.Nt; ++j)
                for (int k = 0; k < g.Np; ++k) {
                    std::size_t id = g.index(i, j, k);
                    const double ir = geo.inv_r[std::size_t(i)];
                    const double is = geo.inv_sin[std::size_t(j)];
                    const double ct = geo.cot[std::size_t(j)];
                    d.comps[0][id] = dr_tp[id] + 2.0 * ir * a.comps[2][id] -
                                     ir * (dt_rp[id] + ct * a.comps[1][id]) +
                                     ir * is * dp_rt[id];
                }
        return d;
    }
    throw std::invalid_argument("exterior_derivative: d of a top form is not represented");
}

/// Wedge with matrix multiplication on components.
inline PForm wedge(const PForm& a, const PForm& b)
{
    if (!(a.grid == b.grid) || a.n != b.n)
        throw std::invalid_argument("wedge: grid mismatch");
    const int p = a.degree, q = b.degree;
    if (p + q > 3)
        throw std::invalid_argument("wedge: degree overflow");
    const BallGrid& g = a.grid;
    PForm c(g, a.n, p + q);
    const std::size_t sz = g.size();

    if (p == 0 || q == 0) {
        const PForm& form = (p == 0) ? b : a;
        const MatrixField& scalar = (p == 0) ? a.comps[0] : b.comps[0];
        for (std::size_t ci = 0; ci < form.comps.size(); ++ci)
            for (std::size_t id = 0; id < sz; ++id)
                c.comps[ci][id] = (p == 0) ? Matrix(scalar[id] * form.comps[ci][id])
                                           : Matrix(form.comps[ci][id] * scalar[id]);
        return c;
    }
    if (p == 1 && q == 1) {
        for (std::size_t id = 0; id < sz; ++id) {
            c.comps[0][id] = a.comps[0][id] * b.comps[1][id] - a.comps[1][id] * b.comps[0][id];
            c.comps[1][id] = a.comps[0][id] * b.comps[2][id] - a.comps[2][id] * b.comps[0][id];
            c.comps[2][id] = a.comps[1][id] * b.comps[2][id] - a.comps[2][id] * b.comps[1][id];
        }
        return c;
    }
    if (p == 1 && q == 2) {
        for (std::size_t id = 0; id < sz; ++id)
            c.comps[0][id] = a.comps[0][id] * b.comps[2][id] -
                             a.comps[1][id] * b.comps[1][id] +
                             a.comps[2][id] * b.comps[0][id];
        return c;
    }
    // p == 2 && q == 1
    for (std::size_t id = 0; id < sz; ++id)
        c.comps[0][id] = a.comps[2][id] * b.comps[0][id] - a.comps[1][id] * b.comps[1][id] +
                         a.comps[0][id] * b.comps[2][id];
    return c;
}

inline PForm operator+(const PForm& a, const PForm& b)
{
    if (!(a.grid == b.grid) || a.degree != b.degree)
        throw std::invalid_argument("PForm +: mismatch");
    PForm c = a;
    for (std::size_t ci = 0; ci < c.comps.size(); ++ci)
        for (std::size_t id = 0; id < c.comps[ci].size(); ++id)
            c.comps[ci][id] += b.comps[ci][id];
    return c;
}

inline PForm operator-(const PForm& a, const PForm& b)
{
    if (!(a.grid == b.grid) || a.degree != b.degree)
        throw std::invalid_argument("PForm -: mismatch");
    PForm c = a;
    for (std::size_t ci = 0; ci < c.comps.size(); ++ci)
        for (std::size_t id = 0; id < c.comps[ci].size(); ++id)
            c.comps[ci][id] -= b.comps[ci][id];
    return c;
}

inline PForm scaled(const PForm& a, Complex k)
{
    PForm c = a;
    for (auto& comp : c.comps)
        for (auto& m : comp)
            m *= k;
    return c;
}

inline double max_norm(const PForm& a)
{
    double m = 0;
    for (const auto& comp : a.comps)
        for (const auto& mat : comp)
            m = std::max(m, mat.cwiseAbs().maxCoeff());
    return m;
}

/// Integral of a traced 3-form over the ball (cell-exact Jacobian weights).
inline Complex integrate_volume_traced(const PForm& rho)
{
    if (rho.degree != 3)
        throw std::invalid_argument("integrate_volume_traced: need a 3-form");
    const BallGrid& g = rho.grid;
    Complex acc(0, 0);
    for (int i = 0; i < g.Nr; ++i) {
        const double wr = g.weight_r(i);
        for (int j = 0; j < g.Nt; ++j) {
            const double w = wr * g.weight_theta(j) * g.weight_phi();
            for (int k = 0; k < g.Np; ++k)
                acc += w * rho.comps[0][g.index(i, j, k)].trace();
        }
    }
    return acc;
}

/// Integral of scalar volume samples (for quadrature calibration tests).
inline Complex integrate_scalar_volume(const BallGrid& g, const std::vector<Complex>& samples)
{
    Complex acc(0, 0);
    for (int i = 0; i < g.Nr; ++i)
        for (int j = 0; j < g.Nt; ++j)
            for (int k = 0; k < g.Np; ++k)
                acc += g.weight_r(i) * g.weight_theta(j) * g.weight_phi() *
                       samples[g.index(i, j, k)];
    return acc;
}

/// Integral over the boundary sphere of the traced tangential (tp) component
/// of a 2-form, extrapolated to r = 1.
inline Complex integrate_boundary_traced(const PForm& sigma)
{
    if (sigma.degree != 2)
        throw std::invalid_argument("integrate_boundary_traced: need a 2-form");
    const BallGrid& g = sigma.grid;
    MatrixField tp = extrapolate_to_boundary(g, sigma.comps[2]);
    Complex acc(0, 0);
    for (int j = 0; j < g.Nt; ++j)
        for (int k = 0; k < g.Np; ++k)
            acc += g.weight_theta(j) * g.weight_phi() * tp[std::size_t(j) * g.Np + k].trace();
    return acc;
}

inline Complex integrate_scalar_boundary(const BallGrid& g, const std::vector<Complex>& jk)
{
    Complex acc(0, 0);
    for (int j = 0; j < g.Nt; ++j)
        for (int k = 0; k < g.Np; ++k)
            acc += g.weight_theta(j) * g.weight_phi() * jk[std::size_t(j) * g.Np + k];
    return acc;
}

/// Right-invariant Maurer-Cartan form (df) f^-1; satisfies d w = w ^ w up to
/// the scheme error.
inline PForm maurer_cartan(const BallGroupField& f)
{
    PForm df = exterior_derivative_group(f);
    PForm w(f.grid, f.n, 1);
    for (int c = 0; c < 3; ++c)
        for (std::size_t id = 0; id < f.grid.size(); ++id)
            w.comps[std::size_t(c)][id] = df.comps[std::size_t(c)][id] * f.s[id].adjoint();
    return w;
}

} // namespace cocycle
