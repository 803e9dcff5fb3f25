#pragma once

#include "cocycle/ball/grid.hpp"
#include "cocycle/rng.hpp"

namespace cocycle {

enum class BoundaryClass { free_class, flattened, loop };

inline const char* boundary_class_name(BoundaryClass b)
{
    switch (b) {
        case BoundaryClass::free_class: return "free";
        case BoundaryClass::flattened: return "flattened";
        case BoundaryClass::loop: return "loop";
    }
    return "?";
}

struct BallAlgebraField {
    BallGrid grid;
    int n = 0;
    BoundaryClass boundary_class = BoundaryClass::free_class;
    MatrixField s;

    BallAlgebraField() = default;
    BallAlgebraField(BallGrid g, int n_, BoundaryClass bc = BoundaryClass::free_class)
        : grid(g), n(n_), boundary_class(bc), s(g.size(), Matrix::Zero(n_, n_))
    {
    }
};

struct BallGroupField {
    BallGrid grid;
    int n = 0;
    BoundaryClass boundary_class = BoundaryClass::free_class;
    MatrixField s;

    BallGroupField() = default;
    BallGroupField(BallGrid g, int n_, BoundaryClass bc = BoundaryClass::free_class)
        : grid(g), n(n_), boundary_class(bc), s(g.size(), Matrix::Identity(n_, n_))
    {
    }
};

// ---------------------------------------------------------------------------
// Seeded analytic field specs. Fields are finite sums
//     w_class,m(r) * p(x^, y^, z^) * B
// with p a low-order monomial in the unit-sphere coordinates and B an su(n)
// basis element. The same spec samples onto any grid, which is what the
// refinement studies need. The window family realizes the boundary classes,
//     flattened: w'(1) = 0,   loop: w(1) = w'(1) = 0,
// and varies its radial shape with the term index m: fields with a single
// shared radial profile are globally separable u(r) X(Omega), a family on
// which the MF integrals degenerate to exact zeros.
// ---------------------------------------------------------------------------

inline double radial_window(BoundaryClass bc, double r, int variant = 0)
{
    const double q = 1.0 - r * r;
    const double r2 = r * r;
    switch (bc) {
        case BoundaryClass::flattened: {
            // r^(2m) ((m+1) - m r^2): value 1, slope 0 at r = 1
            double p = 1.0;
            for (int e = 0; e < variant; ++e)
                p *= r2;
            return p * ((variant + 1) - variant * r2);
        }
        case BoundaryClass::loop: {
            // r^(2m+2) (1-r^2)^2, scaled to peak near 1
            double p = r2;
            for (int e = 0; e < variant; ++e)
                p *= r2;
            const double m = variant;
            const double peak_r2 = (m + 1.0) / (m + 3.0);
            double peak = std::pow(peak_r2, m + 1.0) * (1.0 - peak_r2) * (1.0 - peak_r2);
            return p * q * q / peak;
        }
        case BoundaryClass::free_class: {
            double p = r2;
            for (int e = 0; e < variant; ++e)
                p *= r2;
            return 0.4 + 0.6 * p;
        }
    }
    return 0.0;
}

struct BallFieldSpec {
    int n = 2;
    BoundaryClass boundary_class = BoundaryClass::free_class;
    struct Term {
        double coef;
        int ex, ey, ez; // monomial exponents in the unit-sphere coordinates
        int basis_index;
        int window_variant = 0;
    };
    std::vector<Term> terms;

    Matrix eval(double r, double theta, double phi, const std::vector<Matrix>& basis) const
    {
        const double sx = std::sin(theta) * std::cos(phi);
        const double sy = std::sin(theta) * std::sin(phi);
        const double sz = std::cos(theta);
        Matrix acc = Matrix::Zero(n, n);
        for (const auto& t : terms) {
            double p = radial_window(boundary_class, r, t.window_variant) * t.coef;
            for (int e = 0; e < t.ex; ++e)
                p *= sx;
            for (int e = 0; e < t.ey; ++e)
                p *= sy;
            for (int e = 0; e < t.ez; ++e)
                p *= sz;
            acc += p * basis[std::size_t(t.basis_index)];
        }
        return acc;
    }
};

inline BallFieldSpec random_ball_spec(std::uint64_t seed, int n, BoundaryClass bc,
                                      double amplitude = 1.0, int nterms = 4)
{
    SplitMix64 rng(seed);
    BallFieldSpec spec;
    spec.n = n;
    spec.boundary_class = bc;
    const int basis_count = n * n - 1;
    for (int t = 0; t < nterms; ++t) {
        BallFieldSpec::Term term;
        term.coef = rng.next_symmetric() * amplitude / nterms;
        int total = int(rng.next_below(3)); // monomial degree 0..2
        term.ex = int(rng.next_below(std::uint64_t(total) + 1));
        term.ey = int(rng.next_below(std::uint64_t(total - term.ex) + 1));
        term.ez = total - term.ex - term.ey;
        term.basis_index = int(rng.next_below(std::uint64_t(basis_count)));
        term.window_variant = t;
        spec.terms.push_back(term);
    }
    return spec;
}

inline BallAlgebraField sample(const BallFieldSpec& spec, const BallGrid& g)
{
    BallAlgebraField f(g, spec.n, spec.boundary_class);
    const auto basis = su_basis(spec.n);
    for (int i = 0; i < g.Nr; ++i)
        for (int j = 0; j < g.Nt; ++j)
            for (int k = 0; k < g.Np; ++k)
                f.s[g.index(i, j, k)] = spec.eval(g.r(i), g.theta(j), g.phi(k), basis);
    return f;
}

inline BallGroupField sample_group(const BallFieldSpec& spec, const BallGrid& g)
{
    BallGroupField f(g, spec.n, spec.boundary_class);
    const auto basis = su_basis(spec.n);
    for (int i = 0; i < g.Nr; ++i)
        for (int j = 0; j < g.Nt; ++j)
            for (int k = 0; k < g.Np; ++k)
                f.s[g.index(i, j, k)] =
                    exp_antihermitian(spec.eval(g.r(i), g.theta(j), g.phi(k), basis));
    return f;
}

/// Max norm of the radial derivative extrapolated to the boundary sphere;
/// near zero for flattened- and loop-class fields.
inline double boundary_radial_derivative_max(const BallGrid& g, const MatrixField& u)
{
    MatrixField du = derivative_r(g, u);
    MatrixField at_boundary = extrapolate_to_boundary(g, du);
    double m = 0;
    for (const auto& mat : at_boundary)
        m = std::max(m, mat.cwiseAbs().maxCoeff());
    return m;
}

/// Max deviation of the boundary restriction from its mean; near zero for
/// loop-class fields (constant boundary value).
inline double boundary_constancy_deviation(const BallGrid& g, const MatrixField& u)
{
    MatrixField at_boundary = extrapolate_to_boundary(g, u);
    Matrix mean = Matrix::Zero(u[0].rows(), u[0].cols());
    for (const auto& m : at_boundary)
        mean += m;
    mean /= double(at_boundary.size());
    double dev = 0;
    for (const auto& m : at_boundary)
        dev = std::max(dev, (m - mean).cwiseAbs().maxCoeff());
    return dev;
}

} // namespace cocycle
