#pragma once

#include <array>
#include <functional>

#include "cocycle/ball/pform.hpp"

namespace cocycle {

enum class BracketReading { matrix_commutator, graded_commutator };

/// Conventions for the 3D cocycle machinery. The defaults are the ones the
/// symbolic certificate singles out: matrix-commutator bracket, coboundary
/// signs (+1, +1, -1), prefactor i/(24 pi) with the i/(24 pi^2) variant a
/// configuration away.
struct MfConventions {
    BracketReading bracket = BracketReading::matrix_commutator;
    Complex prefactor = Complex(0, 1) / (24.0 * std::numbers::pi);
    std::array<int, 3> coboundary_signs{+1, +1, -1};

    static MfConventions with_prefactor_24pi2()
    {
        MfConventions c;
        c.prefactor = Complex(0, 1) / (24.0 * std::numbers::pi * std::numbers::pi);
        return c;
    }
};

/// [dx, dy] in the chosen reading: dx^dy -+ dy^dx.
inline PForm graded_bracket_d(const BallAlgebraField& x, const BallAlgebraField& y,
                              BracketReading br = BracketReading::matrix_commutator)
{
    if (!(x.grid == y.grid) || x.n != y.n)
        throw std::invalid_argument("graded_bracket_d: grid mismatch");
    PForm dx = exterior_derivative(x);
    PForm dy = exterior_derivative(y);
    PForm a = wedge(dx, dy);
    PForm b = wedge(dy, dx);
    return br == BracketReading::matrix_commutator ? a - b : a + b;
}

/// theta(A; x, y) = prefactor * int tr A [dx, dy].
inline Complex mf_cocycle(const PForm& A, const BallAlgebraField& x, const BallAlgebraField& y,
                          const MfConventions& conv = {})
{
    if (!(A.grid == x.grid) || !(x.grid == y.grid) || A.degree != 1)
        throw std::invalid_argument("mf_cocycle: grid mismatch or bad potential degree");
    return conv.prefactor *
           integrate_volume_traced(wedge(A, graded_bracket_d(x, y, conv.bracket)));
}

/// L_x A = [A, x] + dx, componentwise.
inline PForm lie_derivative_A(const PForm& A, const BallAlgebraField& x)
{
    if (!(A.grid == x.grid) || A.degree != 1)
        throw std::invalid_argument("lie_derivative_A: grid mismatch");
    PForm r = exterior_derivative(x);
    for (int c = 0; c < 3; ++c)
        for (std::size_t id = 0; id < A.grid.size(); ++id)
            r.comps[std::size_t(c)][id] += commutator(A.comps[std::size_t(c)][id], x.s[id]);
    return r;
}

inline BallAlgebraField bracket_field(const BallAlgebraField& x, const BallAlgebraField& y)
{
    if (!(x.grid == y.grid) || x.n != y.n)
        throw std::invalid_argument("bracket_field: grid mismatch");
    BallAlgebraField r(x.grid, x.n);
    for (std::size_t id = 0; id < x.grid.size(); ++id)
        r.s[id] = commutator(x.s[id], y.s[id]);
    return r;
}

// ---------------------------------------------------------------------------
// Cochains. Evaluators are stored with their A-dependence so the Lie
// derivative can act by exact substitution where the paper's cochains allow
// it (all are linear or constant in A); the numerical directional derivative
// is only the fallback for general evaluators.
// ---------------------------------------------------------------------------

enum class ADependence { linear, affine, general };

struct Cochain1 {
    std::function<Complex(const PForm&, const BallAlgebraField&)> eval;
    ADependence dependence = ADependence::linear;
};

struct Cochain2 {
    std::function<Complex(const PForm&, const BallAlgebraField&, const BallAlgebraField&)> eval;
    ADependence dependence = ADependence::linear;
};

namespace ball_detail {

inline constexpr double kDirectionalStep = 1e-5;

template <typename Eval>
Complex directional_in_A(const Eval& eval, ADependence dep, const PForm& at, const PForm& dir)
{
    switch (dep) {
        case ADependence::linear: return eval(dir);
        case ADependence::affine: {
            PForm zero(at.grid, at.n, 1);
            return eval(dir) - eval(zero);
        }
        case ADependence::general: {
            PForm up = at + scaled(dir, kDirectionalStep);
            PForm dn = at - scaled(dir, kDirectionalStep);
            return (eval(up) - eval(dn)) / (2.0 * kDirectionalStep);
        }
    }
    return {};
}

} // namespace ball_detail

/// (d lambda)(A; x, y) = L_x lambda(A;y) - L_y lambda(A;x) - lambda(A;[x,y]).
inline Cochain2 ce_coboundary_1(const Cochain1& lambda)
{
    Cochain2 out;
    out.dependence = lambda.dependence == ADependence::general ? ADependence::general
                                                               : ADependence::affine;
    out.eval = [lambda](const PForm& A, const BallAlgebraField& x,
                        const BallAlgebraField& y) -> Complex {
        PForm lx = lie_derivative_A(A, x);
        PForm ly = lie_derivative_A(A, y);
        auto evy = [&](const PForm& V) { return lambda.eval(V, y); };
        auto evx = [&](const PForm& V) { return lambda.eval(V, x); };
        Complex t1 = ball_detail::directional_in_A(evy, lambda.dependence, A, lx);
        Complex t2 = ball_detail::directional_in_A(evx, lambda.dependence, A, ly);
        Complex t3 = lambda.eval(A, bracket_field(x, y));
        return t1 - t2 - t3;
    };
    return out;
}

/// (d theta)(A; x, y, z), the 3-cochain evaluator.
inline std::function<Complex(const PForm&, const BallAlgebraField&, const BallAlgebraField&,
                             const BallAlgebraField&)>
ce_coboundary_2(const Cochain2& theta)
{
    return [theta](const PForm& A, const BallAlgebraField& x, const BallAlgebraField& y,
                   const BallAlgebraField& z) -> Complex {
        PForm lx = lie_derivative_A(A, x);
        PForm ly = lie_derivative_A(A, y);
        PForm lz = lie_derivative_A(A, z);
        auto dir = [&](const BallAlgebraField& a, const BallAlgebraField& b, const PForm& v) {
            auto ev = [&](const PForm& V) { return theta.eval(V, a, b); };
            return ball_detail::directional_in_A(ev, theta.dependence, A, v);
        };
        Complex acc = dir(y, z, lx) - dir(x, z, ly) + dir(x, y, lz);
        acc -= theta.eval(A, bracket_field(x, y), z);
        acc += theta.eval(A, bracket_field(x, z), y);
        acc -= theta.eval(A, bracket_field(y, z), x);
        return acc;
    };
}

// ---------------------------------------------------------------------------
// The appendix cochains, with w = maurer_cartan(f) supplied by the caller.
// Prefactors follow the appendix (none); mf-scale callers multiply.
// ---------------------------------------------------------------------------

/// lambda_1(A; z) = int tr A w [w, z]
inline Complex lambda_1(const PForm& A, const PForm& w, const BallAlgebraField& z)
{
    PForm wz(w.grid, w.n, 1); // [w, z] pointwise per component
    for (int c = 0; c < 3; ++c)
        for (std::size_t id = 0; id < w.grid.size(); ++id)
            wz.comps[std::size_t(c)][id] = commutator(w.comps[std::size_t(c)][id], z.s[id]);
    return integrate_volume_traced(wedge(wedge(A, w), wz));
}

/// lambda_2(A; z) = int tr [w, A] dz
inline Complex lambda_2(const PForm& A, const PForm& w, const BallAlgebraField& z,
                        BracketReading br = BracketReading::matrix_commutator)
{
    PForm wa = wedge(w, A);
    PForm aw = wedge(A, w);
    PForm br_wa = (br == BracketReading::matrix_commutator) ? wa - aw : wa + aw;
    return integrate_volume_traced(wedge(br_wa, exterior_derivative(z)));
}

/// lambda_3(z) = int tr w^3 z
inline Complex lambda_3(const PForm& w, const BallAlgebraField& z)
{
    PForm w3 = wedge(wedge(w, w), w);
    PForm zf(w.grid, w.n, 0);
    zf.comps[0] = z.s;
    return integrate_volume_traced(wedge(w3, zf));
}

inline std::array<Cochain1, 3> appendix_cochains(const PForm& w, BracketReading br)
{
    Cochain1 l1{[w](const PForm& A, const BallAlgebraField& z) { return lambda_1(A, w, z); },
                ADependence::linear};
    Cochain1 l2{[w, br](const PForm& A,
                        const BallAlgebraField& z) { return lambda_2(A, w, z, br); },
                ADependence::linear};
    // lambda_3 is constant in A; the affine rule eval(V) - eval(0) makes its
    // exact A-derivative vanish
    Cochain1 l3{[w](const PForm& A, const BallAlgebraField& z) {
                    (void)A;
                    return lambda_3(w, z);
                },
                ADependence::affine};
    return {l1, l2, l3};
}

// ---------------------------------------------------------------------------
// Conjugation and the invariance residual.
// ---------------------------------------------------------------------------

/// A -> f^-1 A f + f^-1 df, x -> f^-1 x f; then evaluate the cocycle at the
/// transformed arguments.
inline Complex conjugated_cocycle(const PForm& A, const BallAlgebraField& x,
                                  const BallAlgebraField& y, const BallGroupField& f,
                                  const MfConventions& conv = {})
{
    if (!(A.grid == f.grid))
        throw std::invalid_argument("conjugated_cocycle: grid mismatch");
    PForm df = exterior_derivative_group(f);
    PForm Af(A.grid, A.n, 1);
    for (int c = 0; c < 3; ++c)
        for (std::size_t id = 0; id < A.grid.size(); ++id) {
            const Matrix finv = f.s[id].adjoint();
            Af.comps[std::size_t(c)][id] =
                finv * A.comps[std::size_t(c)][id] * f.s[id] +
                finv * df.comps[std::size_t(c)][id];
        }
    BallAlgebraField xf(x.grid, x.n), yf(y.grid, y.n);
    for (std::size_t id = 0; id < x.grid.size(); ++id) {
        const Matrix finv = f.s[id].adjoint();
        xf.s[id] = finv * x.s[id] * f.s[id];
        yf.s[id] = finv * y.s[id] * f.s[id];
    }
    return mf_cocycle(Af, xf, yf, conv);
}

/// | theta^f - theta + sum_i s_i d(lambda_i)(A;x,y) | with the signs taken
/// from the symbolic certificate. Stokes terms drop because x, y vanish on
/// the boundary, so the residual decays at the scheme order.
inline double invariance_residual(const PForm& A, const BallAlgebraField& x,
                                  const BallAlgebraField& y, const BallGroupField& f,
                                  const MfConventions& conv = {})
{
    auto check_loop = [](const BallAlgebraField& v, const char* name) {
        double scale = 0;
        for (const auto& m : v.s)
            scale = std::max(scale, m.cwiseAbs().maxCoeff());
        if (scale == 0)
            return;
        MatrixField bd = extrapolate_to_boundary(v.grid, v.s);
        double b = 0;
        for (const auto& m : bd)
            b = std::max(b, m.cwiseAbs().maxCoeff());
        // coarse-grid extrapolation of an exact zero still leaves O(h^5)
        // residue; the guard only screens out genuinely non-loop data
        if (b > 0.05 * scale)
            throw std::invalid_argument(std::string("invariance_residual: ") + name +
                                        " is not loop-class (nonzero boundary values)");
    };
    check_loop(x, "x");
    check_loop(y, "y");

    const Complex lhs = conjugated_cocycle(A, x, y, f, conv) - mf_cocycle(A, x, y, conv);
    PForm w = maurer_cartan(f);
    BracketReading br = conv.bracket;
    auto cochains = appendix_cochains(w, br);
    Complex sum(0, 0);
    for (int i = 0; i < 3; ++i) {
        Cochain2 d = ce_coboundary_1(cochains[std::size_t(i)]);
        sum += double(conv.coboundary_signs[std::size_t(i)]) * d.eval(A, x, y);
    }
    return std::abs(lhs + conv.prefactor * sum);
}

/// Section 3 boundary term: prefactor * int_{S2} tr(x[dy,dz] + y[dz,dx]
/// + z[dx,dy]) with the cyclic signs the symbolic reduction certifies (the
/// printed middle sign differs; see the boundary certificate).
inline Complex boundary_term(const BallAlgebraField& x, const BallAlgebraField& y,
                             const BallAlgebraField& z, const MfConventions& conv = {})
{
    auto br = [&](const BallAlgebraField& a, const BallAlgebraField& b) {
        return graded_bracket_d(a, b, conv.bracket);
    };
    auto lmul = [&](const BallAlgebraField& s, const PForm& form) {
        PForm sf(form.grid, form.n, 0);
        sf.comps[0] = s.s;
        return wedge(sf, form);
    };
    PForm integrand = lmul(x, br(y, z)) + lmul(y, br(z, x)) + lmul(z, br(x, y));
    return conv.prefactor * integrate_boundary_traced(integrand);
}

/// delta(theta_MF)(A; x, y, z) with theta the MF cocycle at the given
/// conventions.
inline Complex delta_theta_mf(const PForm& A, const BallAlgebraField& x,
                              const BallAlgebraField& y, const BallAlgebraField& z,
                              const MfConventions& conv = {})
{
    Cochain2 theta{[conv](const PForm& Af, const BallAlgebraField& xf,
                          const BallAlgebraField& yf) { return mf_cocycle(Af, xf, yf, conv); },
                   ADependence::linear};
    return ce_coboundary_2(theta)(A, x, y, z);
}

// ---------------------------------------------------------------------------
// Quotient map to the boundary sphere.
// ---------------------------------------------------------------------------

struct SphereGroupField {
    int Nt = 0, Np = 0;
    int n = 0;
    MatrixField s; // (j, k) indexed

    std::size_t index(int j, int k) const { return std::size_t(j) * Np + k; }
};

inline SphereGroupField restrict_boundary(const BallGroupField& f)
{
    SphereGroupField q;
    q.Nt = f.grid.Nt;
    q.Np = f.grid.Np;
    q.n = f.n;
    q.s = extrapolate_to_boundary(f.grid, f.s);
    return q;
}

// ---------------------------------------------------------------------------
// Seeded 1-form potentials: components built from windowed sphere
// polynomials, smooth on the coordinate box, no boundary condition.
// ---------------------------------------------------------------------------

struct PotentialSpec {
    int n = 2;
    std::array<BallFieldSpec, 3> comps;
};

inline PotentialSpec random_potential_spec(std::uint64_t seed, int n, double amplitude = 1.0)
{
    PotentialSpec spec;
    spec.n = n;
    for (int c = 0; c < 3; ++c)
        spec.comps[std::size_t(c)] =
            random_ball_spec(seed * 3 + std::uint64_t(c) + 101, n, BoundaryClass::free_class,
                             amplitude);
    return spec;
}

inline PForm sample(const PotentialSpec& spec, const BallGrid& g)
{
    PForm A(g, spec.n, 1);
    for (int c = 0; c < 3; ++c)
        A.comps[std::size_t(c)] = sample(spec.comps[std::size_t(c)], g).s;
    return A;
}

} // namespace cocycle
