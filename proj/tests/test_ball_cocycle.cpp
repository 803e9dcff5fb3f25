#include <catch2/catch_amalgamated.hpp>

#include "cocycle/ball/cocycle.hpp"

using namespace cocycle;

namespace {

struct Setup {
    BallGrid g;
    PForm A;
    BallAlgebraField x, y, z;
    BallGroupField f;

    explicit Setup(int N, std::uint64_t seed = 1,
                   BoundaryClass bc = BoundaryClass::loop)
        : g(N, N, N), A(sample(random_potential_spec(seed, 2, 0.8), g)),
          x(sample(random_ball_spec(seed + 10, 2, bc, 1.0), g)),
          y(sample(random_ball_spec(seed + 11, 2, bc, 1.0), g)),
          z(sample(random_ball_spec(seed + 12, 2, bc, 1.0), g)),
          f(sample_group(random_ball_spec(seed + 13, 2, BoundaryClass::flattened, 0.8), g))
    {
    }
};

// all fields in the i s3 direction (su_basis(2) index 2)
BallFieldSpec abelian_spec(std::uint64_t seed, BoundaryClass bc, double amp)
{
    BallFieldSpec s = random_ball_spec(seed, 2, bc, amp);
    for (auto& t : s.terms)
        t.basis_index = 2;
    return s;
}

} // namespace

TEST_CASE("mf cocycle basics")
{
    Setup s(12);
    PForm zeroA(s.g, 2, 1);

    REQUIRE(std::abs(mf_cocycle(zeroA, s.x, s.y)) < 1e-15);
    REQUIRE(std::abs(mf_cocycle(s.A, s.x, s.x)) == 0.0);

    // antisymmetry is exact by the commutator convention
    Complex v1 = mf_cocycle(s.A, s.x, s.y);
    Complex v2 = mf_cocycle(s.A, s.y, s.x);
    REQUIRE(v1 == -v2);

    // reality with the i/24pi prefactor
    REQUIRE(std::abs(v1.imag()) < 1e-9 * (1.0 + std::abs(v1.real())));

    // linearity in A and in the field slots
    PForm A2 = sample(random_potential_spec(77, 2, 0.5), s.g);
    Complex lhs = mf_cocycle(A2 + scaled(s.A, 2.0), s.x, s.y);
    Complex rhs = mf_cocycle(A2, s.x, s.y) + 2.0 * v1;
    REQUIRE(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs)));

    BallAlgebraField xs(s.g, 2);
    for (std::size_t id = 0; id < s.g.size(); ++id)
        xs.s[id] = 0.7 * s.x.s[id] + 1.3 * s.z.s[id];
    Complex l2 = mf_cocycle(s.A, xs, s.y);
    Complex r2 = 0.7 * mf_cocycle(s.A, s.x, s.y) + 1.3 * mf_cocycle(s.A, s.z, s.y);
    REQUIRE(std::abs(l2 - r2) < 1e-10 * (1.0 + std::abs(l2)));
}

TEST_CASE("mf cocycle grid refinement agreement")
{
    auto value = [](int N) {
        BallGrid g(N, N, N);
        PForm A = sample(random_potential_spec(5, 2, 0.8), g);
        auto x = sample(random_ball_spec(15, 2, BoundaryClass::loop, 1.0), g);
        auto y = sample(random_ball_spec(16, 2, BoundaryClass::loop, 1.0), g);
        return mf_cocycle(A, x, y).real();
    };
    double v32 = value(32), v48 = value(48);
    REQUIRE(std::abs(v32 - v48) <= 0.01 * std::abs(v48));
}

TEST_CASE("lie derivative of the potential")
{
    Setup s(12);
    PForm zeroA(s.g, 2, 1);
    BallAlgebraField zero_field(s.g, 2);

    PForm l0 = lie_derivative_A(zeroA, s.x);
    REQUIRE(max_norm(l0 - exterior_derivative(s.x)) < 1e-14);
    REQUIRE(max_norm(lie_derivative_A(s.A, zero_field)) < 1e-14);

    // commutator part against a node-level oracle
    PForm full = lie_derivative_A(s.A, s.x);
    PForm dx = exterior_derivative(s.x);
    for (std::size_t id = 0; id < s.g.size(); id += 101)
        for (int c = 0; c < 3; ++c) {
            Matrix expect = s.A.comps[std::size_t(c)][id] * s.x.s[id] -
                            s.x.s[id] * s.A.comps[std::size_t(c)][id] +
                            dx.comps[std::size_t(c)][id];
            REQUIRE((full.comps[std::size_t(c)][id] - expect).cwiseAbs().maxCoeff() < 1e-13);
        }
}

TEST_CASE("ce coboundary of 1-cochains")
{
    Setup s(12);
    PForm w = maurer_cartan(s.f);

    Cochain1 zero{[](const PForm&, const BallAlgebraField&) { return Complex(0, 0); },
                  ADependence::linear};
    REQUIRE(std::abs(ce_coboundary_1(zero).eval(s.A, s.x, s.y)) == 0.0);

    auto cochains = appendix_cochains(w, BracketReading::matrix_commutator);
    for (const auto& lam : cochains) {
        Complex at_xx = ce_coboundary_1(lam).eval(s.A, s.x, s.x);
        REQUIRE(std::abs(at_xx) == 0.0);
    }

    // delta lambda_3 is A-independent
    PForm A2 = sample(random_potential_spec(91, 2, 1.1), s.g);
    Cochain2 d3 = ce_coboundary_1(cochains[2]);
    Complex a = d3.eval(s.A, s.x, s.y);
    Complex b = d3.eval(A2, s.x, s.y);
    REQUIRE(std::abs(a - b) < 1e-10 * (1.0 + std::abs(a)));

    // antisymmetry of the 2-cochain evaluator on random arguments
    Complex ab = d3.eval(s.A, s.x, s.y);
    Complex ba = d3.eval(s.A, s.y, s.x);
    REQUIRE(std::abs(ab + ba) < 1e-10 * (1.0 + std::abs(ab)));
}

TEST_CASE("nonlinear cochain fallback differentiates correctly")
{
    // quadratic-in-A test cochain: q(A; z) = int tr (A ^ A ^ dz)
    BallGrid g(8, 8, 8);
    PForm A = sample(random_potential_spec(3, 2, 0.7), g);
    auto z = sample(random_ball_spec(4, 2, BoundaryClass::loop), g);
    auto x = sample(random_ball_spec(5, 2, BoundaryClass::loop), g);

    auto q = [](const PForm& Af, const BallAlgebraField& zf) {
        return integrate_volume_traced(wedge(wedge(Af, Af), exterior_derivative(zf)));
    };
    PForm v = lie_derivative_A(A, x);
    // analytic directional derivative: tr(V^A^dz + A^V^dz)
    Complex expect = integrate_volume_traced(wedge(wedge(v, A), exterior_derivative(z))) +
                     integrate_volume_traced(wedge(wedge(A, v), exterior_derivative(z)));
    auto ev = [&](const PForm& At) { return q(At, z); };
    Complex got = ball_detail::directional_in_A(ev, ADependence::general, A, v);
    REQUIRE(std::abs(got - expect) < 1e-7 * (1.0 + std::abs(expect)));
}

TEST_CASE("delta delta lambda vanishes on an exactness family")
{
    // fields in r and phi only, radial polynomials of degree <= 2 and
    // phi-bandwidth <= 2: every derivative the evaluation takes is exact, so
    // delta(delta lambda) cancels to roundoff by pure algebra
    BallGrid g(12, 12, 16);
    auto make_field = [&](double c0, double c1, double c2, int band, int basis,
                          bool use_sin) {
        BallAlgebraField v(g, 2);
        const auto basis_mats = su_basis(2);
        for (int i = 0; i < g.Nr; ++i)
            for (int j = 0; j < g.Nt; ++j)
                for (int k = 0; k < g.Np; ++k) {
                    double r = g.r(i), phi = g.phi(k);
                    double radial = c0 + c1 * r + c2 * r * r;
                    double ang = use_sin ? std::sin(band * phi) : std::cos(band * phi);
                    v.s[g.index(i, j, k)] = radial * ang * basis_mats[std::size_t(basis)];
                }
        return v;
    };
    auto x = make_field(0.3, 0.5, -0.2, 1, 0, false);
    auto y = make_field(-0.1, 0.4, 0.3, 2, 1, true);
    auto z = make_field(0.2, -0.3, 0.1, 1, 2, false);
    auto fgen = make_field(0.5, 0.2, 0.1, 1, 1, true);
    BallGroupField f(g, 2);
    for (std::size_t id = 0; id < g.size(); ++id)
        f.s[id] = exp_antihermitian(fgen.s[id]);
    PForm A(g, 2, 1);
    A.comps[0] = make_field(0.4, 0.1, 0.2, 2, 0, true).s;
    A.comps[1] = make_field(0.1, -0.2, 0.3, 1, 1, false).s;
    A.comps[2] = make_field(-0.3, 0.2, 0.1, 1, 2, true).s;

    PForm w = maurer_cartan(f);
    auto cochains = appendix_cochains(w, BracketReading::matrix_commutator);
    Cochain2 dl1 = ce_coboundary_1(cochains[0]);
    Complex dd = ce_coboundary_2(dl1)(A, x, y, z);

    double scale = std::abs(dl1.eval(A, x, y)) + std::abs(dl1.eval(A, y, z)) +
                   std::abs(dl1.eval(A, x, z)) + 1e-30;
    REQUIRE(std::abs(dd) < 1e-8 * scale);
}

TEST_CASE("lambda cochains")
{
    Setup s(12);
    BallGroupField id(s.g, 2);
    PForm w0 = maurer_cartan(id);

    REQUIRE(std::abs(lambda_1(s.A, w0, s.z)) < 1e-12);
    REQUIRE(std::abs(lambda_2(s.A, w0, s.z)) < 1e-12);
    REQUIRE(std::abs(lambda_3(w0, s.z)) < 1e-12);

    PForm w = maurer_cartan(s.f);
    PForm zeroA(s.g, 2, 1);
    REQUIRE(std::abs(lambda_2(zeroA, w, s.z)) == 0.0);

    // commuting ansatz: w^3 has commuting components, lambda_3 = 0
    auto fc = sample_group(abelian_spec(41, BoundaryClass::flattened, 0.9), s.g);
    REQUIRE(std::abs(lambda_3(maurer_cartan(fc), s.z)) < 1e-12);
}

TEST_CASE("conjugated cocycle")
{
    Setup s(12);
    BallGroupField id(s.g, 2);
    Complex base = mf_cocycle(s.A, s.x, s.y);
    REQUIRE(std::abs(conjugated_cocycle(s.A, s.x, s.y, id) - base) < 1e-12 * (1.0 + std::abs(base)));

    // trace of the transformed potential per node: tr(A^f) = tr(A) + tr(f^-1 df)
    PForm df = exterior_derivative_group(s.f);
    for (std::size_t id2 = 0; id2 < s.g.size(); id2 += 211)
        for (int c = 0; c < 3; ++c) {
            Matrix finv = s.f.s[id2].adjoint();
            Matrix Af = finv * s.A.comps[std::size_t(c)][id2] * s.f.s[id2] +
                        finv * df.comps[std::size_t(c)][id2];
            Complex expect = s.A.comps[std::size_t(c)][id2].trace() +
                             (finv * df.comps[std::size_t(c)][id2]).trace();
            REQUIRE(std::abs(Af.trace() - expect) < 1e-12);
        }

    // abelian ansatz: every bracket vanishes and conjugation is invisible
    BallGrid g = s.g;
    PForm Aab(g, 2, 1);
    Aab.comps[0] = sample(abelian_spec(51, BoundaryClass::free_class, 0.8), g).s;
    Aab.comps[1] = sample(abelian_spec(52, BoundaryClass::free_class, 0.8), g).s;
    Aab.comps[2] = sample(abelian_spec(53, BoundaryClass::free_class, 0.8), g).s;
    auto xab = sample(abelian_spec(54, BoundaryClass::loop, 1.0), g);
    auto yab = sample(abelian_spec(55, BoundaryClass::loop, 1.0), g);
    auto fab = sample_group(abelian_spec(56, BoundaryClass::flattened, 0.9), g);
    Complex m1 = mf_cocycle(Aab, xab, yab);
    Complex m2 = conjugated_cocycle(Aab, xab, yab, fab);
    REQUIRE(std::abs(m1) < 1e-12);
    REQUIRE(std::abs(m2 - m1) < 1e-10);
}

TEST_CASE("invariance residual")
{
    Setup s(12);
    BallGroupField id(s.g, 2);
    REQUIRE(invariance_residual(s.A, s.x, s.y, id) < 1e-14);

    // abelian ansatz: residual collapses to the discrete-exponential noise
    BallGrid g = s.g;
    PForm Aab(g, 2, 1);
    Aab.comps[0] = sample(abelian_spec(61, BoundaryClass::free_class, 0.8), g).s;
    Aab.comps[1] = sample(abelian_spec(62, BoundaryClass::free_class, 0.8), g).s;
    Aab.comps[2] = sample(abelian_spec(63, BoundaryClass::free_class, 0.8), g).s;
    auto xab = sample(abelian_spec(64, BoundaryClass::loop, 1.0), g);
    auto yab = sample(abelian_spec(65, BoundaryClass::loop, 1.0), g);
    auto fab = sample_group(abelian_spec(66, BoundaryClass::flattened, 0.9), g);
    REQUIRE(invariance_residual(Aab, xab, yab, fab) < 1e-6);

    // flattened x rejected
    auto xflat = sample(random_ball_spec(71, 2, BoundaryClass::flattened, 1.0), s.g);
    REQUIRE_THROWS_AS(invariance_residual(s.A, xflat, s.y, s.f), std::invalid_argument);

    // residual decreases at scheme order under refinement
    auto residual = [](int N) {
        BallGrid gg(N, N, N);
        PForm A = sample(random_potential_spec(81, 2, 0.8), gg);
        auto x = sample(random_ball_spec(82, 2, BoundaryClass::loop, 1.0), gg);
        auto y = sample(random_ball_spec(83, 2, BoundaryClass::loop, 1.0), gg);
        auto f = sample_group(random_ball_spec(84, 2, BoundaryClass::flattened, 0.8), gg);
        return invariance_residual(A, x, y, f);
    };
    double e12 = residual(12), e24 = residual(24);
    double order = std::log(e12 / e24) / std::log(2.0);
    REQUIRE(order >= 1.8);
}

TEST_CASE("boundary term and the cocycle law")
{
    // loop-class fields: boundary values are constant, the term vanishes
    Setup sl(12, 7, BoundaryClass::loop);
    REQUIRE(std::abs(boundary_term(sl.x, sl.y, sl.z)) < 1e-8);

    // x == y: exact cancellation by antisymmetry
    Setup sf(12, 8, BoundaryClass::flattened);
    REQUIRE(std::abs(boundary_term(sf.x, sf.x, sf.z)) == 0.0);

    // surface-quadrature oracle: analytic tangential derivatives at r = 1
    {
        BallGrid g(24, 24, 24);
        auto xspec = random_ball_spec(91, 2, BoundaryClass::flattened, 1.0);
        auto yspec = random_ball_spec(92, 2, BoundaryClass::flattened, 1.0);
        auto zspec = random_ball_spec(93, 2, BoundaryClass::flattened, 1.0);
        auto x = sample(xspec, g), y = sample(yspec, g), z = sample(zspec, g);
        Complex got = boundary_term(x, y, z);

        const auto basis = su_basis(2);
        auto value_at = [&](const BallFieldSpec& spec, double th, double ph) {
            return spec.eval(1.0, th, ph, basis);
        };
        auto dtheta_at = [&](const BallFieldSpec& spec, double th, double ph) {
            const double h = 1e-6; // analytic-surface oracle via tight central diff
            return Matrix((value_at(spec, th + h, ph) - value_at(spec, th - h, ph)) /
                          (2 * h));
        };
        auto dphi_at = [&](const BallFieldSpec& spec, double th, double ph) {
            const double h = 1e-6;
            return Matrix((value_at(spec, th, ph + h) - value_at(spec, th, ph - h)) /
                          (2 * h));
        };
        Complex oracle(0, 0);
        for (int j = 0; j < g.Nt; ++j)
            for (int k = 0; k < g.Np; ++k) {
                double th = g.theta(j), ph = g.phi(k);
                double ist = 1.0 / std::sin(th);
                auto tangential_bracket = [&](const BallFieldSpec& a, const BallFieldSpec& b) {
                    Matrix at = dtheta_at(a, th, ph), ap = ist * dphi_at(a, th, ph);
                    Matrix bt = dtheta_at(b, th, ph), bp = ist * dphi_at(b, th, ph);
                    Matrix w1 = at * bp - ap * bt;  // (a ^ b)_tp
                    Matrix w2 = bt * ap - bp * at;  // (b ^ a)_tp
                    return Matrix(w1 - w2);
                };
                Matrix integrand =
                    value_at(xspec, th, ph) * tangential_bracket(yspec, zspec) +
                    value_at(yspec, th, ph) * tangential_bracket(zspec, xspec) +
                    value_at(zspec, th, ph) * tangential_bracket(xspec, yspec);
                oracle += g.weight_theta(j) * g.weight_phi() * integrand.trace();
            }
        oracle *= MfConventions{}.prefactor;
        REQUIRE(std::abs(got - oracle) < 1e-3 * (1.0 + std::abs(oracle)));
    }

    // cocycle law: flattened fields, |delta theta - boundary| shrinks at
    // scheme order and is A-independent; loop fields drive delta theta to 0
    auto law_residual = [](int N, bool loop) {
        BallGrid g(N, N, N);
        BoundaryClass bc = loop ? BoundaryClass::loop : BoundaryClass::flattened;
        PForm A = sample(random_potential_spec(95, 2, 0.8), g);
        auto x = sample(random_ball_spec(96, 2, bc, 1.0), g);
        auto y = sample(random_ball_spec(97, 2, bc, 1.0), g);
        auto z = sample(random_ball_spec(98, 2, bc, 1.0), g);
        Complex dt = delta_theta_mf(A, x, y, z);
        Complex bd = loop ? Complex(0, 0) : boundary_term(x, y, z);
        return std::abs(dt - bd);
    };
    double f12 = law_residual(12, false), f24 = law_residual(24, false);
    REQUIRE(std::log(f12 / f24) / std::log(2.0) >= 1.8);
    double l12 = law_residual(12, true), l24 = law_residual(24, true);
    REQUIRE(std::log(l12 / l24) / std::log(2.0) >= 1.8);

    // A-independence of delta theta within the discretization error
    {
        BallGrid g(16, 16, 16);
        PForm A1 = sample(random_potential_spec(95, 2, 0.8), g);
        PForm A2 = sample(random_potential_spec(99, 2, 1.2), g);
        auto x = sample(random_ball_spec(96, 2, BoundaryClass::flattened, 1.0), g);
        auto y = sample(random_ball_spec(97, 2, BoundaryClass::flattened, 1.0), g);
        auto z = sample(random_ball_spec(98, 2, BoundaryClass::flattened, 1.0), g);
        Complex d1 = delta_theta_mf(A1, x, y, z);
        Complex d2 = delta_theta_mf(A2, x, y, z);
        double law = std::abs(d1 - boundary_term(x, y, z));
        REQUIRE(std::abs(d1 - d2) < law);
    }
}

TEST_CASE("restrict boundary")
{
    BallGrid g(16, 16, 16);
    BallGroupField id(g, 2);
    auto qid = restrict_boundary(id);
    for (const auto& m : qid.s)
        REQUIRE((m - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

    auto floop = sample_group(random_ball_spec(101, 2, BoundaryClass::loop, 1.0), g);
    auto qloop = restrict_boundary(floop);
    for (const auto& m : qloop.s)
        REQUIRE((m - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-7);

    // pointwise homomorphism q(fg) = q(f) q(g) up to extrapolation error
    auto f1 = sample_group(random_ball_spec(102, 2, BoundaryClass::flattened, 0.8), g);
    auto f2 = sample_group(random_ball_spec(103, 2, BoundaryClass::flattened, 0.8), g);
    BallGroupField prod(g, 2);
    for (std::size_t id2 = 0; id2 < g.size(); ++id2)
        prod.s[id2] = f1.s[id2] * f2.s[id2];
    auto qp = restrict_boundary(prod);
    auto q1 = restrict_boundary(f1);
    auto q2 = restrict_boundary(f2);
    for (std::size_t id2 = 0; id2 < qp.s.size(); id2 += 17)
        REQUIRE((qp.s[id2] - q1.s[id2] * q2.s[id2]).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("field class invariants")
{
    BallGrid g(24, 24, 24);
    auto flat = sample(random_ball_spec(111, 2, BoundaryClass::flattened, 1.0), g);
    auto loop = sample(random_ball_spec(112, 2, BoundaryClass::loop, 1.0), g);
    REQUIRE(boundary_radial_derivative_max(g, flat.s) < 1e-3);
    REQUIRE(boundary_radial_derivative_max(g, loop.s) < 1e-3);
    REQUIRE(boundary_constancy_deviation(g, loop.s) < 1e-6);

    auto free_f = sample(random_ball_spec(113, 2, BoundaryClass::free_class, 1.0), g);
    REQUIRE(boundary_radial_derivative_max(g, free_f.s) > 1e-2);
}
