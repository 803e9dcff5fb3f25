#include <catch2/catch_amalgamated.hpp>

#include "cocycle/circle.hpp"

using namespace cocycle;

namespace {

CircleAlgebraField pauli_field(int N, int k, double (*f)(double))
{
    CircleAlgebraField x(2, N);
    for (int j = 0; j < N; ++j)
        x.s[std::size_t(j)] = f(x.phi(j)) * i_pauli(k);
    return x;
}

// Quadrature oracle independent of the spectral machinery: trapezoid at M
// off-grid nodes with the analytic derivative supplied by the caller.
double km_quadrature_oracle(const std::function<Matrix(double)>& x,
                            const std::function<Matrix(double)>& dy, int M)
{
    Complex acc(0, 0);
    for (int k = 0; k < M; ++k) {
        double phi = kTwoPi * k / M;
        acc += (x(phi) * dy(phi)).trace();
    }
    return (acc / double(M)).real();
}

} // namespace

TEST_CASE("spectral derivative")
{
    const int N = 32;
    CircleAlgebraField c(2, N);
    for (auto& m : c.s)
        m = i_pauli(3);
    REQUIRE(spectral_derivative(c).s[3].cwiseAbs().maxCoeff() < 1e-13);

    auto x = pauli_field(N, 3, std::sin);
    auto dx = spectral_derivative(x);
    auto expect = pauli_field(N, 3, std::cos);
    for (int j = 0; j < N; ++j)
        REQUIRE((dx.s[std::size_t(j)] - expect.s[std::size_t(j)]).cwiseAbs().maxCoeff() <
                1e-12);

    auto d2 = spectral_derivative(spectral_derivative(pauli_field(N, 3, std::cos)));
    auto neg = pauli_field(N, 3, std::cos);
    for (int j = 0; j < N; ++j)
        REQUIRE((d2.s[std::size_t(j)] + neg.s[std::size_t(j)]).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("km cocycle values")
{
    const int N = 64;
    auto x = pauli_field(N, 3, std::cos);
    auto y = pauli_field(N, 3, std::sin);

    REQUIRE(std::abs(km_cocycle(x, x)) < 1e-13);

    CircleAlgebraField cst(2, N);
    for (auto& m : cst.s)
        m = i_pauli(2);
    REQUIRE(std::abs(km_cocycle(cst, cst)) < 1e-13);

    // (1/2pi) integral tr(i s3 cos * i s3 cos) = -1
    double v = km_cocycle(x, y);
    REQUIRE(std::abs(v - (-1.0)) < 1e-12);
    double oracle = km_quadrature_oracle([](double p) { return Matrix(std::cos(p) * i_pauli(3)); },
                                         [](double p) { return Matrix(std::cos(p) * i_pauli(3)); },
                                         4001);
    REQUIRE(std::abs(oracle - (-1.0)) < 1e-6);

    REQUIRE_THROWS_AS(km_cocycle(x, CircleAlgebraField(2, 32)), std::invalid_argument);
}

TEST_CASE("km cocycle properties on seeded fields")
{
    const int N = 128;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto x = sample(random_circle_spec(seed * 3 + 0, 2, 5), N);
        auto y = sample(random_circle_spec(seed * 3 + 1, 2, 5), N);
        auto z = sample(random_circle_spec(seed * 3 + 2, 2, 5), N);

        REQUIRE(std::abs(km_cocycle(x, y) + km_cocycle(y, x)) < 1e-12);

        double cyc = km_cocycle(bracket_field(x, y), z) + km_cocycle(bracket_field(y, z), x) +
                     km_cocycle(bracket_field(z, x), y);
        REQUIRE(std::abs(cyc) < 1e-10);
    }
}

TEST_CASE("adjoint transform")
{
    const int N = 32;
    auto x = sample(random_circle_spec(4, 2, 4), N);
    CircleGroupField id(2, N);
    auto xi = adjoint_transform(x, id);
    for (int j = 0; j < N; ++j)
        REQUIRE((xi.s[std::size_t(j)] - x.s[std::size_t(j)]).cwiseAbs().maxCoeff() < 1e-15);

    auto y = sample(random_circle_spec(5, 2, 4), N);
    auto f = sample_group(random_circle_spec(6, 2, 4), N);
    auto xf = adjoint_transform(x, f);
    auto yf = adjoint_transform(y, f);
    for (int j = 0; j < N; ++j) {
        Complex a = (xf.s[std::size_t(j)] * yf.s[std::size_t(j)]).trace();
        Complex b = (x.s[std::size_t(j)] * y.s[std::size_t(j)]).trace();
        REQUIRE(std::abs(a - b) < 1e-12);
    }

    // commuting case: f = exp(i s3 sin), x = i s3
    CircleAlgebraField z3(2, N);
    for (auto& m : z3.s)
        m = i_pauli(3);
    auto fc = sample_group([] {
        CircleFieldSpec s;
        s.n = 2;
        s.bandwidth = 1;
        s.cos_coeff = {Matrix::Zero(2, 2), Matrix::Zero(2, 2)};
        s.sin_coeff = {Matrix::Zero(2, 2), Matrix(i_pauli(3))};
        return s;
    }(), N);
    auto zt = adjoint_transform(z3, fc);
    for (int j = 0; j < N; ++j)
        REQUIRE((zt.s[std::size_t(j)] - z3.s[std::size_t(j)]).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("exp_path structure")
{
    const int N = 16, T = 50;
    CircleAlgebraField zero(2, N);
    auto pid = exp_path(zero, T);
    for (const auto& fr : pid.frames)
        for (const auto& m : fr.s)
            REQUIRE((m - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);

    auto z = sample(random_circle_spec(9, 2, 3), N);
    auto p = exp_path(z, T);
    for (int k = 0; k < N; ++k) {
        Matrix endpoint = exp_antihermitian(z.s[std::size_t(k)]);
        REQUIRE((p.frames[std::size_t(T)].s[std::size_t(k)] - endpoint).cwiseAbs().maxCoeff() <
                1e-13);
    }

    // logarithmic derivative f^-1 df/dt = z at every frame
    for (int j : {0, 1, T / 2, T - 1, T}) {
        for (int k = 0; k < N; k += 5) {
            Matrix u = p.frames[std::size_t(j)].s[std::size_t(k)].adjoint() *
                       detail::path_time_derivative(p, j, k);
            REQUIRE((u - z.s[std::size_t(k)]).cwiseAbs().maxCoeff() < 1e-5);
        }
    }

    REQUIRE_THROWS_AS(exp_path(z, 1), std::invalid_argument);
}

TEST_CASE("path coboundary sigma3 family")
{
    const int N = 64, T = 200;
    auto z = pauli_field(N, 3, std::sin);
    auto x = pauli_field(N, 3, std::cos);

    GroupPath idpath;
    idpath.T = T;
    idpath.frames.assign(std::size_t(T) + 1, CircleGroupField(2, N));
    REQUIRE(std::abs(path_coboundary(idpath, x)) < 1e-12);

    auto p = exp_path(z, T);
    CircleAlgebraField zero(2, N);
    REQUIRE(std::abs(path_coboundary(p, zero)) < 1e-12);

    // analytic value: -(1/2pi) integral tr(i s3 cos * i s3 cos) = +1
    double v = path_coboundary(p, x);
    REQUIRE(std::abs(v - 1.0) < 1e-6);

    double w = closed_form_coboundary(sample_group([] {
                                          CircleFieldSpec s;
                                          s.n = 2;
                                          s.bandwidth = 1;
                                          s.cos_coeff = {Matrix::Zero(2, 2),
                                                         Matrix::Zero(2, 2)};
                                          s.sin_coeff = {Matrix::Zero(2, 2),
                                                         Matrix(i_pauli(3))};
                                          return s;
                                      }(),
                                      N),
                                      x);
    REQUIRE(std::abs(w - 1.0) < 1e-12);
    REQUIRE(std::abs(v - w) < 1e-6);
}

TEST_CASE("closed form equals path integral on seeded fields")
{
    const int N = 64, T = 200;
    for (std::uint64_t seed : {21, 22, 23}) {
        auto zt = random_circle_spec(seed, 2, 4, 0.8);
        auto z = random_circle_spec(seed + 100, 2, 4, 0.8);
        auto p = exp_path(sample(zt, N), T);
        double a = path_coboundary(p, sample(z, N));
        double b = closed_form_coboundary(sample_group(zt, N), sample(z, N));
        REQUIRE(std::abs(a - b) < 1e-6);
    }

    CircleGroupField id(2, N);
    REQUIRE(std::abs(closed_form_coboundary(id, sample(random_circle_spec(1, 2, 3), N))) <
            1e-13);
}

TEST_CASE("path coboundary linear in z")
{
    const int N = 64, T = 100;
    auto p = exp_path(sample(random_circle_spec(31, 2, 4, 0.7), N), T);
    auto z1 = sample(random_circle_spec(32, 2, 4), N);
    auto z2 = sample(random_circle_spec(33, 2, 4), N);
    const double a = 0.7, b = -1.3;
    CircleAlgebraField combo(2, N);
    for (int k = 0; k < N; ++k)
        combo.s[std::size_t(k)] = a * z1.s[std::size_t(k)] + b * z2.s[std::size_t(k)];
    double lhs = path_coboundary(p, combo);
    double rhs = a * path_coboundary(p, z1) + b * path_coboundary(p, z2);
    REQUIRE(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("time quadrature convergence order")
{
    const int N = 64;
    auto zt = random_circle_spec(41, 2, 4, 0.9);
    auto zspec = random_circle_spec(42, 2, 4, 0.9);
    auto z = sample(zspec, N);
    double exact = closed_form_coboundary(sample_group(zt, N), z);

    auto measured_order = [&](TimeQuadrature q) {
        std::vector<int> Ts = {24, 48, 96};
        std::vector<double> errs;
        for (int T : Ts)
            errs.push_back(std::abs(path_coboundary(exp_path(sample(zt, N), T), z, q) - exact));
        // least-squares slope of log err vs log T
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < Ts.size(); ++i) {
            double lx = std::log(double(Ts[i])), ly = std::log(errs[i]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        double m = double(Ts.size());
        return -(m * sxy - sx * sy) / (m * sxx - sx * sx);
    };

    REQUIRE(measured_order(TimeQuadrature::trapezoid) >= 1.8);
    REQUIRE(measured_order(TimeQuadrature::simpson) >= 3.5);
}

TEST_CASE("conjugation identity")
{
    const int N = 128;
    auto x = sample(random_circle_spec(51, 2, 5), N);
    auto y = sample(random_circle_spec(52, 2, 5), N);

    CircleGroupField id(2, N);
    REQUIRE(conjugation_identity_residual(id, x, y) < 1e-12);

    auto f = sample_group(random_circle_spec(53, 2, 5), N);
    REQUIRE(conjugation_identity_residual(f, x, x) < 1e-12);

    for (std::uint64_t seed = 60; seed < 80; ++seed) {
        auto xf = sample(random_circle_spec(seed * 7 + 1, 2, 5), N);
        auto yf = sample(random_circle_spec(seed * 7 + 2, 2, 5), N);
        auto ff = sample_group(random_circle_spec(seed * 7 + 3, 2, 5), N);
        REQUIRE(conjugation_identity_residual(ff, xf, yf) < 1e-8);
    }
}
