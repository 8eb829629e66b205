#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "laminar/error.hpp"
#include "laminar/kinetics.hpp"
#include "oracle.hpp"

using namespace laminar;

namespace {

// Independent Hill formulas with the default parameter table.
struct Ref {
    double a1 = 0.01, a2 = 1.0, b1 = 100, b2 = 100, b3 = 100;
    static double f(double x, double a, double k) { return std::pow(x, k) / (a + std::pow(x, k)); }
    static double g(double x, double b, double h) { return 1.0 / (1.0 + b * std::pow(x, h)); }
    std::array<double, 3> rhs(const double* x, const double* u) const {
        return {g(u[0], b1, 2) * g(x[1], b2, 2) * f(u[1], a1, 2) - x[0], f(x[0], a2, 2) - x[1], g(x[0], b3, 1) - x[2]};
    }
};

}  // namespace

TEST_CASE("Hill endpoints") {
    const HillKinetics kin;
    const auto d = kin.evaluate_rhs(std::vector<double>{0, 0, 0}, std::vector<double>{0, 0});
    CHECK(d[0] == 0.0);
    CHECK(d[1] == 0.0);
    CHECK(d[2] == 1.0);
    CHECK(hill_up(0.0, 0.5, 2) == 0.0);
    CHECK(hill_down(0.0, 0.5, 2) == 1.0);
    CHECK(hill_up(1e6, 0.5, 2) == doctest::Approx(1.0));
    CHECK(hill_down(1e6, 0.5, 2) == doctest::Approx(0.0));
}

TEST_CASE("rhs matches an independent implementation") {
    const HillKinetics kin;
    const Ref ref;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(0.0, 2.0);
    for (int t = 0; t < 200; ++t) {
        const std::vector<double> x{d(rng), d(rng), d(rng)}, u{d(rng), d(rng)};
        const auto got = kin.evaluate_rhs(x, u);
        const auto expect = ref.rhs(x.data(), u.data());
        for (int i = 0; i < 3; ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-12);
        const auto y = kin.evaluate_output(x);
        CHECK(y == std::vector<double>{x[1], x[2]});
    }
}

TEST_CASE("parameter validation") {
    HillParameters p;
    p.h[1] = 0.0;
    try {
        HillKinetics k(p);
        FAIL("expected BadExponent");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadExponent);
    }
    HillParameters q;
    q.alpha[0] = -1;
    CHECK_THROWS_AS(HillKinetics{q}, Error);
}

TEST_CASE("homogeneous steady state of the worked example") {
    const HillKinetics kin;
    const auto t0 = std::chrono::steady_clock::now();
    const auto hss = solve_hss(kin);
    CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 1.0);
    CHECK(std::abs(hss.x0[0] - 0.18) < 0.01);
    CHECK(std::abs(hss.x0[1] - 0.03) < 0.01);
    CHECK(std::abs(hss.x0[2] - 0.05) < 0.01);
    CHECK(hss.residual <= 1e-12);
    CHECK(hss.u0 == std::vector<double>{hss.x0[1], hss.x0[2]});
    const auto r = Ref{}.rhs(hss.x0.data(), hss.u0.data());
    for (double v : r) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("weak inhibition limit") {
    HillParameters p;
    p.beta = {1e-12, 1e-12, 1e-12};
    const HillKinetics kin(p);
    const auto hss = solve_hss(kin);
    const double x1 = hss.x0[0];
    const double g3 = 1.0 / (1.0 + 1e-12 * x1);
    CHECK(std::abs(Ref::f(g3, 0.01, 2) - x1) < 1e-9);
}

TEST_CASE("linearization of the worked example") {
    const HillKinetics kin;
    const auto hss = solve_hss(kin);
    const auto lin = linearize(kin, hss.x0, hss.u0);
    const auto fd = linearize(kin, hss.x0, hss.u0, true);

    const auto rel = [](const DenseMatrix& a, const DenseMatrix& b) {
        return (a - b).max_abs() / std::max(1.0, b.max_abs());
    };
    CHECK(rel(fd.a, lin.a) < 1e-5);
    CHECK(rel(fd.b, lin.b) < 1e-5);
    CHECK(rel(fd.c, lin.c) < 1e-5);

    const double f1 = Ref::f(hss.u0[1], 0.01, 2), g1 = Ref::g(hss.u0[0], 100, 2);
    const double f2p = 2 * hss.x0[0] / std::pow(1 + hss.x0[0] * hss.x0[0], 2);
    const double g2p = -200 * hss.x0[1] / std::pow(1 + 100 * hss.x0[1] * hss.x0[1], 2);
    const double det_a = oracle::to_eigen(lin.a).determinant();
    CHECK(det_a == doctest::Approx(f1 * g1 * f2p * g2p - 1).epsilon(1e-10));
    CHECK(det_a < 0);

    const Eigen::MatrixXd dt = -oracle::to_eigen(lin.c) * oracle::to_eigen(lin.a).inverse() * oracle::to_eigen(lin.b);
    CHECK(oracle::max_diff(lin.dt, dt) < 1e-12);
    CHECK(std::abs(oracle::to_eigen(lin.dt).determinant()) < 1e-14);
    CHECK(lin.dt(0, 0) == doctest::Approx(-0.257549).epsilon(1e-5));
    CHECK(lin.dt(0, 1) == doctest::Approx(1.341407).epsilon(1e-5));
    CHECK(classify_transfer_signs(lin) == SignClass::S1);
}

TEST_CASE("finite differences agree with analytic Jacobians away from the steady state") {
    const HillKinetics kin;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> d(0.05, 1.5);
    for (int t = 0; t < 50; ++t) {
        const std::vector<double> x{d(rng), d(rng), d(rng)}, u{d(rng), d(rng)};
        const auto an = *kin.analytic_jacobians(x, u);
        const auto fd = finite_difference_jacobians(kin, x, u);
        CHECK((an.a - fd.a).max_abs() / std::max(1.0, an.a.max_abs()) < 1e-5);
        CHECK((an.b - fd.b).max_abs() / std::max(1.0, an.b.max_abs()) < 1e-5);
    }
}

TEST_CASE("transfer derivative keeps class S1 over the input box") {
    const HillKinetics kin;
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
            const std::vector<double> u{0.05 + 0.095 * i, 0.05 + 0.095 * j};
            CHECK(classify_transfer_signs(transfer_derivative_at(kin, u)) == SignClass::S1);
        }
}

TEST_CASE("sign classes") {
    CHECK(classify_transfer_signs(DenseMatrix{{-1, 0}, {0, -1}}) == SignClass::Neither);
    CHECK(classify_transfer_signs(DenseMatrix{{-1, -2}, {-0.5, -3}}) == SignClass::S2);
    CHECK(classify_transfer_signs(DenseMatrix{{-1, 2}, {0.5, -3}}) == SignClass::S1);
    CHECK(classify_transfer_signs(DenseMatrix(2, 2)) == SignClass::Neither);
    CHECK(classify_transfer_signs(DenseMatrix{{1, 2}, {0.5, -3}}) == SignClass::Neither);
    CHECK(to_string(SignClass::S1) == "S1");
}

TEST_CASE("user kinetics through callables") {
    // x' = 2 - x + u, y = 0.5 x: homogeneous steady state under u = y is x = 4
    FunctionKinetics lin(
        1, 1, [](auto x, auto u, auto dx) { dx[0] = 2 - x[0] + u[0]; }, [](auto x, auto y) { y[0] = 0.5 * x[0]; },
        {1.0});
    const auto hss = solve_hss(lin);
    CHECK(hss.x0[0] == doctest::Approx(4.0));
    const auto l = linearize(lin, hss.x0, hss.u0);
    CHECK(l.dt(0, 0) == doctest::Approx(0.5));

    FunctionKinetics bad(
        1, 1, [](auto, auto, auto dx) { dx[0] = std::nan(""); }, [](auto x, auto y) { y[0] = x[0]; }, {1.0});
    try {
        bad.evaluate_rhs(std::vector<double>{1.0}, std::vector<double>{1.0});
        FAIL("expected NonFinite");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonFinite);
    }
}
