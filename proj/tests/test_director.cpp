#include <catch2/catch_amalgamated.hpp>

#include "nemec/director.hpp"
#include "nemec/errors.hpp"
#include "test_helpers.hpp"

using namespace nemec;
using namespace nemec::test;

namespace {

// 3D rotation from axis-angle (Rodrigues).
std::array<double, 3> rotate(const std::array<double, 3>& v, const std::array<double, 3>& axis,
                             double angle) {
    double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    std::array<double, 3> k{axis[0] / norm, axis[1] / norm, axis[2] / norm};
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    std::array<double, 3> kxv{k[1] * v[2] - k[2] * v[1], k[2] * v[0] - k[0] * v[2],
                              k[0] * v[1] - k[1] * v[0]};
    const double kdv = k[0] * v[0] + k[1] * v[1] + k[2] * v[2];
    std::array<double, 3> out;
    for (int i = 0; i < 3; ++i)
        out[i] = v[i] * c + kxv[i] * s + k[i] * kdv * (1 - c);
    return out;
}

} // namespace

TEST_CASE("singular potential scalar functions") {
    SingularPotentialParams pot{1e-3, -1.0 / M_E};
    pot.validate();

    SECTION("bracketing oracle locates the minimizer at r = 1 - 1/e") {
        double lo = 0.0, hi = 1.0 - pot.lambda;
        REQUIRE(barrier_derivative(lo, pot) < 0.0);
        REQUIRE(barrier_derivative(hi, pot) > 0.0);
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (barrier_derivative(mid, pot) < 0.0 ? lo : hi) = mid;
        }
        const double rstar = 0.5 * (lo + hi);
        CHECK(rstar == Catch::Approx(1.0 - 1.0 / M_E).margin(1e-12));
        CHECK(std::abs(barrier_value(rstar, pot)) < 1e-12);
        // F_star is exactly the value making min F = 0
        CHECK(pot.f_star == Catch::Approx(-1.0 / M_E).margin(1e-13));
    }
    SECTION("potential_value examples") {
        const double a = std::sqrt(1.0 - 1.0 / M_E);
        CHECK(std::abs(potential_value({a, 0.0, 0.0}, pot)) < 1e-14);
        CHECK(potential_value({0.0, 0.0, 0.0}, pot)
              == Catch::Approx(0.5 / M_E).margin(1e-14));
    }
    SECTION("rotational equivariance") {
        TestRng rng(79);
        for (int t = 0; t < 50; ++t) {
            std::array<double, 3> n{rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6),
                                    rng.uniform(-0.6, 0.6)};
            std::array<double, 3> axis{rng.normal(), rng.normal(), rng.normal()};
            const double ang = rng.uniform(0.0, 2 * M_PI);
            auto rn = rotate(n, axis, ang);
            CHECK(potential_value(rn, pot)
                  == Catch::Approx(potential_value(n, pot)).margin(1e-12));
            const double r2 = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
            const double rr2 = rn[0] * rn[0] + rn[1] * rn[1] + rn[2] * rn[2];
            const double gnorm = std::abs(barrier_derivative(r2, pot)) * std::sqrt(r2);
            const double grnorm = std::abs(barrier_derivative(rr2, pot)) * std::sqrt(rr2);
            CHECK(gnorm == Catch::Approx(grnorm).margin(1e-12));
        }
    }
    SECTION("derivative is monotone nondecreasing, including the continuation") {
        TestRng rng(83);
        for (int t = 0; t < 100000; ++t) {
            const double a = rng.uniform(0.0, 1.5);
            const double b = rng.uniform(0.0, 1.5);
            CHECK((barrier_derivative(a, pot) - barrier_derivative(b, pot)) * (a - b)
                  >= 0.0);
        }
    }
    SECTION("central-difference gradient consistency at sampled points") {
        SingularPotentialParams p2{0.01, -1.0 / M_E};
        TestRng rng(89);
        const double h = 1e-5;
        for (int t = 0; t < 1000; ++t) {
            std::array<double, 3> n;
            double r2 = 2.0;
            while (r2 > 0.81) {
                for (auto& x : n) x = rng.uniform(-0.9, 0.9);
                r2 = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
            }
            for (int i = 0; i < 3; ++i) {
                auto np = n, nm = n;
                np[i] += h;
                nm[i] -= h;
                const double fd = (potential_value(np, p2) - potential_value(nm, p2)) / (2 * h);
                const double an = barrier_derivative(r2, p2) * n[i];
                CHECK(std::abs(fd - an) < 1e-6);
            }
        }
    }
    SECTION("parameter validation") {
        CHECK_THROWS(SingularPotentialParams{0.0, -1.0 / M_E}.validate());
        CHECK_THROWS(SingularPotentialParams{0.6, -1.0 / M_E}.validate());
        CHECK_THROWS(SingularPotentialParams{1e-3, -0.3}.validate());
    }
}

TEST_CASE("potential gradient field") {
    Grid g(2, 32);
    SingularPotentialParams pot{1e-3, -1.0 / M_E};
    SECTION("zero director: zero gradient") {
        VectorField n(g);
        auto pg = potential_gradient(n, pot);
        CHECK(sup_magnitude(pg) < 1e-14);
    }
    SECTION("uniform minimizer: zero gradient") {
        VectorField n(g);
        const double a = std::sqrt(1.0 - 1.0 / M_E);
        n[0] = field_from(g, [&](const auto&) { return a; });
        auto pg = potential_gradient(n, pot);
        CHECK(sup_magnitude(pg) < 1e-13);
    }
}

TEST_CASE("kinematic terms") {
    Grid g(2, 32);
    SECTION("v = 0 gives zero") {
        TestRng rng(97);
        VectorField n(g);
        n[0] = random_band_limited(g, rng, 3, 0.3);
        n[1] = random_band_limited(g, rng, 3, 0.3);
        VectorField v(g);
        CHECK(sup_magnitude(kinematic_terms(n, v)) < 1e-13);
    }
    SECTION("torus rigid-rotation analog on a constant director") {
        VectorField v(g);
        v[0] = field_from(g, [](const auto& x) { return -std::sin(x[1]); });
        v[1] = field_from(g, [](const auto& x) { return std::sin(x[0]); });
        VectorField n(g);
        const double a = 0.4, b = -0.2;
        n[0] = field_from(g, [&](const auto&) { return a; });
        n[1] = field_from(g, [&](const auto&) { return b; });
        auto kt = kinematic_terms(n, v);
        // G = [[0, -cos x2],[cos x1, 0]]; pointwise oracle of (Omega - D) n
        auto oracle0 = field_from(g, [&](const auto& x) {
            const double g01 = -std::cos(x[1]);
            const double g10 = std::cos(x[0]);
            const double d01 = 0.5 * (g01 + g10);
            const double o01 = 0.5 * (g01 - g10);
            return (o01 - d01) * b;
        });
        auto oracle1 = field_from(g, [&](const auto& x) {
            const double g01 = -std::cos(x[1]);
            const double g10 = std::cos(x[0]);
            const double d10 = 0.5 * (g01 + g10);
            const double o10 = 0.5 * (g10 - g01);
            return (o10 - d10) * a;
        });
        dealias(oracle0);
        dealias(oracle1);
        CHECK(max_abs_diff(kt[0], oracle0) < 1e-12);
        CHECK(max_abs_diff(kt[1], oracle1) < 1e-12);
    }
    SECTION("pure shear: constant-gradient pointwise algebra") {
        // grad v = e1 x e2 + e2 x e1 entered directly as a tensor
        TensorField G(g);
        G(0, 1) = field_from(g, [](const auto&) { return 1.0; });
        G(1, 0) = field_from(g, [](const auto&) { return 1.0; });
        VectorField n(g);
        n[0] = field_from(g, [](const auto&) { return 0.3; });
        n[1] = field_from(g, [](const auto&) { return -0.7; });
        auto [dn, on] = apply_strain_rotation(n, G);
        // D = [[0,1],[1,0]], Omega = 0: Dn = (n2, n1), Omega n = 0
        CHECK(max_abs_diff(dn[0], n[1]) < 1e-14);
        CHECK(max_abs_diff(dn[1], n[0]) < 1e-14);
        CHECK(sup_magnitude(on) < 1e-14);

        TensorField W(g);
        W(0, 1) = field_from(g, [](const auto&) { return 1.0; });
        W(1, 0) = field_from(g, [](const auto&) { return -1.0; });
        auto [dw, ow] = apply_strain_rotation(n, W);
        CHECK(sup_magnitude(dw) < 1e-14);
        CHECK(max_abs_diff(ow[0], n[1]) < 1e-14);
        auto minus_n0 = field_from(g, [](const auto&) { return -0.3; });
        CHECK(max_abs_diff(ow[1], minus_n0) < 1e-14);
    }
}

TEST_CASE("lie derivative") {
    Grid g(2, 32);
    SingularPotentialParams pot{1e-3, -1.0 / M_E};
    SECTION("uniform minimizer at rest is an equilibrium") {
        VectorField n(g), v(g);
        ScalarField phi(g);
        const double a = std::sqrt(1.0 - 1.0 / M_E);
        n[0] = field_from(g, [&](const auto&) { return a; });
        auto nd = lie_derivative(n, v, phi, 0.1, pot);
        CHECK(sup_magnitude(nd) < 1e-13);
    }
    SECTION("term dropout: v = 0, Phi = 0 leaves lap n - dF(n)") {
        TestRng rng(101);
        VectorField n(g), v(g);
        ScalarField phi(g);
        n[0] = random_band_limited(g, rng, 3, 0.05);
        n[1] = random_band_limited(g, rng, 3, 0.05);
        auto nd = lie_derivative(n, v, phi, 0.2, pot);
        auto lap = laplacian(n);
        auto pg = potential_gradient(n, pot);
        VectorField expected(g);
        for (int i = 0; i < 2; ++i) expected[i] = add(lap[i], pg[i], 1.0, -1.0);
        dealias(expected);
        CHECK(max_abs_diff(nd, expected) < 1e-12);
    }
    SECTION("algebraic cross-check against the full right-hand side") {
        TestRng rng(103);
        VectorField n(g);
        n[0] = random_band_limited(g, rng, 3, 0.3);
        n[1] = random_band_limited(g, rng, 3, 0.3);
        auto v = leray_project(random_band_limited_vector(g, rng, 3, 0.4));
        auto phi = random_band_limited(g, rng, 3, 0.3);
        subtract_mean(phi);
        const double eps = 0.25;
        auto rhs = director_rhs(n, v, phi, eps, pot);
        auto ar = advection_rotation(n, v);
        auto nd = lie_derivative(n, v, phi, eps, pot);
        VectorField diff(g);
        for (int i = 0; i < 2; ++i) diff[i] = add(rhs[i], add(ar[i], nd[i]), 1.0, -1.0);
        CHECK(sup_magnitude(diff) < 1e-12);
    }
}

TEST_CASE("step_director") {
    Grid g(2, 32);
    SingularPotentialParams pot{1e-3, -1.0 / M_E};
    SECTION("uniform minimizer is a fixed point of the semi-discrete map") {
        State s(g);
        const double a = std::sqrt(1.0 - 1.0 / M_E);
        s.n[0] = field_from(g, [&](const auto&) { return a; });
        auto n1 = step_director(s, 1e-3, 0.1, pot);
        CHECK(max_abs_diff(n1, s.n) < 1e-13);
    }
    SECTION("single mode: implicit elastic decay against the barrier push") {
        State s(g);
        const double amp = 1e-6;
        const double dt = 1e-3;
        s.n[0] = field_from(g, [&](const auto& x) { return amp * std::sin(2 * x[0]); });
        auto n1 = step_director(s, dt, 0.0, pot);
        // F'(0) = -1, so the explicit barrier contributes +n; mode k=2
        auto expected = field_from(g, [&](const auto& x) {
            return amp * (1.0 + dt) / (1.0 + 4.0 * dt) * std::sin(2 * x[0]);
        });
        CHECK(max_abs_diff(n1[0], expected) < 1e-8 * amp);
        CHECK(max_abs(n1[1]) < 1e-18);
    }
    SECTION("one step matches a dt/100 reference integrator at O(dt)") {
        Grid gs(2, 16);
        TestRng rng(107);
        State s(gs);
        s.n[0] = random_band_limited(gs, rng, 2, 0.25);
        s.n[1] = random_band_limited(gs, rng, 2, 0.25);
        // keep |n| well inside the unit ball so the barrier stays unstiff
        const double scale = 0.5 / sup_magnitude(s.n);
        for (int i = 0; i < 2; ++i)
            for (double& x : s.n[i].values_mut()) x *= scale;
        s.v = leray_project(random_band_limited_vector(gs, rng, 2, 0.3));
        s.phi = random_band_limited(gs, rng, 2, 0.3);
        subtract_mean(s.phi);
        const double eps = 0.15;

        auto rhs = [&](const VectorField& n) {
            return director_rhs(n, s.v, s.phi, eps, pot);
        };
        auto rk4 = [&](VectorField n, double T, int steps) {
            const double h = T / steps;
            auto axpy = [&](const VectorField& a, const VectorField& b, double w) {
                VectorField r(gs);
                for (int i = 0; i < 2; ++i) r[i] = add(a[i], b[i], 1.0, w);
                return r;
            };
            for (int k = 0; k < steps; ++k) {
                auto k1 = rhs(n);
                auto k2 = rhs(axpy(n, k1, h / 2));
                auto k3 = rhs(axpy(n, k2, h / 2));
                auto k4 = rhs(axpy(n, k3, h));
                for (int i = 0; i < 2; ++i) {
                    auto incr = add(add(k1[i], k2[i], 1.0, 2.0), add(k3[i], k4[i], 2.0, 1.0));
                    n[i] = add(n[i], incr, 1.0, h / 6);
                }
            }
            return n;
        };
        auto imex = [&](double dtl, int steps) {
            State sl = s;
            for (int k = 0; k < steps; ++k) sl.n = step_director(sl, dtl, eps, pot);
            return sl.n;
        };
        const double T = 0.04;
        auto ref = rk4(s.n, T, 400);
        const double e1 = max_abs_diff(imex(T / 4, 4), ref);
        const double e2 = max_abs_diff(imex(T / 8, 8), ref);
        CHECK(e1 < 0.02);
        CHECK(e1 / e2 > 1.5);
        CHECK(e1 / e2 < 3.0);
    }
    SECTION("confinement breach is rejected") {
        State s(g);
        s.n[0] = field_from(g, [](const auto&) { return 0.99; });
        s.phi = field_from(g, [](const auto& x) { return 10.0 * std::cos(x[0]); });
        CHECK_THROWS_AS(step_director(s, 5e-4, 1.0, {1e-3, -1.0 / M_E}), StepRejected);
    }
}

TEST_CASE("ericksen stress") {
    Grid g(2, 32);
    SECTION("constant director: zero tensor") {
        VectorField n(g);
        n[0] = field_from(g, [](const auto&) { return 0.8; });
        auto t = ericksen_stress(n);
        CHECK(max_abs(t(0, 0)) < 1e-14);
        CHECK(max_abs(t(1, 1)) < 1e-14);
    }
    SECTION("single mode director") {
        VectorField n(g);
        n[0] = field_from(g, [](const auto& x) { return std::sin(x[0]); });
        auto t = ericksen_stress(n);
        auto expected = field_from(g, [](const auto& x) {
            return std::cos(x[0]) * std::cos(x[0]);
        });
        CHECK(max_abs_diff(t(0, 0), expected) < 1e-12);
        CHECK(max_abs(t(0, 1)) < 1e-12);
        CHECK(max_abs(t(1, 1)) < 1e-12);
    }
    SECTION("symmetric positive semidefinite at sampled points") {
        TestRng rng(109);
        VectorField n(g);
        n[0] = random_band_limited(g, rng, 4, 0.4);
        n[1] = random_band_limited(g, rng, 4, 0.4);
        dealias(n); // PSD holds exactly for resolved products
        auto t = ericksen_stress(n);
        auto a = t(0, 0).values();
        auto b = t(0, 1).values();
        auto c = t(1, 0).values();
        auto d = t(1, 1).values();
        for (std::size_t q = 0; q < g.size(); q += 23) {
            CHECK(std::abs(b[q] - c[q]) < 1e-12);
            CHECK(a[q] >= -1e-10);
            CHECK(d[q] >= -1e-10);
            CHECK(a[q] * d[q] - b[q] * c[q] >= -1e-8);
        }
    }
}
