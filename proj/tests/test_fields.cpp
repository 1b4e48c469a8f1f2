#include <catch2/catch_amalgamated.hpp>

#include "nemec/field.hpp"
#include "nemec/grid.hpp"
#include "nemec/ops.hpp"
#include "test_helpers.hpp"

using namespace nemec;
using namespace nemec::test;

TEST_CASE("grid invariants") {
    CHECK_THROWS(Grid(4, 16));
    CHECK_THROWS(Grid(2, 6));
    CHECK_THROWS(Grid(2, 15));
    Grid g(2, 16);
    CHECK(g.size() == 256);
    CHECK(g.spacing() == Catch::Approx(kTwoPi / 16));
    CHECK(g.wavenumber(0) == 0);
    CHECK(g.wavenumber(7) == 7);
    CHECK(g.wavenumber(8) == -8);
    CHECK(g.wavenumber(15) == -1);
    Grid g3(3, 8);
    CHECK(g3.size() == 512);
}

TEST_CASE("round trip physical-spectral-physical") {
    for (int dim : {2, 3}) {
        Grid g(dim, dim == 2 ? 32 : 16);
        TestRng rng(11 + dim);
        std::vector<double> vals(g.size());
        for (auto& v : vals) v = rng.normal();
        auto f = ScalarField::from_physical(g, vals);
        auto coeffs = std::vector<std::complex<double>>(f.coeffs().begin(), f.coeffs().end());
        auto back = ScalarField::from_spectral(g, std::move(coeffs));
        double scale = 0.0;
        for (double v : vals) scale = std::max(scale, std::abs(v));
        CHECK(max_abs_diff(f, back) <= 1e-12 * scale);
    }
}

TEST_CASE("spectral coefficients of a real field are Hermitian symmetric") {
    Grid g(2, 16);
    TestRng rng(3);
    std::vector<double> vals(g.size());
    for (auto& v : vals) v = rng.normal();
    auto f = ScalarField::from_physical(g, vals);
    auto fh = f.coeffs();
    for_each_mode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
        // index of -k (mod n)
        int i0 = ((-k[0]) % g.n + g.n) % g.n;
        int i1 = ((-k[1]) % g.n + g.n) % g.n;
        std::size_t conj_idx = static_cast<std::size_t>(i0) * g.n + i1;
        auto d = fh[idx] - std::conj(fh[conj_idx]);
        CHECK(std::abs(d) < 1e-12);
    });
}

TEST_CASE("gradient: analytic and finite-difference oracle") {
    Grid g(2, 32);
    SECTION("cos(x1) -> (-sin(x1), 0)") {
        auto f = field_from(g, [](const auto& x) { return std::cos(x[0]); });
        auto grad = gradient(f);
        auto expected0 = field_from(g, [](const auto& x) { return -std::sin(x[0]); });
        CHECK(max_abs_diff(grad[0], expected0) < 1e-12);
        CHECK(max_abs(grad[1]) < 1e-12);
    }
    SECTION("constant -> zero") {
        auto f = field_from(g, [](const auto&) { return 3.7; });
        auto grad = gradient(f);
        CHECK(max_abs(grad[0]) < 1e-12);
        CHECK(max_abs(grad[1]) < 1e-12);
    }
    SECTION("matches 4th-order finite differences at O(h^4)") {
        // Same continuous field sampled at two resolutions; the FD/spectral
        // mismatch must shrink by ~2^4.
        auto sample = [&](int N) {
            Grid gg(2, N);
            auto f = field_from(gg, [](const auto& x) {
                return std::cos(3 * x[0] + x[1]) + 0.5 * std::sin(2 * x[1] - x[0]);
            });
            auto grad = gradient(f);
            auto v = f.values();
            auto gx = grad[0].values();
            const double h = gg.spacing();
            double worst = 0.0;
            for (int i = 0; i < N; ++i) {
                for (int j = 0; j < N; ++j) {
                    auto at = [&](int a, int b) {
                        return v[static_cast<std::size_t>(((a % N + N) % N)) * N
                                 + ((b % N + N) % N)];
                    };
                    double fd = (-at(i + 2, j) + 8 * at(i + 1, j) - 8 * at(i - 1, j)
                                 + at(i - 2, j)) / (12 * h);
                    worst = std::max(worst, std::abs(fd - gx[static_cast<std::size_t>(i) * N + j]));
                }
            }
            return worst;
        };
        double e32 = sample(32);
        double e64 = sample(64);
        CHECK(e64 < e32);
        CHECK(e32 / e64 > 10.0); // 4th order would give 16
        CHECK(e64 < 1e-3);
    }
}

TEST_CASE("divergence: analytic cases and Laplacian identity") {
    Grid g(2, 32);
    SECTION("x1-independent component -> 0") {
        VectorField u(g);
        u[0] = field_from(g, [](const auto& x) { return std::sin(x[1]); });
        CHECK(max_abs(divergence(u)) < 1e-12);
    }
    SECTION("divergence(gradient(f)) == laplacian(f)") {
        TestRng rng(5);
        auto f = random_band_limited(g, rng, 6);
        auto lhs = divergence(gradient(f));
        auto rhs = laplacian(f);
        CHECK(max_abs_diff(lhs, rhs) < 1e-12 * std::max(1.0, max_abs(rhs)));
    }
    SECTION("u = gradient(cos x1) -> -cos x1") {
        auto f = field_from(g, [](const auto& x) { return std::cos(x[0]); });
        auto d = divergence(gradient(f));
        auto expected = field_from(g, [](const auto& x) { return -std::cos(x[0]); });
        CHECK(max_abs_diff(d, expected) < 1e-12);
    }
    SECTION("matches finite-difference divergence at O(h^4)") {
        auto sample = [&](int N) {
            Grid gg(2, N);
            VectorField u(gg);
            u[0] = field_from(gg, [](const auto& x) { return std::sin(2 * x[0] + x[1]); });
            u[1] = field_from(gg, [](const auto& x) { return std::cos(x[0] - 3 * x[1]); });
            auto div_u = divergence(u);
            auto dv = div_u.values();
            auto v0 = u[0].values();
            auto v1 = u[1].values();
            const double h = gg.spacing();
            double worst = 0.0;
            auto wrap = [&](int a) { return (a % N + N) % N; };
            for (int i = 0; i < N; ++i) {
                for (int j = 0; j < N; ++j) {
                    auto a0 = [&](int a, int b) {
                        return v0[static_cast<std::size_t>(wrap(a)) * N + wrap(b)];
                    };
                    auto a1 = [&](int a, int b) {
                        return v1[static_cast<std::size_t>(wrap(a)) * N + wrap(b)];
                    };
                    double fd = (-a0(i + 2, j) + 8 * a0(i + 1, j) - 8 * a0(i - 1, j)
                                 + a0(i - 2, j)) / (12 * h)
                              + (-a1(i, j + 2) + 8 * a1(i, j + 1) - 8 * a1(i, j - 1)
                                 + a1(i, j - 2)) / (12 * h);
                    worst = std::max(worst,
                                     std::abs(fd - dv[static_cast<std::size_t>(i) * N + j]));
                }
            }
            return worst;
        };
        double e32 = sample(32);
        double e64 = sample(64);
        CHECK(e32 / e64 > 10.0);
    }
}

TEST_CASE("laplacian analytic cases") {
    Grid g(2, 32);
    auto f1 = field_from(g, [](const auto& x) { return std::cos(x[0]); });
    CHECK(max_abs_diff(laplacian(f1),
                       field_from(g, [](const auto& x) { return -std::cos(x[0]); }))
          < 1e-12);
    auto f2 = field_from(g, [](const auto&) { return 2.0; });
    CHECK(max_abs(laplacian(f2)) < 1e-12);
    auto f3 = field_from(g, [](const auto& x) { return std::cos(x[0]) * std::cos(x[1]); });
    CHECK(max_abs_diff(laplacian(f3), field_from(g, [](const auto& x) {
                           return -2.0 * std::cos(x[0]) * std::cos(x[1]);
                       }))
          < 1e-12);
}

TEST_CASE("leray projection") {
    Grid g(2, 32);
    TestRng rng(7);
    SECTION("pure gradients are annihilated") {
        auto f = random_band_limited(g, rng, 5);
        subtract_mean(f);
        auto u = gradient(f);
        auto p = leray_project(u);
        CHECK(sup_magnitude(p) < 1e-12 * std::max(1.0, sup_magnitude(u)));
    }
    SECTION("divergence-free field unchanged") {
        VectorField u(g);
        u[0] = field_from(g, [](const auto& x) { return -std::sin(x[1]); });
        u[1] = field_from(g, [](const auto& x) { return std::sin(x[0]); });
        auto p = leray_project(u);
        CHECK(max_abs_diff(p, u) < 1e-12);
    }
    SECTION("idempotent and divergence-free output") {
        auto u = random_band_limited_vector(g, rng, 6);
        auto p = leray_project(u);
        auto pp = leray_project(p);
        CHECK(max_abs_diff(p, pp) < 1e-12 * std::max(1.0, sup_magnitude(p)));
        CHECK(l2_norm(divergence(p)) <= 1e-12 * std::max(1.0, l2_norm(p)));
    }
    SECTION("self-adjoint in the discrete L2 inner product") {
        auto u = random_band_limited_vector(g, rng, 6);
        auto w = random_band_limited_vector(g, rng, 6);
        auto pu = leray_project(u);
        auto pw = leray_project(w);
        double a = 0.0, b = 0.0;
        for (int j = 0; j < g.dim; ++j) {
            a += inner_product(pu[j], w[j]);
            b += inner_product(u[j], pw[j]);
        }
        CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));
    }
    SECTION("zero mode untouched") {
        VectorField u(g);
        u[0] = field_from(g, [](const auto&) { return 1.25; });
        u[1] = field_from(g, [](const auto&) { return -0.5; });
        auto p = leray_project(u);
        CHECK(max_abs_diff(p, u) < 1e-13);
    }
}

TEST_CASE("integrate: quadrature oracle") {
    Grid g(2, 32);
    auto one = field_from(g, [](const auto&) { return 1.0; });
    CHECK(integrate(one) == Catch::Approx(kTwoPi * kTwoPi).epsilon(1e-13));
    auto c = field_from(g, [](const auto& x) { return std::cos(x[0]); });
    CHECK(std::abs(integrate(c)) < 1e-12);
    auto c2 = field_from(g, [](const auto& x) { return std::cos(x[0]) * std::cos(x[0]); });
    CHECK(integrate(c2) == Catch::Approx(kTwoPi * kTwoPi / 2).epsilon(1e-13));
    Grid g3(3, 16);
    auto one3 = field_from(g3, [](const auto&) { return 1.0; });
    CHECK(integrate(one3) == Catch::Approx(std::pow(kTwoPi, 3)).epsilon(1e-13));
}

namespace {

// Spectral upsampling onto a finer grid (zero padding).
ScalarField upsample(const ScalarField& f, const Grid& fine) {
    const Grid& g = f.grid();
    auto fh = f.coeffs();
    std::vector<std::complex<double>> out(fine.size(), {0.0, 0.0});
    for_each_mode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
        for (int j = 0; j < g.dim; ++j)
            if (std::abs(k[j]) >= g.n / 2) return; // skip Nyquist
        std::size_t fidx = 0;
        for (int j = 0; j < g.dim; ++j) {
            int kk = (k[j] % fine.n + fine.n) % fine.n;
            fidx = fidx * fine.n + static_cast<std::size_t>(kk);
        }
        out[fidx] = fh[idx];
    });
    return ScalarField::from_spectral(fine, std::move(out));
}

// Restriction of a fine-grid field to the coarse grid modes below Nyquist.
ScalarField downsample(const ScalarField& f, const Grid& coarse) {
    const Grid& g = f.grid();
    auto fh = f.coeffs();
    std::vector<std::complex<double>> out(coarse.size(), {0.0, 0.0});
    for_each_mode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
        for (int j = 0; j < g.dim; ++j)
            if (std::abs(k[j]) >= coarse.n / 2) return;
        std::size_t cidx = 0;
        for (int j = 0; j < g.dim; ++j) {
            int kk = (k[j] % coarse.n + coarse.n) % coarse.n;
            cidx = cidx * coarse.n + static_cast<std::size_t>(kk);
        }
        out[cidx] = fh[idx];
    });
    return ScalarField::from_spectral(coarse, std::move(out));
}

} // namespace

TEST_CASE("dealias: 2/3 rule") {
    SECTION("band-limited field unchanged") {
        Grid g(2, 48);
        TestRng rng(9);
        auto f = random_band_limited(g, rng, g.dealias_cutoff());
        auto before = ScalarField::from_physical(
            g, std::vector<double>(f.values().begin(), f.values().end()));
        dealias(f);
        CHECK(max_abs_diff(f, before) < 1e-12 * std::max(1.0, max_abs(before)));
    }
    SECTION("mode beyond cutoff zeroed (k = N/2-1 on N=16)") {
        Grid g(2, 16);
        auto f = field_from(g, [](const auto& x) { return std::cos(7 * x[0]); });
        dealias(f);
        CHECK(max_abs(f) < 1e-12);
    }
    SECTION("dealiased product equals exact product from a 2N grid") {
        Grid g(2, 32);
        Grid fine(2, 64);
        TestRng rng(13);
        auto f = random_band_limited(g, rng, g.dealias_cutoff());
        auto h = random_band_limited(g, rng, g.dealias_cutoff());
        dealias(f);
        dealias(h);
        auto prod = multiply(f, h);
        dealias(prod);
        auto exact_fine = multiply(upsample(f, fine), upsample(h, fine));
        auto exact = downsample(exact_fine, g);
        dealias(exact);
        CHECK(max_abs_diff(prod, exact) < 1e-11 * std::max(1.0, max_abs(exact)));
    }
}

TEST_CASE("Parseval identity") {
    Grid g(2, 32);
    TestRng rng(17);
    std::vector<double> vals(g.size());
    for (auto& v : vals) v = rng.normal();
    auto f = ScalarField::from_physical(g, vals);
    const double phys = l2_norm(f) * l2_norm(f);
    double spec = 0.0;
    for (auto c : f.coeffs()) spec += std::norm(c);
    spec *= g.volume();
    CHECK(phys == Catch::Approx(spec).epsilon(1e-12));
}

TEST_CASE("gradient/divergence duality (discrete integration by parts)") {
    Grid g(2, 32);
    TestRng rng(19);
    auto f = random_band_limited(g, rng, g.dealias_cutoff());
    auto u = random_band_limited_vector(g, rng, g.dealias_cutoff());
    auto gf = gradient(f);
    double a = inner_product(f, divergence(u));
    double b = 0.0;
    for (int j = 0; j < g.dim; ++j) b += inner_product(gf[j], u[j]);
    CHECK(std::abs(a + b) < 1e-12 * std::max(1.0, std::abs(a)));
}
