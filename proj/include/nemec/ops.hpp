#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "nemec/field.hpp"

namespace nemec {

namespace detail {

// Derivative wavenumber: ik with the (unpaired) Nyquist mode zeroed, the
// standard choice keeping odd-order spectral derivatives real-symmetric.
inline int deriv_wavenumber(const Grid& g, int k) {
    return (k == -g.n / 2) ? 0 : k;
}

} // namespace detail

inline VectorField gradient(const ScalarField& f) {
    const Grid& g = f.grid();
    auto fh = f.coeffs();
    VectorField out(g);
    for (int j = 0; j < g.dim; ++j) {
        std::vector<std::complex<double>> dh(g.size());
        for_each_mode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
            const double kj = detail::deriv_wavenumber(g, k[j]);
            dh[idx] = std::complex<double>(0.0, kj) * fh[idx];
        });
        out[j] = ScalarField::from_spectral(g, std::move(dh));
    }
    return out;
}

inline ScalarField divergence(const VectorField& u) {
    const Grid& g = u.grid();
    std::vector<std::complex<double>> dh(g.size(), {0.0, 0.0});
    for (int j = 0; j < g.dim; ++j) {
        auto uh = u[j].coeffs();
        for_each_mode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
            const double kj = detail::deriv_wavenumber(g, k[j]);
            dh[idx] += std::complex<double>(0.0, kj) * uh[idx];
        });
    }
    return ScalarField::from_spectral(g, std::move(dh));
}

inline ScalarField laplacian(const ScalarField& f) {
    const Grid& g = f.grid();
    auto fh = f.coeffs();
    std::vector<std::complex<double>> lh(g.size());
    for_each_mode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
        double k2 = 0.0;
        for (int j = 0; j < g.dim; ++j) k2 += double(k[j]) * k[j];
        lh[idx] = -k2 * fh[idx];
    });
    return ScalarField::from_spectral(g, std::move(lh));
}

inline VectorField laplacian(const VectorField& u) {
    VectorField out(u.grid());
    for (int j = 0; j < u.dim(); ++j) out[j] = laplacian(u[j]);
    return out;
}

// Orthogonal projection onto divergence-free fields: u - grad(lap^-1 div u),
// mode-wise u_hat -= k (k.u_hat)/|k|^2 with the derivative wavenumbers, so
// divergence(leray_project(u)) vanishes identically for our divergence.
inline VectorField leray_project(const VectorField& u) {
    const Grid& g = u.grid();
    std::vector<std::span<const std::complex<double>>> uh(g.dim);
    for (int j = 0; j < g.dim; ++j) uh[j] = u[j].coeffs();
    std::vector<std::vector<std::complex<double>>> out(g.dim);
    for (int j = 0; j < g.dim; ++j) out[j].resize(g.size());
    for_each_mode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
        double kk[3] = {0, 0, 0};
        double k2 = 0.0;
        for (int j = 0; j < g.dim; ++j) {
            kk[j] = detail::deriv_wavenumber(g, k[j]);
            k2 += kk[j] * kk[j];
        }
        if (k2 == 0.0) {
            for (int j = 0; j < g.dim; ++j) out[j][idx] = uh[j][idx];
            return;
        }
        std::complex<double> kdotu{0.0, 0.0};
        for (int j = 0; j < g.dim; ++j) kdotu += kk[j] * uh[j][idx];
        kdotu /= k2;
        for (int j = 0; j < g.dim; ++j) out[j][idx] = uh[j][idx] - kk[j] * kdotu;
    });
    VectorField res(g);
    for (int j = 0; j < g.dim; ++j)
        res[j] = ScalarField::from_spectral(g, std::move(out[j]));
    return res;
}

// Quadrature: grid mean times torus volume (exact on the resolved
// trigonometric space).
inline double integrate(const ScalarField& f) {
    auto v = f.values();
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size()) * f.grid().volume();
}

inline double mean(const ScalarField& f) { return integrate(f) / f.grid().volume(); }

inline void subtract_mean(ScalarField& f) {
    const double m = mean(f);
    for (double& x : f.values_mut()) x -= m;
}

// 2/3-rule dealiasing: zero every mode with any |k_j| > n/3.
inline void dealias(ScalarField& f) {
    const Grid& g = f.grid();
    const int cut = g.dealias_cutoff();
    auto fh = f.coeffs_mut();
    for_each_mode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
        for (int j = 0; j < g.dim; ++j) {
            if (std::abs(k[j]) > cut) {
                fh[idx] = {0.0, 0.0};
                return;
            }
        }
    });
}

inline void dealias(VectorField& u) {
    for (int j = 0; j < u.dim(); ++j) dealias(u[j]);
}

inline void dealias(TensorField& t) {
    for (int i = 0; i < t.dim(); ++i)
        for (int j = 0; j < t.dim(); ++j) dealias(t(i, j));
}

inline double inner_product(const ScalarField& f, const ScalarField& g) {
    auto a = f.values();
    auto b = g.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum / static_cast<double>(a.size()) * f.grid().volume();
}

inline double l2_norm(const ScalarField& f) {
    return std::sqrt(std::max(0.0, inner_product(f, f)));
}

inline double l2_norm(const VectorField& u) {
    double s = 0.0;
    for (int j = 0; j < u.dim(); ++j) {
        const double nj = l2_norm(u[j]);
        s += nj * nj;
    }
    return std::sqrt(s);
}

inline double lp_norm(const ScalarField& f, double p) {
    auto v = f.values();
    double sum = 0.0;
    for (double x : v) sum += std::pow(std::abs(x), p);
    return std::pow(sum / static_cast<double>(v.size()) * f.grid().volume(), 1.0 / p);
}

inline double sup_norm(const ScalarField& f) {
    double m = 0.0;
    for (double x : f.values()) m = std::max(m, std::abs(x));
    return m;
}

inline double min_value(const ScalarField& f) {
    auto v = f.values();
    return *std::min_element(v.begin(), v.end());
}

inline double max_value(const ScalarField& f) {
    auto v = f.values();
    return *std::max_element(v.begin(), v.end());
}

// Pointwise magnitude sup of a vector field.
inline double sup_magnitude(const VectorField& u) {
    const std::size_t m = u.grid().size();
    std::vector<std::span<const double>> c(u.dim());
    for (int j = 0; j < u.dim(); ++j) c[j] = u[j].values();
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (int j = 0; j < u.dim(); ++j) s += c[j][i] * c[j][i];
        best = std::max(best, s);
    }
    return std::sqrt(best);
}

inline ScalarField multiply(const ScalarField& f, const ScalarField& g) {
    auto a = f.values();
    auto b = g.values();
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return ScalarField::from_physical(f.grid(), std::move(out));
}

inline ScalarField add(const ScalarField& f, const ScalarField& g, double wf = 1.0,
                       double wg = 1.0) {
    auto a = f.values();
    auto b = g.values();
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = wf * a[i] + wg * b[i];
    return ScalarField::from_physical(f.grid(), std::move(out));
}

inline double l2_norm_gradient(const VectorField& u) {
    double s = 0.0;
    for (int j = 0; j < u.dim(); ++j) {
        VectorField gj = gradient(u[j]);
        const double nj = l2_norm(gj);
        s += nj * nj;
    }
    return std::sqrt(s);
}

} // namespace nemec
