#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "nemec/field.hpp"
#include "nemec/ops.hpp"

namespace nemec {

struct LeslieCoefficients {
    std::array<double, 6> alpha{0, 0, 1, 3, 0, 0.5};
    double delta = 0.0;       // (0,1): the Young-inequality split certifying (hp:alpha)
    double delta_prime = 0.0; // certified coercivity constant, 0 if uncertified
};

struct LeslieValidation {
    bool admissible = false;
    double delta = 0.0;
    double delta_prime = 0.0;
};

namespace detail {

// Analytic admissibility margin for a given delta:
// alpha4 - |alpha1| - |alpha5| - |alpha6| - 1/(1-delta).
inline double leslie_margin(const std::array<double, 6>& a, double delta) {
    return a[3] - std::abs(a[0]) - std::abs(a[4]) - std::abs(a[5]) - 1.0 / (1.0 - delta);
}

// The dissipation quadratic of Lemma-1 form at one sample (3D).
inline double leslie_quadratic(const std::array<double, 6>& a, const double n[3],
                               const double nd[3], const double D[3][3]) {
    double Dn[3] = {0, 0, 0};
    double D2 = 0.0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Dn[i] += D[i][j] * n[j];
            D2 += D[i][j] * D[i][j];
        }
    }
    const double nDn = n[0] * Dn[0] + n[1] * Dn[1] + n[2] * Dn[2];
    const double ndDn = nd[0] * Dn[0] + nd[1] * Dn[1] + nd[2] * Dn[2];
    const double Dn2 = Dn[0] * Dn[0] + Dn[1] * Dn[1] + Dn[2] * Dn[2];
    const double nd2 = nd[0] * nd[0] + nd[1] * nd[1] + nd[2] * nd[2];
    return a[3] * D2 + a[0] * nDn * nDn + 2.0 * ndDn + (a[4] + a[5]) * Dn2 + nd2;
}

struct SplitMix64 {
    std::uint64_t s;
    explicit SplitMix64(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
};

// One randomized Lemma-1 sample: D symmetric traceless, |n| <= 1, nd free.
template <class Rng>
void sample_lemma1_point(Rng& rng, double n[3], double nd[3], double D[3][3]) {
    const double d00 = rng.normal(), d11 = rng.normal();
    const double d01 = rng.normal(), d02 = rng.normal(), d12 = rng.normal();
    D[0][0] = d00;
    D[1][1] = d11;
    D[2][2] = -d00 - d11;
    D[0][1] = D[1][0] = d01;
    D[0][2] = D[2][0] = d02;
    D[1][2] = D[2][1] = d12;
    double nn;
    do {
        for (int i = 0; i < 3; ++i) n[i] = 2.0 * rng.uniform() - 1.0;
        nn = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
    } while (nn > 1.0);
    for (int i = 0; i < 3; ++i) nd[i] = 2.0 * rng.normal();
}

} // namespace detail

// Searches delta over the geometric grid {1 - 2^-j, j = 1..40}; if the
// coefficient condition holds for some delta, certifies delta' > 0 as 0.99
// times the smallest sampled ratio of the dissipation quadratic against
// |Dn|^2 + |nd|^2 over `samples` randomized Lemma-1 samples.
inline LeslieValidation validate_leslie(const std::array<double, 6>& alpha,
                                        int samples = 1'000'000,
                                        std::uint64_t seed = 0x4c65736c6965ULL) {
    LeslieValidation out;
    if (!(alpha[3] > 0.0)) return out;
    double best_delta = 0.0;
    double best_obj = 0.0;
    for (int j = 1; j <= 40; ++j) {
        const double delta = 1.0 - std::ldexp(1.0, -j);
        const double margin = detail::leslie_margin(alpha, delta);
        if (margin <= 0.0) continue;
        const double obj = std::min(margin, delta);
        if (obj > best_obj) {
            best_obj = obj;
            best_delta = delta;
        }
    }
    if (best_obj <= 0.0) return out;
    out.admissible = true;
    out.delta = best_delta;

    detail::SplitMix64 rng(seed);
    double min_ratio = std::numeric_limits<double>::infinity();
    double n[3], nd[3], D[3][3];
    for (int s = 0; s < samples; ++s) {
        detail::sample_lemma1_point(rng, n, nd, D);
        double Dn[3] = {0, 0, 0};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) Dn[i] += D[i][j] * n[j];
        const double denom = Dn[0] * Dn[0] + Dn[1] * Dn[1] + Dn[2] * Dn[2]
                           + nd[0] * nd[0] + nd[1] * nd[1] + nd[2] * nd[2];
        if (denom < 1e-12) continue;
        const double q = detail::leslie_quadratic(alpha, n, nd, D);
        min_ratio = std::min(min_ratio, q / denom);
    }
    out.delta_prime = 0.99 * min_ratio;
    return out;
}

// Pointwise alpha4 |D|^2 + alpha1 (n.Dn)^2 + 2 (nd.Dn) + (alpha5+alpha6)|Dn|^2
// + |nd|^2, the integrand certified nonnegative by the coefficient condition.
// D must be the symmetric traceless strain rate of a divergence-free field.
inline ScalarField dissipation_density(const VectorField& n, const VectorField& ndot,
                                       const TensorField& D,
                                       const std::array<double, 6>& alpha) {
    const Grid& g = n.grid();
    const std::size_t m = g.size();
    const int dim = g.dim;
    std::vector<std::span<const double>> nc(dim), dc(dim);
    for (int j = 0; j < dim; ++j) {
        nc[j] = n[j].values();
        dc[j] = ndot[j].values();
    }
    std::vector<std::vector<std::span<const double>>> Dc(dim);
    for (int i = 0; i < dim; ++i) {
        Dc[i].resize(dim);
        for (int j = 0; j < dim; ++j) Dc[i][j] = D(i, j).values();
    }
    std::vector<double> e(m);
    for (std::size_t q = 0; q < m; ++q) {
        double Dn[3] = {0, 0, 0};
        double D2 = 0.0;
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                Dn[i] += Dc[i][j][q] * nc[j][q];
                D2 += Dc[i][j][q] * Dc[i][j][q];
            }
        }
        double nDn = 0.0, ndDn = 0.0, Dn2 = 0.0, nd2 = 0.0;
        for (int i = 0; i < dim; ++i) {
            nDn += nc[i][q] * Dn[i];
            ndDn += dc[i][q] * Dn[i];
            Dn2 += Dn[i] * Dn[i];
            nd2 += dc[i][q] * dc[i][q];
        }
        e[q] = alpha[3] * D2 + alpha[0] * nDn * nDn + 2.0 * ndDn
             + (alpha[4] + alpha[5]) * Dn2 + nd2;
    }
    return ScalarField::from_physical(g, std::move(e));
}

// Leslie stress without the Newtonian alpha4 D part (treated implicitly by
// the flow step):
//   alpha1 (Dn.n) n x n + alpha2 nd x n + alpha3 n x nd
//   + alpha5 Dn x n + alpha6 n x Dn,  dealiased.
inline TensorField leslie_stress(const VectorField& n, const VectorField& ndot,
                                 const TensorField& D,
                                 const std::array<double, 6>& alpha) {
    const Grid& g = n.grid();
    const std::size_t m = g.size();
    const int dim = g.dim;
    std::vector<std::span<const double>> nc(dim), dc(dim);
    for (int j = 0; j < dim; ++j) {
        nc[j] = n[j].values();
        dc[j] = ndot[j].values();
    }
    std::vector<std::vector<std::span<const double>>> Dc(dim);
    for (int i = 0; i < dim; ++i) {
        Dc[i].resize(dim);
        for (int j = 0; j < dim; ++j) Dc[i][j] = D(i, j).values();
    }
    TensorField t(g);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            std::vector<double> e(m);
            for (std::size_t q = 0; q < m; ++q) {
                double Dn_i = 0.0, Dn_j = 0.0, nDn = 0.0;
                for (int a = 0; a < dim; ++a) {
                    Dn_i += Dc[i][a][q] * nc[a][q];
                    Dn_j += Dc[j][a][q] * nc[a][q];
                }
                for (int a = 0; a < dim; ++a) {
                    double Dn_a = 0.0;
                    for (int b = 0; b < dim; ++b) Dn_a += Dc[a][b][q] * nc[b][q];
                    nDn += nc[a][q] * Dn_a;
                }
                e[q] = alpha[0] * nDn * nc[i][q] * nc[j][q] + alpha[1] * dc[i][q] * nc[j][q]
                     + alpha[2] * nc[i][q] * dc[j][q] + alpha[4] * Dn_i * nc[j][q]
                     + alpha[5] * nc[i][q] * Dn_j;
            }
            t(i, j) = ScalarField::from_physical(g, std::move(e));
        }
    }
    dealias(t);
    return t;
}

} // namespace nemec
