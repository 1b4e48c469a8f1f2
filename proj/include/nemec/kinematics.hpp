#pragma once

#include <utility>
#include <vector>

#include "nemec/field.hpp"
#include "nemec/ops.hpp"

namespace nemec {

// Velocity gradient G(i,j) = d_j v_i. The symmetric part D = (G + G^T)/2 and
// the antisymmetric part Omega = (G - G^T)/2 follow the paper's conventions:
// stress contractions are sigma_ij d_j v_i and (Omega n)_i = Omega_ij n_j.
inline TensorField velocity_gradient(const VectorField& v) {
    const Grid& g = v.grid();
    TensorField t(g);
    for (int i = 0; i < g.dim; ++i) {
        VectorField gi = gradient(v[i]);
        for (int j = 0; j < g.dim; ++j) t(i, j) = std::move(gi[j]);
    }
    return t;
}

inline TensorField strain_rate(const TensorField& grad_v) {
    const Grid& g = grad_v.grid();
    TensorField d(g);
    for (int i = 0; i < g.dim; ++i) {
        for (int j = 0; j < g.dim; ++j) {
            d(i, j) = add(grad_v(i, j), grad_v(j, i), 0.5, 0.5);
        }
    }
    return d;
}

inline TensorField strain_rate(const VectorField& v) { return strain_rate(velocity_gradient(v)); }

// Pointwise D(v) n and Omega(v) n from a (possibly hand-built) gradient tensor.
inline std::pair<VectorField, VectorField> apply_strain_rotation(const VectorField& n,
                                                                 const TensorField& grad_v) {
    const Grid& g = n.grid();
    const std::size_t m = g.size();
    std::vector<std::span<const double>> nc(g.dim);
    for (int j = 0; j < g.dim; ++j) nc[j] = n[j].values();
    std::vector<std::vector<std::span<const double>>> G(g.dim);
    for (int i = 0; i < g.dim; ++i) {
        G[i].resize(g.dim);
        for (int j = 0; j < g.dim; ++j) G[i][j] = grad_v(i, j).values();
    }
    VectorField dn(g), on(g);
    for (int i = 0; i < g.dim; ++i) {
        std::vector<double> dv(m), ov(m);
        for (std::size_t q = 0; q < m; ++q) {
            double ds = 0.0, os = 0.0;
            for (int j = 0; j < g.dim; ++j) {
                const double dij = 0.5 * (G[i][j][q] + G[j][i][q]);
                const double oij = 0.5 * (G[i][j][q] - G[j][i][q]);
                ds += dij * nc[j][q];
                os += oij * nc[j][q];
            }
            dv[q] = ds;
            ov[q] = os;
        }
        dn[i] = ScalarField::from_physical(g, std::move(dv));
        on[i] = ScalarField::from_physical(g, std::move(ov));
    }
    return {std::move(dn), std::move(on)};
}

// (v . grad) n, assembled pointwise.
inline VectorField advect(const VectorField& n, const VectorField& v) {
    const Grid& g = n.grid();
    const std::size_t m = g.size();
    std::vector<std::span<const double>> vc(g.dim);
    for (int j = 0; j < g.dim; ++j) vc[j] = v[j].values();
    VectorField out(g);
    for (int i = 0; i < g.dim; ++i) {
        VectorField gni = gradient(n[i]);
        std::vector<std::span<const double>> gc(g.dim);
        for (int j = 0; j < g.dim; ++j) gc[j] = gni[j].values();
        std::vector<double> e(m);
        for (std::size_t q = 0; q < m; ++q) {
            double s = 0.0;
            for (int j = 0; j < g.dim; ++j) s += vc[j][q] * gc[j][q];
            e[q] = s;
        }
        out[i] = ScalarField::from_physical(g, std::move(e));
    }
    return out;
}

} // namespace nemec
