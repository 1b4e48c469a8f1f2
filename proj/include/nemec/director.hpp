#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "nemec/electrostatics.hpp"
#include "nemec/errors.hpp"
#include "nemec/field.hpp"
#include "nemec/kinematics.hpp"
#include "nemec/ops.hpp"
#include "nemec/singular_potential.hpp"

namespace nemec {

// 0.5 F_lambda(|n|^2) pointwise.
inline ScalarField potential_energy_density(const VectorField& n,
                                            const SingularPotentialParams& pot) {
    const Grid& g = n.grid();
    const std::size_t m = g.size();
    std::vector<std::span<const double>> nc(g.dim);
    for (int j = 0; j < g.dim; ++j) nc[j] = n[j].values();
    std::vector<double> e(m);
    for (std::size_t q = 0; q < m; ++q) {
        double r = 0.0;
        for (int j = 0; j < g.dim; ++j) r += nc[j][q] * nc[j][q];
        e[q] = 0.5 * barrier_value(r, pot);
    }
    return ScalarField::from_physical(g, std::move(e));
}

// The subdifferential F'_lambda(|n|^2) n pointwise (not dealiased: F' is not
// polynomial, and the gradient-consistency contract is pointwise).
inline VectorField potential_gradient(const VectorField& n,
                                      const SingularPotentialParams& pot) {
    const Grid& g = n.grid();
    const std::size_t m = g.size();
    std::vector<std::span<const double>> nc(g.dim);
    for (int j = 0; j < g.dim; ++j) nc[j] = n[j].values();
    VectorField out(g);
    for (int i = 0; i < g.dim; ++i) {
        std::vector<double> e(m);
        for (std::size_t q = 0; q < m; ++q) {
            double r = 0.0;
            for (int j = 0; j < g.dim; ++j) r += nc[j][q] * nc[j][q];
            e[q] = barrier_derivative(r, pot) * nc[i][q];
        }
        out[i] = ScalarField::from_physical(g, std::move(e));
    }
    return out;
}

// -(v.grad)n + Omega(v)n, the transport part of the corotational derivative.
inline VectorField advection_rotation(const VectorField& n, const VectorField& v) {
    const Grid& g = n.grid();
    VectorField adv = advect(n, v);
    auto [dn, on] = apply_strain_rotation(n, velocity_gradient(v));
    VectorField out(g);
    for (int i = 0; i < g.dim; ++i) out[i] = add(on[i], adv[i], 1.0, -1.0);
    dealias(out);
    return out;
}

// -(v.grad)n + Omega(v)n - D(v)n: every kinematic term of the director
// equation moved to the right-hand side.
inline VectorField kinematic_terms(const VectorField& n, const VectorField& v) {
    const Grid& g = n.grid();
    VectorField adv = advect(n, v);
    auto [dn, on] = apply_strain_rotation(n, velocity_gradient(v));
    VectorField out(g);
    for (int i = 0; i < g.dim; ++i)
        out[i] = add(add(on[i], dn[i], 1.0, -1.0), adv[i], 1.0, -1.0);
    dealias(out);
    return out;
}

// Corotational rate evaluated algebraically from the director equation:
// ring(n) = lap n + eps (grad Phi x grad Phi) n - dF(n) - D(v) n.
inline VectorField lie_derivative(const VectorField& n, const VectorField& v,
                                  const ScalarField& phi, double eps,
                                  const SingularPotentialParams& pot) {
    const Grid& g = n.grid();
    VectorField lap = laplacian(n);
    VectorField torque = electric_torque(phi, n, eps); // already dealiased
    VectorField barrier = potential_gradient(n, pot);
    auto [dn, on] = apply_strain_rotation(n, velocity_gradient(v));
    VectorField out(g);
    for (int i = 0; i < g.dim; ++i) {
        auto a = add(lap[i], torque[i]);
        out[i] = add(add(a, barrier[i], 1.0, -1.0), dn[i], 1.0, -1.0);
    }
    dealias(out);
    return out;
}

// Full right-hand side of n_t: kinematic transport plus the corotational rate.
inline VectorField director_rhs(const VectorField& n, const VectorField& v,
                                const ScalarField& phi, double eps,
                                const SingularPotentialParams& pot) {
    VectorField a = advection_rotation(n, v);
    VectorField b = lie_derivative(n, v, phi, eps, pot);
    VectorField out(n.grid());
    for (int i = 0; i < n.dim(); ++i) out[i] = add(a[i], b[i]);
    return out;
}

// One IMEX step: backward Euler on lap n, explicit kinematics, torque and
// barrier. Rejects the step if the barrier confinement band is breached.
inline VectorField step_director(const State& s, double dt, double eps,
                                 const SingularPotentialParams& pot) {
    const Grid& g = s.grid();
    VectorField torque = electric_torque(s.phi, s.n, eps);
    VectorField barrier = potential_gradient(s.n, pot);
    VectorField adv = advect(s.n, s.v);
    auto [dn, on] = apply_strain_rotation(s.n, velocity_gradient(s.v));
    VectorField nnew(g);
    for (int i = 0; i < g.dim; ++i) {
        ScalarField expl = add(add(on[i], dn[i], 1.0, -1.0), adv[i], 1.0, -1.0);
        expl = add(add(expl, torque[i]), barrier[i], 1.0, -1.0);
        dealias(expl);
        auto nh = s.n[i].coeffs();
        auto eh = expl.coeffs();
        std::vector<std::complex<double>> oh(g.size());
        for_each_mode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
            double k2 = 0.0;
            for (int j = 0; j < g.dim; ++j) k2 += double(k[j]) * k[j];
            oh[idx] = (nh[idx] + dt * eh[idx]) / (1.0 + dt * k2);
        });
        nnew[i] = ScalarField::from_spectral(g, std::move(oh));
    }
    const double sup = sup_magnitude(nnew);
    const double bound = 1.0 + 10.0 * pot.lambda;
    if (sup > bound)
        throw StepRejected("step_director: sup|n| = " + std::to_string(sup)
                           + " breaches the confinement band " + std::to_string(bound));
    return nnew;
}

// Korteweg stress (grad n odot grad n)(i,j) = d_i n_k d_j n_k, dealiased;
// symmetric positive semidefinite pointwise.
inline TensorField ericksen_stress(const VectorField& n) {
    const Grid& g = n.grid();
    const std::size_t m = g.size();
    // grad n_k for all components
    std::vector<VectorField> gn;
    gn.reserve(g.dim);
    for (int k = 0; k < g.dim; ++k) gn.push_back(gradient(n[k]));
    TensorField t(g);
    for (int i = 0; i < g.dim; ++i) {
        for (int j = 0; j < g.dim; ++j) {
            std::vector<double> e(m, 0.0);
            for (int k = 0; k < g.dim; ++k) {
                auto di = gn[k][i].values();
                auto dj = gn[k][j].values();
                for (std::size_t q = 0; q < m; ++q) e[q] += di[q] * dj[q];
            }
            t(i, j) = ScalarField::from_physical(g, std::move(e));
        }
    }
    dealias(t);
    return t;
}

} // namespace nemec
