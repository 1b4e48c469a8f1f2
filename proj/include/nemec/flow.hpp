#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "nemec/director.hpp"
#include "nemec/electrostatics.hpp"
#include "nemec/errors.hpp"
#include "nemec/field.hpp"
#include "nemec/kinematics.hpp"
#include "nemec/leslie.hpp"
#include "nemec/ops.hpp"

namespace nemec {

inline double cfl_number(const VectorField& v, double dt) {
    return sup_magnitude(v) * dt / v.grid().spacing();
}

// Everything on the right of the momentum equation except the implicit
// alpha4 viscous part, Leray-projected:
//   P[ div( -v x v - grad n odot grad n
//           + (grad Phi x grad Phi)(Id + eps n x n) + sigma_Leslie ) ].
// Advection is kept in divergence form so every force is a divergence and
// the discrete momentum integral is exactly conserved.
inline VectorField momentum_rhs(const State& s, const std::array<double, 6>& alpha,
                                double eps, const SingularPotentialParams& pot) {
    const Grid& g = s.grid();
    const std::size_t m = g.size();
    const int dim = g.dim;

    TensorField D = strain_rate(s.v);
    VectorField ndot = lie_derivative(s.n, s.v, s.phi, eps, pot);
    TensorField total = leslie_stress(s.n, ndot, D, alpha);
    TensorField maxwell = electric_stress(s.phi, s.n, eps);
    TensorField korteweg = ericksen_stress(s.n);

    std::vector<std::span<const double>> vc(dim);
    for (int j = 0; j < dim; ++j) vc[j] = s.v[j].values();
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            std::vector<double> adv(m);
            for (std::size_t q = 0; q < m; ++q) adv[q] = vc[i][q] * vc[j][q];
            ScalarField advec = ScalarField::from_physical(g, std::move(adv));
            dealias(advec);
            ScalarField entry = add(total(i, j), maxwell(i, j));
            entry = add(entry, korteweg(i, j), 1.0, -1.0);
            total(i, j) = add(entry, advec, 1.0, -1.0);
        }
    }

    VectorField rhs(g);
    for (int i = 0; i < dim; ++i) {
        VectorField row(g);
        for (int j = 0; j < dim; ++j) row[j] = total(i, j);
        rhs[i] = divergence(row);
    }
    return leray_project(rhs);
}

// One IMEX step of the flow: backward Euler on (alpha4/2) lap v (the
// divergence of the Newtonian stress for a divergence-free field), explicit
// momentum_rhs, then Leray projection. Pressure is never materialized.
inline VectorField step_flow(const State& s, const std::array<double, 6>& alpha, double dt,
                             double eps, const SingularPotentialParams& pot) {
    const Grid& g = s.grid();
    const double cfl = cfl_number(s.v, dt);
    if (cfl > 0.5)
        throw StepRejected("step_flow: CFL number " + std::to_string(cfl) + " exceeds 0.5");
    VectorField rhs = momentum_rhs(s, alpha, eps, pot);
    VectorField vnew(g);
    const double nu = alpha[3] / 2.0;
    for (int i = 0; i < g.dim; ++i) {
        auto vh = s.v[i].coeffs();
        auto rh = rhs[i].coeffs();
        std::vector<std::complex<double>> oh(g.size());
        for_each_mode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
            double k2 = 0.0;
            for (int j = 0; j < g.dim; ++j) k2 += double(k[j]) * k[j];
            oh[idx] = (vh[idx] + dt * rh[idx]) / (1.0 + dt * nu * k2);
        });
        vnew[i] = ScalarField::from_spectral(g, std::move(oh));
    }
    return leray_project(vnew);
}

} // namespace nemec
