#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "nemec/errors.hpp"
#include "nemec/field.hpp"
#include "nemec/ops.hpp"

namespace nemec {

struct TransportParams {
    double eps = 0.0;     // mobility anisotropy (shared with the dielectric)
    double c_bar = 1.0;   // maximum-principle bound from the initial data
    double tol_mp = 1e-8; // maximum-principle monitoring tolerance
};

// The two ion densities with their common bound.
struct SpeciesPair {
    ScalarField cp;
    ScalarField cm;
    double c_bar = 1.0;
};

// Nernst-Planck flux (Id + eps n x n)(grad c + sign c grad Phi), dealiased.
// sign = +1 for c_p, -1 for c_m.
inline VectorField species_flux(const ScalarField& c, const ScalarField& phi,
                                const VectorField& n, double eps, double sign) {
    const Grid& g = c.grid();
    VectorField gc = gradient(c);
    VectorField gp = gradient(phi);
    const std::size_t m = g.size();
    std::vector<std::span<const double>> nc(g.dim), gcv(g.dim), gpv(g.dim);
    for (int j = 0; j < g.dim; ++j) {
        nc[j] = n[j].values();
        gcv[j] = gc[j].values();
        gpv[j] = gp[j].values();
    }
    auto cv = c.values();
    VectorField out(g);
    for (int i = 0; i < g.dim; ++i) {
        std::vector<double> e(m);
        for (std::size_t q = 0; q < m; ++q) {
            double mob[3];
            double ndotf = 0.0;
            for (int j = 0; j < g.dim; ++j) {
                mob[j] = gcv[j][q] + sign * cv[q] * gpv[j][q];
                ndotf += nc[j][q] * mob[j];
            }
            e[q] = mob[i] + eps * nc[i][q] * ndotf;
        }
        out[i] = ScalarField::from_physical(g, std::move(e));
    }
    dealias(out);
    return out;
}

// Divergence of the explicit part of the species update: advection plus the
// anisotropic mobility correction plus drift, all in divergence form so the
// zero mode (the species mass) is exactly unchanged.
inline ScalarField species_explicit_divflux(const ScalarField& c, const VectorField& v,
                                            const ScalarField& phi, const VectorField& n,
                                            double eps, double sign) {
    const Grid& g = c.grid();
    VectorField gc = gradient(c);
    VectorField gp = gradient(phi);
    const std::size_t m = g.size();
    std::vector<std::span<const double>> nc(g.dim), gcv(g.dim), gpv(g.dim), vv(g.dim);
    for (int j = 0; j < g.dim; ++j) {
        nc[j] = n[j].values();
        gcv[j] = gc[j].values();
        gpv[j] = gp[j].values();
        vv[j] = v[j].values();
    }
    auto cv = c.values();
    VectorField flux(g);
    for (int i = 0; i < g.dim; ++i) {
        std::vector<double> e(m);
        for (std::size_t q = 0; q < m; ++q) {
            double ndotgc = 0.0;
            double drift[3];
            double ndotdr = 0.0;
            for (int j = 0; j < g.dim; ++j) {
                ndotgc += nc[j][q] * gcv[j][q];
                drift[j] = sign * cv[q] * gpv[j][q];
                ndotdr += nc[j][q] * drift[j];
            }
            e[q] = -vv[i][q] * cv[q] + eps * nc[i][q] * ndotgc + drift[i]
                 + eps * nc[i][q] * ndotdr;
        }
        flux[i] = ScalarField::from_physical(g, std::move(e));
    }
    dealias(flux);
    return divergence(flux);
}

// One IMEX step of both species: backward Euler on the isotropic Laplacian,
// everything else explicit and in divergence form. Phi must be the potential
// solved for the current state.
inline std::pair<ScalarField, ScalarField> step_species(const State& s, double dt,
                                                        const TransportParams& par) {
    const Grid& g = s.grid();
    std::pair<ScalarField, ScalarField> out{ScalarField(g), ScalarField(g)};
    for (int which = 0; which < 2; ++which) {
        const ScalarField& c = which == 0 ? s.cp : s.cm;
        const double sign = which == 0 ? 1.0 : -1.0;
        ScalarField expl = species_explicit_divflux(c, s.v, s.phi, s.n, par.eps, sign);
        auto ch = c.coeffs();
        auto eh = expl.coeffs();
        std::vector<std::complex<double>> nh(g.size());
        for_each_mode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
            double k2 = 0.0;
            for (int j = 0; j < g.dim; ++j) k2 += double(k[j]) * k[j];
            nh[idx] = (ch[idx] + dt * eh[idx]) / (1.0 + dt * k2);
        });
        ScalarField cnew = ScalarField::from_spectral(g, std::move(nh));
        const double lo = min_value(cnew);
        const double hi = max_value(cnew);
        if (lo < -10.0 * par.tol_mp || hi > par.c_bar * (1.0 + 10.0 * par.tol_mp))
            throw StepRejected("step_species: range [" + std::to_string(lo) + ", "
                               + std::to_string(hi) + "] breaches the maximum principle band");
        (which == 0 ? out.first : out.second) = std::move(cnew);
    }
    return out;
}

// integral of c log c, with the integrand continuously extended by 0 at c=0.
inline double entropy_integral(const ScalarField& c) {
    auto v = c.values();
    double sum = 0.0;
    for (double x : v) sum += x * std::log(std::max(x, 1e-14));
    return sum / static_cast<double>(v.size()) * c.grid().volume();
}

// integral of (Id + eps n x n)(grad c + sign c grad Phi) . (grad c / c + sign grad Phi),
// the species part of the energy dissipation; c is floored at 1e-10 in 1/c.
inline double species_dissipation(const ScalarField& c, const ScalarField& phi,
                                  const VectorField& n, double eps, double sign) {
    const Grid& g = c.grid();
    VectorField gc = gradient(c);
    VectorField gp = gradient(phi);
    const std::size_t m = g.size();
    std::vector<std::span<const double>> nc(g.dim), gcv(g.dim), gpv(g.dim);
    for (int j = 0; j < g.dim; ++j) {
        nc[j] = n[j].values();
        gcv[j] = gc[j].values();
        gpv[j] = gp[j].values();
    }
    auto cv = c.values();
    double sum = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
        const double cf = std::max(cv[q], 1e-10);
        double flux[3];
        double ndotf = 0.0;
        for (int j = 0; j < g.dim; ++j) {
            flux[j] = gcv[j][q] + sign * cv[q] * gpv[j][q];
            ndotf += nc[j][q] * flux[j];
        }
        for (int j = 0; j < g.dim; ++j) {
            const double mob = flux[j] + eps * nc[j][q] * ndotf;
            sum += mob * (gcv[j][q] / cf + sign * gpv[j][q]);
        }
    }
    return sum / static_cast<double>(m) * g.volume();
}

} // namespace nemec
