#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "nemec/director.hpp"
#include "nemec/electrostatics.hpp"
#include "nemec/errors.hpp"
#include "nemec/field.hpp"
#include "nemec/kinematics.hpp"
#include "nemec/leslie.hpp"
#include "nemec/ops.hpp"
#include "nemec/singular_potential.hpp"

namespace nemec {

// Finite surrogate for the weak formulation: each equation is tested against
// 12 space-time modes (4 fixed low-wavenumber spatial functions times the
// temporal factors {1, t, cos t}); residuals of the time-integrated weak
// identities are accumulated with the trapezoid rule along a trajectory of
// uniformly spaced states.
class WeakFormChecker {
  public:
    static constexpr int kSpatial = 4;
    static constexpr int kTemporal = 3;
    static constexpr int kModes = kSpatial * kTemporal;

    WeakFormChecker(Grid g, std::array<double, 6> alpha, double eps,
                    SingularPotentialParams pot)
        : grid_(g), alpha_(alpha), eps_(eps), pot_(pot) {
        build_scalar_bank();
        build_momentum_bank();
    }

    // Momentum test functions must be divergence-free.
    static void validate_momentum_test(const VectorField& z) {
        const double nz = l2_norm(z);
        if (l2_norm(divergence(z)) > 1e-10 * std::max(1.0, nz))
            throw std::invalid_argument(
                "WeakFormChecker: momentum test function is not divergence-free");
    }

    void add_state(const State& s) {
        Sample smp;
        smp.time = s.time;
        evaluate_integrands(s, smp);
        samples_.push_back(std::move(smp));
    }

    struct Table {
        std::array<double, kModes> species_p{};
        std::array<double, kModes> species_m{};
        std::array<double, kModes> potential{};
        std::array<double, kModes> momentum{};
        std::array<double, kModes> director{};
    };

    Table finalize() const {
        if (samples_.size() < 3)
            throw InsufficientTrajectory("WeakFormChecker: need at least 3 states, have "
                                         + std::to_string(samples_.size()));
        Table t;
        for (int m = 0; m < kSpatial; ++m) {
            for (int j = 0; j < kTemporal; ++j) {
                const int idx = m * kTemporal + j;
                t.species_p[idx] = residual_evolution(
                    j, [&](const Sample& s) { return s.mass_p[m]; },
                    [&](const Sample& s) { return s.spatial_p[m]; });
                t.species_m[idx] = residual_evolution(
                    j, [&](const Sample& s) { return s.mass_m[m]; },
                    [&](const Sample& s) { return s.spatial_m[m]; });
                t.potential[idx] = residual_static(
                    j, [&](const Sample& s) { return s.potential[m]; });
                t.momentum[idx] = residual_evolution(
                    j, [&](const Sample& s) { return s.mom_mass[m]; },
                    [&](const Sample& s) { return s.mom_spatial[m]; });
                t.director[idx] = residual_evolution(
                    j, [&](const Sample& s) { return s.dir_mass[m]; },
                    [&](const Sample& s) { return s.dir_spatial[m]; });
            }
        }
        return t;
    }

  private:
    struct Sample {
        double time = 0.0;
        std::array<double, kSpatial> mass_p{}, spatial_p{};
        std::array<double, kSpatial> mass_m{}, spatial_m{};
        std::array<double, kSpatial> potential{};
        std::array<double, kSpatial> mom_mass{}, mom_spatial{};
        std::array<double, kSpatial> dir_mass{}, dir_spatial{};
    };

    static double tau(int j, double t) {
        switch (j) {
            case 0: return 1.0;
            case 1: return t;
            default: return std::cos(t);
        }
    }
    static double dtau(int j, double t) {
        switch (j) {
            case 0: return 0.0;
            case 1: return 1.0;
            default: return -std::sin(t);
        }
    }

    template <class Mass, class Spatial>
    double residual_evolution(int j, Mass mass, Spatial spatial) const {
        const Sample& first = samples_.front();
        const Sample& last = samples_.back();
        double r = mass(last) * tau(j, last.time) - mass(first) * tau(j, first.time);
        r -= trapezoid([&](const Sample& s) { return mass(s) * dtau(j, s.time); });
        r += trapezoid([&](const Sample& s) { return spatial(s) * tau(j, s.time); });
        return r;
    }

    template <class Spatial>
    double residual_static(int j, Spatial spatial) const {
        return trapezoid([&](const Sample& s) { return spatial(s) * tau(j, s.time); });
    }

    template <class F>
    double trapezoid(F f) const {
        double sum = 0.0;
        for (std::size_t k = 0; k + 1 < samples_.size(); ++k) {
            const double dt = samples_[k + 1].time - samples_[k].time;
            sum += 0.5 * dt * (f(samples_[k]) + f(samples_[k + 1]));
        }
        return sum;
    }

    void build_scalar_bank() {
        auto mode = [&](int m, const std::array<double, 3>& x) {
            switch (m) {
                case 0: return std::cos(x[0]);
                case 1: return std::sin(x[1]);
                case 2: return std::cos(x[0] + x[1]);
                default: return std::sin(x[0] - x[1]);
            }
        };
        for (int m = 0; m < kSpatial; ++m) {
            std::vector<double> vals(grid_.size());
            for_each_point(grid_, [&](std::size_t idx, const std::array<double, 3>& x) {
                vals[idx] = mode(m, x);
            });
            psi_[m] = ScalarField::from_physical(grid_, std::move(vals));
            grad_psi_[m] = gradient(psi_[m]);
        }
    }

    void build_momentum_bank() {
        // divergence-free fields from stream functions (planar also in 3D)
        auto stream = [&](int m, const std::array<double, 3>& x) {
            switch (m) {
                case 0: return std::cos(x[0]);
                case 1: return std::sin(x[1]);
                case 2: return std::cos(x[0] + x[1]);
                default: return std::sin(x[0] - x[1]);
            }
        };
        for (int m = 0; m < kSpatial; ++m) {
            std::vector<double> vals(grid_.size());
            for_each_point(grid_, [&](std::size_t idx, const std::array<double, 3>& x) {
                vals[idx] = stream(m, x);
            });
            ScalarField sf = ScalarField::from_physical(grid_, std::move(vals));
            VectorField gs = gradient(sf);
            VectorField z(grid_);
            z[0] = gs[1];
            std::vector<double> neg(grid_.size());
            auto g0 = gs[0].values();
            for (std::size_t q = 0; q < grid_.size(); ++q) neg[q] = -g0[q];
            z[1] = ScalarField::from_physical(grid_, std::move(neg));
            // third component (if any) stays zero
            validate_momentum_test(z);
            zfun_[m] = z;
            for (int i = 0; i < grid_.dim; ++i) grad_z_[m].push_back(gradient(z[i]));
        }
    }

    void evaluate_integrands(const State& s, Sample& out) const {
        const Grid& g = grid_;
        const std::size_t m = g.size();
        const int dim = g.dim;
        const double cell = g.volume() / static_cast<double>(m);

        VectorField gcp = gradient(s.cp);
        VectorField gcm = gradient(s.cm);
        VectorField gphi = gradient(s.phi);
        TensorField G = velocity_gradient(s.v);
        TensorField D = strain_rate(G);
        VectorField ndot = lie_derivative(s.n, s.v, s.phi, eps_, pot_);
        TensorField sigma = leslie_stress(s.n, ndot, D, alpha_);
        TensorField maxwell = electric_stress(s.phi, s.n, eps_);
        TensorField korteweg = ericksen_stress(s.n);
        VectorField barrier = potential_gradient(s.n, pot_);
        VectorField adv_n = advect(s.n, s.v);
        auto [dn, on] = apply_strain_rotation(s.n, G);

        std::vector<std::span<const double>> nv(dim), vv(dim), gp(dim), gcpv(dim), gcmv(dim);
        for (int j = 0; j < dim; ++j) {
            nv[j] = s.n[j].values();
            vv[j] = s.v[j].values();
            gp[j] = gphi[j].values();
            gcpv[j] = gcp[j].values();
            gcmv[j] = gcm[j].values();
        }
        auto cpv = s.cp.values();
        auto cmv = s.cm.values();

        // species and potential integrals
        for (int t = 0; t < kSpatial; ++t) {
            std::array<std::span<const double>, 3> gpsi;
            for (int j = 0; j < dim; ++j) gpsi[j] = grad_psi_[t][j].values();
            auto psi = psi_[t].values();
            double mass_p = 0.0, mass_m = 0.0, sp = 0.0, sm = 0.0, potres = 0.0;
            for (std::size_t q = 0; q < m; ++q) {
                mass_p += cpv[q] * psi[q];
                mass_m += cmv[q] * psi[q];
                double vdotg = 0.0, ndotgp = 0.0;
                for (int j = 0; j < dim; ++j) {
                    vdotg += vv[j][q] * gpsi[j][q];
                    ndotgp += nv[j][q] * gp[j][q];
                }
                double fluxp = 0.0, fluxm = 0.0, phiflux = 0.0;
                double ndotfp = 0.0, ndotfm = 0.0;
                for (int j = 0; j < dim; ++j) {
                    ndotfp += nv[j][q] * (gcpv[j][q] + cpv[q] * gp[j][q]);
                    ndotfm += nv[j][q] * (gcmv[j][q] - cmv[q] * gp[j][q]);
                }
                for (int j = 0; j < dim; ++j) {
                    const double fp = gcpv[j][q] + cpv[q] * gp[j][q] + eps_ * nv[j][q] * ndotfp;
                    const double fm = gcmv[j][q] - cmv[q] * gp[j][q] + eps_ * nv[j][q] * ndotfm;
                    fluxp += fp * gpsi[j][q];
                    fluxm += fm * gpsi[j][q];
                    phiflux += (gp[j][q] + eps_ * nv[j][q] * ndotgp) * gpsi[j][q];
                }
                sp += -cpv[q] * vdotg + fluxp;
                sm += -cmv[q] * vdotg + fluxm;
                potres += phiflux - (cpv[q] - cmv[q]) * psi[q];
            }
            out.mass_p[t] = mass_p * cell;
            out.spatial_p[t] = sp * cell;
            out.mass_m[t] = mass_m * cell;
            out.spatial_m[t] = sm * cell;
            out.potential[t] = potres * cell;
        }

        // momentum integrals
        for (int t = 0; t < kSpatial; ++t) {
            std::array<std::span<const double>, 3> zc;
            for (int j = 0; j < dim; ++j) zc[j] = zfun_[t][j].values();
            double mass = 0.0, spatial = 0.0;
            for (int i = 0; i < dim; ++i) {
                auto zi = zc[i];
                auto vi = s.v[i].values();
                for (std::size_t q = 0; q < m; ++q) mass += vi[q] * zi[q];
                for (int j = 0; j < dim; ++j) {
                    auto dzij = grad_z_[t][i][j].values();
                    auto sij = sigma(i, j).values();
                    auto mij = maxwell(i, j).values();
                    auto kij = korteweg(i, j).values();
                    auto dij = D(i, j).values();
                    auto vj = s.v[j].values();
                    for (std::size_t q = 0; q < m; ++q) {
                        const double total = alpha_[3] * dij[q] + sij[q] + mij[q] - kij[q]
                                           - vi[q] * vj[q];
                        spatial += total * dzij[q];
                    }
                }
            }
            out.mom_mass[t] = mass * cell;
            out.mom_spatial[t] = spatial * cell;
        }

        // director integrals: test component cycles with the spatial mode
        for (int t = 0; t < kSpatial; ++t) {
            const int comp = t % dim;
            auto psi = psi_[t].values();
            std::array<std::span<const double>, 3> gpsi;
            for (int j = 0; j < dim; ++j) gpsi[j] = grad_psi_[t][j].values();
            auto ncv = s.n[comp].values();
            auto advv = adv_n[comp].values();
            auto onv = on[comp].values();
            auto dnv = dn[comp].values();
            auto barv = barrier[comp].values();
            VectorField gncomp = gradient(s.n[comp]);
            std::array<std::span<const double>, 3> gnc;
            for (int j = 0; j < dim; ++j) gnc[j] = gncomp[j].values();
            double mass = 0.0, spatial = 0.0;
            for (std::size_t q = 0; q < m; ++q) {
                mass += ncv[q] * psi[q];
                double ndotgp = 0.0;
                for (int j = 0; j < dim; ++j) ndotgp += nv[j][q] * gp[j][q];
                const double torque = eps_ * ndotgp * gp[comp][q];
                double elast = 0.0;
                for (int j = 0; j < dim; ++j) elast += gnc[j][q] * gpsi[j][q];
                spatial += (advv[q] - onv[q] + dnv[q] - torque + barv[q]) * psi[q] + elast;
            }
            out.dir_mass[t] = mass * cell;
            out.dir_spatial[t] = spatial * cell;
        }
    }

    Grid grid_;
    std::array<double, 6> alpha_;
    double eps_;
    SingularPotentialParams pot_;
    std::array<ScalarField, kSpatial> psi_;
    std::array<VectorField, kSpatial> grad_psi_;
    std::array<VectorField, kSpatial> zfun_;
    std::array<std::vector<VectorField>, kSpatial> grad_z_;
    std::vector<Sample> samples_;
};

// Stored-trajectory convenience wrapper.
inline WeakFormChecker::Table weak_form_residual(std::span<const State> trajectory,
                                                 const std::array<double, 6>& alpha,
                                                 double eps,
                                                 const SingularPotentialParams& pot) {
    if (trajectory.size() < 3)
        throw InsufficientTrajectory("weak_form_residual: need at least 3 states, have "
                                     + std::to_string(trajectory.size()));
    WeakFormChecker checker(trajectory.front().grid(), alpha, eps, pot);
    for (const State& s : trajectory) checker.add_state(s);
    return checker.finalize();
}

} // namespace nemec
