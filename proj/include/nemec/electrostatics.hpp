#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "nemec/errors.hpp"
#include "nemec/field.hpp"
#include "nemec/ops.hpp"

namespace nemec {

struct DielectricParams {
    double epsilon_a = 0.0;   // anisotropy coefficient (>= 0)
    double n_sup_bound = 1.1; // admissible sup|n|, 1 + 10*lambda in a run

    void validate() const {
        if (epsilon_a < 0.0)
            throw std::invalid_argument("DielectricParams: epsilon_a must be >= 0");
    }
};

struct PoissonSolveReport {
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
};

namespace detail {

inline void check_director_bound(const VectorField& n, double bound, const char* where) {
    const double s = sup_magnitude(n);
    if (s > bound)
        throw DirectorOutOfRange(std::string(where) + ": sup|n| = " + std::to_string(s)
                                 + " exceeds bound " + std::to_string(bound));
}

// Zero-mean, Nyquist-free Galerkin subspace of the potential solve. The
// derivative operators zero Nyquist modes, so the anisotropic operator is
// only definite on this subspace; rhs and iterates are kept inside it.
inline void project_resolved_zero_mean(ScalarField& f) {
    const Grid& g = f.grid();
    auto fh = f.coeffs_mut();
    fh[0] = {0.0, 0.0};
    for_each_mode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
        for (int j = 0; j < g.dim; ++j) {
            if (k[j] == -g.n / 2) {
                fh[idx] = {0.0, 0.0};
                return;
            }
        }
    });
}

} // namespace detail

// Pointwise Id + eps n(x) (x) n(x); symmetric, eigenvalues in [1, 1+eps|n|^2].
inline TensorField dielectric_tensor(const VectorField& n, const DielectricParams& par) {
    par.validate();
    detail::check_director_bound(n, par.n_sup_bound, "dielectric_tensor");
    const Grid& g = n.grid();
    const std::size_t m = g.size();
    std::vector<std::span<const double>> nc(g.dim);
    for (int j = 0; j < g.dim; ++j) nc[j] = n[j].values();
    TensorField t(g);
    for (int i = 0; i < g.dim; ++i) {
        for (int j = 0; j < g.dim; ++j) {
            std::vector<double> e(m);
            const double id = (i == j) ? 1.0 : 0.0;
            for (std::size_t q = 0; q < m; ++q)
                e[q] = id + par.epsilon_a * nc[i][q] * nc[j][q];
            t(i, j) = ScalarField::from_physical(g, std::move(e));
        }
    }
    return t;
}

// Matrix-free application of A f = -div((Id + eps n x n) grad f); the
// collocation operator tested by the symmetry/coercivity invariants.
inline ScalarField apply_dielectric_operator(const ScalarField& f, const VectorField& n,
                                             double eps) {
    const Grid& g = f.grid();
    VectorField grad = gradient(f);
    const std::size_t m = g.size();
    std::vector<std::span<const double>> nc(g.dim);
    for (int j = 0; j < g.dim; ++j) nc[j] = n[j].values();
    VectorField flux(g);
    std::vector<std::span<const double>> gc(g.dim);
    for (int j = 0; j < g.dim; ++j) gc[j] = grad[j].values();
    for (int i = 0; i < g.dim; ++i) {
        std::vector<double> out(m);
        for (std::size_t q = 0; q < m; ++q) {
            double ndotg = 0.0;
            for (int j = 0; j < g.dim; ++j) ndotg += nc[j][q] * gc[j][q];
            out[q] = gc[i][q] + eps * nc[i][q] * ndotg;
        }
        flux[i] = ScalarField::from_physical(g, std::move(out));
    }
    ScalarField div = divergence(flux);
    for (double& x : div.values_mut()) x = -x;
    return div;
}

// Preconditioned conjugate gradient for
//     -div((Id + eps n x n) grad phi) = c_p - c_m,   integral(phi) = 0,
// with the constant-coefficient spectral preconditioner (-(1+eps/2) lap)^-1.
// The preconditioned condition number is bounded by 1+eps, so iteration
// counts are nearly eps-independent.
inline std::pair<ScalarField, PoissonSolveReport>
solve_potential(const VectorField& n, const ScalarField& cp, const ScalarField& cm,
                const DielectricParams& par, double tol = 1e-10, int max_iter = 500) {
    par.validate();
    detail::check_director_bound(n, par.n_sup_bound, "solve_potential");
    const Grid& g = n.grid();

    const double total_charge = integrate(cp) - integrate(cm);
    const double scale = std::max(1.0, integrate(cp) + integrate(cm));
    if (std::abs(total_charge) > 1e-10 * scale)
        throw NonNeutralCharge("solve_potential: |integral(c_p - c_m)| = "
                               + std::to_string(std::abs(total_charge))
                               + " violates charge neutrality");

    ScalarField rhs = add(cp, cm, 1.0, -1.0);
    detail::project_resolved_zero_mean(rhs);

    const double eps = par.epsilon_a;
    const double pc = 1.0 + eps / 2.0;

    auto apply_A = [&](const ScalarField& f) {
        ScalarField out = apply_dielectric_operator(f, n, eps);
        detail::project_resolved_zero_mean(out);
        return out;
    };
    auto apply_prec = [&](const ScalarField& r) {
        auto rh = r.coeffs();
        std::vector<std::complex<double>> zh(g.size(), {0.0, 0.0});
        for_each_mode(g, [&](std::size_t idx, const std::array<int, 3>& k) {
            double k2 = 0.0;
            bool nyq = false;
            for (int j = 0; j < g.dim; ++j) {
                if (k[j] == -g.n / 2) nyq = true;
                k2 += double(k[j]) * k[j];
            }
            if (k2 == 0.0 || nyq) return;
            zh[idx] = rh[idx] / (pc * k2);
        });
        return ScalarField::from_spectral(g, std::move(zh));
    };
    auto dot = [](const ScalarField& a, const ScalarField& b) {
        auto va = a.values();
        auto vb = b.values();
        double s = 0.0;
        for (std::size_t i = 0; i < va.size(); ++i) s += va[i] * vb[i];
        return s;
    };
    const double cell = g.volume() / static_cast<double>(g.size());
    auto l2 = [&](const ScalarField& a) { return std::sqrt(std::max(0.0, dot(a, a) * cell)); };

    ScalarField phi(g);
    ScalarField r = rhs;
    PoissonSolveReport rep;
    rep.final_residual = l2(r);
    if (rep.final_residual <= tol) {
        rep.converged = true;
        return {std::move(phi), rep};
    }

    ScalarField z = apply_prec(r);
    ScalarField p = z;
    double rz = dot(r, z);
    for (int it = 1; it <= max_iter; ++it) {
        ScalarField Ap = apply_A(p);
        const double pAp = dot(p, Ap);
        const double alpha = rz / pAp;
        {
            auto pv = p.values();
            auto av = Ap.values();
            auto xv = phi.values_mut();
            auto rv = r.values_mut();
            for (std::size_t i = 0; i < xv.size(); ++i) {
                xv[i] += alpha * pv[i];
                rv[i] -= alpha * av[i];
            }
        }
        rep.iterations = it;
        rep.final_residual = l2(r);
        if (rep.final_residual <= tol) {
            rep.converged = true;
            break;
        }
        z = apply_prec(r);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        {
            auto zv = z.values();
            auto pv = p.values_mut();
            for (std::size_t i = 0; i < pv.size(); ++i) pv[i] = zv[i] + beta * pv[i];
        }
        rz = rz_new;
    }
    if (!rep.converged)
        throw NoConvergence("solve_potential: PCG hit the iteration cap", rep.iterations,
                            rep.final_residual);
    detail::project_resolved_zero_mean(phi);
    return {std::move(phi), rep};
}

// Maxwell stress (grad Phi x grad Phi)(Id + eps n x n), dealiased.
inline TensorField electric_stress(const ScalarField& phi, const VectorField& n, double eps) {
    const Grid& g = phi.grid();
    VectorField gp = gradient(phi);
    const std::size_t m = g.size();
    std::vector<std::span<const double>> gc(g.dim), nc(g.dim);
    for (int j = 0; j < g.dim; ++j) {
        gc[j] = gp[j].values();
        nc[j] = n[j].values();
    }
    TensorField t(g);
    for (int i = 0; i < g.dim; ++i) {
        for (int j = 0; j < g.dim; ++j) {
            std::vector<double> e(m);
            for (std::size_t q = 0; q < m; ++q) {
                double gdotn = 0.0;
                for (int a = 0; a < g.dim; ++a) gdotn += gc[a][q] * nc[a][q];
                e[q] = gc[i][q] * gc[j][q] + eps * gc[i][q] * gdotn * nc[j][q];
            }
            t(i, j) = ScalarField::from_physical(g, std::move(e));
        }
    }
    dealias(t);
    return t;
}

// Electric torque eps (grad Phi . n) grad Phi = eps (grad Phi x grad Phi) n,
// dealiased.
inline VectorField electric_torque(const ScalarField& phi, const VectorField& n, double eps) {
    const Grid& g = phi.grid();
    VectorField gp = gradient(phi);
    const std::size_t m = g.size();
    std::vector<std::span<const double>> gc(g.dim), nc(g.dim);
    for (int j = 0; j < g.dim; ++j) {
        gc[j] = gp[j].values();
        nc[j] = n[j].values();
    }
    VectorField out(g);
    for (int i = 0; i < g.dim; ++i) {
        std::vector<double> e(m);
        for (std::size_t q = 0; q < m; ++q) {
            double gdotn = 0.0;
            for (int a = 0; a < g.dim; ++a) gdotn += gc[a][q] * nc[a][q];
            e[q] = eps * gdotn * gc[i][q];
        }
        out[i] = ScalarField::from_physical(g, std::move(e));
    }
    dealias(out);
    return out;
}

} // namespace nemec
