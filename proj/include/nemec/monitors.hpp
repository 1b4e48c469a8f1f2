#pragma once

#include <cstdio>
#include <string>

#include "nemec/electrostatics.hpp"
#include "nemec/energy.hpp"
#include "nemec/field.hpp"
#include "nemec/ops.hpp"

namespace nemec {

// Column order is part of the external contract; check offline re-verifiers
// before touching it.
inline constexpr const char* kDiagnosticsHeader =
    "step,time,E,kinetic,elastic,potential,entropy_p,entropy_m,electric,dissipation,"
    "budget_residual,mass_p,mass_m,min_cp,max_cp,min_cm,max_cm,phi_inf,grad_phi_p,"
    "lap_n_2,sup_n,v_2,grad_v_2,poisson_iters,poisson_residual";

struct MonitorRow {
    long step = 0;
    double time = 0.0;
    double energy = 0.0;
    double kinetic = 0.0;
    double elastic = 0.0;
    double potential = 0.0;
    double entropy_p = 0.0;
    double entropy_m = 0.0;
    double electric = 0.0;
    double dissipation = 0.0;
    double budget_residual = 0.0;
    double mass_p = 0.0;
    double mass_m = 0.0;
    double min_cp = 0.0;
    double max_cp = 0.0;
    double min_cm = 0.0;
    double max_cm = 0.0;
    double phi_inf = 0.0;
    double grad_phi_p = 0.0;
    double lap_n_2 = 0.0;
    double sup_n = 0.0;
    double v_2 = 0.0;
    double grad_v_2 = 0.0;
    int poisson_iters = 0;
    double poisson_residual = 0.0;
};

// Assemble every monitor for one state. `budget_residual` and `dissipation`
// are supplied by the caller (they involve the previous state / coefficient
// set); `p` is the exponent of the grad-Phi norm column.
inline MonitorRow monitor_row(const State& s, long step, const EnergyReport& er,
                              double dissipation, double budget_residual, double p,
                              const PoissonSolveReport& rep) {
    MonitorRow r;
    r.step = step;
    r.time = s.time;
    r.energy = er.total;
    r.kinetic = er.kinetic;
    r.elastic = er.elastic;
    r.potential = er.potential_f;
    r.entropy_p = er.entropy_p;
    r.entropy_m = er.entropy_m;
    r.electric = er.electric;
    r.dissipation = dissipation;
    r.budget_residual = budget_residual;
    r.mass_p = integrate(s.cp);
    r.mass_m = integrate(s.cm);
    r.min_cp = min_value(s.cp);
    r.max_cp = max_value(s.cp);
    r.min_cm = min_value(s.cm);
    r.max_cm = max_value(s.cm);
    r.phi_inf = sup_norm(s.phi);
    {
        VectorField gp = gradient(s.phi);
        const std::size_t m = s.grid().size();
        std::vector<std::span<const double>> gc(s.grid().dim);
        for (int j = 0; j < s.grid().dim; ++j) gc[j] = gp[j].values();
        double sum = 0.0;
        for (std::size_t q = 0; q < m; ++q) {
            double g2 = 0.0;
            for (int j = 0; j < s.grid().dim; ++j) g2 += gc[j][q] * gc[j][q];
            sum += std::pow(g2, p / 2.0);
        }
        r.grad_phi_p = std::pow(sum / static_cast<double>(m) * s.grid().volume(), 1.0 / p);
    }
    {
        double sum = 0.0;
        for (int j = 0; j < s.grid().dim; ++j) {
            const double lj = l2_norm(laplacian(s.n[j]));
            sum += lj * lj;
        }
        r.lap_n_2 = std::sqrt(sum);
    }
    r.sup_n = sup_magnitude(s.n);
    r.v_2 = l2_norm(s.v);
    r.grad_v_2 = l2_norm_gradient(s.v);
    r.poisson_iters = rep.iterations;
    r.poisson_residual = rep.final_residual;
    return r;
}

namespace detail {

inline void append_g17(std::string& out, double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out += buf;
}

} // namespace detail

inline std::string to_csv_row(const MonitorRow& r) {
    std::string out;
    out.reserve(600);
    out += std::to_string(r.step);
    out += ',';
    const double cols[] = {r.time,      r.energy,    r.kinetic,   r.elastic,
                           r.potential, r.entropy_p, r.entropy_m, r.electric,
                           r.dissipation, r.budget_residual, r.mass_p, r.mass_m,
                           r.min_cp,    r.max_cp,    r.min_cm,    r.max_cm,
                           r.phi_inf,   r.grad_phi_p, r.lap_n_2,  r.sup_n,
                           r.v_2,       r.grad_v_2};
    for (double c : cols) {
        detail::append_g17(out, c);
        out += ',';
    }
    out += std::to_string(r.poisson_iters);
    out += ',';
    detail::append_g17(out, r.poisson_residual);
    return out;
}

} // namespace nemec
