#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace nemec {

// Singular Ginzburg-Landau potential confining the director to the unit
// ball: F(r) = (1-r)log(1-r) - F_star on r < 1, F_star = -1/e so that
// min F = F(1-1/e) = 0. Beyond r = 1-lambda the derivative is continued
// linearly (slope 1/lambda), making F' finite, C^0 and monotone on all of R
// while letting |n| overshoot 1 by O(lambda) transiently.
struct SingularPotentialParams {
    double lambda = 1e-3;
    double f_star = -1.0 / M_E;

    void validate() const {
        if (!(lambda > 0.0 && lambda <= 0.5))
            throw std::invalid_argument("SingularPotentialParams: lambda must be in (0, 0.5]");
        if (std::abs(f_star + 1.0 / M_E) > 1e-12)
            throw std::invalid_argument("SingularPotentialParams: F_star must equal -1/e");
    }
};

// F'_lambda(r), monotone nondecreasing.
inline double barrier_derivative(double r, const SingularPotentialParams& p) {
    const double edge = 1.0 - p.lambda;
    if (r <= edge) return -std::log1p(-r) - 1.0;
    return -std::log(p.lambda) - 1.0 + (r - edge) / p.lambda;
}

// F_lambda(r): the log branch with its quadratic C^1 continuation.
inline double barrier_value(double r, const SingularPotentialParams& p) {
    const double edge = 1.0 - p.lambda;
    if (r <= edge) return (1.0 - r) * std::log1p(-r) - p.f_star;
    const double base = p.lambda * std::log(p.lambda) - p.f_star;
    const double s = r - edge;
    return base + (-std::log(p.lambda) - 1.0) * s + s * s / (2.0 * p.lambda);
}

// Potential at one director sample: 0.5 F(|n|^2).
inline double potential_value(const std::array<double, 3>& n_point,
                              const SingularPotentialParams& p) {
    const double r = n_point[0] * n_point[0] + n_point[1] * n_point[1]
                   + n_point[2] * n_point[2];
    return 0.5 * barrier_value(r, p);
}

// Largest dt for which the explicit treatment of F'_lambda is stable: the
// map n -> F'(|n|^2) n has Lipschitz constant ~ 2/lambda in the continuation
// region, giving the explicit-Euler bound dt <= lambda.
inline double barrier_dt_cap(const SingularPotentialParams& p) { return p.lambda; }

} // namespace nemec
