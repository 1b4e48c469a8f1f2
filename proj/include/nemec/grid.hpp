#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace nemec {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Uniform periodic grid on the flat torus [0, 2*pi)^dim, dim = 2 or 3.
// Wavenumbers per axis are the integers in [-n/2, n/2).
struct Grid {
    int dim = 2;
    int n = 0; // points per axis, even, >= 8

    Grid() = default;
    Grid(int dim_, int n_) : dim(dim_), n(n_) {
        if (dim != 2 && dim != 3)
            throw std::invalid_argument("Grid: dim must be 2 or 3");
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("Grid: n must be even and >= 8");
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
        return s;
    }

    double spacing() const { return kTwoPi / n; }
    double volume() const { return std::pow(kTwoPi, dim); }

    // Integer wavenumber for axis index i (FFT storage order).
    int wavenumber(int i) const { return i < n / 2 ? i : i - n; }

    // Coordinate of axis index i.
    double coord(int i) const { return spacing() * i; }

    // Largest wavenumber magnitude kept by the 2/3 dealiasing rule.
    int dealias_cutoff() const { return n / 3; }

    bool operator==(const Grid&) const = default;
};

// Decompose a flat row-major index into per-axis indices.
inline std::array<int, 3> unflatten(const Grid& g, std::size_t idx) {
    std::array<int, 3> ix{0, 0, 0};
    if (g.dim == 2) {
        ix[1] = static_cast<int>(idx % g.n);
        ix[0] = static_cast<int>(idx / g.n);
    } else {
        ix[2] = static_cast<int>(idx % g.n);
        idx /= g.n;
        ix[1] = static_cast<int>(idx % g.n);
        ix[0] = static_cast<int>(idx / g.n);
    }
    return ix;
}

// Visit every spectral mode: f(flat_index, k) with k the integer wavevector.
template <class F>
void for_each_mode(const Grid& g, F&& f) {
    std::array<int, 3> k{0, 0, 0};
    if (g.dim == 2) {
        std::size_t idx = 0;
        for (int i0 = 0; i0 < g.n; ++i0) {
            k[0] = g.wavenumber(i0);
            for (int i1 = 0; i1 < g.n; ++i1, ++idx) {
                k[1] = g.wavenumber(i1);
                f(idx, k);
            }
        }
    } else {
        std::size_t idx = 0;
        for (int i0 = 0; i0 < g.n; ++i0) {
            k[0] = g.wavenumber(i0);
            for (int i1 = 0; i1 < g.n; ++i1) {
                k[1] = g.wavenumber(i1);
                for (int i2 = 0; i2 < g.n; ++i2, ++idx) {
                    k[2] = g.wavenumber(i2);
                    f(idx, k);
                }
            }
        }
    }
}

// Visit every grid point: f(flat_index, x) with x the physical coordinates.
template <class F>
void for_each_point(const Grid& g, F&& f) {
    const double h = g.spacing();
    std::array<double, 3> x{0.0, 0.0, 0.0};
    if (g.dim == 2) {
        std::size_t idx = 0;
        for (int i0 = 0; i0 < g.n; ++i0) {
            x[0] = h * i0;
            for (int i1 = 0; i1 < g.n; ++i1, ++idx) {
                x[1] = h * i1;
                f(idx, x);
            }
        }
    } else {
        std::size_t idx = 0;
        for (int i0 = 0; i0 < g.n; ++i0) {
            x[0] = h * i0;
            for (int i1 = 0; i1 < g.n; ++i1) {
                x[1] = h * i1;
                for (int i2 = 0; i2 < g.n; ++i2, ++idx) {
                    x[2] = h * i2;
                    f(idx, x);
                }
            }
        }
    }
}

} // namespace nemec
