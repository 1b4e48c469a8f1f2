#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "nemec/fft.hpp"
#include "nemec/grid.hpp"

namespace nemec {

enum class Rep { physical, spectral };

// Real scalar field on the torus holding a physical (grid values) and a
// spectral (Fourier coefficient) representation, converted lazily.
class ScalarField {
  public:
    ScalarField() = default;

    explicit ScalarField(Grid g)
        : grid_(g), phys_(g.size(), 0.0), rep_(Rep::physical) {}

    static ScalarField from_physical(Grid g, std::vector<double> values) {
        if (values.size() != g.size())
            throw std::invalid_argument("ScalarField: value count does not match grid");
        ScalarField f;
        f.grid_ = g;
        f.phys_ = std::move(values);
        f.rep_ = Rep::physical;
        return f;
    }

    static ScalarField from_spectral(Grid g, std::vector<std::complex<double>> coeffs) {
        if (coeffs.size() != g.size())
            throw std::invalid_argument("ScalarField: coefficient count does not match grid");
        ScalarField f;
        f.grid_ = g;
        f.spec_ = std::move(coeffs);
        f.rep_ = Rep::spectral;
        return f;
    }

    const Grid& grid() const { return grid_; }
    Rep rep() const { return rep_; }

    // Spans alias the field's storage; calls on temporaries are disabled so
    // the span cannot outlive it.
    std::span<const double> values() const& {
        ensure_physical();
        return phys_;
    }
    std::span<const double> values() const&& = delete;

    // Mutable physical access; drops the spectral representation.
    std::span<double> values_mut() & {
        ensure_physical();
        rep_ = Rep::physical;
        spec_.clear();
        return phys_;
    }
    std::span<double> values_mut() && = delete;

    std::span<const std::complex<double>> coeffs() const& {
        ensure_spectral();
        return spec_;
    }
    std::span<const std::complex<double>> coeffs() const&& = delete;

    // Mutable spectral access; drops the physical representation.
    std::span<std::complex<double>> coeffs_mut() & {
        ensure_spectral();
        rep_ = Rep::spectral;
        phys_.clear();
        return spec_;
    }
    std::span<std::complex<double>> coeffs_mut() && = delete;

  private:
    void ensure_physical() const {
        if (rep_ == Rep::spectral && phys_.empty())
            FourierTransformer::get(grid_).backward(spec_, phys_);
    }
    void ensure_spectral() const {
        if (rep_ == Rep::physical && spec_.empty())
            FourierTransformer::get(grid_).forward(phys_, spec_);
    }

    Grid grid_;
    mutable std::vector<double> phys_;
    mutable std::vector<std::complex<double>> spec_;
    Rep rep_ = Rep::physical;
};

// dim scalar components.
class VectorField {
  public:
    VectorField() = default;
    explicit VectorField(Grid g) : grid_(g), comp_(g.dim, ScalarField(g)) {}

    const Grid& grid() const { return grid_; }
    int dim() const { return grid_.dim; }

    ScalarField& operator[](int i) { return comp_[i]; }
    const ScalarField& operator[](int i) const { return comp_[i]; }

  private:
    Grid grid_;
    std::vector<ScalarField> comp_;
};

// dim x dim scalar entries, row-major.
class TensorField {
  public:
    TensorField() = default;
    explicit TensorField(Grid g)
        : grid_(g), entry_(static_cast<std::size_t>(g.dim) * g.dim, ScalarField(g)) {}

    const Grid& grid() const { return grid_; }
    int dim() const { return grid_.dim; }

    ScalarField& operator()(int i, int j) { return entry_[i * grid_.dim + j]; }
    const ScalarField& operator()(int i, int j) const { return entry_[i * grid_.dim + j]; }

  private:
    Grid grid_;
    std::vector<ScalarField> entry_;
};

// The simulated quintuple plus time. phi is the potential solved for the
// current (n, c_p, c_m); code that evolves the state must refresh it.
struct State {
    ScalarField cp;
    ScalarField cm;
    ScalarField phi;
    VectorField v;
    VectorField n;
    double time = 0.0;

    State() = default;
    explicit State(Grid g) : cp(g), cm(g), phi(g), v(g), n(g) {}

    const Grid& grid() const { return cp.grid(); }
};

} // namespace nemec
