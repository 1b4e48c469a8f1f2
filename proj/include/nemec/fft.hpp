#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "nemec/grid.hpp"

namespace nemec {

// Complex-to-complex FFT plans for one grid. Plans are created once
// (FFTW_ESTIMATE: deterministic planning, no runtime measurement) and
// executed on caller-owned buffers via the new-array interface, which is
// safe to call concurrently on a const plan.
class FourierTransformer {
  public:
    explicit FourierTransformer(Grid g) : grid_(g) {
        std::vector<std::complex<double>> dummy(g.size());
        int dims[3] = {g.n, g.n, g.n};
        auto* p = reinterpret_cast<fftw_complex*>(dummy.data());
        forward_ = fftw_plan_dft(g.dim, dims, p, p, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
        backward_ = fftw_plan_dft(g.dim, dims, p, p, FFTW_BACKWARD,
                                  FFTW_ESTIMATE | FFTW_UNALIGNED);
    }

    ~FourierTransformer() {
        fftw_destroy_plan(forward_);
        fftw_destroy_plan(backward_);
    }

    FourierTransformer(const FourierTransformer&) = delete;
    FourierTransformer& operator=(const FourierTransformer&) = delete;

    const Grid& grid() const { return grid_; }

    // Physical values -> Fourier coefficients f_hat(k), normalized so that
    // f(x) = sum_k f_hat(k) exp(i k.x).
    void forward(const std::vector<double>& phys,
                 std::vector<std::complex<double>>& spec) const {
        const std::size_t m = grid_.size();
        spec.resize(m);
        for (std::size_t i = 0; i < m; ++i) spec[i] = phys[i];
        auto* p = reinterpret_cast<fftw_complex*>(spec.data());
        fftw_execute_dft(forward_, p, p);
        const double scale = 1.0 / static_cast<double>(m);
        for (std::size_t i = 0; i < m; ++i) spec[i] *= scale;
    }

    // Fourier coefficients -> physical values (real part; the imaginary part
    // of a Hermitian-symmetric spectrum is roundoff).
    void backward(const std::vector<std::complex<double>>& spec,
                  std::vector<double>& phys) const {
        const std::size_t m = grid_.size();
        static thread_local std::vector<std::complex<double>> work;
        work.resize(m);
        std::copy(spec.begin(), spec.end(), work.begin());
        auto* p = reinterpret_cast<fftw_complex*>(work.data());
        fftw_execute_dft(backward_, p, p);
        phys.resize(m);
        for (std::size_t i = 0; i < m; ++i) phys[i] = work[i].real();
    }

    // Shared transformer per grid. Plan creation is serialized (the FFTW
    // planner is not thread-safe); execution is re-entrant.
    static const FourierTransformer& get(const Grid& g) {
        static std::mutex mtx;
        static std::map<std::pair<int, int>, std::unique_ptr<FourierTransformer>> cache;
        std::lock_guard<std::mutex> lock(mtx);
        auto key = std::make_pair(g.dim, g.n);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::make_unique<FourierTransformer>(g)).first;
        return *it->second;
    }

  private:
    Grid grid_;
    fftw_plan forward_;
    fftw_plan backward_;
};

} // namespace nemec
