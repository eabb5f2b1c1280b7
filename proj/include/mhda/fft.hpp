#pragma once

// FFTW-backed complex-to-complex 2D transforms.
//
// The forward transform divides by n^2 so spectral coefficients are true
// mode amplitudes: f(x) = sum_k c_k exp(i k.x), and cos(x) carries 1/2 at
// (+-1, 0). Plans use FFTW_ESTIMATE (deterministic algorithm choice) and
// are cached per thread and per size; plan construction and destruction
// hold a global mutex because the FFTW planner is not thread-safe.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace mhda {
namespace detail {

inline std::mutex& fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

class FftPlan {
public:
    explicit FftPlan(int n) : n_(n)
    {
        const std::size_t sz = static_cast<std::size_t>(n) * n;
        buf_ = fftw_alloc_complex(sz);
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fwd_ = fftw_plan_dft_2d(n, n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft_2d(n, n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~FftPlan()
    {
        {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            fftw_destroy_plan(fwd_);
            fftw_destroy_plan(bwd_);
        }
        fftw_free(buf_);
    }

    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    // Real physical samples -> mode amplitudes (scaled by 1/n^2).
    void forward(const double* phys, std::complex<double>* coeff)
    {
        const std::size_t sz = static_cast<std::size_t>(n_) * n_;
        for (std::size_t m = 0; m < sz; ++m) {
            buf_[m][0] = phys[m];
            buf_[m][1] = 0.0;
        }
        fftw_execute(fwd_);
        const double inv = 1.0 / static_cast<double>(sz);
        for (std::size_t m = 0; m < sz; ++m)
            coeff[m] = std::complex<double>(buf_[m][0] * inv, buf_[m][1] * inv);
    }

    // Mode amplitudes -> real physical samples (imaginary part discarded).
    void backward(const std::complex<double>* coeff, double* phys)
    {
        const std::size_t sz = static_cast<std::size_t>(n_) * n_;
        for (std::size_t m = 0; m < sz; ++m) {
            buf_[m][0] = coeff[m].real();
            buf_[m][1] = coeff[m].imag();
        }
        fftw_execute(bwd_);
        for (std::size_t m = 0; m < sz; ++m)
            phys[m] = buf_[m][0];
    }

private:
    int n_;
    fftw_complex* buf_;
    fftw_plan fwd_;
    fftw_plan bwd_;
};

inline FftPlan& fft_plan_for(int n)
{
    thread_local std::map<int, std::unique_ptr<FftPlan>> cache;
    auto& slot = cache[n];
    if (!slot)
        slot = std::make_unique<FftPlan>(n);
    return *slot;
}

}  // namespace detail
}  // namespace mhda
