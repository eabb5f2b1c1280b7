#pragma once

// Discrete Fourier lattice for the periodic square [0, L)^2.
//
// Conventions used throughout:
//   * index (ix, iy) in [0, n)^2 maps to the signed integer frequency
//     f(i) = i for i < n/2, i - n otherwise (FFT storage order);
//   * physical wavenumber k = (2*pi/L) * f;
//   * odd-derivative multipliers (gradient, curl, perp-gradient) drop the
//     Nyquist frequency so real fields stay real;
//   * the dealias mask keeps |fx| <= n/3 and |fy| <= n/3 (2/3 rule).

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace mhda {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

class SpectralGrid {
public:
    explicit SpectralGrid(int n, double length = kTwoPi)
        : n_(n), length_(length)
    {
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("SpectralGrid: n must be even and >= 8");
        if (!(length > 0.0))
            throw std::invalid_argument("SpectralGrid: length must be > 0");

        const double scale = kTwoPi / length_;
        freq_.resize(n_);
        kphys_.resize(n_);
        kderiv_.resize(n_);
        for (int i = 0; i < n_; ++i) {
            freq_[i] = (i < n_ / 2) ? i : i - n_;
            kphys_[i] = scale * freq_[i];
            kderiv_[i] = (i == n_ / 2) ? 0.0 : kphys_[i];
        }

        k2_.resize(size());
        mask_.resize(size());
        for (int ix = 0; ix < n_; ++ix) {
            for (int iy = 0; iy < n_; ++iy) {
                const std::size_t m = idx(ix, iy);
                k2_[m] = kphys_[ix] * kphys_[ix] + kphys_[iy] * kphys_[iy];
                mask_[m] = (3 * std::abs(freq_[ix]) <= n_ &&
                            3 * std::abs(freq_[iy]) <= n_)
                               ? 1
                               : 0;
            }
        }
    }

    int n() const { return n_; }
    double length() const { return length_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

    std::size_t idx(int ix, int iy) const {
        return static_cast<std::size_t>(ix) * n_ + iy;
    }

    // Signed integer frequency of index i.
    int freq(int i) const { return freq_[i]; }
    // Physical wavenumber (Nyquist kept, magnitude operators).
    double k1(int i) const { return kphys_[i]; }
    // Physical wavenumber with the Nyquist mode zeroed (odd derivatives).
    double kd(int i) const { return kderiv_[i]; }
    // |k|^2 at mode (ix, iy).
    double k2(std::size_t m) const { return k2_[m]; }
    double k2(int ix, int iy) const { return k2_[idx(ix, iy)]; }

    bool dealias_keep(std::size_t m) const { return mask_[m] != 0; }
    bool dealias_keep(int ix, int iy) const { return mask_[idx(ix, iy)] != 0; }

    // Storage index of the conjugate mode -k.
    std::size_t conj_idx(int ix, int iy) const {
        return idx((n_ - ix) % n_, (n_ - iy) % n_);
    }

    // Physical coordinate of grid point i along one axis.
    double x(int i) const { return length_ * i / n_; }
    double dx() const { return length_ / n_; }
    double cell_area() const { return dx() * dx(); }

    bool compatible(const SpectralGrid& other) const {
        return n_ == other.n_ && length_ == other.length_;
    }

private:
    int n_;
    double length_;
    std::vector<int> freq_;
    std::vector<double> kphys_;
    std::vector<double> kderiv_;
    std::vector<double> k2_;
    std::vector<std::uint8_t> mask_;
};

}  // namespace mhda
