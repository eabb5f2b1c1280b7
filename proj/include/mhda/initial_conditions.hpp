#pragma once

// Reproducible initial states: the classical vortex/island benchmark and
// seeded band-limited random fields rescaled to prescribed H3 size.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "model.hpp"
#include "rng.hpp"

namespace mhda {

inline MhdAlphaState zero_state(const SpectralGrid& g)
{
    return MhdAlphaState(g);
}

// w = -2 A_w (cos x + cos y), a = A_a (cos 2x / 2 + cos y).
inline MhdAlphaState orszag_tang(const SpectralGrid& g, double amplitude_w = 1.0,
                                 double amplitude_a = 1.0)
{
    MhdAlphaState s(g);
    const int n = g.n();
    auto set_cos = [&](ScalarField& f, int fx, int fy, double amp) {
        const int ix = (fx + n) % n;
        const int iy = (fy + n) % n;
        f.c[g.idx(ix, iy)] += Complex(0.5 * amp, 0.0);
        f.c[g.conj_idx(ix, iy)] += Complex(0.5 * amp, 0.0);
    };
    set_cos(s.w, 1, 0, -2.0 * amplitude_w);
    set_cos(s.w, 0, 1, -2.0 * amplitude_w);
    set_cos(s.a, 2, 0, 0.5 * amplitude_a);
    set_cos(s.a, 0, 1, amplitude_a);
    return s;
}

namespace detail {

// ||Lambda^3 v||^2 from the vorticity spectrum: |v^|^2 = |w^|^2 / |k|^2.
inline double h3_of_v_sq(const ScalarField& w)
{
    const SpectralGrid& g = *w.grid;
    double sum = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double k2 = g.k2(m);
        if (k2 == 0.0) continue;
        sum += k2 * k2 * std::norm(w.c[m]);
    }
    const double L = g.length();
    return L * L * sum;
}

// ||Lambda^3 b||^2 from the potential spectrum: |b^|^2 = |k|^2 |a^|^2.
inline double h3_of_b_sq(const ScalarField& a)
{
    const SpectralGrid& g = *a.grid;
    double sum = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double k2 = g.k2(m);
        sum += k2 * k2 * k2 * k2 * std::norm(a.c[m]);
    }
    const double L = g.length();
    return L * L * sum;
}

// Hermitian-symmetric Gaussian field supported on the annulus
// k_min <= |k_int| <= k_max with amplitude |k|^slope.
inline ScalarField annulus_field(const SpectralGrid& g, const CounterRng& rng,
                                 int k_min, int k_max, double slope)
{
    ScalarField f(g);
    const int n = g.n();
    for (int ix = 0; ix < n; ++ix) {
        for (int iy = 0; iy < n; ++iy) {
            const int fx = g.freq(ix), fy = g.freq(iy);
            // fill only the half-lattice, mirror the conjugate
            if (!(fx > 0 || (fx == 0 && fy > 0))) continue;
            const double kk = std::sqrt(double(fx) * fx + double(fy) * fy);
            if (kk < double(k_min) || kk > double(k_max)) continue;
            const auto [g0, g1] = rng.gaussian_pair(mode_counter(fx, fy));
            const double amp = std::pow(kk, slope);
            const Complex z(amp * g0, amp * g1);
            f.c[g.idx(ix, iy)] = z;
            f.c[g.conj_idx(ix, iy)] = std::conj(z);
        }
    }
    return f;
}

}  // namespace detail

// Random band-limited state, deterministic in seed, with
// ||Lambda^3 v|| = target_h3_v and ||Lambda^3 b|| = target_h3_b.
inline MhdAlphaState random_band_limited(const SpectralGrid& g,
                                         std::uint64_t seed, int k_min,
                                         int k_max, double spectrum_slope,
                                         double target_h3_v,
                                         double target_h3_b)
{
    if (k_min < 1)
        throw std::invalid_argument("random_band_limited: k_min must be >= 1");
    if (k_max < k_min)
        throw std::invalid_argument("random_band_limited: empty annulus (k_max < k_min)");
    if (3 * k_max > g.n())
        throw std::invalid_argument("random_band_limited: k_max must be <= n/3");
    if (target_h3_v < 0.0 || target_h3_b < 0.0)
        throw std::invalid_argument("random_band_limited: targets must be >= 0");

    const CounterRng rng_w{splitmix64_at(seed, 1)};
    const CounterRng rng_a{splitmix64_at(seed, 2)};

    MhdAlphaState s(g);
    s.w = detail::annulus_field(g, rng_w, k_min, k_max, spectrum_slope);
    s.a = detail::annulus_field(g, rng_a, k_min, k_max, spectrum_slope);

    const double cur_v = std::sqrt(detail::h3_of_v_sq(s.w));
    const double cur_b = std::sqrt(detail::h3_of_b_sq(s.a));
    if (target_h3_v > 0.0 && cur_v == 0.0)
        throw std::runtime_error("random_band_limited: cannot rescale a zero field");
    if (target_h3_b > 0.0 && cur_b == 0.0)
        throw std::runtime_error("random_band_limited: cannot rescale a zero field");

    const double sw = (target_h3_v > 0.0) ? target_h3_v / cur_v : 0.0;
    const double sa = (target_h3_b > 0.0) ? target_h3_b / cur_b : 0.0;
    for (auto& c : s.w.c) c *= sw;
    for (auto& c : s.a.c) c *= sa;
    return s;
}

}  // namespace mhda
