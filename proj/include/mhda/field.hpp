#pragma once

// Spectral scalar and vector fields. Coefficients live in FFT storage
// order, index (ix, iy) -> ix*n + iy. Real-valued fields obey Hermitian
// symmetry c(-k) = conj(c(k)); helpers below measure how well a field
// honors that and the divergence-free constraint.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fft.hpp"
#include "grid.hpp"

namespace mhda {

using Complex = std::complex<double>;

struct ScalarField {
    const SpectralGrid* grid = nullptr;
    std::vector<Complex> c;

    ScalarField() = default;
    explicit ScalarField(const SpectralGrid& g) : grid(&g), c(g.size()) {}

    Complex& at(int ix, int iy) { return c[grid->idx(ix, iy)]; }
    const Complex& at(int ix, int iy) const { return c[grid->idx(ix, iy)]; }

    Complex mean() const { return c.empty() ? Complex(0.0) : c[0]; }
    void zero_mean() { if (!c.empty()) c[0] = Complex(0.0); }
};

struct VectorField {
    ScalarField x;
    ScalarField y;

    VectorField() = default;
    explicit VectorField(const SpectralGrid& g) : x(g), y(g) {}

    const SpectralGrid* grid() const { return x.grid; }
};

inline void require_same_grid(const ScalarField& f, const ScalarField& g,
                              const char* what)
{
    if (!f.grid || !g.grid || !f.grid->compatible(*g.grid))
        throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

// ---- transforms ----

inline std::vector<double> to_physical(const ScalarField& f)
{
    std::vector<double> out(f.grid->size());
    detail::fft_plan_for(f.grid->n()).backward(f.c.data(), out.data());
    return out;
}

inline ScalarField from_physical(const SpectralGrid& g,
                                 const std::vector<double>& phys)
{
    if (phys.size() != g.size())
        throw std::invalid_argument("from_physical: size mismatch");
    ScalarField f(g);
    detail::fft_plan_for(g.n()).forward(phys.data(), f.c.data());
    return f;
}

// ---- elementwise helpers ----

inline ScalarField operator+(const ScalarField& a, const ScalarField& b)
{
    require_same_grid(a, b, "operator+");
    ScalarField r(*a.grid);
    for (std::size_t m = 0; m < r.c.size(); ++m) r.c[m] = a.c[m] + b.c[m];
    return r;
}

inline ScalarField operator-(const ScalarField& a, const ScalarField& b)
{
    require_same_grid(a, b, "operator-");
    ScalarField r(*a.grid);
    for (std::size_t m = 0; m < r.c.size(); ++m) r.c[m] = a.c[m] - b.c[m];
    return r;
}

inline ScalarField operator*(double s, const ScalarField& a)
{
    ScalarField r = a;
    for (auto& v : r.c) v *= s;
    return r;
}

// ---- invariant probes ----

inline double hermitian_defect(const ScalarField& f)
{
    const SpectralGrid& g = *f.grid;
    double worst = 0.0;
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy) {
            const Complex d =
                f.c[g.conj_idx(ix, iy)] - std::conj(f.c[g.idx(ix, iy)]);
            worst = std::max(worst, std::abs(d));
        }
    return worst;
}

inline double hermitian_defect(const VectorField& f)
{
    return std::max(hermitian_defect(f.x), hermitian_defect(f.y));
}

// max_k |k . f^(k)|, zero for divergence-free fields.
inline double divergence_defect(const VectorField& f)
{
    const SpectralGrid& g = *f.grid();
    double worst = 0.0;
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy) {
            const std::size_t m = g.idx(ix, iy);
            const Complex d = g.kd(ix) * f.x.c[m] + g.kd(iy) * f.y.c[m];
            worst = std::max(worst, std::abs(d));
        }
    return worst;
}

inline bool all_finite(const ScalarField& f)
{
    for (const auto& v : f.c)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

inline double max_abs_coeff(const ScalarField& f)
{
    double worst = 0.0;
    for (const auto& v : f.c) worst = std::max(worst, std::abs(v));
    return worst;
}

}  // namespace mhda
