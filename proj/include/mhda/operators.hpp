#pragma once

// Linear operators of the model, each a diagonal multiplier in wavenumber
// space, plus the dealiased pseudo-spectral product. All functions are pure.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "field.hpp"

namespace mhda {

// Lambda^s with multiplier |k|^s; the k = 0 mode maps to 0 for s > 0 and is
// untouched for s = 0.
inline ScalarField fractional_laplacian(const ScalarField& f, double s)
{
    if (s < 0.0)
        throw std::invalid_argument("fractional_laplacian: s must be >= 0");
    if (s == 0.0) return f;
    const SpectralGrid& g = *f.grid;
    ScalarField r(g);
    const double half_s = 0.5 * s;
    for (std::size_t m = 0; m < r.c.size(); ++m)
        r.c[m] = f.c[m] * std::pow(g.k2(m), half_s);
    return r;
}

inline VectorField fractional_laplacian(const VectorField& f, double s)
{
    VectorField r;
    r.x = fractional_laplacian(f.x, s);
    r.y = fractional_laplacian(f.y, s);
    return r;
}

// u with (1 + alpha^2 |k|^2) u^ = v^.
inline VectorField helmholtz_filter_invert(const VectorField& v, double alpha)
{
    if (!(alpha > 0.0))
        throw std::invalid_argument("helmholtz_filter_invert: alpha must be > 0");
    const SpectralGrid& g = *v.grid();
    VectorField u(g);
    const double a2 = alpha * alpha;
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double den = 1.0 + a2 * g.k2(m);
        u.x.c[m] = v.x.c[m] / den;
        u.y.c[m] = v.y.c[m] / den;
    }
    return u;
}

// The forward filter v = (1 - alpha^2 Laplacian) u.
inline VectorField helmholtz_filter_apply(const VectorField& u, double alpha)
{
    if (!(alpha > 0.0))
        throw std::invalid_argument("helmholtz_filter_apply: alpha must be > 0");
    const SpectralGrid& g = *u.grid();
    VectorField v(g);
    const double a2 = alpha * alpha;
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double mul = 1.0 + a2 * g.k2(m);
        v.x.c[m] = u.x.c[m] * mul;
        v.y.c[m] = u.y.c[m] * mul;
    }
    return v;
}

inline VectorField gradient(const ScalarField& f)
{
    const SpectralGrid& g = *f.grid;
    VectorField r(g);
    const Complex I(0.0, 1.0);
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy) {
            const std::size_t m = g.idx(ix, iy);
            r.x.c[m] = I * g.kd(ix) * f.c[m];
            r.y.c[m] = I * g.kd(iy) * f.c[m];
        }
    return r;
}

// grad-perp = (d/dy, -d/dx); divergence-free by construction.
inline VectorField perp_gradient(const ScalarField& f)
{
    const SpectralGrid& g = *f.grid;
    VectorField r(g);
    const Complex I(0.0, 1.0);
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy) {
            const std::size_t m = g.idx(ix, iy);
            r.x.c[m] = I * g.kd(iy) * f.c[m];
            r.y.c[m] = -I * g.kd(ix) * f.c[m];
        }
    return r;
}

inline ScalarField curl(const VectorField& f)
{
    const SpectralGrid& g = *f.grid();
    ScalarField r(g);
    const Complex I(0.0, 1.0);
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy) {
            const std::size_t m = g.idx(ix, iy);
            r.c[m] = I * g.kd(ix) * f.y.c[m] - I * g.kd(iy) * f.x.c[m];
        }
    return r;
}

inline ScalarField divergence(const VectorField& f)
{
    const SpectralGrid& g = *f.grid();
    ScalarField r(g);
    const Complex I(0.0, 1.0);
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy) {
            const std::size_t m = g.idx(ix, iy);
            r.c[m] = I * g.kd(ix) * f.x.c[m] + I * g.kd(iy) * f.y.c[m];
        }
    return r;
}

// Biot-Savart inversion v = grad-perp Lambda^{-2} w. The torus admits no
// single-valued streamfunction for nonzero mean vorticity, so that is
// rejected.
inline VectorField velocity_from_vorticity(const ScalarField& w)
{
    const SpectralGrid& g = *w.grid;
    if (std::abs(w.mean()) > 1e-12 * (1.0 + max_abs_coeff(w)))
        throw std::invalid_argument(
            "velocity_from_vorticity: vorticity must have zero mean");
    VectorField v(g);
    const Complex I(0.0, 1.0);
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy) {
            const std::size_t m = g.idx(ix, iy);
            const double k2 = g.k2(m);
            if (k2 == 0.0) {
                v.x.c[m] = v.y.c[m] = Complex(0.0);
                continue;
            }
            const Complex psi = w.c[m] / k2;
            v.x.c[m] = I * g.kd(iy) * psi;
            v.y.c[m] = -I * g.kd(ix) * psi;
        }
    return v;
}

// b = grad-perp a; the current density is j = curl b = -Laplacian a.
inline VectorField b_from_potential(const ScalarField& a)
{
    return perp_gradient(a);
}

inline ScalarField current_from_potential(const ScalarField& a)
{
    const SpectralGrid& g = *a.grid;
    ScalarField j(g);
    for (std::size_t m = 0; m < j.c.size(); ++m)
        j.c[m] = a.c[m] * g.k2(m);
    return j;
}

// f minus its gradient part: f^ - k (k.f^)/|k|^2, k = 0 passed through.
inline VectorField leray_project(const VectorField& f)
{
    const SpectralGrid& g = *f.grid();
    VectorField r(g);
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy) {
            const std::size_t m = g.idx(ix, iy);
            const double k2 = g.k2(m);
            if (k2 == 0.0) {
                r.x.c[m] = f.x.c[m];
                r.y.c[m] = f.y.c[m];
                continue;
            }
            const double kx = g.k1(ix), ky = g.k1(iy);
            const Complex kdotf = (kx * f.x.c[m] + ky * f.y.c[m]) / k2;
            r.x.c[m] = f.x.c[m] - kx * kdotf;
            r.y.c[m] = f.y.c[m] - ky * kdotf;
        }
    return r;
}

inline ScalarField dealias(const ScalarField& f)
{
    ScalarField r = f;
    for (std::size_t m = 0; m < r.c.size(); ++m)
        if (!f.grid->dealias_keep(m)) r.c[m] = Complex(0.0);
    return r;
}

inline void dealias_inplace(ScalarField& f)
{
    for (std::size_t m = 0; m < f.c.size(); ++m)
        if (!f.grid->dealias_keep(m)) f.c[m] = Complex(0.0);
}

// Pointwise product evaluated on the collocation grid, masked afterwards.
inline ScalarField nonlinear_product(const ScalarField& f, const ScalarField& g)
{
    require_same_grid(f, g, "nonlinear_product");
    const std::vector<double> fp = to_physical(f);
    const std::vector<double> gp = to_physical(g);
    std::vector<double> prod(fp.size());
    for (std::size_t m = 0; m < prod.size(); ++m) prod[m] = fp[m] * gp[m];
    ScalarField r = from_physical(*f.grid, prod);
    dealias_inplace(r);
    return r;
}

}  // namespace mhda
