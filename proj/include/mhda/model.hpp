#pragma once

// Right-hand sides of the filtered MHD system in its two equivalent forms.
//
// Evolved variables are the vorticity w = curl v and the magnetic potential
// a with b = grad-perp a, so both divergence constraints hold by
// construction:
//
//   dw/dt = -(u.grad) w - nu Lambda^{2 r1} w + (b.grad) j,
//   da/dt = -(u.grad) a - eta Lambda^{2 r2} a,
//
// with v = grad-perp Lambda^{-2} w, u = (1 + alpha^2 Lambda^2)^{-1} v and
// j = -Laplacian a. The primitive-variable form (velocity and magnetic
// field, pressure removed by Leray projection) is kept as a cross-check
// oracle and is never time-stepped.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "operators.hpp"

namespace mhda {

struct PhysicalParams {
    double nu = 1.0;
    double eta = 1.0;
    double alpha = 1.0;
    double r1 = 0.5;
    double r2 = 0.5;

    void validate() const
    {
        if (nu < 0.0) throw std::invalid_argument("params: nu must be >= 0");
        if (eta < 0.0) throw std::invalid_argument("params: eta must be >= 0");
        if (!(alpha > 0.0)) throw std::invalid_argument("params: alpha must be > 0");
        if (r1 < 0.0 || r1 > 1.0)
            throw std::invalid_argument("params: r1 outside [0, 1]");
        if (r2 < 0.0 || r2 > 1.0)
            throw std::invalid_argument("params: r2 outside [0, 1]");
    }

    bool critical_line() const { return std::abs(r1 + r2 - 1.0) < 1e-12; }
};

struct MhdAlphaState {
    double t = 0.0;
    ScalarField w;
    ScalarField a;

    MhdAlphaState() = default;
    explicit MhdAlphaState(const SpectralGrid& g) : w(g), a(g) {}

    const SpectralGrid& grid() const { return *w.grid; }
};

struct DerivedFields {
    VectorField v;  // unfiltered velocity
    VectorField u;  // filtered velocity
    VectorField b;  // magnetic field
    ScalarField j;  // current density
};

inline DerivedFields derived_fields(const MhdAlphaState& s,
                                    const PhysicalParams& p)
{
    DerivedFields d;
    d.v = velocity_from_vorticity(s.w);
    d.u = helmholtz_filter_invert(d.v, p.alpha);
    d.b = b_from_potential(s.a);
    d.j = current_from_potential(s.a);
    return d;
}

struct StateDeriv {
    ScalarField dw;
    ScalarField da;
};

namespace detail {

// Physical samples of the two spectral derivative components of f.
inline void grad_physical(const ScalarField& f, std::vector<double>& gx,
                          std::vector<double>& gy)
{
    const SpectralGrid& g = *f.grid;
    ScalarField dfx(g), dfy(g);
    const Complex I(0.0, 1.0);
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy) {
            const std::size_t m = g.idx(ix, iy);
            dfx.c[m] = I * g.kd(ix) * f.c[m];
            dfy.c[m] = I * g.kd(iy) * f.c[m];
        }
    gx = to_physical(dfx);
    gy = to_physical(dfy);
}

// (cx.grad f + cy.grad f) as a masked, zero-mean spectral field.
inline ScalarField advect(const SpectralGrid& g, const std::vector<double>& cx,
                          const std::vector<double>& cy, const ScalarField& f)
{
    std::vector<double> fx, fy;
    grad_physical(f, fx, fy);
    std::vector<double> prod(g.size());
    for (std::size_t m = 0; m < prod.size(); ++m)
        prod[m] = cx[m] * fx[m] + cy[m] * fy[m];
    ScalarField r = from_physical(g, prod);
    dealias_inplace(r);
    r.zero_mean();
    return r;
}

}  // namespace detail

// Nonlinear part of the evolved system: dw = -(u.grad)w + (b.grad)j,
// da = -(u.grad)a. Dissipation is handled separately so the integrator
// can apply it exactly.
inline StateDeriv rhs_nonlinear(const MhdAlphaState& s, const PhysicalParams& p)
{
    const SpectralGrid& g = s.grid();
    const VectorField v = velocity_from_vorticity(s.w);
    const VectorField u = helmholtz_filter_invert(v, p.alpha);
    const VectorField b = b_from_potential(s.a);
    const ScalarField j = current_from_potential(s.a);

    const std::vector<double> ux = to_physical(u.x);
    const std::vector<double> uy = to_physical(u.y);
    const std::vector<double> bx = to_physical(b.x);
    const std::vector<double> by = to_physical(b.y);

    StateDeriv d;
    d.dw = detail::advect(g, ux, uy, s.w);       // (u.grad) w
    ScalarField lorentz = detail::advect(g, bx, by, j);
    for (std::size_t m = 0; m < d.dw.c.size(); ++m)
        d.dw.c[m] = -d.dw.c[m] + lorentz.c[m];

    d.da = detail::advect(g, ux, uy, s.a);       // (u.grad) a
    for (std::size_t m = 0; m < d.da.c.size(); ++m) d.da.c[m] = -d.da.c[m];

    d.dw.zero_mean();
    d.da.zero_mean();
    return d;
}

// Full right-hand side of the evolved (w, a) system.
inline StateDeriv rhs_vorticity(const MhdAlphaState& s, const PhysicalParams& p)
{
    const SpectralGrid& g = s.grid();
    StateDeriv d = rhs_nonlinear(s, p);
    const double rw = p.r1, ra = p.r2;
    for (std::size_t m = 0; m < g.size(); ++m) {
        d.dw.c[m] -= p.nu * std::pow(g.k2(m), rw) * s.w.c[m];
        d.da.c[m] -= p.eta * std::pow(g.k2(m), ra) * s.a.c[m];
    }
    d.dw.zero_mean();
    d.da.zero_mean();
    return d;
}

struct PrimitiveDeriv {
    VectorField dv;
    VectorField db;
};

// Primitive-variable right-hand side, used only as an oracle:
//   dv = P[-(u.grad)v - sum_k v_k grad u_k + (b.grad)b] - nu Lambda^{2r1} v,
//   db = P[-(u.grad)b + (b.grad)u] - eta Lambda^{2r2} b,
// with P the Leray projection (the pressure gradient is annihilated).
inline PrimitiveDeriv rhs_primitive(const MhdAlphaState& s,
                                    const PhysicalParams& p)
{
    const SpectralGrid& g = s.grid();
    const VectorField v = velocity_from_vorticity(s.w);
    const VectorField u = helmholtz_filter_invert(v, p.alpha);
    const VectorField b = b_from_potential(s.a);

    const std::vector<double> ux = to_physical(u.x);
    const std::vector<double> uy = to_physical(u.y);
    const std::vector<double> vx = to_physical(v.x);
    const std::vector<double> vy = to_physical(v.y);
    const std::vector<double> bx = to_physical(b.x);
    const std::vector<double> by = to_physical(b.y);

    std::vector<double> dux_x, dux_y, duy_x, duy_y;
    detail::grad_physical(u.x, dux_x, dux_y);
    detail::grad_physical(u.y, duy_x, duy_y);

    VectorField fv(g);
    {
        // -(u.grad)v + (b.grad)b componentwise
        ScalarField advx = detail::advect(g, ux, uy, v.x);
        ScalarField advy = detail::advect(g, ux, uy, v.y);
        ScalarField lorx = detail::advect(g, bx, by, b.x);
        ScalarField lory = detail::advect(g, bx, by, b.y);
        // sum_k v_k grad u_k
        std::vector<double> sx(g.size()), sy(g.size());
        for (std::size_t m = 0; m < g.size(); ++m) {
            sx[m] = vx[m] * dux_x[m] + vy[m] * duy_x[m];
            sy[m] = vx[m] * dux_y[m] + vy[m] * duy_y[m];
        }
        ScalarField vgux = from_physical(g, sx);
        ScalarField vguy = from_physical(g, sy);
        dealias_inplace(vgux);
        dealias_inplace(vguy);
        for (std::size_t m = 0; m < g.size(); ++m) {
            fv.x.c[m] = -advx.c[m] - vgux.c[m] + lorx.c[m];
            fv.y.c[m] = -advy.c[m] - vguy.c[m] + lory.c[m];
        }
    }

    VectorField fb(g);
    {
        ScalarField advx = detail::advect(g, ux, uy, b.x);
        ScalarField advy = detail::advect(g, ux, uy, b.y);
        ScalarField strx = detail::advect(g, bx, by, u.x);
        ScalarField stry = detail::advect(g, bx, by, u.y);
        for (std::size_t m = 0; m < g.size(); ++m) {
            fb.x.c[m] = -advx.c[m] + strx.c[m];
            fb.y.c[m] = -advy.c[m] + stry.c[m];
        }
    }

    PrimitiveDeriv d;
    d.dv = leray_project(fv);
    d.db = leray_project(fb);
    for (std::size_t m = 0; m < g.size(); ++m) {
        const double mw = p.nu * std::pow(g.k2(m), p.r1);
        const double mb = p.eta * std::pow(g.k2(m), p.r2);
        d.dv.x.c[m] -= mw * v.x.c[m];
        d.dv.y.c[m] -= mw * v.y.c[m];
        d.db.x.c[m] -= mb * b.x.c[m];
        d.db.y.c[m] -= mb * b.y.c[m];
    }
    return d;
}

namespace detail {

inline double l2_coeff_norm(const ScalarField& f)
{
    double s = 0.0;
    for (const auto& v : f.c) s += std::norm(v);
    return std::sqrt(s);
}

inline double l2_coeff_norm(const VectorField& f)
{
    double s = 0.0;
    for (const auto& v : f.x.c) s += std::norm(v);
    for (const auto& v : f.y.c) s += std::norm(v);
    return std::sqrt(s);
}

}  // namespace detail

// Relative discrepancy between the evolved and primitive formulations on
// the same state: curl of dv against dw, and db against grad-perp da.
inline double cross_check_formulations(const MhdAlphaState& s,
                                       const PhysicalParams& p)
{
    const StateDeriv ev = rhs_vorticity(s, p);
    const PrimitiveDeriv pr = rhs_primitive(s, p);

    const ScalarField curl_dv = curl(pr.dv);
    const double num_w = detail::l2_coeff_norm(curl_dv - ev.dw);
    const double den_w = std::max(1.0, detail::l2_coeff_norm(ev.dw));

    const VectorField perp_da = perp_gradient(ev.da);
    VectorField diff_b(*s.w.grid);
    for (std::size_t m = 0; m < diff_b.x.c.size(); ++m) {
        diff_b.x.c[m] = pr.db.x.c[m] - perp_da.x.c[m];
        diff_b.y.c[m] = pr.db.y.c[m] - perp_da.y.c[m];
    }
    const double num_b = detail::l2_coeff_norm(diff_b);
    const double den_b = std::max(1.0, detail::l2_coeff_norm(perp_da));

    return std::max(num_w / den_w, num_b / den_b);
}

}  // namespace mhda
