#pragma once

// Time stepping. The fractional dissipation is diagonal in wavenumber
// space, so each step applies its exponential exactly (integrating factor)
// and only the advection/Lorentz terms see the Runge-Kutta stages. With the
// nonlinear terms identically zero, a step reproduces exp(-nu |k|^{2 r1} dt)
// per mode to roundoff for any dt.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "model.hpp"

namespace mhda {

enum class Scheme { Ifrk4, Ifrk3 };

struct IntegratorConfig {
    Scheme scheme = Scheme::Ifrk4;
    double cfl = 0.5;       // in (0, 1]
    double dt_max = 2.5e-4;
    double dt_min = 1e-10;  // abort threshold
    double t_end = 1.0;
    double norm_ceiling = 1e8;  // blow-up ceiling on H3 monitors
    int observe_every = 1;      // observer cadence in steps

    void validate() const
    {
        if (!(cfl > 0.0 && cfl <= 1.0))
            throw std::invalid_argument("integrator: cfl outside (0, 1]");
        if (!(dt_max > 0.0))
            throw std::invalid_argument("integrator: dt_max must be > 0");
        if (!(dt_min > 0.0))
            throw std::invalid_argument("integrator: dt_min must be > 0");
        if (!(dt_min < dt_max))
            throw std::invalid_argument("integrator: dt_min must be < dt_max");
        if (!(t_end > 0.0))
            throw std::invalid_argument("integrator: t_end must be > 0");
        if (observe_every < 1)
            throw std::invalid_argument("integrator: observe_every must be >= 1");
    }
};

namespace detail {

// exp(-c |k|^{2r} dt) per mode.
inline std::vector<double> decay_factors(const SpectralGrid& g, double c,
                                         double r, double dt)
{
    std::vector<double> e(g.size());
    if (c == 0.0) {
        for (auto& v : e) v = 1.0;
        return e;
    }
    for (std::size_t m = 0; m < g.size(); ++m)
        e[m] = std::exp(-c * std::pow(g.k2(m), r) * dt);
    return e;
}

inline void scale_add(ScalarField& out, const std::vector<double>& e,
                      const ScalarField& base, double coef,
                      const ScalarField& add)
{
    for (std::size_t m = 0; m < out.c.size(); ++m)
        out.c[m] = e[m] * (base.c[m] + coef * add.c[m]);
}

}  // namespace detail

// One integrating-factor Runge-Kutta step of size dt.
inline MhdAlphaState step(const MhdAlphaState& s, const PhysicalParams& p,
                          const IntegratorConfig& cfg, double dt)
{
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    const SpectralGrid& g = s.grid();

    const std::vector<double> e1w = detail::decay_factors(g, p.nu, p.r1, 0.5 * dt);
    const std::vector<double> e2w = detail::decay_factors(g, p.nu, p.r1, dt);
    const std::vector<double> e1a = detail::decay_factors(g, p.eta, p.r2, 0.5 * dt);
    const std::vector<double> e2a = detail::decay_factors(g, p.eta, p.r2, dt);

    MhdAlphaState out(g);
    out.t = s.t + dt;

    const StateDeriv n1 = rhs_nonlinear(s, p);

    MhdAlphaState y2(g);
    y2.t = s.t + 0.5 * dt;
    detail::scale_add(y2.w, e1w, s.w, 0.5 * dt, n1.dw);
    detail::scale_add(y2.a, e1a, s.a, 0.5 * dt, n1.da);
    const StateDeriv n2 = rhs_nonlinear(y2, p);

    if (cfg.scheme == Scheme::Ifrk4) {
        MhdAlphaState y3(g);
        y3.t = s.t + 0.5 * dt;
        for (std::size_t m = 0; m < g.size(); ++m) {
            y3.w.c[m] = e1w[m] * s.w.c[m] + 0.5 * dt * n2.dw.c[m];
            y3.a.c[m] = e1a[m] * s.a.c[m] + 0.5 * dt * n2.da.c[m];
        }
        const StateDeriv n3 = rhs_nonlinear(y3, p);

        MhdAlphaState y4(g);
        y4.t = s.t + dt;
        for (std::size_t m = 0; m < g.size(); ++m) {
            y4.w.c[m] = e2w[m] * s.w.c[m] + dt * e1w[m] * n3.dw.c[m];
            y4.a.c[m] = e2a[m] * s.a.c[m] + dt * e1a[m] * n3.da.c[m];
        }
        const StateDeriv n4 = rhs_nonlinear(y4, p);

        const double c = dt / 6.0;
        for (std::size_t m = 0; m < g.size(); ++m) {
            out.w.c[m] = e2w[m] * s.w.c[m] +
                         c * (e2w[m] * n1.dw.c[m] +
                              2.0 * e1w[m] * (n2.dw.c[m] + n3.dw.c[m]) +
                              n4.dw.c[m]);
            out.a.c[m] = e2a[m] * s.a.c[m] +
                         c * (e2a[m] * n1.da.c[m] +
                              2.0 * e1a[m] * (n2.da.c[m] + n3.da.c[m]) +
                              n4.da.c[m]);
        }
    } else {
        // Kutta's third-order scheme under the same integrating factor.
        MhdAlphaState y3(g);
        y3.t = s.t + dt;
        for (std::size_t m = 0; m < g.size(); ++m) {
            y3.w.c[m] = e2w[m] * (s.w.c[m] - dt * n1.dw.c[m]) +
                        2.0 * dt * e1w[m] * n2.dw.c[m];
            y3.a.c[m] = e2a[m] * (s.a.c[m] - dt * n1.da.c[m]) +
                        2.0 * dt * e1a[m] * n2.da.c[m];
        }
        const StateDeriv n3 = rhs_nonlinear(y3, p);

        const double c = dt / 6.0;
        for (std::size_t m = 0; m < g.size(); ++m) {
            out.w.c[m] = e2w[m] * s.w.c[m] +
                         c * (e2w[m] * n1.dw.c[m] + 4.0 * e1w[m] * n2.dw.c[m] +
                              n3.dw.c[m]);
            out.a.c[m] = e2a[m] * s.a.c[m] +
                         c * (e2a[m] * n1.da.c[m] + 4.0 * e1a[m] * n2.da.c[m] +
                              n3.da.c[m]);
        }
    }

    out.w.zero_mean();
    out.a.zero_mean();
    return out;
}

// CFL step from the pointwise speeds of both advecting fields,
// dt = clamp(cfl dx / max(|u|_inf, |b|_inf, eps), dt_min, dt_max).
inline double cfl_dt(const MhdAlphaState& s, const PhysicalParams& p,
                     const IntegratorConfig& cfg)
{
    const DerivedFields d = derived_fields(s, p);
    const double umax = std::max(linf_norm(d.u.x), linf_norm(d.u.y));
    const double bmax = std::max(linf_norm(d.b.x), linf_norm(d.b.y));
    const double speed = std::max({umax, bmax, 1e-12});
    const double dt = cfg.cfl * s.grid().dx() / speed;
    return std::clamp(dt, cfg.dt_min, cfg.dt_max);
}

enum class IntegrationStatus {
    Completed,
    AbortedNonFinite,
    AbortedDtMin,
    AbortedNormCeiling,
};

inline const char* integration_status_name(IntegrationStatus s)
{
    switch (s) {
        case IntegrationStatus::Completed: return "completed";
        case IntegrationStatus::AbortedNonFinite: return "non-finite coefficients";
        case IntegrationStatus::AbortedDtMin: return "dt underflow";
        case IntegrationStatus::AbortedNormCeiling: return "H3 norm ceiling exceeded";
    }
    return "?";
}

struct IntegrationResult {
    MhdAlphaState state;
    IntegrationStatus status = IntegrationStatus::Completed;
    long steps = 0;
};

// Observer is invoked on the initial state, every observe_every steps, and
// on the final (or last healthy) state.
using Observer = std::function<void(const MhdAlphaState&, long step_index)>;

inline IntegrationResult integrate(const MhdAlphaState& s0,
                                   const PhysicalParams& p,
                                   const IntegratorConfig& cfg,
                                   const Observer& observer = {})
{
    cfg.validate();
    p.validate();

    IntegrationResult res;
    res.state = s0;
    if (observer) observer(res.state, 0);
    if (s0.t >= cfg.t_end) return res;

    long last_observed = 0;
    while (res.state.t < cfg.t_end) {
        double dt = cfl_dt(res.state, p, cfg);
        if (dt <= cfg.dt_min) {
            res.status = IntegrationStatus::AbortedDtMin;
            break;
        }
        bool final_step = false;
        if (res.state.t + dt >= cfg.t_end) {
            dt = cfg.t_end - res.state.t;
            final_step = true;
        }

        MhdAlphaState next = step(res.state, p, cfg, dt);
        if (final_step) next.t = cfg.t_end;
        ++res.steps;

        if (!all_finite(next.w) || !all_finite(next.a)) {
            res.status = IntegrationStatus::AbortedNonFinite;
            break;
        }
        res.state = std::move(next);

        const DerivedFields d = derived_fields(res.state, p);
        const double h3v = sobolev_norm(d.v, 3.0);
        const double h3b = sobolev_norm(d.b, 3.0);
        if (h3v > cfg.norm_ceiling || h3b > cfg.norm_ceiling) {
            if (observer) {
                observer(res.state, res.steps);
                last_observed = res.steps;
            }
            res.status = IntegrationStatus::AbortedNormCeiling;
            return res;
        }

        if (observer &&
            (res.steps % cfg.observe_every == 0 || res.state.t >= cfg.t_end)) {
            observer(res.state, res.steps);
            last_observed = res.steps;
        }
    }

    if (observer && last_observed != res.steps &&
        res.status != IntegrationStatus::AbortedNonFinite)
        observer(res.state, res.steps);
    return res;
}

}  // namespace mhda
