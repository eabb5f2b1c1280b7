#pragma once

// Norms, the energy budget, the regularity monitor, and the pointwise
// fractional inequality check. A DiagnosticsRecord is one time sample of
// everything the run tracks; a RunHistory is the sequence plus the abort
// flag of the integration that produced it.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "model.hpp"
#include "operators.hpp"

namespace mhda {

// ---- norms and inner products ----

// Homogeneous Sobolev norm ||Lambda^s f||_L2 = sqrt(sum |k|^{2s} |f^|^2 L^2).
inline double sobolev_norm(const ScalarField& f, double s)
{
    if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
    const SpectralGrid& g = *f.grid;
    double sum = 0.0;
    if (s == 0.0) {
        for (const auto& v : f.c) sum += std::norm(v);
    } else {
        for (std::size_t m = 0; m < g.size(); ++m) {
            const double k2 = g.k2(m);
            if (k2 == 0.0) continue;
            sum += std::pow(k2, s) * std::norm(f.c[m]);
        }
    }
    return g.length() * std::sqrt(sum);
}

inline double sobolev_norm(const VectorField& f, double s)
{
    const double nx = sobolev_norm(f.x, s);
    const double ny = sobolev_norm(f.y, s);
    return std::sqrt(nx * nx + ny * ny);
}

// L2 inner product of real fields via Parseval.
inline double inner_product(const ScalarField& f, const ScalarField& g)
{
    require_same_grid(f, g, "inner_product");
    double sum = 0.0;
    for (std::size_t m = 0; m < f.c.size(); ++m)
        sum += f.c[m].real() * g.c[m].real() + f.c[m].imag() * g.c[m].imag();
    const double L = f.grid->length();
    return L * L * sum;
}

// Collocation-grid Lp norm, p a positive even integer.
inline double lp_norm(const ScalarField& f, int p)
{
    if (p < 2 || p % 2 != 0)
        throw std::invalid_argument("lp_norm: p must be a positive even integer");
    const std::vector<double> phys = to_physical(f);
    double sum = 0.0;
    for (double v : phys) {
        double pw = v * v;
        for (int e = 2; e < p; e += 2) pw *= v * v;
        sum += pw;
    }
    return std::pow(sum * f.grid->cell_area(), 1.0 / p);
}

inline double linf_norm(const ScalarField& f)
{
    const std::vector<double> phys = to_physical(f);
    double worst = 0.0;
    for (double v : phys) worst = std::max(worst, std::abs(v));
    return worst;
}

// ---- per-sample record ----

struct DiagnosticsRecord {
    double t = 0.0;
    double energy_alpha = 0.0;  // 0.5 (||u||^2 + alpha^2 ||grad u||^2 + ||b||^2)
    double diss_u = 0.0;        // nu (||L^r1 u||^2 + alpha^2 ||L^r1 grad u||^2)
    double diss_b = 0.0;        // eta ||L^r2 b||^2
    double energy_residual = 0.0;
    std::map<std::string, double> sobolev;
    std::map<std::string, double> cumulative_integrals;
};

// Relative defect of the energy law over [prev.t, next.t]: the change rate
// of energy_alpha against the averaged dissipation of the two records.
inline double energy_balance_residual(const DiagnosticsRecord& prev,
                                      const DiagnosticsRecord& next)
{
    const double dt = next.t - prev.t;
    if (!(dt > 0.0))
        throw std::invalid_argument("energy_balance_residual: records must advance in time");
    const double diss_mid =
        0.5 * ((prev.diss_u + prev.diss_b) + (next.diss_u + next.diss_b));
    const double e_mid = 0.5 * (prev.energy_alpha + next.energy_alpha);
    return std::abs((next.energy_alpha - prev.energy_alpha) / dt + diss_mid) /
           std::max(1.0, e_mid);
}

// Monitored-norm value fixed at the interval midpoint of (1 - r2, 1).
inline double gamma_for(const PhysicalParams& p) { return 1.0 - 0.5 * p.r2; }

inline DiagnosticsRecord compute_record(const MhdAlphaState& s,
                                        const PhysicalParams& p,
                                        const DiagnosticsRecord* prev = nullptr)
{
    DiagnosticsRecord r;
    r.t = s.t;

    const DerivedFields d = derived_fields(s, p);
    const double a2 = p.alpha * p.alpha;

    const double u0 = sobolev_norm(d.u, 0.0);
    const double u1 = sobolev_norm(d.u, 1.0);
    const double b0 = sobolev_norm(d.b, 0.0);
    r.energy_alpha = 0.5 * (u0 * u0 + a2 * u1 * u1 + b0 * b0);

    const double ur1 = sobolev_norm(d.u, p.r1);
    const double ur1g = sobolev_norm(d.u, 1.0 + p.r1);
    const double br2 = sobolev_norm(d.b, p.r2);
    r.diss_u = p.nu * (ur1 * ur1 + a2 * ur1g * ur1g);
    r.diss_b = p.eta * br2 * br2;

    auto& sv = r.sobolev;
    sv["L2_u"] = u0;
    sv["H1_u"] = u1;
    sv["L2_b"] = b0;
    sv["w_L2"] = lp_norm(s.w, 2);
    sv["w_L4"] = lp_norm(s.w, 4);
    sv["w_L8"] = lp_norm(s.w, 8);
    sv["w_max"] = linf_norm(s.w);
    sv["Lam_r1_u"] = ur1;
    sv["Lam_r1_grad_u"] = ur1g;
    sv["Lam_gamma_b"] = sobolev_norm(d.b, gamma_for(p));
    sv["Lam_r2_b"] = br2;
    sv["Lam_1pr1_b"] = sobolev_norm(d.b, 1.0 + p.r1);
    sv["Lam_1pr2_b"] = sobolev_norm(d.b, 1.0 + p.r2);
    sv["Lam_2pr2_b"] = sobolev_norm(d.b, 2.0 + p.r2);
    sv["Lam_3_b"] = sobolev_norm(d.b, 3.0);
    sv["Lam_3_v"] = sobolev_norm(d.v, 3.0);
    sv["Lam_r1p2r2_w"] = sobolev_norm(s.w, p.r1 + 2.0 * p.r2);
    sv["Lam_3pr1_v"] = sobolev_norm(d.v, 3.0 + p.r1);
    sv["Lam_3pr2_b"] = sobolev_norm(d.b, 3.0 + p.r2);

    // Running L2-in-time integrals, trapezoid between records.
    double iv = 0.0, ib = 0.0;
    if (prev) {
        const double h = r.t - prev->t;
        const double pv = prev->sobolev.at("Lam_3pr1_v");
        const double pb = prev->sobolev.at("Lam_3pr2_b");
        const double cv = sv["Lam_3pr1_v"];
        const double cb = sv["Lam_3pr2_b"];
        iv = prev->cumulative_integrals.at("int_Lam3pr1_v_sq") +
             0.5 * h * (pv * pv + cv * cv);
        ib = prev->cumulative_integrals.at("int_Lam3pr2_b_sq") +
             0.5 * h * (pb * pb + cb * cb);
        r.energy_residual = energy_balance_residual(*prev, r);
    }
    r.cumulative_integrals["int_Lam3pr1_v_sq"] = iv;
    r.cumulative_integrals["int_Lam3pr2_b_sq"] = ib;

    return r;
}

// ---- regularity monitor ----

enum class Verdict { Bounded, SuspectGrowth, Blowup };

inline const char* verdict_name(Verdict v)
{
    switch (v) {
        case Verdict::Bounded: return "BOUNDED";
        case Verdict::SuspectGrowth: return "SUSPECT-GROWTH";
        case Verdict::Blowup: return "BLOWUP";
    }
    return "?";
}

inline int verdict_exit_code(Verdict v)
{
    switch (v) {
        case Verdict::Bounded: return 0;
        case Verdict::SuspectGrowth: return 2;
        case Verdict::Blowup: return 3;
    }
    return 3;
}

struct RunHistory {
    std::vector<DiagnosticsRecord> records;
    bool aborted = false;
    std::string abort_reason;
};

struct NormReport {
    double sup = 0.0;
    double final_value = 0.0;
    std::optional<double> integral;
    double growth_exponent = 0.0;
    Verdict verdict = Verdict::Bounded;
};

struct RegularityReport {
    std::map<std::string, NormReport> norms;
    Verdict overall = Verdict::Bounded;
    bool aborted = false;
    std::string abort_reason;
};

namespace detail {

// Least-squares slope of ln(value) against ln(t) over the tail records.
inline double tail_growth_exponent(const std::vector<double>& t,
                                   const std::vector<double>& v)
{
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] > 0.0 && v[i] > 1e-300) {
            lx.push_back(std::log(t[i]));
            ly.push_back(std::log(v[i]));
        }
    }
    if (lx.size() < 3) return 0.0;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) { mx += lx[i]; my += ly[i]; }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) return 0.0;
    return sxy / sxx;
}

}  // namespace detail

inline constexpr double kGrowthExponentThreshold = 1.5;

// Per-norm boundedness verdicts over a completed (or aborted) history.
// BOUNDED requires sup below the ceiling and no super-linear growth over
// the last quartile of records (power-law fit exponent <= 1.5).
inline RegularityReport regularity_monitor(const RunHistory& history,
                                           const PhysicalParams& params,
                                           double norm_ceiling = 1e8)
{
    (void)params;
    if (history.records.empty())
        throw std::invalid_argument("regularity_monitor: empty history");

    RegularityReport rep;
    rep.aborted = history.aborted;
    rep.abort_reason = history.abort_reason;

    const auto& recs = history.records;
    const std::size_t tail_begin = recs.size() - (recs.size() + 3) / 4;

    for (const auto& [name, unused] : recs.front().sobolev) {
        (void)unused;
        NormReport nr;
        std::vector<double> tail_t, tail_v;
        for (std::size_t i = 0; i < recs.size(); ++i) {
            const double v = recs[i].sobolev.at(name);
            nr.sup = std::max(nr.sup, v);
            nr.final_value = v;
            if (i >= tail_begin) {
                tail_t.push_back(recs[i].t);
                tail_v.push_back(v);
            }
        }
        nr.growth_exponent = detail::tail_growth_exponent(tail_t, tail_v);
        const bool grew = tail_v.size() >= 2 && tail_v.back() > tail_v.front();
        const bool super_linear =
            grew && nr.growth_exponent > kGrowthExponentThreshold;
        nr.verdict = (std::isfinite(nr.sup) && nr.sup < norm_ceiling &&
                      !super_linear)
                         ? Verdict::Bounded
                         : Verdict::SuspectGrowth;
        rep.norms[name] = nr;
    }

    for (const auto& [name, value] : recs.back().cumulative_integrals) {
        auto it = rep.norms.find(name);
        if (it == rep.norms.end()) {
            NormReport nr;
            nr.sup = nr.final_value = value;
            nr.integral = value;
            nr.verdict = std::isfinite(value) ? Verdict::Bounded
                                              : Verdict::SuspectGrowth;
            rep.norms[name] = nr;
        } else {
            it->second.integral = value;
        }
    }

    rep.overall = Verdict::Bounded;
    for (const auto& [name, nr] : rep.norms) {
        (void)name;
        if (nr.verdict == Verdict::SuspectGrowth)
            rep.overall = Verdict::SuspectGrowth;
    }
    if (history.aborted) rep.overall = Verdict::Blowup;
    return rep;
}

// ---- pointwise fractional inequality (both sides, caller asserts) ----

namespace detail {

// Embed a coarse spectrum into a finer grid with the same period.
inline ScalarField zero_pad(const ScalarField& f, const SpectralGrid& fine)
{
    const SpectralGrid& g = *f.grid;
    if (fine.n() < g.n() || fine.length() != g.length())
        throw std::invalid_argument("zero_pad: fine grid must refine the coarse one");
    ScalarField r(fine);
    for (int ix = 0; ix < g.n(); ++ix)
        for (int iy = 0; iy < g.n(); ++iy) {
            const int fx = g.freq(ix), fy = g.freq(iy);
            const int jx = (fx + fine.n()) % fine.n();
            const int jy = (fy + fine.n()) % fine.n();
            r.c[fine.idx(jx, jy)] = f.c[g.idx(ix, iy)];
        }
    return r;
}

}  // namespace detail

struct LemmaSides {
    double lhs = 0.0;
    double rhs = 0.0;
};

// Evaluates both sides of
//   2 int |Lambda^gamma |f|^{p/2}|^2  <=  p int |f|^{p-2} f Lambda^{2 gamma} f
// spectrally, with the pointwise powers taken on an oversampled grid. At
// p = 2 the signed field itself is used and the two sides coincide.
inline LemmaSides check_lemma_2_4(const ScalarField& f, double gamma, int p,
                                  int oversample = 4)
{
    if (p < 2 || p % 2 != 0)
        throw std::invalid_argument("check_lemma_2_4: p must be an even integer >= 2");
    if (gamma < 0.0 || gamma > 1.0)
        throw std::invalid_argument("check_lemma_2_4: gamma outside [0, 1]");
    if (oversample < 2)
        throw std::invalid_argument("check_lemma_2_4: oversample must be >= 2");

    const SpectralGrid& g = *f.grid;
    const SpectralGrid fine(oversample * g.n(), g.length());

    const ScalarField f_fine = detail::zero_pad(f, fine);
    const std::vector<double> fp = to_physical(f_fine);

    // |f|^{p/2} (signed f at p = 2) back on the fine spectral grid.
    std::vector<double> hp(fp.size());
    if (p == 2) {
        hp = fp;
    } else {
        const int half = p / 2;
        for (std::size_t m = 0; m < fp.size(); ++m) {
            const double av = std::abs(fp[m]);
            double pw = av;
            for (int e = 1; e < half; ++e) pw *= av;
            hp[m] = pw;
        }
    }
    const ScalarField h = from_physical(fine, hp);
    const double hn = sobolev_norm(h, gamma);
    LemmaSides out;
    out.lhs = 2.0 * hn * hn;

    // p int |f|^{p-2} f Lambda^{2 gamma} f by collocation quadrature.
    const ScalarField lf = fractional_laplacian(f, 2.0 * gamma);
    const std::vector<double> lfp = to_physical(detail::zero_pad(lf, fine));
    double sum = 0.0;
    for (std::size_t m = 0; m < fp.size(); ++m) {
        double weight = 1.0;
        const double av = std::abs(fp[m]);
        for (int e = 0; e < p - 2; ++e) weight *= av;
        sum += weight * fp[m] * lfp[m];
    }
    out.rhs = static_cast<double>(p) * sum * fine.cell_area();
    return out;
}

}  // namespace mhda
