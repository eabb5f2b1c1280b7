#pragma once

// Drives whole runs: initial condition, integration, diagnostics CSV,
// snapshots, verdict file, and critical-line sweeps. All number formatting
// uses "%.17g" so identical configurations produce byte-identical output.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "initial_conditions.hpp"
#include "integrator.hpp"
#include "snapshot.hpp"

namespace mhda {

namespace fs = std::filesystem;

inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_compact(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// Fixed diagnostics.csv column order.
inline const std::vector<std::string>& csv_norm_columns()
{
    static const std::vector<std::string> cols = {
        "L2_u",       "H1_u",       "L2_b",       "w_L2",      "w_L4",
        "w_L8",       "w_max",      "Lam_r1_u",   "Lam_r2_b",  "Lam_1pr1_b",
        "Lam_1pr2_b", "Lam_2pr2_b", "Lam_3_b",    "Lam_3_v"};
    return cols;
}

inline std::string csv_header()
{
    std::string h = "t,energy_alpha,diss_u,diss_b,energy_residual";
    for (const auto& c : csv_norm_columns()) h += "," + c;
    h += ",int_Lam3pr1_v_sq,int_Lam3pr2_b_sq\n";
    return h;
}

inline std::string csv_row(const DiagnosticsRecord& r)
{
    std::string row = format_double(r.t);
    row += "," + format_double(r.energy_alpha);
    row += "," + format_double(r.diss_u);
    row += "," + format_double(r.diss_b);
    row += "," + format_double(r.energy_residual);
    for (const auto& c : csv_norm_columns())
        row += "," + format_double(r.sobolev.at(c));
    row += "," + format_double(r.cumulative_integrals.at("int_Lam3pr1_v_sq"));
    row += "," + format_double(r.cumulative_integrals.at("int_Lam3pr2_b_sq"));
    row += "\n";
    return row;
}

inline MhdAlphaState build_initial_state(const RunConfig& cfg,
                                         const SpectralGrid& g)
{
    switch (cfg.ic) {
        case IcKind::Zero:
            return zero_state(g);
        case IcKind::OrszagTang:
            return orszag_tang(g, cfg.amplitude_w, cfg.amplitude_a);
        case IcKind::Random:
            return random_band_limited(g, cfg.seed, cfg.k_min, cfg.k_max,
                                       cfg.spectrum_slope, cfg.target_h3_v,
                                       cfg.target_h3_b);
    }
    throw std::logic_error("build_initial_state: unknown ic kind");
}

struct RunOutcome {
    Verdict verdict = Verdict::Bounded;
    int exit_code = 0;
    IntegrationStatus status = IntegrationStatus::Completed;
    RunHistory history;
    RegularityReport report;
    MhdAlphaState final_state;
    double wall_seconds = 0.0;
    fs::path csv_path;
    fs::path verdict_path;
};

inline void write_verdict_file(const fs::path& path,
                               const RegularityReport& rep)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write verdict file: " + path.string());
    out << verdict_name(rep.overall) << "\n";
    if (rep.aborted) out << "aborted: " << rep.abort_reason << "\n";
    for (const auto& [name, nr] : rep.norms) {
        out << name << " sup=" << format_double(nr.sup)
            << " final=" << format_double(nr.final_value);
        if (nr.integral) out << " integral=" << format_double(*nr.integral);
        out << " " << verdict_name(nr.verdict) << "\n";
    }
}

inline RunOutcome run_simulation(const RunConfig& cfg, const fs::path& out_dir)
{
    const auto t0 = std::chrono::steady_clock::now();
    fs::create_directories(out_dir);

    SpectralGrid grid(cfg.n, cfg.length);
    MhdAlphaState state0 = build_initial_state(cfg, grid);

    RunOutcome out;
    out.csv_path = out_dir / "diagnostics.csv";
    out.verdict_path = out_dir / "verdict.txt";

    std::ofstream csv(out.csv_path, std::ios::binary | std::ios::trunc);
    if (!csv)
        throw std::runtime_error("cannot write " + out.csv_path.string());
    csv << csv_header();

    PhysicalParams p = cfg.params;
    Observer observer = [&](const MhdAlphaState& s, long step_index) {
        const DiagnosticsRecord* prev =
            out.history.records.empty() ? nullptr : &out.history.records.back();
        DiagnosticsRecord rec = compute_record(s, p, prev);
        csv << csv_row(rec);
        out.history.records.push_back(std::move(rec));
        if (cfg.snapshot_every > 0 && step_index > 0 &&
            step_index % cfg.snapshot_every == 0) {
            write_snapshot(out_dir / ("state_" + format_compact(s.t) + ".bin"), s);
        }
    };

    const IntegrationResult res = integrate(state0, p, cfg.integ, observer);
    out.status = res.status;
    out.final_state = res.state;
    out.history.aborted = res.status != IntegrationStatus::Completed;
    if (out.history.aborted)
        out.history.abort_reason = integration_status_name(res.status);

    csv.close();
    if (!csv) throw std::runtime_error("write failed: " + out.csv_path.string());

    if (cfg.snapshot_final)
        write_snapshot(out_dir / ("state_" + format_compact(res.state.t) + ".bin"),
                       res.state);

    out.report = regularity_monitor(out.history, p, cfg.integ.norm_ceiling);
    out.verdict = out.report.overall;
    out.exit_code = verdict_exit_code(out.verdict);
    write_verdict_file(out.verdict_path, out.report);

    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return out;
}

// ---- sweeps over the dissipation exponent ----

struct SweepRow {
    double r1 = 0.0;
    double r2 = 0.0;
    bool failed = false;
    std::string error;
    RunOutcome outcome;
};

struct SweepOutcome {
    std::vector<SweepRow> rows;
    fs::path summary_path;
    int exit_code = 0;
};

inline std::string sweep_summary_header()
{
    std::string h = "r1,r2,status,exit_code,wall_seconds";
    for (const auto& c : csv_norm_columns()) h += ",sup_" + c;
    h += ",int_Lam3pr1_v_sq,int_Lam3pr2_b_sq\n";
    return h;
}

inline SweepOutcome sweep(const RunConfig& base,
                          const std::vector<double>& r1_values,
                          double threshold_offset, const fs::path& out_root)
{
    std::vector<double> values;
    for (double v : r1_values) {
        bool dup = false;
        for (double u : values) dup = dup || (u == v);
        if (dup) {
            std::cerr << "sweep: duplicate r1 value " << format_compact(v)
                      << " ignored\n";
            continue;
        }
        values.push_back(v);
    }

    fs::create_directories(out_root);
    SweepOutcome out;
    out.summary_path = out_root / "sweep_summary.csv";
    std::ofstream summary(out.summary_path, std::ios::binary | std::ios::trunc);
    if (!summary)
        throw std::runtime_error("cannot write " + out.summary_path.string());
    summary << sweep_summary_header();

    bool any_failed = false;
    int worst_exit = 0;
    for (double r1 : values) {
        SweepRow row;
        row.r1 = r1;
        row.r2 = 1.0 - r1 - threshold_offset;
        try {
            if (!(r1 > 0.0 && r1 < 1.0))
                throw std::invalid_argument("sweep: r1 outside (0, 1)");
            RunConfig cfg = base;
            cfg.params.r1 = r1;
            cfg.params.r2 = row.r2;
            cfg.params.validate();
            fs::path dir = out_root / ("r1_" + format_compact(r1));
            row.outcome = run_simulation(cfg, dir);
            worst_exit = std::max(worst_exit, row.outcome.exit_code);
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
            any_failed = true;
            std::cerr << "sweep: run r1=" << format_compact(r1)
                      << " failed: " << e.what() << "\n";
        }

        summary << format_double(row.r1) << "," << format_double(row.r2);
        if (row.failed) {
            summary << ",FAILED,1,0";
            for (std::size_t i = 0; i < csv_norm_columns().size() + 2; ++i)
                summary << ",";
            summary << "\n";
        } else {
            const auto& rep = row.outcome.report;
            summary << "," << verdict_name(row.outcome.verdict) << ","
                    << row.outcome.exit_code << ","
                    << format_double(row.outcome.wall_seconds);
            for (const auto& c : csv_norm_columns())
                summary << "," << format_double(rep.norms.at(c).sup);
            const auto& ints = row.outcome.history.records.back().cumulative_integrals;
            summary << "," << format_double(ints.at("int_Lam3pr1_v_sq")) << ","
                    << format_double(ints.at("int_Lam3pr2_b_sq")) << "\n";
        }
        out.rows.push_back(std::move(row));
    }

    summary.close();
    out.exit_code = any_failed ? 1 : worst_exit;
    return out;
}

// Output root: MHDA_OUT_DIR overrides the config value when set.
inline fs::path resolve_out_root(const RunConfig& cfg)
{
    if (const char* env = std::getenv("MHDA_OUT_DIR"); env && *env)
        return fs::path(env);
    return fs::path(cfg.out_dir);
}

}  // namespace mhda
