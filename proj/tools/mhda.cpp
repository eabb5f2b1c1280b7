// Command-line front end: run single simulations, sweep the dissipation
// exponent along (and below) the critical line, and re-verify snapshots.
// Exit codes follow the regularity verdict: 0 BOUNDED, 2 SUSPECT-GROWTH,
// 3 BLOWUP; configuration and I/O errors exit 1.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mhda/runner.hpp"

namespace {

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int do_run(const std::string& config_path)
{
    const mhda::RunConfig cfg = mhda::parse_config(slurp(config_path));
    const auto out_root = mhda::resolve_out_root(cfg);
    const mhda::RunOutcome out = mhda::run_simulation(cfg, out_root);
    std::cout << "verdict: " << mhda::verdict_name(out.verdict)
              << "  (t_end reached: "
              << (out.status == mhda::IntegrationStatus::Completed ? "yes" : "no")
              << ", wall " << mhda::format_compact(out.wall_seconds) << " s)\n"
              << "diagnostics: " << out.csv_path.string() << "\n"
              << "verdict file: " << out.verdict_path.string() << "\n";
    return out.exit_code;
}

int do_sweep(const std::string& config_path, const std::vector<double>& r1,
             double offset)
{
    const mhda::RunConfig cfg = mhda::parse_config(slurp(config_path));
    const auto out_root = mhda::resolve_out_root(cfg);
    const mhda::SweepOutcome out = mhda::sweep(cfg, r1, offset, out_root);
    for (const auto& row : out.rows) {
        std::cout << "r1=" << mhda::format_compact(row.r1)
                  << " r2=" << mhda::format_compact(row.r2) << ": "
                  << (row.failed ? std::string("FAILED (") + row.error + ")"
                                 : mhda::verdict_name(row.outcome.verdict))
                  << "\n";
    }
    std::cout << "summary: " << out.summary_path.string() << "\n";
    return out.exit_code;
}

int do_check(const std::string& snapshot_path)
{
    const auto header = mhda::read_snapshot_header(snapshot_path);
    mhda::SpectralGrid grid(header.n, header.length);
    const mhda::MhdAlphaState state = mhda::read_snapshot(snapshot_path, grid);
    const mhda::StateCheck check = mhda::check_state(state);
    std::cout << "snapshot: n=" << header.n
              << " L=" << mhda::format_compact(header.length)
              << " t=" << mhda::format_compact(header.t) << "\n";
    if (check.ok()) {
        std::cout << "all state invariants hold\n";
        return 0;
    }
    for (const auto& v : check.violations)
        std::cout << "violation: " << v << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Pseudo-spectral solver for the 2D filtered MHD system "
                 "with fractional dissipation"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "run one simulation from a config file");
    run_cmd->add_option("config", config_path, "key = value config file")
        ->required();

    std::string sweep_config;
    std::vector<double> r1_values;
    double threshold_offset = 0.0;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "one run per r1 value, r2 = 1 - r1 - offset");
    sweep_cmd->add_option("config", sweep_config, "base config file")->required();
    sweep_cmd->add_option("--r1", r1_values, "comma-separated r1 values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--threshold-offset", threshold_offset,
                          "probe below the critical line by this much");

    std::string snapshot_path;
    auto* check_cmd =
        app.add_subcommand("check", "re-verify the invariants of a snapshot");
    check_cmd->add_option("state", snapshot_path, "state_<t>.bin file")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return do_run(config_path);
        if (sweep_cmd->parsed())
            return do_sweep(sweep_config, r1_values, threshold_offset);
        if (check_cmd->parsed()) return do_check(snapshot_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
