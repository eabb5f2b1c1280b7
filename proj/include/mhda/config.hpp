#pragma once

// Flat key = value run configuration. '#' starts a comment, blank lines are
// skipped, unknown keys are rejected, and every error names the offending
// line. Missing keys take the documented defaults.

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "integrator.hpp"
#include "model.hpp"

namespace mhda {

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& message)
        : std::runtime_error("config line " + std::to_string(line) + ": " + message),
          line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

enum class IcKind { Zero, OrszagTang, Random };

struct RunConfig {
    PhysicalParams params;                 // nu = eta = alpha = 1, r1 = r2 = 1/2
    bool enforce_critical_line = false;

    int n = 64;
    double length = kTwoPi;

    IntegratorConfig integ;

    IcKind ic = IcKind::OrszagTang;
    double amplitude_w = 1.0;
    double amplitude_a = 1.0;
    std::uint64_t seed = 1;
    int k_min = 1;
    int k_max = 0;  // 0: defaults to n/6 at validation
    double spectrum_slope = -2.0;
    double target_h3_v = 5.0;
    double target_h3_b = 5.0;
    std::string rng = "splitmix64";

    int record_every = 1;     // records every this many steps
    int snapshot_every = 0;   // steps between state snapshots; 0 disables
    bool snapshot_final = false;
    std::string out_dir = ".";
};

namespace detail {

inline std::string trim(const std::string& s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline double parse_double(const std::string& v, int line, const std::string& key)
{
    std::size_t pos = 0;
    double out = 0.0;
    try {
        out = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError(line, key + ": cannot parse '" + v + "' as a real number");
    }
    if (pos != v.size())
        throw ConfigError(line, key + ": trailing characters in '" + v + "'");
    return out;
}

inline long long parse_int(const std::string& v, int line, const std::string& key)
{
    std::size_t pos = 0;
    long long out = 0;
    try {
        out = std::stoll(v, &pos);
    } catch (const std::exception&) {
        throw ConfigError(line, key + ": cannot parse '" + v + "' as an integer");
    }
    if (pos != v.size())
        throw ConfigError(line, key + ": trailing characters in '" + v + "'");
    return out;
}

inline bool parse_bool(const std::string& v, int line, const std::string& key)
{
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(line, key + ": expected true/false, got '" + v + "'");
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text)
{
    RunConfig cfg;
    std::map<std::string, int> seen;  // key -> line where it was set

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(lineno, "expected 'key = value', got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(lineno, "missing key");
        if (val.empty()) throw ConfigError(lineno, key + ": missing value");
        seen[key] = lineno;

        if (key == "nu") cfg.params.nu = detail::parse_double(val, lineno, key);
        else if (key == "eta") cfg.params.eta = detail::parse_double(val, lineno, key);
        else if (key == "alpha") cfg.params.alpha = detail::parse_double(val, lineno, key);
        else if (key == "r1") cfg.params.r1 = detail::parse_double(val, lineno, key);
        else if (key == "r2") cfg.params.r2 = detail::parse_double(val, lineno, key);
        else if (key == "enforce_critical_line")
            cfg.enforce_critical_line = detail::parse_bool(val, lineno, key);
        else if (key == "n") cfg.n = static_cast<int>(detail::parse_int(val, lineno, key));
        else if (key == "length") cfg.length = detail::parse_double(val, lineno, key);
        else if (key == "scheme") {
            if (val == "ifrk4") cfg.integ.scheme = Scheme::Ifrk4;
            else if (val == "ifrk3") cfg.integ.scheme = Scheme::Ifrk3;
            else throw ConfigError(lineno, "scheme: expected ifrk4 or ifrk3, got '" + val + "'");
        }
        else if (key == "cfl") cfg.integ.cfl = detail::parse_double(val, lineno, key);
        else if (key == "dt_max") cfg.integ.dt_max = detail::parse_double(val, lineno, key);
        else if (key == "dt_min") cfg.integ.dt_min = detail::parse_double(val, lineno, key);
        else if (key == "t_end") cfg.integ.t_end = detail::parse_double(val, lineno, key);
        else if (key == "norm_ceiling") cfg.integ.norm_ceiling = detail::parse_double(val, lineno, key);
        else if (key == "ic") {
            if (val == "zero") cfg.ic = IcKind::Zero;
            else if (val == "orszag_tang") cfg.ic = IcKind::OrszagTang;
            else if (val == "random") cfg.ic = IcKind::Random;
            else throw ConfigError(lineno, "ic: expected zero, orszag_tang or random, got '" + val + "'");
        }
        else if (key == "amplitude_w") cfg.amplitude_w = detail::parse_double(val, lineno, key);
        else if (key == "amplitude_a") cfg.amplitude_a = detail::parse_double(val, lineno, key);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(detail::parse_int(val, lineno, key));
        else if (key == "k_min") cfg.k_min = static_cast<int>(detail::parse_int(val, lineno, key));
        else if (key == "k_max") cfg.k_max = static_cast<int>(detail::parse_int(val, lineno, key));
        else if (key == "spectrum_slope") cfg.spectrum_slope = detail::parse_double(val, lineno, key);
        else if (key == "target_h3_v") cfg.target_h3_v = detail::parse_double(val, lineno, key);
        else if (key == "target_h3_b") cfg.target_h3_b = detail::parse_double(val, lineno, key);
        else if (key == "rng") cfg.rng = val;
        else if (key == "record_every") cfg.record_every = static_cast<int>(detail::parse_int(val, lineno, key));
        else if (key == "snapshot_every") cfg.snapshot_every = static_cast<int>(detail::parse_int(val, lineno, key));
        else if (key == "snapshot_final") cfg.snapshot_final = detail::parse_bool(val, lineno, key);
        else if (key == "out_dir") cfg.out_dir = val;
        else throw ConfigError(lineno, "unknown key '" + key + "'");
    }

    auto line_of = [&](const char* key) {
        auto it = seen.find(key);
        return it == seen.end() ? 0 : it->second;
    };
    auto fail = [&](const char* key, const std::string& msg) -> void {
        throw ConfigError(line_of(key), std::string(key) + ": " + msg);
    };

    // critical-line handling: fill in the unset exponent, reject conflicts
    if (cfg.enforce_critical_line) {
        const bool has_r1 = seen.count("r1") > 0;
        const bool has_r2 = seen.count("r2") > 0;
        if (has_r1 && !has_r2) cfg.params.r2 = 1.0 - cfg.params.r1;
        else if (has_r2 && !has_r1) cfg.params.r1 = 1.0 - cfg.params.r2;
        else if (has_r1 && has_r2 && !cfg.params.critical_line())
            fail("enforce_critical_line", "r1 + r2 must equal 1");
    }

    if (cfg.params.nu < 0.0) fail("nu", "must be >= 0");
    if (cfg.params.eta < 0.0) fail("eta", "must be >= 0");
    if (!(cfg.params.alpha > 0.0)) fail("alpha", "must be > 0");
    if (cfg.params.r1 < 0.0 || cfg.params.r1 > 1.0) fail("r1", "outside [0, 1]");
    if (cfg.params.r2 < 0.0 || cfg.params.r2 > 1.0) fail("r2", "outside [0, 1]");
    if (cfg.n < 8 || cfg.n % 2 != 0) fail("n", "must be even and >= 8");
    if (!(cfg.length > 0.0)) fail("length", "must be > 0");
    if (!(cfg.integ.cfl > 0.0 && cfg.integ.cfl <= 1.0)) fail("cfl", "outside (0, 1]");
    if (!(cfg.integ.dt_max > 0.0)) fail("dt_max", "must be > 0");
    if (!(cfg.integ.dt_min > 0.0)) fail("dt_min", "must be > 0");
    if (!(cfg.integ.dt_min < cfg.integ.dt_max)) fail("dt_min", "must be < dt_max");
    if (!(cfg.integ.t_end > 0.0)) fail("t_end", "must be > 0");
    if (!(cfg.integ.norm_ceiling > 0.0)) fail("norm_ceiling", "must be > 0");
    if (cfg.record_every < 1) fail("record_every", "must be >= 1");
    if (cfg.snapshot_every < 0) fail("snapshot_every", "must be >= 0");
    if (cfg.rng != "splitmix64") fail("rng", "unsupported generator '" + cfg.rng + "'");

    if (cfg.ic == IcKind::Random) {
        if (cfg.k_max == 0) cfg.k_max = std::max(cfg.k_min, cfg.n / 6);
        if (cfg.k_min < 1) fail("k_min", "must be >= 1");
        if (cfg.k_max < cfg.k_min) fail("k_max", "must be >= k_min");
        if (3 * cfg.k_max > cfg.n) fail("k_max", "must be <= n/3");
        if (cfg.target_h3_v < 0.0) fail("target_h3_v", "must be >= 0");
        if (cfg.target_h3_b < 0.0) fail("target_h3_b", "must be >= 0");
    }

    cfg.integ.observe_every = cfg.record_every;
    return cfg;
}

}  // namespace mhda
