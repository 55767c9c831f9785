#pragma once

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diracsym/numerics.hpp"
#include "diracsym/propagator.hpp"

namespace diracsym {

inline const std::vector<std::string> kExperiments{"fig1-ci",   "fig1-rsi",         "fig2",
                                                   "amplitudes", "verify-reduction", "invariants"};

struct RunConfig {
    std::string experiment = "amplitudes";
    std::size_t n = 2048;
    double length = 256.0;
    double mass = 1.0;
    double t_final = 40.0;
    std::vector<double> snapshots;  ///< empty: {0, tf/3, 2tf/3, tf}
    double sample_dt = kPi / 32.0;
    EnergySign channel = EnergySign::positive;
    std::filesystem::path out_dir = "out";
    std::optional<std::filesystem::path> config_file;
    std::uint64_t seed = 20240229;
    std::vector<std::string> warnings;  ///< e.g. config-file values overridden by flags

    std::vector<double> snapshot_times() const;
    /// Throws ConfigError naming the offending setting.
    void validate() const;
};

/// Raised by parse_config for --help; carries the usage text.
struct HelpRequested {
    std::string text;
};

/// `<experiment> [--n INT] [--length REAL] [--mass REAL] [--tf REAL]
///  [--snapshots t1,t2,...] [--sample-dt REAL] [--channel positive|negative]
///  [--out DIR] [--config PATH] [--seed INT]`
/// Values from --config (a flat JSON object with the same keys, `-` replaced by
/// `_`) are applied first; explicit flags win and a warning is recorded.
RunConfig parse_config(std::span<const std::string> args);

struct Headline {
    Complex ci_amplitude;
    double ci_probability = 0.0;
    Complex rsi_amplitude;
    double rsi_probability = 0.0;
    double rsi_amplitude_drift = 0.0;
    double norm_drift = 0.0;
    double reduction_error = 0.0;
};

struct ReportBundle {
    Headline headline;
    std::vector<std::filesystem::path> csv_files;
    std::filesystem::path summary_path;
};

/// Runs the selected experiment, writing CSVs and summary.json to cfg.out_dir.
ReportBundle run_experiment(const RunConfig& cfg);

/// 0 success, 2 config error, 3 physics-contract violation, 4 I/O error, 1 otherwise.
int exit_code_for(const std::exception& e);

/// Full command-line entry point; returns the process exit status.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace diracsym
