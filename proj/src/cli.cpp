#include "diracsym/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "diracsym/ci.hpp"
#include "diracsym/errors.hpp"
#include "diracsym/random_fields.hpp"
#include "diracsym/reduction4.hpp"
#include "diracsym/rsi.hpp"

namespace diracsym {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<double> parse_time_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigError(flag + ": '" + item + "' is not a number");
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used != item.size()) throw ConfigError(flag + ": '" + item + "' is not a number");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError(flag + ": empty list");
    return out;
}

EnergySign parse_channel(const std::string& text, const std::string& flag) {
    if (text == "positive") return EnergySign::positive;
    if (text == "negative") return EnergySign::negative;
    throw ConfigError(flag + ": expected 'positive' or 'negative', got '" + text + "'");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_complex(Complex z) {
    return format_double(z.real()) + (std::signbit(z.imag()) ? " - " : " + ") + format_double(std::abs(z.imag())) + "i";
}

// Values read from a --config file, keyed like the flags.
struct FileValues {
    std::optional<std::string> experiment;
    std::optional<std::size_t> n;
    std::optional<double> length, mass, tf, sample_dt;
    std::optional<std::vector<double>> snapshots;
    std::optional<EnergySign> channel;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
};

FileValues read_config_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("--config: cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("--config: " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("--config: top level must be an object");

    FileValues v;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "experiment") v.experiment = value.get<std::string>();
            else if (key == "n") v.n = value.get<std::size_t>();
            else if (key == "length") v.length = value.get<double>();
            else if (key == "mass") v.mass = value.get<double>();
            else if (key == "tf") v.tf = value.get<double>();
            else if (key == "sample_dt") v.sample_dt = value.get<double>();
            else if (key == "snapshots")
                v.snapshots = value.is_string() ? parse_time_list(value.get<std::string>(), "snapshots")
                                                : value.get<std::vector<double>>();
            else if (key == "channel") v.channel = parse_channel(value.get<std::string>(), "channel");
            else if (key == "out") v.out = value.get<std::string>();
            else if (key == "seed") v.seed = value.get<std::uint64_t>();
            else throw ConfigError("--config: unknown key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw ConfigError("--config: bad value type: " + std::string(e.what()));
    }
    return v;
}

void write_field_csv(const fs::path& path, const Grid1D& grid, std::span<const Complex> values) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "x,re,im,abs\n";
    for (std::size_t j = 0; j < grid.size(); ++j) {
        out << format_double(grid.x(j)) << ',' << format_double(values[j].real()) << ','
            << format_double(values[j].imag()) << ',' << format_double(std::abs(values[j])) << '\n';
    }
    if (!out) throw IoError("write failed for " + path.string());
}

void write_trace_csv(const fs::path& path, const ZbwTrace& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << "t,mean_x,residual\n";
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        out << format_double(trace.times[i]) << ',' << format_double(trace.mean_x[i]) << ','
            << format_double(trace.residual[i]) << '\n';
    if (!out) throw IoError("write failed for " + path.string());
}

SpinorField4 embedded_gaussian(const Grid1D& grid) {
    const auto psi = gaussian_initial(grid);
    std::vector<Spinor4> values(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) values[j] = {psi[j][0], 0.0, 0.0, psi[j][1]};
    return SpinorField4(grid, std::move(values));
}

double projector_algebra_error(const ModePropagator& modes) {
    double err = 0.0;
    const Mat2 id = Mat2::identity();
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const Mat2& p = modes.projector(i, EnergySign::positive);
        const Mat2& m = modes.projector(i, EnergySign::negative);
        const Mat2& h = modes.hamiltonian(i);
        err = std::max({err, max_abs_diff(p + m, id), max_abs_diff(p * p, p), max_abs_diff(m * m, m),
                        max_abs(p * m), max_abs_diff(h * p, p * h), max_abs_diff(h * m, m * h)});
    }
    return err;
}

}  // namespace

std::vector<double> RunConfig::snapshot_times() const {
    return snapshots.empty() ? default_snapshot_times(t_final) : snapshots;
}

void RunConfig::validate() const {
    if (std::find(kExperiments.begin(), kExperiments.end(), experiment) == kExperiments.end())
        throw ConfigError("unknown experiment '" + experiment + "'");
    if (!is_power_of_two(n) || n < 8) throw ConfigError("--n must be a power of two >= 8, got " + std::to_string(n));
    if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("--length must be positive");
    if (!(mass > 0.0) || !std::isfinite(mass)) throw ConfigError("--mass must be positive");
    if (!(t_final > 0.0) || !std::isfinite(t_final)) throw ConfigError("--tf must be positive");
    if (!(sample_dt > 0.0) || sample_dt > kPi / (8.0 * mass) * (1.0 + 1e-12))
        throw ConfigError("--sample-dt must be in (0, pi/(8 mass)]");
    const auto snaps = snapshot_times();
    if (!std::is_sorted(snaps.begin(), snaps.end())) throw ConfigError("--snapshots must be sorted");
    for (double t : snaps)
        if (!(t >= 0.0 && t <= t_final)) throw ConfigError("--snapshots must lie within [0, tf]");
}

RunConfig parse_config(std::span<const std::string> args) {
    CLI::App app{"Free (1+1)D Dirac transition simulator"};
    app.set_help_flag("-h,--help", "Print this help message and exit");

    std::string experiment = "amplitudes";
    std::size_t n = 0;
    double length = 0, mass = 0, tf = 0, sample_dt = 0;
    std::string snapshots, channel, out, config;
    std::uint64_t seed = 0;

    auto* o_exp = app.add_option("experiment", experiment, "fig1-ci | fig1-rsi | fig2 | amplitudes | "
                                                           "verify-reduction | invariants");
    auto* o_n = app.add_option("--n", n, "grid points (power of two)");
    auto* o_len = app.add_option("--length", length, "domain length L");
    auto* o_mass = app.add_option("--mass", mass, "particle mass");
    auto* o_tf = app.add_option("--tf", tf, "measurement time t_f");
    auto* o_snap = app.add_option("--snapshots", snapshots, "comma-separated snapshot times");
    auto* o_sdt = app.add_option("--sample-dt", sample_dt, "trace sample interval");
    auto* o_chan = app.add_option("--channel", channel, "positive | negative");
    auto* o_out = app.add_option("--out", out, "output directory");
    auto* o_cfg = app.add_option("--config", config, "JSON config file");
    auto* o_seed = app.add_option("--seed", seed, "seed for randomized checks");

    std::vector<const char*> argv{"diracsym"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    RunConfig cfg;
    if (o_cfg->count()) {
        cfg.config_file = config;
        const auto file = read_config_file(config);
        if (file.experiment) cfg.experiment = *file.experiment;
        if (file.n) cfg.n = *file.n;
        if (file.length) cfg.length = *file.length;
        if (file.mass) cfg.mass = *file.mass;
        if (file.tf) cfg.t_final = *file.tf;
        if (file.sample_dt) cfg.sample_dt = *file.sample_dt;
        if (file.snapshots) cfg.snapshots = *file.snapshots;
        if (file.channel) cfg.channel = *file.channel;
        if (file.out) cfg.out_dir = *file.out;
        if (file.seed) cfg.seed = *file.seed;

        auto note = [&cfg](bool in_file, const CLI::Option* opt, const char* name) {
            if (in_file && opt->count())
                cfg.warnings.push_back(std::string("flag ") + name + " overrides the config file value");
        };
        note(file.experiment.has_value(), o_exp, "experiment");
        note(file.n.has_value(), o_n, "--n");
        note(file.length.has_value(), o_len, "--length");
        note(file.mass.has_value(), o_mass, "--mass");
        note(file.tf.has_value(), o_tf, "--tf");
        note(file.sample_dt.has_value(), o_sdt, "--sample-dt");
        note(file.snapshots.has_value(), o_snap, "--snapshots");
        note(file.channel.has_value(), o_chan, "--channel");
        note(file.out.has_value(), o_out, "--out");
        note(file.seed.has_value(), o_seed, "--seed");
    }

    if (o_exp->count()) cfg.experiment = experiment;
    if (o_n->count()) cfg.n = n;
    if (o_len->count()) cfg.length = length;
    if (o_mass->count()) cfg.mass = mass;
    if (o_tf->count()) cfg.t_final = tf;
    if (o_sdt->count()) cfg.sample_dt = sample_dt;
    if (o_snap->count()) cfg.snapshots = parse_time_list(snapshots, "--snapshots");
    if (o_chan->count()) cfg.channel = parse_channel(channel, "--channel");
    if (o_out->count()) cfg.out_dir = out;
    if (o_seed->count()) cfg.seed = seed;

    cfg.validate();
    return cfg;
}

ReportBundle run_experiment(const RunConfig& cfg) {
    cfg.validate();
    const Grid1D grid(cfg.n, cfg.length);

    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + cfg.out_dir.string() + ": " + ec.message());

    auto ci_exp = CiExperiment::standard(grid, cfg.t_final);
    ci_exp.mass = cfg.mass;
    ci_exp.snapshot_times = cfg.snapshot_times();
    ci_exp.sample_dt = cfg.sample_dt;

    auto rsi_exp = RsiExperiment::standard(grid, cfg.t_final, cfg.channel);
    rsi_exp.mass = cfg.mass;
    rsi_exp.snapshot_times = cfg.snapshot_times();
    rsi_exp.sample_dt = cfg.sample_dt;

    const auto ci = run_ci(ci_exp);
    const auto rsi = run_rsi(rsi_exp);
    const auto embedded = embedded_gaussian(grid);

    ReportBundle bundle;
    Headline& h = bundle.headline;
    h.ci_amplitude = ci.transition.amplitude;
    h.ci_probability = ci.transition.probability;
    h.rsi_amplitude = rsi.transition.amplitude;
    h.rsi_probability = rsi.transition.probability;
    h.rsi_amplitude_drift = rsi.amplitude_drift_max;
    h.norm_drift = ci.norm_drift_max;
    h.reduction_error = verify_reduction(embedded, cfg.t_final, cfg.mass);

    json summary;
    summary["experiment"] = cfg.experiment;
    summary["channel"] = to_string(cfg.channel);
    summary["n"] = cfg.n;
    summary["L"] = cfg.length;
    summary["dx"] = grid.dx();
    summary["mass"] = cfg.mass;
    summary["tf"] = cfg.t_final;
    summary["sample_dt"] = cfg.sample_dt;
    summary["dt_policy"] = "exact per-mode spectral propagation, no time stepping";
    summary["snapshot_times"] = cfg.snapshot_times();
    summary["seed"] = cfg.seed;
    summary["A_re"] = h.ci_amplitude.real();
    summary["A_im"] = h.ci_amplitude.imag();
    summary["P"] = h.ci_probability;
    summary["As_re"] = h.rsi_amplitude.real();
    summary["As_im"] = h.rsi_amplitude.imag();
    summary["Ps"] = h.rsi_probability;
    summary["As_drift_max"] = h.rsi_amplitude_drift;
    summary["norm_drift_max"] = h.norm_drift;
    summary["reduction_max_err"] = h.reduction_error;
    summary["rsi_boundary_weight"] = rsi.source_weight;

    auto add_csv = [&](const std::string& name) {
        bundle.csv_files.push_back(cfg.out_dir / name);
        return bundle.csv_files.back();
    };

    if (cfg.experiment == "fig1-ci") {
        for (std::size_t i = 0; i < ci.snapshots.size(); ++i) {
            const auto rho = probability_density(ci.snapshots[i]);
            const std::vector<Complex> values(rho.begin(), rho.end());
            write_field_csv(add_csv("ci_rho_" + std::to_string(i) + ".csv"), grid, values);
        }
    } else if (cfg.experiment == "fig1-rsi") {
        for (std::size_t i = 0; i < rsi.snapshots.size(); ++i)
            write_field_csv(add_csv("rsi_rho_" + std::to_string(i) + ".csv"), grid, rsi.snapshots[i].density);
    } else if (cfg.experiment == "fig2") {
        const auto ci_trace = zbw_trace_ci(ci_exp, cfg.sample_dt);
        const auto rsi_trace = centroid_trace_rsi(rsi_exp, cfg.sample_dt);
        write_trace_csv(add_csv("ci_trace.csv"), ci_trace);
        write_trace_csv(add_csv("rsi_trace.csv"), rsi_trace);
        const auto peak = dominant_frequency(ci_trace.residual, cfg.sample_dt);
        summary["ci_drift_velocity"] = ci_trace.drift_velocity;
        summary["ci_residual_max"] = ci_trace.max_abs_residual();
        summary["ci_zbw_omega"] = peak.omega;
        summary["ci_zbw_amplitude"] = peak.amplitude;
        summary["rsi_drift_velocity"] = rsi_trace.drift_velocity;
        summary["rsi_residual_max"] = rsi_trace.max_abs_residual();
        summary["rsi_amplitude_at_zbw_omega"] = spectral_amplitude(rsi_trace.residual, peak.bin);
    } else if (cfg.experiment == "verify-reduction") {
        const auto random4 = random_packet_field4(grid, cfg.seed);
        summary["reduction_random_max_err"] = verify_reduction(random4, cfg.t_final, cfg.mass);
        const auto evolved = evolve4(embedded, cfg.t_final, cfg.mass);
        summary["block_leakage_max"] = std::max(max_component(evolved, 1), max_component(evolved, 2));
    } else if (cfg.experiment == "invariants") {
        const ModePropagator modes(grid, cfg.mass);
        summary["projector_algebra_max_err"] = projector_algebra_error(modes);
        const auto random2 = random_packet_field2(grid, cfg.seed);
        summary["random_unitarity_drift"] =
            std::abs(norm_squared(evolve(random2, cfg.t_final, modes)) - norm_squared(random2));

        auto neg_exp = rsi_exp;
        neg_exp.channel = cfg.channel == EnergySign::positive ? EnergySign::negative : EnergySign::positive;
        const auto other = run_rsi(neg_exp);
        summary["Ps_channel_difference"] = std::abs(other.transition.probability - rsi.transition.probability);
        summary["As_channel_difference"] = std::abs(other.transition.amplitude - rsi.transition.amplitude);
        summary["As_channel_conj_difference"] =
            std::abs(other.transition.amplitude - std::conj(rsi.transition.amplitude));

        // <phi(t_f)|psi(t_f)> against <U(-t_f) phi|psi(0)>.
        const auto phi_back = evolve(ci_exp.detector, -cfg.t_final, modes);
        auto phi0 = phi_back;
        phi0.set_time(0.0);
        summary["ci_backward_identity_err"] = std::abs(inner_product(phi0, ci_exp.initial) - h.ci_amplitude);
    }

    bundle.summary_path = cfg.out_dir / "summary.json";
    std::ofstream out(bundle.summary_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + bundle.summary_path.string());
    out << summary.dump(2) << '\n';
    if (!out) throw IoError("write failed for " + bundle.summary_path.string());
    return bundle;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const ContractViolation*>(&e) || dynamic_cast<const DomainError*>(&e)) return 3;
    if (dynamic_cast<const IoError*>(&e)) return 4;
    return 1;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg = parse_config(args);
        for (const auto& w : cfg.warnings) err << "warning: " << w << '\n';
        const auto bundle = run_experiment(cfg);
        const auto& h = bundle.headline;
        out << "experiment " << cfg.experiment << " (n=" << cfg.n << ", L=" << format_double(cfg.length)
            << ", tf=" << format_double(cfg.t_final) << ", channel=" << to_string(cfg.channel) << ")\n";
        out << "A   = " << format_complex(h.ci_amplitude) << "   P  = " << format_double(h.ci_probability) << '\n';
        out << "A_s = " << format_complex(h.rsi_amplitude) << "   P_s = " << format_double(h.rsi_probability)
            << '\n';
        out << "summary: " << bundle.summary_path.string() << '\n';
        return 0;
    } catch (const HelpRequested& help) {
        out << help.text;
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
}

}  // namespace diracsym
