// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance               run every criterion
//   acceptance --criterion N run criterion N only (exit status 1 on failure)
#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "diracsym/ci.hpp"
#include "diracsym/cli.hpp"
#include "diracsym/continuity.hpp"
#include "diracsym/propagator.hpp"
#include "diracsym/random_fields.hpp"
#include "diracsym/reduction4.hpp"
#include "diracsym/rsi.hpp"

using namespace diracsym;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> lines;  // measured values and notes

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        lines.push_back(std::string(ok ? "ok   " : "miss ") + what);
    }
    void note(const std::string& what) { lines.push_back("info " + what); }
};

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string g(double v) { return fmt("%.6g", v); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const Grid1D kGrid = Grid1D::default_grid();
const Grid1D kFine(4096, 256.0);

Outcome ci_amplitude() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run_ci(CiExperiment::standard(kGrid));
    const double elapsed = seconds_since(t0);
    const Complex a = r.transition.amplitude;
    o.check(std::abs(a.real() - -0.584) <= 0.01, "Re A = " + g(a.real()) + " (target -0.584 +- 0.01)");
    o.check(std::abs(a.imag() - -0.010) <= 0.01, "Im A = " + g(a.imag()) + " (target -0.010 +- 0.01)");
    o.check(std::abs(r.transition.probability - 0.341) <= 0.005,
            "P = " + g(r.transition.probability) + " (target 0.341 +- 0.005)");
    o.check(elapsed < 5.0, "runtime " + fmt("%.3f", elapsed) + " s (< 5 s)");
    return o;
}

Outcome rsi_amplitude() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run_rsi(RsiExperiment::standard(kGrid));
    const double elapsed = seconds_since(t0);
    const Complex a = r.transition.amplitude;
    o.check(std::abs(a.real() - -0.607) <= 0.01, "Re A_s = " + g(a.real()) + " (target -0.607 +- 0.01)");
    o.check(std::abs(a.imag() - -0.161) <= 0.01, "Im A_s = " + g(a.imag()) + " (target -0.161 +- 0.01)");
    o.check(std::abs(r.transition.probability - 0.394) <= 0.005,
            "P_s = " + g(r.transition.probability) + " (target 0.394 +- 0.005)");
    o.check(elapsed < 5.0, "runtime " + fmt("%.3f", elapsed) + " s (< 5 s)");
    o.note("projected boundary weights " + g(r.source_weight) + ", " + g(r.detector_weight));
    return o;
}

Outcome amplitude_constancy() {
    Outcome o;
    const auto r = run_rsi(RsiExperiment::standard(kGrid));
    o.check(r.amplitude_series.size() == 41, "samples = " + std::to_string(r.amplitude_series.size()));
    o.check(r.amplitude_drift_max < 1e-10, "max |A_s(t) - A_s(0)| = " + g(r.amplitude_drift_max) + " (< 1e-10)");
    return o;
}

Outcome unitarity() {
    Outcome o;
    const auto r = run_ci(CiExperiment::standard(kGrid));
    o.check(r.norm_drift_max < 1e-12, "max |norm(t) - 1| = " + g(r.norm_drift_max) + " over " +
                                          std::to_string(r.norms.size()) + " samples (< 1e-12)");
    return o;
}

Outcome zitterbewegung() {
    Outcome o;
    const double dt = kDefaultSampleDt;
    const auto ci = zbw_trace_ci(CiExperiment::standard(kGrid), dt);
    const auto rsi = centroid_trace_rsi(RsiExperiment::standard(kGrid), dt);
    const auto rsi_fine = centroid_trace_rsi(RsiExperiment::standard(kFine), dt);

    const auto peak = dominant_frequency(ci.residual, dt);
    o.check(std::abs(peak.omega - 2.0) <= 0.15 * 2.0,
            "CI residual peak omega = " + g(peak.omega) + " (2 +- 15%), amplitude " + g(peak.amplitude));

    const double rsi_at_peak = spectral_amplitude(rsi.residual, peak.bin);
    const double ratio = peak.amplitude / rsi_at_peak;
    o.check(ratio >= 50.0, "CI peak / RSI amplitude at the same frequency = " + g(ratio) + " (>= 50)");
    o.note("CI peak / RSI max|residual| = " + g(peak.amplitude / rsi.max_abs_residual()));

    const double r2048 = rsi.max_abs_residual();
    const double r4096 = rsi_fine.max_abs_residual();
    o.check(r2048 < 0.006, "RSI max|residual| at n = 2048 is " + g(r2048) + " (< 0.006)");
    o.check(r4096 < r2048, "RSI max|residual| at n = 4096 is " + g(r4096) + " (strictly below n = 2048, difference " +
                               g(r2048 - r4096) + ")");

    const auto rsi_peak = dominant_frequency(rsi.residual, dt);
    o.note("RSI residual dominant omega = " + g(rsi_peak.omega) + ", amplitude " + g(rsi_peak.amplitude));
    o.note("RSI drift velocity " + g(rsi.drift_velocity) + ", CI drift velocity " + g(ci.drift_velocity));
    return o;
}

Outcome antiparticle_channel() {
    Outcome o;
    const auto plus = run_rsi(RsiExperiment::standard(kGrid));
    const auto minus = run_rsi_negative(RsiExperiment::standard(kGrid, 40.0, EnergySign::negative));
    const double dp = std::abs(minus.transition.probability - plus.transition.probability);
    o.check(dp < 1e-10, "|P_s- - P_s+| = " + g(dp) + " (< 1e-10)");
    const double same = std::abs(minus.transition.amplitude - plus.transition.amplitude);
    const double conj = std::abs(minus.transition.amplitude - std::conj(plus.transition.amplitude));
    o.check(same < 1e-12, "regression A_s- = A_s+: difference " + g(same) + " (< 1e-12)");
    o.note("|A_s- - conj(A_s+)| = " + g(conj));
    return o;
}

Outcome projector_algebra() {
    Outcome o;
    const ModePropagator modes(kGrid, 1.0);
    double sum = 0, idem = 0, orth = 0, comm = 0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const Mat2& p = modes.projector(i, EnergySign::positive);
        const Mat2& m = modes.projector(i, EnergySign::negative);
        const Mat2& h = modes.hamiltonian(i);
        sum = std::max(sum, max_abs_diff(p + m, Mat2::identity()));
        idem = std::max({idem, max_abs_diff(p * p, p), max_abs_diff(m * m, m)});
        orth = std::max({orth, max_abs(p * m), max_abs(m * p)});
        comm = std::max({comm, max_abs_diff(h * p, p * h), max_abs_diff(h * m, m * h)});
    }
    o.check(sum < 1e-13, "max |P+ + P- - I| = " + g(sum));
    o.check(idem < 1e-13, "max |P^2 - P| = " + g(idem));
    o.check(orth < 1e-13, "max |P+ P-| = " + g(orth));
    o.check(comm < 1e-13, "max |[H, P]| = " + g(comm));
    return o;
}

double residual_at_20(bool rsi, double dt, std::size_t stride) {
    const std::vector<double> times{20.0 - dt, 20.0, 20.0 + dt};
    if (rsi) {
        const auto s = rsi_density_snapshots(RsiExperiment::standard(kGrid), times);
        return local_conservation_rsi(s, kGrid, stride).values.at(0);
    }
    const auto s = ci_density_snapshots(CiExperiment::standard(kGrid), times);
    return local_conservation(s, kGrid, stride).values.at(0);
}

Outcome continuity() {
    Outcome o;
    for (bool rsi : {false, true}) {
        const double coarse = residual_at_20(rsi, 0.2, 4);
        const double fine = residual_at_20(rsi, 0.1, 2);
        const double ratio = coarse / fine;
        o.check(std::abs(ratio - 4.0) <= 0.8, std::string(rsi ? "RSI" : "CI") + " residual ratio on halving = " +
                                                  g(ratio) + " (" + g(coarse) + " / " + g(fine) + ", 4 +- 20%)");
    }

    const ModePropagator modes(kGrid, 1.0);
    const Mat2& p = modes.projector(5, EnergySign::positive);
    const double n = std::sqrt(std::norm(p(0, 0)) + std::norm(p(1, 0)));
    const auto w = SpinorField2::plane_wave(kGrid, 5, {p(0, 0) / n, p(1, 0) / n});
    std::vector<DensityCurrent> snaps;
    for (int i = 0; i < 4; ++i) {
        snaps.push_back(probability_density_current(evolve(w, 0.5 * i, modes)));
        snaps.back().t = 0.5 * i;
    }
    double single = 0.0;
    for (double v : local_conservation(snaps, kGrid).values) single = std::max(single, v);
    o.check(single < 1e-12, "single-mode residual = " + g(single) + " (< 1e-12)");
    return o;
}

Outcome reduction() {
    Outcome o;
    const double a = std::pow(1.0 / (32.0 * kPi), 0.25);
    const auto embedded = SpinorField4::from_profile(
        kGrid, [a](double x) { return Complex(a * std::exp(-x * x / 16.0)); }, {1.0, 0.0, 0.0, 1.0});
    const double e_gauss = verify_reduction(embedded, 40.0);
    const double e_rand = verify_reduction(random_packet_field4(kGrid, 20240229), 17.3);
    o.check(e_gauss < 1e-12, "embedded Gaussian discrepancy = " + g(e_gauss) + " (< 1e-12)");
    o.check(e_rand < 1e-12, "random 4-spinor discrepancy = " + g(e_rand) + " (< 1e-12)");

    const auto out = evolve4(embedded, 40.0, 1.0);
    const double leak = std::max(max_component(out, 1), max_component(out, 2));
    o.check(leak < 1e-13, "block-closure leakage = " + g(leak) + " (< 1e-13)");
    return o;
}

Outcome resolution() {
    Outcome o;
    const auto ci = run_ci(CiExperiment::standard(kGrid)).transition;
    const auto ci_fine = run_ci(CiExperiment::standard(kFine)).transition;
    const auto rsi = run_rsi(RsiExperiment::standard(kGrid)).transition;
    const auto rsi_fine = run_rsi(RsiExperiment::standard(kFine)).transition;
    const double da = std::abs(ci.amplitude - ci_fine.amplitude);
    const double dp = std::abs(ci.probability - ci_fine.probability);
    const double das = std::abs(rsi.amplitude - rsi_fine.amplitude);
    const double dps = std::abs(rsi.probability - rsi_fine.probability);
    o.check(da < 1e-6, "|A(4096) - A(2048)| = " + g(da));
    o.check(dp < 1e-6, "|P(4096) - P(2048)| = " + g(dp));
    o.check(das < 1e-6, "|A_s(4096) - A_s(2048)| = " + g(das));
    o.check(dps < 1e-6, "|P_s(4096) - P_s(2048)| = " + g(dps));
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome determinism() {
    Outcome o;
    const fs::path root = fs::temp_directory_path() / "diracsym_acceptance_determinism";
    fs::remove_all(root);
    std::ostringstream sink;
    for (const char* run : {"a", "b"}) {
        for (const char* exp : {"fig1-ci", "fig1-rsi", "fig2"}) {
            const std::vector<std::string> args{exp, "--out", (root / run).string()};
            if (run_cli(args, sink, sink) != 0) {
                o.check(false, std::string("run of ") + exp + " failed: " + sink.str());
                return o;
            }
        }
    }
    std::size_t compared = 0, differing = 0;
    for (const auto& entry : fs::directory_iterator(root / "a")) {
        if (entry.path().extension() != ".csv") continue;
        ++compared;
        if (slurp(entry.path()) != slurp(root / "b" / entry.path().filename())) ++differing;
    }
    o.check(compared > 0 && differing == 0,
            std::to_string(compared) + " CSV files compared, " + std::to_string(differing) + " differ");
    fs::remove_all(root);
    return o;
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria{
    {"CI amplitude", ci_amplitude},
    {"RSI amplitude", rsi_amplitude},
    {"A_s constancy", amplitude_constancy},
    {"unitarity", unitarity},
    {"zitterbewegung contrast", zitterbewegung},
    {"antiparticle channel", antiparticle_channel},
    {"projector algebra", projector_algebra},
    {"continuity laws", continuity},
    {"4-spinor reduction", reduction},
    {"resolution robustness", resolution},
    {"determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diracsym acceptance suite"};
    int only = 0;
    app.add_option("--criterion", only, "run a single criterion (1-11)")
        ->check(CLI::Range(1, static_cast<int>(kCriteria.size())));
    CLI11_PARSE(app, argc, argv);

    set_warning_sink([](const std::string& m) { std::cerr << "warning: " << m << '\n'; });

    int failures = 0;
    for (std::size_t i = 0; i < kCriteria.size(); ++i) {
        if (only != 0 && static_cast<int>(i) + 1 != only) continue;
        Outcome out;
        try {
            out = kCriteria[i].run();
        } catch (const std::exception& e) {
            out.check(false, std::string("threw: ") + e.what());
        }
        std::cout << (out.pass ? "[PASS]" : "[FAIL]") << " C" << i + 1 << " " << kCriteria[i].name << '\n';
        for (const auto& line : out.lines) std::cout << "       " << line << '\n';
        if (!out.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
