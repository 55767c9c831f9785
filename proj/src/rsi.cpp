#include "diracsym/rsi.hpp"

#include <cmath>
#include <sstream>

#include "diracsym/errors.hpp"

namespace diracsym {

namespace {

// Projected weight below this fraction of the raw weight counts as no content.
constexpr double kEmptyChannel = 1e-20;

struct EvolvedPair {
    SpinorField2 forward;   // psi(t) from the source
    SpinorField2 backward;  // phi(t) from the detector
};

EvolvedPair evolve_pair(const RsiBoundaries& b, double t, const ModePropagator& modes) {
    EvolvedPair p{evolve(b.source, t - b.source.time(), modes), evolve(b.detector, t - b.detector.time(), modes)};
    // t_f + (t - t_f) need not round back to t.
    p.forward.set_time(t);
    p.backward.set_time(t);
    return p;
}

// Density ordering per channel: phi^dagger psi (positive), psi^dagger phi (negative).
const SpinorField2& bra_of(const RsiBoundaries& b, const EvolvedPair& p) {
    return b.channel == EnergySign::positive ? p.backward : p.forward;
}
const SpinorField2& ket_of(const RsiBoundaries& b, const EvolvedPair& p) {
    return b.channel == EnergySign::positive ? p.forward : p.backward;
}

AmplitudeDensitySnapshot density_of(const RsiBoundaries& b, const EvolvedPair& p, double t, double c) {
    const auto& bra = bra_of(b, p);
    const auto& ket = ket_of(b, p);
    AmplitudeDensitySnapshot s;
    s.t = t;
    s.density.resize(bra.size());
    s.current.resize(bra.size());
    for (std::size_t j = 0; j < bra.size(); ++j) {
        const Complex u0 = std::conj(bra[j][0]);
        const Complex u1 = std::conj(bra[j][1]);
        s.density[j] = u0 * ket[j][0] + u1 * ket[j][1];
        s.current[j] = c * (u0 * ket[j][1] + u1 * ket[j][0]);
    }
    return s;
}

void check_pair(const RsiExperiment& exp, const EvolvedPair& p, const char* label) {
    if (!exp.check_boundary) return;
    check_boundary(p.forward, std::string(label) + " (forward state)");
    check_boundary(p.backward, std::string(label) + " (backward state)");
}

}  // namespace

RsiExperiment RsiExperiment::standard(const Grid1D& grid, double t_final, EnergySign channel) {
    auto source = gaussian_initial(grid);
    auto detector = source;
    detector.set_time(t_final);
    return RsiExperiment{grid,    1.0,     std::move(source), std::move(detector), 0.0,
                         t_final, channel, default_snapshot_times(t_final)};
}

void RsiExperiment::validate() const {
    if (!(source.grid() == grid) || !(detector.grid() == grid))
        throw ConfigError("RSI boundary states must live on the experiment grid");
    if (!(t_final >= t_initial)) throw ConfigError("t_final must not precede t_initial");
    if (amplitude_samples < 2) throw ConfigError("need at least two amplitude samples");
    EvolutionPlan plan{grid, mass, t_initial, t_final, snapshot_times};
    plan.validate();
}

RsiBoundaries rsi_boundaries(const RsiExperiment& exp, const ModePropagator& modes) {
    auto src = project(exp.source, exp.channel, modes);
    auto det = project(exp.detector, exp.channel, modes);
    src.set_time(exp.t_initial);
    det.set_time(exp.t_final);

    const double ws = norm_squared(src);
    const double wd = norm_squared(det);
    const bool src_empty = !(ws > kEmptyChannel * norm_squared(exp.source));
    const bool det_empty = !(wd > kEmptyChannel * norm_squared(exp.detector));
    if (src_empty != det_empty) {
        std::ostringstream os;
        os << "mixed-sign transition: " << (src_empty ? "source" : "detector") << " has no "
           << to_string(exp.channel) << "-energy content";
        throw EnergySignMismatch(os.str());
    }
    const bool empty = src_empty && det_empty;
    if (exp.normalize_boundaries && !empty) {
        src *= 1.0 / std::sqrt(ws);
        det *= 1.0 / std::sqrt(wd);
    }
    return RsiBoundaries{exp.channel, std::move(src), std::move(det), ws, wd, empty};
}

AmplitudeDensitySnapshot rsi_density_at(const RsiBoundaries& b, double t, const ModePropagator& modes) {
    return density_of(b, evolve_pair(b, t, modes), t, modes.c());
}

RsiResult run_rsi(const RsiExperiment& exp) {
    exp.validate();
    const ModePropagator modes(exp.grid, exp.mass);
    const auto b = rsi_boundaries(exp, modes);

    RsiResult result;
    result.channel = exp.channel;
    result.source_weight = b.source_weight;
    result.detector_weight = b.detector_weight;

    for (double t : exp.snapshot_times) {
        const auto pair = evolve_pair(b, t, modes);
        if (!b.empty) check_pair(exp, pair, "RSI snapshot");
        result.snapshots.push_back(density_of(b, pair, t, modes.c()));
    }

    for (double t : linspace(exp.t_initial, exp.t_final, exp.amplitude_samples)) {
        const auto pair = evolve_pair(b, t, modes);
        if (!b.empty) check_pair(exp, pair, "RSI amplitude sample");
        result.amplitude_series.times.push_back(t);
        result.amplitude_series.values.push_back(inner_product(bra_of(b, pair), ket_of(b, pair)));
    }

    const Complex a0 = result.amplitude_series.values.front();
    for (const auto& a : result.amplitude_series.values)
        result.amplitude_drift_max = std::max(result.amplitude_drift_max, std::abs(a - a0));
    result.transition = make_transition(a0);
    return result;
}

RsiResult run_rsi_negative(const RsiExperiment& exp) {
    if (exp.channel != EnergySign::negative)
        throw ConfigError("run_rsi_negative requires the negative energy channel");
    return run_rsi(exp);
}

ZbwTrace centroid_trace_rsi(const RsiExperiment& exp, double sample_dt) {
    exp.validate();
    if (!(sample_dt > 0.0) || sample_dt > kPi / (8.0 * exp.mass) * (1.0 + 1e-12))
        throw ConfigError("trace sample interval must be in (0, pi/(8 m)]");
    const ModePropagator modes(exp.grid, exp.mass);
    const auto b = rsi_boundaries(exp, modes);

    auto times = uniform_times(exp.t_initial, exp.t_final, sample_dt);
    std::vector<double> mean_x;
    mean_x.reserve(times.size());
    std::vector<double> weight(exp.grid.size());
    for (double t : times) {
        const auto pair = evolve_pair(b, t, modes);
        check_pair(exp, pair, "RSI trace");
        const auto snap = density_of(b, pair, t, modes.c());
        double total = 0.0;
        for (std::size_t j = 0; j < weight.size(); ++j) {
            weight[j] = std::abs(snap.density[j]);
            total += weight[j];
        }
        if (total * exp.grid.dx() < 1e-14) {
            std::ostringstream os;
            os << "degenerate |rho_s| weight at t = " << t;
            throw DomainError(os.str());
        }
        mean_x.push_back(mean_position(weight, exp.grid));
    }
    return fit_drift(std::move(times), std::move(mean_x));
}

std::vector<AmplitudeDensitySnapshot> rsi_density_snapshots(const RsiExperiment& exp,
                                                            const std::vector<double>& times) {
    exp.validate();
    const ModePropagator modes(exp.grid, exp.mass);
    const auto b = rsi_boundaries(exp, modes);
    std::vector<AmplitudeDensitySnapshot> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(rsi_density_at(b, t, modes));
    return out;
}

TimeSeries local_conservation_rsi(std::span<const AmplitudeDensitySnapshot> snapshots, const Grid1D& grid,
                                  std::size_t spatial_stride) {
    return local_conservation(snapshots, grid, spatial_stride);
}

}  // namespace diracsym
