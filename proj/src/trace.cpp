#include "diracsym/trace.hpp"

#include <algorithm>
#include <cmath>

#include "diracsym/errors.hpp"

namespace diracsym {

double TimeSeries::max_deviation(double reference) const {
    double r = 0.0;
    for (double v : values) r = std::max(r, std::abs(v - reference));
    return r;
}

double ZbwTrace::max_abs_residual() const {
    double r = 0.0;
    for (double v : residual) r = std::max(r, std::abs(v));
    return r;
}

std::vector<double> uniform_times(double t_begin, double t_end, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("sample interval must be positive");
    if (!(t_end >= t_begin)) throw ConfigError("sample window is reversed");
    // Tolerate t_end/dt landing a few ulps below an integer.
    const auto steps = static_cast<std::size_t>(std::floor((t_end - t_begin) / dt + 1e-9));
    std::vector<double> ts(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) ts[i] = t_begin + static_cast<double>(i) * dt;
    return ts;
}

std::vector<double> linspace(double t_begin, double t_end, std::size_t count) {
    if (count < 2) throw ConfigError("linspace needs at least two points");
    std::vector<double> ts(count);
    const double step = (t_end - t_begin) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) ts[i] = t_begin + static_cast<double>(i) * step;
    ts.back() = t_end;
    return ts;
}

ZbwTrace fit_drift(std::vector<double> times, std::vector<double> mean_x) {
    if (times.size() != mean_x.size() || times.size() < 2)
        throw ConfigError("fit_drift needs at least two matching samples");
    const auto n = static_cast<double>(times.size());
    double t_mean = 0.0, x_mean = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        t_mean += times[i];
        x_mean += mean_x[i];
    }
    t_mean /= n;
    x_mean /= n;
    double stt = 0.0, stx = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double dt = times[i] - t_mean;
        stt += dt * dt;
        stx += dt * (mean_x[i] - x_mean);
    }
    ZbwTrace trace;
    trace.drift_velocity = stt > 0.0 ? stx / stt : 0.0;
    trace.intercept = x_mean - trace.drift_velocity * t_mean;
    trace.residual.resize(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        trace.residual[i] = mean_x[i] - (trace.drift_velocity * times[i] + trace.intercept);
    trace.times = std::move(times);
    trace.mean_x = std::move(mean_x);
    return trace;
}

double spectral_amplitude(std::span<const double> samples, std::size_t bin) {
    const std::size_t m = samples.size();
    Complex sum{};
    for (std::size_t j = 0; j < m; ++j) {
        // Reduce j*bin mod m before scaling so the phase stays exact for long records.
        const double angle = -2.0 * kPi * static_cast<double>((j * bin) % m) / static_cast<double>(m);
        sum += samples[j] * Complex(std::cos(angle), std::sin(angle));
    }
    return 2.0 * std::abs(sum) / static_cast<double>(m);
}

SpectralPeak dominant_frequency(std::span<const double> samples, double dt) {
    if (samples.size() < 4) throw ConfigError("dominant_frequency needs at least four samples");
    SpectralPeak best;
    for (std::size_t q = 1; q <= samples.size() / 2; ++q) {
        const double amp = spectral_amplitude(samples, q);
        if (amp > best.amplitude) best = {0.0, amp, q};
    }
    best.omega = 2.0 * kPi * static_cast<double>(best.bin) / (static_cast<double>(samples.size()) * dt);
    return best;
}

}  // namespace diracsym
