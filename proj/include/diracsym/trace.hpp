#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "diracsym/numerics.hpp"

namespace diracsym {

/// Real samples against time.
struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;

    std::size_t size() const { return times.size(); }
    /// max_i |values_i - reference|.
    double max_deviation(double reference) const;
};

struct ComplexTimeSeries {
    std::vector<double> times;
    std::vector<Complex> values;

    std::size_t size() const { return times.size(); }
};

/// Mean-position record with its least-squares drift removed.
struct ZbwTrace {
    std::vector<double> times;
    std::vector<double> mean_x;
    double drift_velocity = 0.0;
    double intercept = 0.0;
    std::vector<double> residual;

    double max_abs_residual() const;
};

/// t_begin + i dt for i = 0 .. floor((t_end - t_begin)/dt). Throws ConfigError
/// for dt <= 0 or a reversed window.
std::vector<double> uniform_times(double t_begin, double t_end, double dt);
/// `count` evenly spaced times covering [t_begin, t_end] inclusive (count >= 2).
std::vector<double> linspace(double t_begin, double t_end, std::size_t count);

/// Fits mean_x ~ v t + b by least squares and stores the residual.
ZbwTrace fit_drift(std::vector<double> times, std::vector<double> mean_x);

struct SpectralPeak {
    double omega = 0.0;      ///< angular frequency of the bin
    double amplitude = 0.0;  ///< single-sided amplitude 2|X_q|/M
    std::size_t bin = 0;
};

/// Single-sided amplitude of bin q of the direct DFT of `samples`.
double spectral_amplitude(std::span<const double> samples, std::size_t bin);
/// Largest nonzero-frequency bin of uniformly sampled data (spacing dt).
SpectralPeak dominant_frequency(std::span<const double> samples, double dt);

}  // namespace diracsym
