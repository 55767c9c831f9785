#pragma once

#include <cstddef>
#include <vector>

#include "diracsym/ci.hpp"
#include "diracsym/continuity.hpp"
#include "diracsym/field.hpp"
#include "diracsym/propagator.hpp"
#include "diracsym/trace.hpp"

namespace diracsym {

/// Transition amplitude density rho_s(x, t) and its current j_s(x, t).
using AmplitudeDensitySnapshot = DensityCurrent;

/// A transition between a source state fixed at t_initial and a detector state
/// fixed at t_final, restricted to one energy sign.
///
/// Positive channel: psi+ = P+(source) is evolved forward from t_initial,
/// phi+ = P+(detector) backward from t_final, and
///   rho_s = phi+^dagger psi+,   j_s = c phi+^dagger sigma_x psi+.
/// Negative channel: the same with P-, in the reversed order
///   rho_s = psi-^dagger phi-,   j_s = c psi-^dagger sigma_x phi-.
struct RsiExperiment {
    Grid1D grid;
    double mass;
    SpinorField2 source;    ///< boundary state at t_initial
    SpinorField2 detector;  ///< boundary state at t_final
    double t_initial = 0.0;
    double t_final = 40.0;
    EnergySign channel = EnergySign::positive;
    std::vector<double> snapshot_times;
    double sample_dt = kDefaultSampleDt;
    std::size_t amplitude_samples = 41;
    /// Rescale both projected boundary states to unit norm.
    bool normalize_boundaries = true;
    bool check_boundary = true;

    /// Both boundaries equal to the gaussian_initial state, t_initial = 0.
    static RsiExperiment standard(const Grid1D& grid = Grid1D::default_grid(), double t_final = 40.0,
                                  EnergySign channel = EnergySign::positive);

    void validate() const;
};

/// Projected (and optionally renormalized) boundary states of one channel.
struct RsiBoundaries {
    EnergySign channel;
    SpinorField2 source;    ///< tagged t_initial
    SpinorField2 detector;  ///< tagged t_final
    double source_weight;   ///< ||P source||^2 before renormalization
    double detector_weight;
    bool empty;             ///< neither boundary has content in this channel
};

/// Throws EnergySignMismatch when exactly one boundary has no content in the
/// selected channel (a mixed-sign transition).
RsiBoundaries rsi_boundaries(const RsiExperiment& exp, const ModePropagator& modes);

/// rho_s and j_s at time t from prepared boundaries.
AmplitudeDensitySnapshot rsi_density_at(const RsiBoundaries& b, double t, const ModePropagator& modes);

struct RsiResult {
    EnergySign channel = EnergySign::positive;
    std::vector<AmplitudeDensitySnapshot> snapshots;
    TransitionResult transition;           ///< A_s from the t_initial sample, P_s = |A_s|^2
    ComplexTimeSeries amplitude_series;    ///< A_s(t) = sum rho_s dx at uniform samples
    double amplitude_drift_max = 0.0;      ///< max_t |A_s(t) - A_s(t_initial)|
    double source_weight = 0.0;
    double detector_weight = 0.0;
};

/// Runs the channel selected in `exp`.
RsiResult run_rsi(const RsiExperiment& exp);
/// Requires exp.channel == negative (ConfigError otherwise).
RsiResult run_rsi_negative(const RsiExperiment& exp);

/// <x>(t) of the weight |rho_s(x, t)| over [t_initial, t_final] with the drift
/// removed. Throws DomainError if the total weight drops below 1e-14.
ZbwTrace centroid_trace_rsi(const RsiExperiment& exp, double sample_dt);

/// rho_s and j_s at each requested time (for the continuity check).
std::vector<AmplitudeDensitySnapshot> rsi_density_snapshots(const RsiExperiment& exp,
                                                            const std::vector<double>& times);

/// local_conservation applied to amplitude density snapshots.
TimeSeries local_conservation_rsi(std::span<const AmplitudeDensitySnapshot> snapshots, const Grid1D& grid,
                                  std::size_t spatial_stride = 1);

}  // namespace diracsym
