#pragma once

#include <vector>

#include "diracsym/continuity.hpp"
#include "diracsym/field.hpp"
#include "diracsym/propagator.hpp"
#include "diracsym/trace.hpp"

namespace diracsym {

/// Complex amplitude and its squared modulus for one (initial, final) pair.
struct TransitionResult {
    Complex amplitude;
    double probability = 0.0;
};

TransitionResult make_transition(Complex amplitude);

/// Default snapshot schedule {0, tf/3, 2tf/3, tf}.
std::vector<double> default_snapshot_times(double t_final);
inline const double kDefaultSampleDt = kPi / 32.0;

/// Forward evolution of a prepared state from t = 0 and its measurement at t_final
/// against a detector state.
struct CiExperiment {
    Grid1D grid;
    double mass;
    SpinorField2 initial;   ///< psi(x, 0)
    SpinorField2 detector;  ///< phi(x, t_final)
    double t_final;
    std::vector<double> snapshot_times;
    double sample_dt = kDefaultSampleDt;
    bool check_boundary = true;

    /// The Gaussian of gaussian_initial prepared at t = 0 and detected at t_final = 40.
    static CiExperiment standard(const Grid1D& grid = Grid1D::default_grid(), double t_final = 40.0);

    /// Throws ConfigError for schedule problems and ContractViolation when the
    /// initial or detector state is not normalized to 1e-12.
    void validate() const;
};

struct CiResult {
    std::vector<SpinorField2> snapshots;
    TransitionResult transition;  ///< A = <phi(t_f)|psi(t_f)>, P = |A|^2
    TimeSeries norms;             ///< ||psi(t)||^2 over the uniform sample schedule
    double norm_drift_max = 0.0;  ///< max |norm(t) - 1|
};

/// Evolves the initial state to each snapshot and to t_final, and evaluates the
/// transition amplitude at t_final only. Throws BoundaryContamination naming the
/// offending time.
CiResult run_ci(const CiExperiment& exp);

/// <x>(t) of psi^dagger psi sampled every `sample_dt` over [0, t_final] with the
/// least-squares drift removed. sample_dt must resolve the zitterbewegung period
/// (<= pi/(8 m)).
ZbwTrace zbw_trace_ci(const CiExperiment& exp, double sample_dt);

/// rho and j of the evolved state at each requested time.
std::vector<DensityCurrent> ci_density_snapshots(const CiExperiment& exp, const std::vector<double>& times);

}  // namespace diracsym
