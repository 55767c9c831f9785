#include "diracsym/ci.hpp"

#include <cmath>
#include <sstream>

#include "diracsym/errors.hpp"

namespace diracsym {

namespace {

void require_normalized(const SpinorField2& psi, const char* what) {
    const double norm = norm_squared(psi);
    if (std::abs(norm - 1.0) > 1e-12) {
        std::ostringstream os;
        os << what << " is not normalized (norm^2 = " << norm << ")";
        throw ContractViolation(os.str());
    }
}

void require_resolved_zbw(double sample_dt, double mass) {
    if (!(sample_dt > 0.0) || sample_dt > kPi / (8.0 * mass) * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "trace sample interval " << sample_dt << " must be in (0, pi/(8 m)]";
        throw ConfigError(os.str());
    }
}

}  // namespace

TransitionResult make_transition(Complex amplitude) { return {amplitude, std::norm(amplitude)}; }

std::vector<double> default_snapshot_times(double t_final) {
    return {0.0, t_final / 3.0, 2.0 * t_final / 3.0, t_final};
}

CiExperiment CiExperiment::standard(const Grid1D& grid, double t_final) {
    auto psi = gaussian_initial(grid);
    auto phi = psi;
    phi.set_time(t_final);
    return CiExperiment{grid, 1.0, std::move(psi), std::move(phi), t_final, default_snapshot_times(t_final)};
}

void CiExperiment::validate() const {
    if (!(initial.grid() == grid) || !(detector.grid() == grid))
        throw ConfigError("CI experiment states must live on the experiment grid");
    if (!(t_final >= 0.0)) throw ConfigError("t_final must be non-negative");
    EvolutionPlan plan{grid, mass, 0.0, t_final, snapshot_times};
    plan.validate();
    require_normalized(initial, "initial state");
    require_normalized(detector, "detector state");
}

CiResult run_ci(const CiExperiment& exp) {
    exp.validate();
    const ModePropagator modes(exp.grid, exp.mass);
    SpinorField2 psi0 = exp.initial;
    psi0.set_time(0.0);

    CiResult result;
    for (double t : exp.snapshot_times) {
        auto snap = evolve(psi0, t, modes);
        if (exp.check_boundary) check_boundary(snap, "CI snapshot");
        result.snapshots.push_back(std::move(snap));
    }

    const auto psi_f = evolve(psi0, exp.t_final, modes);
    if (exp.check_boundary) check_boundary(psi_f, "CI measurement");
    SpinorField2 phi = exp.detector;
    phi.set_time(exp.t_final);
    result.transition = make_transition(inner_product(phi, psi_f));

    for (double t : uniform_times(0.0, exp.t_final, exp.sample_dt)) {
        const double norm = norm_squared(evolve(psi0, t, modes));
        result.norms.times.push_back(t);
        result.norms.values.push_back(norm);
    }
    result.norm_drift_max = result.norms.max_deviation(1.0);
    return result;
}

ZbwTrace zbw_trace_ci(const CiExperiment& exp, double sample_dt) {
    exp.validate();
    require_resolved_zbw(sample_dt, exp.mass);
    const ModePropagator modes(exp.grid, exp.mass);
    SpinorField2 psi0 = exp.initial;
    psi0.set_time(0.0);

    auto times = uniform_times(0.0, exp.t_final, sample_dt);
    std::vector<double> mean_x;
    mean_x.reserve(times.size());
    for (double t : times) {
        const auto psi = evolve(psi0, t, modes);
        if (exp.check_boundary) check_boundary(psi, "CI trace");
        mean_x.push_back(mean_position(probability_density(psi), exp.grid));
    }
    return fit_drift(std::move(times), std::move(mean_x));
}

std::vector<DensityCurrent> ci_density_snapshots(const CiExperiment& exp, const std::vector<double>& times) {
    const ModePropagator modes(exp.grid, exp.mass);
    SpinorField2 psi0 = exp.initial;
    psi0.set_time(0.0);
    std::vector<DensityCurrent> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(probability_density_current(evolve(psi0, t, modes), modes.c()));
    return out;
}

}  // namespace diracsym
