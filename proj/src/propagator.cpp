#include "diracsym/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "diracsym/errors.hpp"

namespace diracsym {

namespace {

template <typename PerMode>
SpinorField2 apply_per_mode(const SpinorField2& psi, const ModePropagator& modes, PerMode&& op) {
    if (!(psi.grid() == modes.grid())) throw ConfigError("field and mode table use different grids");
    SpectrumBuffer spectrum = dft_forward(psi.values());
    for (std::size_t i = 0; i < spectrum.size(); ++i) spectrum.modes[i] = op(i) * spectrum.modes[i];
    return SpinorField2(psi.grid(), dft_inverse(spectrum, psi.size()), psi.time());
}

}  // namespace

const char* to_string(EnergySign sign) { return sign == EnergySign::positive ? "positive" : "negative"; }

ModePropagator::ModePropagator(const Grid1D& grid, double mass, double c, double hbar)
    : grid_(grid), mass_(mass), c_(c), hbar_(hbar) {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("particle mass must be positive");
    if (!(c > 0.0) || !(hbar > 0.0)) throw DomainError("c and hbar must be positive");

    const double rest = mass * c * c;
    modes_.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Mode m;
        m.k = grid.k(i);
        const double kinetic = c * hbar * m.k;
        const double energy = std::hypot(kinetic, rest);
        m.omega = energy / hbar;
        m.hamiltonian = Complex(kinetic) * sigma_x() + Complex(rest) * sigma_z();
        // (I +- H/E)/2 assembled entrywise; H/E has entries of modulus <= 1.
        const double a = kinetic / energy;
        const double b = rest / energy;
        m.p_plus = Mat2::identity();
        m.p_plus(0, 0) = 0.5 * (1.0 + b);
        m.p_plus(1, 1) = 0.5 * (1.0 - b);
        m.p_plus(0, 1) = m.p_plus(1, 0) = 0.5 * a;
        m.p_minus = Mat2::identity();
        m.p_minus(0, 0) = 0.5 * (1.0 - b);
        m.p_minus(1, 1) = 0.5 * (1.0 + b);
        m.p_minus(0, 1) = m.p_minus(1, 0) = -0.5 * a;
        modes_.push_back(m);
    }
}

Mat2 ModePropagator::unitary(std::size_t i, double dt) const {
    return mat2_exp_unitary(modes_[i].hamiltonian, dt / hbar_);
}

ModePropagator build_modes(const Grid1D& grid, double mass) { return ModePropagator(grid, mass); }

SpinorField2 evolve(const SpinorField2& psi, double dt, const ModePropagator& modes) {
    if (!std::isfinite(dt)) throw DomainError("evolve: time step is not finite");
    if (dt == 0.0) return psi;
    auto out = apply_per_mode(psi, modes, [&](std::size_t i) { return modes.unitary(i, dt); });
    out.set_time(psi.time() + dt);
    return out;
}

SpinorField2 project(const SpinorField2& psi, EnergySign sign, const ModePropagator& modes) {
    return apply_per_mode(psi, modes, [&](std::size_t i) { return modes.projector(i, sign); });
}

SpinorField2 project_positive(const SpinorField2& psi, const ModePropagator& modes) {
    return project(psi, EnergySign::positive, modes);
}

SpinorField2 project_negative(const SpinorField2& psi, const ModePropagator& modes) {
    return project(psi, EnergySign::negative, modes);
}

void EvolutionPlan::validate() const {
    if (!(t_end >= t_begin)) throw ConfigError("evolution window is reversed");
    if (!std::is_sorted(snapshot_times.begin(), snapshot_times.end()))
        throw ConfigError("snapshot times must be sorted");
    for (double t : snapshot_times) {
        if (t < t_begin || t > t_end) {
            std::ostringstream os;
            os << "snapshot time " << t << " outside [" << t_begin << ", " << t_end << "]";
            throw ConfigError(os.str());
        }
    }
}

}  // namespace diracsym
