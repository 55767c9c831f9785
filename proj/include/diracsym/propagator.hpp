#pragma once

#include <cstddef>
#include <vector>

#include "diracsym/field.hpp"
#include "diracsym/numerics.hpp"

namespace diracsym {

enum class EnergySign { positive, negative };

const char* to_string(EnergySign sign);

/// Per-mode tables for the free (1+1)D Dirac Hamiltonian
///   H(k) = c hbar k sigma_x + m c^2 sigma_z,  eigenvalues +-hbar omega(k),
///   omega(k) = sqrt((c k)^2 + (m c^2 / hbar)^2),
/// and the spectral projectors P+-(k) = (I +- H(k) / (hbar omega)) / 2.
/// Positive energy is the +hbar omega eigenspace, i.e. the exp(-i omega t) branch.
class ModePropagator {
public:
    ModePropagator(const Grid1D& grid, double mass, double c = 1.0, double hbar = 1.0);

    const Grid1D& grid() const { return grid_; }
    std::size_t size() const { return modes_.size(); }
    double mass() const { return mass_; }
    double c() const { return c_; }
    double hbar() const { return hbar_; }

    double k(std::size_t i) const { return modes_[i].k; }
    double omega(std::size_t i) const { return modes_[i].omega; }
    const Mat2& hamiltonian(std::size_t i) const { return modes_[i].hamiltonian; }
    const Mat2& projector(std::size_t i, EnergySign sign) const {
        return sign == EnergySign::positive ? modes_[i].p_plus : modes_[i].p_minus;
    }

    /// exp(-i H(k_i) dt / hbar).
    Mat2 unitary(std::size_t i, double dt) const;

private:
    struct Mode {
        double k;
        double omega;
        Mat2 hamiltonian;
        Mat2 p_plus;
        Mat2 p_minus;
    };

    Grid1D grid_;
    double mass_;
    double c_;
    double hbar_;
    std::vector<Mode> modes_;
};

/// Throws DomainError for m <= 0.
ModePropagator build_modes(const Grid1D& grid, double mass);

/// Exact free evolution by dt (negative dt evolves backward); the time tag
/// advances by dt.
SpinorField2 evolve(const SpinorField2& psi, double dt, const ModePropagator& modes);

SpinorField2 project(const SpinorField2& psi, EnergySign sign, const ModePropagator& modes);
SpinorField2 project_positive(const SpinorField2& psi, const ModePropagator& modes);
SpinorField2 project_negative(const SpinorField2& psi, const ModePropagator& modes);

/// Grid, mass and a sorted schedule of snapshot times inside [t_begin, t_end].
struct EvolutionPlan {
    Grid1D grid = Grid1D::default_grid();
    double mass = 1.0;
    double t_begin = 0.0;
    double t_end = 40.0;
    std::vector<double> snapshot_times;

    /// Throws ConfigError for an unsorted schedule or times outside the window.
    void validate() const;
};

}  // namespace diracsym
