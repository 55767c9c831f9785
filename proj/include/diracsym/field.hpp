#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "diracsym/numerics.hpp"

namespace diracsym {

/// Periodic uniform grid on [-L/2, L/2) with x_j = -L/2 + j dx and the paired
/// momentum lattice k = 2 pi n / L, n = mode_number(j, size).
class Grid1D {
public:
    Grid1D(std::size_t n, double length);

    static Grid1D default_grid() { return Grid1D(2048, 256.0); }

    std::size_t size() const { return n_; }
    double length() const { return length_; }
    double dx() const { return length_ / static_cast<double>(n_); }
    double dk() const { return 2.0 * kPi / length_; }

    double x(std::size_t j) const { return -0.5 * length_ + static_cast<double>(j) * dx(); }
    /// Wavenumber of FFT slot `index`.
    double k(std::size_t index) const { return dk() * static_cast<double>(mode_number(index, n_)); }
    /// Grid index of the reflected point -x_j.
    std::size_t mirror(std::size_t j) const { return (n_ - j) % n_; }

    std::vector<double> x_values() const;

    friend bool operator==(const Grid1D&, const Grid1D&) = default;

private:
    std::size_t n_;
    double length_;
};

/// Two-component wavefunction sampled on a grid, tagged with its time.
class SpinorField2 {
public:
    SpinorField2(Grid1D grid, std::vector<Spinor2> values, double time = 0.0);

    static SpinorField2 zero(const Grid1D& grid, double time = 0.0);
    /// profile(x) * spinor at each grid point.
    static SpinorField2 from_profile(const Grid1D& grid, const std::function<Complex(double)>& profile,
                                     Spinor2 spinor, double time = 0.0);
    /// exp(i k x) spinor / sqrt(L) for the mode in FFT slot `mode_index`; unit norm
    /// when |spinor| = 1.
    static SpinorField2 plane_wave(const Grid1D& grid, std::size_t mode_index, Spinor2 spinor,
                                   double time = 0.0);

    const Grid1D& grid() const { return grid_; }
    std::span<const Spinor2> values() const { return values_; }
    std::span<Spinor2> values() { return values_; }
    const Spinor2& operator[](std::size_t j) const { return values_[j]; }
    Spinor2& operator[](std::size_t j) { return values_[j]; }
    std::size_t size() const { return values_.size(); }

    double time() const { return time_; }
    void set_time(double t) { time_ = t; }

    SpinorField2& operator+=(const SpinorField2& o);
    SpinorField2& operator-=(const SpinorField2& o);
    SpinorField2& operator*=(Complex s);

private:
    Grid1D grid_;
    std::vector<Spinor2> values_;
    double time_;
};

SpinorField2 operator+(SpinorField2 a, const SpinorField2& b);
SpinorField2 operator-(SpinorField2 a, const SpinorField2& b);
SpinorField2 operator*(Complex s, SpinorField2 a);

/// Largest pointwise component-wise difference modulus. Grids must match.
double max_abs_diff(const SpinorField2& a, const SpinorField2& b);
double max_abs(const SpinorField2& a);

/// Normalized Gaussian (1/(32 pi))^{1/4} exp(-x^2/16) (1, 1) at t = 0 (m = 1,
/// standard deviation 2 in natural units).
/// Throws BoundaryContamination when exp(-L^2/64) >= 1e-14, and ConfigError when
/// the grid is too coarse for the discrete norm to equal 1 to 1e-12.
SpinorField2 gaussian_initial(const Grid1D& grid);

/// sum_j bra_j^dagger ket_j dx. Grid mismatch throws ConfigError; differing time
/// tags emit a warning through the warning sink.
Complex inner_product(const SpinorField2& bra, const SpinorField2& ket);
double norm_squared(const SpinorField2& psi);

/// rho_j = psi_j^dagger psi_j.
std::vector<double> probability_density(const SpinorField2& psi);
/// j_j = c psi_j^dagger sigma_x psi_j.
std::vector<double> probability_current(const SpinorField2& psi, double c = 1.0);

/// sum x_j w_j / sum w_j. Negative weights or zero total weight throw DomainError.
double mean_position(std::span<const double> weight, const Grid1D& grid);

/// max |psi| over the outermost 1% of points at each end, relative to max |psi|.
/// Returns 0 for the zero field.
double boundary_ratio(const SpinorField2& psi);
/// Throws BoundaryContamination naming `label` when boundary_ratio >= 1e-8.
void check_boundary(const SpinorField2& psi, const std::string& label);

using WarningSink = std::function<void(const std::string&)>;
/// Replaces the process-wide warning sink (stderr by default). Returns the old one.
WarningSink set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace diracsym
