#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "diracsym/field.hpp"
#include "diracsym/numerics.hpp"

namespace diracsym {

using Spinor4 = std::array<Complex, 4>;

/// 4x4 complex matrix, row-major.
struct Mat4 {
    std::array<Complex, 16> m{};

    constexpr Complex& operator()(int row, int col) { return m[4 * row + col]; }
    constexpr const Complex& operator()(int row, int col) const { return m[4 * row + col]; }

    static Mat4 identity();
    /// (top_left top_right; bottom_left bottom_right).
    static Mat4 from_blocks(const Mat2& tl, const Mat2& tr, const Mat2& bl, const Mat2& br);

    Mat4 adjoint() const;
};

Mat4 operator+(const Mat4& a, const Mat4& b);
Mat4 operator-(const Mat4& a, const Mat4& b);
Mat4 operator*(const Mat4& a, const Mat4& b);
Mat4 operator*(Complex s, const Mat4& a);
Spinor4 operator*(const Mat4& a, const Spinor4& v);
double max_abs(const Mat4& a);

enum class Axis { x, y, z };

/// alpha_i = (0 sigma_i; sigma_i 0).
Mat4 dirac_alpha(Axis axis);
/// beta = (I 0; 0 -I).
Mat4 dirac_beta();

/// c hbar (kx alpha_x + ky alpha_y + kz alpha_z) + m c^2 beta.
Mat4 hamiltonian4(double kx, double ky, double kz, double mass, double c = 1.0, double hbar = 1.0);

/// exp(-i H4(k, 0, 0) dt) for x-only dependence, built by permuting H4 to the
/// (psi1, psi4 | psi2, psi3) ordering, exponentiating the two 2x2 diagonal blocks
/// and permuting back. Throws std::logic_error if the permuted H4 is not block
/// diagonal.
Mat4 unitary4(double k, double mass, double dt);

class SpinorField4 {
public:
    SpinorField4(Grid1D grid, std::vector<Spinor4> values, double time = 0.0);

    static SpinorField4 zero(const Grid1D& grid, double time = 0.0);
    /// profile(x) * spinor at each grid point.
    template <typename Profile>
    static SpinorField4 from_profile(const Grid1D& grid, Profile&& profile, Spinor4 spinor, double time = 0.0) {
        std::vector<Spinor4> values(grid.size());
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const Complex f = profile(grid.x(j));
            for (std::size_t c = 0; c < 4; ++c) values[j][c] = f * spinor[c];
        }
        return SpinorField4(grid, std::move(values), time);
    }

    const Grid1D& grid() const { return grid_; }
    std::span<const Spinor4> values() const { return values_; }
    const Spinor4& operator[](std::size_t j) const { return values_[j]; }
    Spinor4& operator[](std::size_t j) { return values_[j]; }
    std::size_t size() const { return values_.size(); }
    double time() const { return time_; }
    void set_time(double t) { time_ = t; }

private:
    Grid1D grid_;
    std::vector<Spinor4> values_;
    double time_;
};

double norm_squared(const SpinorField4& psi);
/// Largest modulus of component `component` over the grid.
double max_component(const SpinorField4& psi, std::size_t component);

/// Two decoupled (1+1)D systems: block_a = (psi1, psi4), block_b = (psi2, psi3).
struct BlockPair {
    SpinorField2 block_a;
    SpinorField2 block_b;
};

BlockPair split_blocks(const SpinorField4& psi);
SpinorField4 reassemble(const BlockPair& blocks);

/// Exact evolution under the (3+1)D free Dirac equation restricted to x-dependence.
SpinorField4 evolve4(const SpinorField4& psi, double dt, double mass);

/// Max pointwise modulus between evolve4 and evolving each block with the
/// (1+1)D propagator.
double verify_reduction(const SpinorField4& psi0, double dt, double mass = 1.0);

}  // namespace diracsym
