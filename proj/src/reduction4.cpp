#include "diracsym/reduction4.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "diracsym/errors.hpp"
#include "diracsym/propagator.hpp"

namespace diracsym {

namespace {

// (psi1, psi4 | psi2, psi3) in zero-based component indices.
constexpr std::array<int, 4> kBlockOrder{0, 3, 1, 2};

}  // namespace

Mat4 Mat4::identity() {
    Mat4 r;
    for (int i = 0; i < 4; ++i) r(i, i) = 1.0;
    return r;
}

Mat4 Mat4::from_blocks(const Mat2& tl, const Mat2& tr, const Mat2& bl, const Mat2& br) {
    Mat4 r;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            r(i, j) = tl(i, j);
            r(i, j + 2) = tr(i, j);
            r(i + 2, j) = bl(i, j);
            r(i + 2, j + 2) = br(i, j);
        }
    }
    return r;
}

Mat4 Mat4::adjoint() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

Mat4 operator+(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.m[i] = a.m[i] + b.m[i];
    return r;
}

Mat4 operator-(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.m[i] = a.m[i] - b.m[i];
    return r;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Complex s{};
            for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
            r(i, j) = s;
        }
    return r;
}

Mat4 operator*(Complex s, const Mat4& a) {
    Mat4 r;
    for (std::size_t i = 0; i < 16; ++i) r.m[i] = s * a.m[i];
    return r;
}

Spinor4 operator*(const Mat4& a, const Spinor4& v) {
    Spinor4 r{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) r[i] += a(i, k) * v[k];
    return r;
}

double max_abs(const Mat4& a) {
    double r = 0.0;
    for (const auto& v : a.m) r = std::max(r, std::abs(v));
    return r;
}

Mat4 dirac_alpha(Axis axis) {
    const Mat2 s = axis == Axis::x ? sigma_x() : axis == Axis::y ? sigma_y() : sigma_z();
    const Mat2 zero{};
    return Mat4::from_blocks(zero, s, s, zero);
}

Mat4 dirac_beta() {
    const Mat2 zero{};
    return Mat4::from_blocks(sigma_0(), zero, zero, Complex(-1.0) * sigma_0());
}

Mat4 hamiltonian4(double kx, double ky, double kz, double mass, double c, double hbar) {
    const double p = c * hbar;
    return Complex(p * kx) * dirac_alpha(Axis::x) + Complex(p * ky) * dirac_alpha(Axis::y) +
           Complex(p * kz) * dirac_alpha(Axis::z) + Complex(mass * c * c) * dirac_beta();
}

Mat4 unitary4(double k, double mass, double dt) {
    const Mat4 h = hamiltonian4(k, 0.0, 0.0, mass);
    Mat4 permuted;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) permuted(i, j) = h(kBlockOrder[i], kBlockOrder[j]);

    Mat2 block_a, block_b;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            block_a(i, j) = permuted(i, j);
            block_b(i, j) = permuted(i + 2, j + 2);
            if (permuted(i, j + 2) != Complex{} || permuted(i + 2, j) != Complex{})
                throw std::logic_error("x-only Dirac Hamiltonian is not block diagonal");
        }
    }

    const Mat2 ua = mat2_exp_unitary(block_a, dt);
    const Mat2 ub = mat2_exp_unitary(block_b, dt);
    const Mat4 u_permuted = Mat4::from_blocks(ua, Mat2{}, Mat2{}, ub);
    Mat4 u;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) u(kBlockOrder[i], kBlockOrder[j]) = u_permuted(i, j);
    return u;
}

SpinorField4::SpinorField4(Grid1D grid, std::vector<Spinor4> values, double time)
    : grid_(grid), values_(std::move(values)), time_(time) {
    if (values_.size() != grid_.size()) throw ConfigError("4-spinor field size does not match grid");
    for (const auto& v : values_)
        for (const auto& c : v)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw DomainError("4-spinor field contains a non-finite value");
}

SpinorField4 SpinorField4::zero(const Grid1D& grid, double time) {
    return SpinorField4(grid, std::vector<Spinor4>(grid.size()), time);
}

double norm_squared(const SpinorField4& psi) {
    double sum = 0.0;
    for (const auto& v : psi.values())
        for (const auto& c : v) sum += std::norm(c);
    return sum * psi.grid().dx();
}

double max_component(const SpinorField4& psi, std::size_t component) {
    double r = 0.0;
    for (const auto& v : psi.values()) r = std::max(r, std::abs(v[component]));
    return r;
}

BlockPair split_blocks(const SpinorField4& psi) {
    const std::size_t n = psi.size();
    std::vector<Spinor2> a(n), b(n);
    for (std::size_t j = 0; j < n; ++j) {
        a[j] = {psi[j][0], psi[j][3]};
        b[j] = {psi[j][1], psi[j][2]};
    }
    return {SpinorField2(psi.grid(), std::move(a), psi.time()), SpinorField2(psi.grid(), std::move(b), psi.time())};
}

SpinorField4 reassemble(const BlockPair& blocks) {
    const auto& a = blocks.block_a;
    const auto& b = blocks.block_b;
    if (!(a.grid() == b.grid())) throw ConfigError("reassemble: block grids differ");
    std::vector<Spinor4> values(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) values[j] = {a[j][0], b[j][0], b[j][1], a[j][1]};
    return SpinorField4(a.grid(), std::move(values), a.time());
}

SpinorField4 evolve4(const SpinorField4& psi, double dt, double mass) {
    if (!(mass > 0.0)) throw DomainError("particle mass must be positive");
    if (dt == 0.0) return psi;
    const Grid1D& grid = psi.grid();
    const std::size_t n = grid.size();

    std::array<std::vector<Complex>, 4> comps;
    for (std::size_t c = 0; c < 4; ++c) {
        comps[c].resize(n);
        for (std::size_t j = 0; j < n; ++j) comps[c][j] = psi[j][c];
        fft_in_place(comps[c], false);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Mat4 u = unitary4(grid.k(i), mass, dt);
        const Spinor4 v = u * Spinor4{comps[0][i], comps[1][i], comps[2][i], comps[3][i]};
        for (std::size_t c = 0; c < 4; ++c) comps[c][i] = v[c];
    }
    std::vector<Spinor4> out(n);
    for (std::size_t c = 0; c < 4; ++c) {
        fft_in_place(comps[c], true);
        for (std::size_t j = 0; j < n; ++j) out[j][c] = comps[c][j];
    }
    return SpinorField4(grid, std::move(out), psi.time() + dt);
}

double verify_reduction(const SpinorField4& psi0, double dt, double mass) {
    const auto full = split_blocks(evolve4(psi0, dt, mass));
    const ModePropagator modes(psi0.grid(), mass);
    const auto blocks = split_blocks(psi0);
    const auto a = evolve(blocks.block_a, dt, modes);
    const auto b = evolve(blocks.block_b, dt, modes);
    return std::max(max_abs_diff(full.block_a, a), max_abs_diff(full.block_b, b));
}

}  // namespace diracsym
