#include "diracsym/numerics.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "diracsym/errors.hpp"

namespace diracsym {

Mat2 Mat2::identity() { return diag(1.0, 1.0); }

Mat2 Mat2::diag(Complex a, Complex b) {
    Mat2 r;
    r(0, 0) = a;
    r(1, 1) = b;
    return r;
}

Mat2 Mat2::adjoint() const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

Complex Mat2::trace() const { return m[0] + m[3]; }

Complex Mat2::det() const { return m[0] * m[3] - m[1] * m[2]; }

Mat2& Mat2::operator+=(const Mat2& o) {
    for (std::size_t i = 0; i < 4; ++i) m[i] += o.m[i];
    return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) {
    for (std::size_t i = 0; i < 4; ++i) m[i] -= o.m[i];
    return *this;
}

Mat2& Mat2::operator*=(Complex s) {
    for (auto& v : m) v *= s;
    return *this;
}

Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
Mat2 operator*(Complex s, Mat2 a) { return a *= s; }

Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
}

Spinor2 operator*(const Mat2& a, const Spinor2& v) {
    return {a(0, 0) * v[0] + a(0, 1) * v[1], a(1, 0) * v[0] + a(1, 1) * v[1]};
}

double max_abs(const Mat2& a) {
    double r = 0.0;
    for (const auto& v : a.m) r = std::max(r, std::abs(v));
    return r;
}

double max_abs_diff(const Mat2& a, const Mat2& b) { return max_abs(a - b); }

Mat2 sigma_0() { return Mat2::identity(); }

Mat2 sigma_x() {
    Mat2 r;
    r(0, 1) = 1.0;
    r(1, 0) = 1.0;
    return r;
}

Mat2 sigma_y() {
    Mat2 r;
    r(0, 1) = -kI;
    r(1, 0) = kI;
    return r;
}

Mat2 sigma_z() { return Mat2::diag(1.0, -1.0); }

Mat2 mat2_exp_unitary(const Mat2& h, double scale) {
    const double size = std::max(1.0, max_abs(h));
    if (max_abs_diff(h, h.adjoint()) > 1e-12 * size)
        throw DomainError("mat2_exp_unitary: matrix is not Hermitian");
    if (std::abs(h.trace()) > 1e-12 * size)
        throw DomainError("mat2_exp_unitary: matrix is not traceless");

    // h = a sigma_x + b sigma_y + c sigma_z
    const double a = 0.5 * (h(0, 1).real() + h(1, 0).real());
    const double b = 0.5 * (h(1, 0).imag() - h(0, 1).imag());
    const double c = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double norm = std::sqrt(a * a + b * b + c * c);
    if (norm == 0.0 || scale == 0.0) return Mat2::identity();

    const double theta = norm * scale;
    const double cs = std::cos(theta);
    const double sn = std::sin(theta) / norm;
    // cos I - i sin (a sx + b sy + c sz)/|h|
    Mat2 u;
    u(0, 0) = Complex(cs, -sn * c);
    u(1, 1) = Complex(cs, sn * c);
    u(0, 1) = Complex(-sn * b, -sn * a);
    u(1, 0) = Complex(sn * b, -sn * a);
    return u;
}

namespace {

void require_fft_size(std::size_t n) {
    if (!is_power_of_two(n) || n < 8)
        throw ConfigError("DFT size must be a power of two >= 8, got " + std::to_string(n));
}

}  // namespace

void fft_in_place(std::span<Complex> data, bool inverse) {
    const std::size_t n = data.size();
    require_fft_size(n);

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        // Twiddles from direct evaluation rather than recurrence so the error
        // does not accumulate along a butterfly stage.
        std::vector<Complex> twiddle(half);
        for (std::size_t k = 0; k < half; ++k) {
            const double angle = sign * 2.0 * kPi * static_cast<double>(k) / static_cast<double>(len);
            twiddle[k] = Complex(std::cos(angle), std::sin(angle));
        }
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const Complex u = data[start + k];
                const Complex v = data[start + k + half] * twiddle[k];
                data[start + k] = u + v;
                data[start + k + half] = u - v;
            }
        }
    }

    if (inverse) {
        const double inv_n = 1.0 / static_cast<double>(n);
        for (auto& v : data) v *= inv_n;
    }
}

std::vector<Complex> dft_forward(std::span<const Complex> values) {
    std::vector<Complex> out(values.begin(), values.end());
    fft_in_place(out, false);
    return out;
}

std::vector<Complex> dft_inverse(std::span<const Complex> spectrum) {
    std::vector<Complex> out(spectrum.begin(), spectrum.end());
    fft_in_place(out, true);
    return out;
}

SpectrumBuffer dft_forward(std::span<const Spinor2> values) {
    const std::size_t n = values.size();
    require_fft_size(n);
    std::vector<Complex> upper(n), lower(n);
    for (std::size_t j = 0; j < n; ++j) {
        upper[j] = values[j][0];
        lower[j] = values[j][1];
    }
    fft_in_place(upper, false);
    fft_in_place(lower, false);
    SpectrumBuffer out;
    out.modes.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.modes[k] = {upper[k], lower[k]};
    return out;
}

std::vector<Spinor2> dft_inverse(const SpectrumBuffer& spectrum, std::size_t expected_size) {
    const std::size_t n = spectrum.size();
    if (expected_size != 0 && expected_size != n)
        throw ConfigError("spectrum length " + std::to_string(n) + " does not match expected " +
                          std::to_string(expected_size));
    require_fft_size(n);
    std::vector<Complex> upper(n), lower(n);
    for (std::size_t k = 0; k < n; ++k) {
        upper[k] = spectrum.modes[k][0];
        lower[k] = spectrum.modes[k][1];
    }
    fft_in_place(upper, true);
    fft_in_place(lower, true);
    std::vector<Spinor2> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = {upper[j], lower[j]};
    return out;
}

}  // namespace diracsym
