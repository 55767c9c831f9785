#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace diracsym {

using Complex = std::complex<double>;
using Spinor2 = std::array<Complex, 2>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// 2x2 complex matrix, row-major: (a00 a01; a10 a11).
struct Mat2 {
    std::array<Complex, 4> m{};

    constexpr Complex& operator()(int row, int col) { return m[2 * row + col]; }
    constexpr const Complex& operator()(int row, int col) const { return m[2 * row + col]; }

    static Mat2 identity();
    static Mat2 diag(Complex a, Complex b);

    Mat2 adjoint() const;
    Complex trace() const;
    Complex det() const;

    Mat2& operator+=(const Mat2& o);
    Mat2& operator-=(const Mat2& o);
    Mat2& operator*=(Complex s);
};

Mat2 operator+(Mat2 a, const Mat2& b);
Mat2 operator-(Mat2 a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(Complex s, Mat2 a);
Spinor2 operator*(const Mat2& a, const Spinor2& v);

/// Largest entry modulus.
double max_abs(const Mat2& a);
double max_abs_diff(const Mat2& a, const Mat2& b);

Mat2 sigma_0();
Mat2 sigma_x();
Mat2 sigma_y();
Mat2 sigma_z();

/// exp(-i * H * scale) for traceless Hermitian H = a.sigma_x + b.sigma_y + c.sigma_z,
/// evaluated in closed form as cos(theta) I - i sin(theta) H/|H| with
/// theta = |H| * scale. Returns the identity when |H| == 0.
/// Throws DomainError when H is not Hermitian and traceless to 1e-12.
Mat2 mat2_exp_unitary(const Mat2& hermitian, double scale);

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Signed mode number for FFT slot `index` of an n-point transform:
/// index for index < n/2, index - n otherwise. Range [-n/2, n/2).
constexpr long mode_number(std::size_t index, std::size_t n) {
    return index < n / 2 ? static_cast<long>(index)
                         : static_cast<long>(index) - static_cast<long>(n);
}

/// In-place iterative radix-2 transform.
///   forward:  X_k = sum_j x_j exp(-2 pi i j k / n)   (unnormalized)
///   inverse:  x_j = (1/n) sum_k X_k exp(+2 pi i j k / n)
/// n must be a power of two >= 8, otherwise ConfigError.
void fft_in_place(std::span<Complex> data, bool inverse);

std::vector<Complex> dft_forward(std::span<const Complex> values);
std::vector<Complex> dft_inverse(std::span<const Complex> spectrum);

/// Per-mode 2-spinor coefficients in natural FFT order (see mode_number).
struct SpectrumBuffer {
    std::vector<Spinor2> modes;

    std::size_t size() const { return modes.size(); }
};

SpectrumBuffer dft_forward(std::span<const Spinor2> values);
/// Inverse of the spinor transform. `expected_size` (when nonzero) must match
/// the buffer length, otherwise ConfigError.
std::vector<Spinor2> dft_inverse(const SpectrumBuffer& spectrum, std::size_t expected_size = 0);

}  // namespace diracsym
