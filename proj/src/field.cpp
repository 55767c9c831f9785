#include "diracsym/field.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <mutex>
#include <sstream>
#include <utility>

#include "diracsym/errors.hpp"

namespace diracsym {

namespace {

std::mutex& sink_mutex() {
    static std::mutex m;
    return m;
}

WarningSink& sink_slot() {
    static WarningSink sink = [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
    return sink;
}

void require_same_grid(const Grid1D& a, const Grid1D& b, const char* what) {
    if (!(a == b)) throw ConfigError(std::string(what) + ": grid mismatch");
}

}  // namespace

WarningSink set_warning_sink(WarningSink sink) {
    std::lock_guard lock(sink_mutex());
    return std::exchange(sink_slot(), std::move(sink));
}

void warn(const std::string& message) {
    std::lock_guard lock(sink_mutex());
    if (sink_slot()) sink_slot()(message);
}

Grid1D::Grid1D(std::size_t n, double length) : n_(n), length_(length) {
    if (!is_power_of_two(n) || n < 8)
        throw ConfigError("grid size must be a power of two >= 8, got " + std::to_string(n));
    if (!(length > 0.0) || !std::isfinite(length))
        throw ConfigError("grid length must be positive and finite");
}

std::vector<double> Grid1D::x_values() const {
    std::vector<double> xs(n_);
    for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
    return xs;
}

SpinorField2::SpinorField2(Grid1D grid, std::vector<Spinor2> values, double time)
    : grid_(grid), values_(std::move(values)), time_(time) {
    if (values_.size() != grid_.size())
        throw ConfigError("field has " + std::to_string(values_.size()) + " points, grid has " +
                          std::to_string(grid_.size()));
    for (const auto& v : values_)
        if (!std::isfinite(v[0].real()) || !std::isfinite(v[0].imag()) || !std::isfinite(v[1].real()) ||
            !std::isfinite(v[1].imag()))
            throw DomainError("field contains a non-finite value");
    if (!std::isfinite(time_)) throw DomainError("field time tag is not finite");
}

SpinorField2 SpinorField2::zero(const Grid1D& grid, double time) {
    return SpinorField2(grid, std::vector<Spinor2>(grid.size()), time);
}

SpinorField2 SpinorField2::from_profile(const Grid1D& grid, const std::function<Complex(double)>& profile,
                                        Spinor2 spinor, double time) {
    std::vector<Spinor2> values(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const Complex f = profile(grid.x(j));
        values[j] = {f * spinor[0], f * spinor[1]};
    }
    return SpinorField2(grid, std::move(values), time);
}

SpinorField2 SpinorField2::plane_wave(const Grid1D& grid, std::size_t mode_index, Spinor2 spinor,
                                      double time) {
    const double k = grid.k(mode_index);
    const double amp = 1.0 / std::sqrt(grid.length());
    return from_profile(
        grid, [k, amp](double x) { return amp * std::exp(kI * (k * x)); }, spinor, time);
}

SpinorField2& SpinorField2::operator+=(const SpinorField2& o) {
    require_same_grid(grid_, o.grid_, "field addition");
    for (std::size_t j = 0; j < values_.size(); ++j) {
        values_[j][0] += o.values_[j][0];
        values_[j][1] += o.values_[j][1];
    }
    return *this;
}

SpinorField2& SpinorField2::operator-=(const SpinorField2& o) {
    require_same_grid(grid_, o.grid_, "field subtraction");
    for (std::size_t j = 0; j < values_.size(); ++j) {
        values_[j][0] -= o.values_[j][0];
        values_[j][1] -= o.values_[j][1];
    }
    return *this;
}

SpinorField2& SpinorField2::operator*=(Complex s) {
    for (auto& v : values_) {
        v[0] *= s;
        v[1] *= s;
    }
    return *this;
}

SpinorField2 operator+(SpinorField2 a, const SpinorField2& b) { return a += b; }
SpinorField2 operator-(SpinorField2 a, const SpinorField2& b) { return a -= b; }
SpinorField2 operator*(Complex s, SpinorField2 a) { return a *= s; }

double max_abs_diff(const SpinorField2& a, const SpinorField2& b) {
    require_same_grid(a.grid(), b.grid(), "max_abs_diff");
    double r = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        r = std::max({r, std::abs(a[j][0] - b[j][0]), std::abs(a[j][1] - b[j][1])});
    return r;
}

double max_abs(const SpinorField2& a) {
    double r = 0.0;
    for (const auto& v : a.values()) r = std::max({r, std::abs(v[0]), std::abs(v[1])});
    return r;
}

SpinorField2 gaussian_initial(const Grid1D& grid) {
    const double half = 0.5 * grid.length();
    if (std::exp(-half * half / 16.0) >= 1e-14)
        throw BoundaryContamination("gaussian_initial: grid length " + std::to_string(grid.length()) +
                                    " is too short, the packet does not decay at the boundary");
    const double prefactor = std::pow(1.0 / (32.0 * kPi), 0.25);
    auto psi = SpinorField2::from_profile(
        grid, [prefactor](double x) { return Complex(prefactor * std::exp(-x * x / 16.0), 0.0); }, {1.0, 1.0});
    const double norm = norm_squared(psi);
    if (std::abs(norm - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "gaussian_initial: grid spacing " << grid.dx() << " too coarse (discrete norm " << norm << ")";
        throw ConfigError(os.str());
    }
    return psi;
}

Complex inner_product(const SpinorField2& bra, const SpinorField2& ket) {
    require_same_grid(bra.grid(), ket.grid(), "inner_product");
    if (bra.time() != ket.time()) {
        std::ostringstream os;
        os << "inner_product: bra time " << bra.time() << " differs from ket time " << ket.time();
        warn(os.str());
    }
    Complex sum{};
    for (std::size_t j = 0; j < bra.size(); ++j)
        sum += std::conj(bra[j][0]) * ket[j][0] + std::conj(bra[j][1]) * ket[j][1];
    return sum * bra.grid().dx();
}

double norm_squared(const SpinorField2& psi) {
    double sum = 0.0;
    for (const auto& v : psi.values()) sum += std::norm(v[0]) + std::norm(v[1]);
    return sum * psi.grid().dx();
}

std::vector<double> probability_density(const SpinorField2& psi) {
    std::vector<double> rho(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) rho[j] = std::norm(psi[j][0]) + std::norm(psi[j][1]);
    return rho;
}

std::vector<double> probability_current(const SpinorField2& psi, double c) {
    // psi^dagger sigma_x psi = 2 Re(conj(psi_1) psi_2)
    std::vector<double> j(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i)
        j[i] = 2.0 * c * (std::conj(psi[i][0]) * psi[i][1]).real();
    return j;
}

double mean_position(std::span<const double> weight, const Grid1D& grid) {
    if (weight.size() != grid.size()) throw ConfigError("mean_position: weight length does not match grid");
    double total = 0.0;
    double moment = 0.0;
    for (std::size_t j = 0; j < weight.size(); ++j) {
        if (weight[j] < 0.0) throw DomainError("mean_position: negative weight");
        total += weight[j];
        moment += grid.x(j) * weight[j];
    }
    if (!(total > 0.0)) throw DomainError("mean_position: zero total weight");
    return moment / total;
}

double boundary_ratio(const SpinorField2& psi) {
    const double peak = max_abs(psi);
    if (peak == 0.0) return 0.0;
    const std::size_t n = psi.size();
    const std::size_t edge = std::max<std::size_t>(1, (n + 99) / 100);
    double outer = 0.0;
    for (std::size_t j = 0; j < edge; ++j) {
        for (std::size_t idx : {j, n - 1 - j}) {
            outer = std::max({outer, std::abs(psi[idx][0]), std::abs(psi[idx][1])});
        }
    }
    return outer / peak;
}

void check_boundary(const SpinorField2& psi, const std::string& label) {
    const double ratio = boundary_ratio(psi);
    if (ratio >= 1e-8) {
        std::ostringstream os;
        os << "boundary contamination at " << label << " (t = " << psi.time() << "): edge/peak ratio "
           << ratio;
        throw BoundaryContamination(os.str());
    }
}

}  // namespace diracsym
