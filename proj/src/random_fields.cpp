#include "diracsym/random_fields.hpp"

#include <cmath>
#include <random>

namespace diracsym {

namespace {

template <std::size_t Components>
std::vector<std::array<Complex, Components>> random_packets(const Grid1D& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> centre(-20.0, 20.0);
    std::uniform_real_distribution<double> width(2.0, 4.0);
    std::uniform_real_distribution<double> carrier(-2.0, 2.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<std::array<Complex, Components>> values(grid.size());
    constexpr int kPackets = 3;
    for (int p = 0; p < kPackets; ++p) {
        const double x0 = centre(rng);
        const double w = width(rng);
        const double k0 = carrier(rng);
        std::array<Complex, Components> spinor;
        for (auto& s : spinor) s = Complex(gauss(rng), gauss(rng));
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double u = (grid.x(j) - x0) / w;
            const Complex f = std::exp(-0.5 * u * u) * std::exp(kI * (k0 * grid.x(j)));
            for (std::size_t c = 0; c < Components; ++c) values[j][c] += f * spinor[c];
        }
    }
    double norm = 0.0;
    for (const auto& v : values)
        for (const auto& c : v) norm += std::norm(c);
    const double scale = 1.0 / std::sqrt(norm * grid.dx());
    for (auto& v : values)
        for (auto& c : v) c *= scale;
    return values;
}

}  // namespace

SpinorField2 random_packet_field2(const Grid1D& grid, std::uint64_t seed) {
    return SpinorField2(grid, random_packets<2>(grid, seed));
}

SpinorField4 random_packet_field4(const Grid1D& grid, std::uint64_t seed) {
    return SpinorField4(grid, random_packets<4>(grid, seed));
}

}  // namespace diracsym
