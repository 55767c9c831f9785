#include "diracsym/continuity.hpp"

#include <algorithm>
#include <cmath>

#include "diracsym/errors.hpp"

namespace diracsym {

DensityCurrent probability_density_current(const SpinorField2& psi, double c) {
    const auto rho = probability_density(psi);
    const auto j = probability_current(psi, c);
    DensityCurrent out;
    out.t = psi.time();
    out.density.assign(rho.begin(), rho.end());
    out.current.assign(j.begin(), j.end());
    return out;
}

TimeSeries local_conservation(std::span<const DensityCurrent> snapshots, const Grid1D& grid,
                              std::size_t spatial_stride) {
    if (snapshots.size() < 3) throw ConfigError("local_conservation needs at least three snapshots");
    if (spatial_stride == 0 || spatial_stride >= grid.size() / 2)
        throw ConfigError("local_conservation: spatial stride out of range");
    const double dt = snapshots[1].t - snapshots[0].t;
    if (!(dt > 0.0)) throw ConfigError("local_conservation: snapshot times must increase");
    for (std::size_t i = 1; i < snapshots.size(); ++i) {
        const double step = snapshots[i].t - snapshots[i - 1].t;
        if (std::abs(step - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            throw ConfigError("local_conservation: snapshot spacing is not uniform");
    }
    const std::size_t n = grid.size();
    for (const auto& s : snapshots)
        if (s.density.size() != n || s.current.size() != n)
            throw ConfigError("local_conservation: snapshot size does not match grid");

    const double dx = static_cast<double>(spatial_stride) * grid.dx();
    TimeSeries out;
    for (std::size_t i = 1; i + 1 < snapshots.size(); ++i) {
        const auto& prev = snapshots[i - 1];
        const auto& cur = snapshots[i];
        const auto& next = snapshots[i + 1];
        double worst = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const Complex d_rho = (next.density[j] - prev.density[j]) / (2.0 * dt);
            const Complex d_cur =
                (cur.current[(j + spatial_stride) % n] - cur.current[(j + n - spatial_stride) % n]) / (2.0 * dx);
            worst = std::max(worst, std::abs(d_rho + d_cur));
        }
        out.times.push_back(cur.t);
        out.values.push_back(worst);
    }
    return out;
}

}  // namespace diracsym
