#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "diracsym/field.hpp"
#include "diracsym/numerics.hpp"
#include "diracsym/trace.hpp"

namespace diracsym {

/// A (generally complex) density and its current sampled on a grid at time t.
/// Serves both the probability density/current pair and the transition
/// amplitude density/current pair.
struct DensityCurrent {
    double t = 0.0;
    std::vector<Complex> density;
    std::vector<Complex> current;
};

/// rho = psi^dagger psi and j = c psi^dagger sigma_x psi as a complex pair.
DensityCurrent probability_density_current(const SpinorField2& psi, double c = 1.0);

/// max_x |d_t rho + d_x j| at each interior snapshot, with both derivatives taken
/// as centered differences: in time over neighbouring snapshots, in space over
/// +-`spatial_stride` grid points (periodic). Error is second order in both steps.
/// Needs >= 3 snapshots at uniform spacing, otherwise ConfigError.
TimeSeries local_conservation(std::span<const DensityCurrent> snapshots, const Grid1D& grid,
                              std::size_t spatial_stride = 1);

}  // namespace diracsym
