#pragma once

#include <cstdint>

#include "diracsym/field.hpp"
#include "diracsym/reduction4.hpp"

namespace diracsym {

/// Sum of a few Gaussian packets with random centres (|x0| <= 20), widths in
/// [2, 4], carriers |k0| <= 2 and random complex spinors, normalized to 1.
/// The spectrum is negligible well below the grid's Nyquist wavenumber, so the
/// field is band-limited for grids with dx <= 0.5.
SpinorField2 random_packet_field2(const Grid1D& grid, std::uint64_t seed);
SpinorField4 random_packet_field4(const Grid1D& grid, std::uint64_t seed);

}  // namespace diracsym
