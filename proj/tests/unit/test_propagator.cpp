#include <doctest.h>

#include <cmath>
#include <random>

#include "diracsym/errors.hpp"
#include "diracsym/propagator.hpp"
#include "diracsym/random_fields.hpp"
#include "support/oracles.hpp"

using namespace diracsym;

namespace {

const Grid1D kGrid = Grid1D::default_grid();
const ModePropagator kModes(kGrid, 1.0);

// Slot holding mode number m on kGrid.
std::size_t slot(long m) { return m >= 0 ? static_cast<std::size_t>(m) : kGrid.size() - static_cast<std::size_t>(-m); }

// Unit eigenvector of P_sign at slot i (a nonzero column, normalized).
Spinor2 eigenvector(std::size_t i, EnergySign sign) {
    const Mat2& p = kModes.projector(i, sign);
    const int col = std::abs(p(0, 0)) >= std::abs(p(1, 1)) ? 0 : 1;
    Spinor2 v{p(0, col), p(1, col)};
    const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    return {v[0] / n, v[1] / n};
}

}  // namespace

TEST_CASE("mode tables") {
    SUBCASE("k = 0") {
        CHECK(kModes.k(0) == 0.0);
        CHECK(kModes.omega(0) == 1.0);
        const Mat2& pp = kModes.projector(0, EnergySign::positive);
        const Mat2& pm = kModes.projector(0, EnergySign::negative);
        CHECK(max_abs_diff(pp, Mat2::diag(1.0, 0.0)) < 1e-15);
        CHECK(max_abs_diff(pm, Mat2::diag(0.0, 1.0)) < 1e-15);
    }
    SUBCASE("omega is sqrt(k^2 + m^2)") {
        const ModePropagator unit_dk(Grid1D(64, 2.0 * kPi), 1.0);
        CHECK(unit_dk.k(1) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(unit_dk.omega(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
        for (std::size_t i : {std::size_t{0}, std::size_t{1}, std::size_t{10}}) {
            const double k = kGrid.dk() * static_cast<double>(i);
            CHECK(kModes.omega(i) == doctest::Approx(std::sqrt(k * k + 1.0)).epsilon(1e-15));
        }
    }
    SUBCASE("ultrarelativistic limit approaches (I + sigma_x)/2") {
        const ModePropagator wide(Grid1D(64, 2.0 * kPi), 1.0);
        const Mat2 target = Complex(0.5) * (sigma_0() + sigma_x());
        CHECK(max_abs_diff(wide.projector(25, EnergySign::positive), target) < 0.03);
    }
    SUBCASE("hamiltonian") {
        const std::size_t i = 5;
        const Mat2 h = Complex(kModes.k(i)) * sigma_x() + sigma_z();
        CHECK(max_abs_diff(kModes.hamiltonian(i), h) < 1e-15);
    }
    CHECK_THROWS_AS(ModePropagator(kGrid, 0.0), DomainError);
    CHECK_THROWS_AS(build_modes(kGrid, -1.0), DomainError);
}

TEST_CASE("projector algebra on every mode") {
    double worst = 0.0;
    for (std::size_t i = 0; i < kModes.size(); ++i) {
        const Mat2& p = kModes.projector(i, EnergySign::positive);
        const Mat2& m = kModes.projector(i, EnergySign::negative);
        worst = std::max(worst, max_abs_diff(p * p, p));
        worst = std::max(worst, max_abs_diff(m * m, m));
        worst = std::max(worst, max_abs_diff(p + m, sigma_0()));
        worst = std::max(worst, max_abs(p * m));
        worst = std::max(worst, max_abs_diff(p.adjoint(), p));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("evolve") {
    const auto g = gaussian_initial(kGrid);

    SUBCASE("zero step is the identity") {
        const auto same = evolve(g, 0.0, kModes);
        CHECK(max_abs_diff(same, g) == 0.0);
        CHECK(same.time() == 0.0);
    }
    SUBCASE("k = 0 rest spinor picks up exp(-i t)") {
        const auto w = SpinorField2::plane_wave(kGrid, 0, {1.0, 0.0});
        const auto out = evolve(w, kPi, kModes);
        CHECK(max_abs_diff(out, Complex(-1.0) * w) < 1e-14);
        CHECK(out.time() == doctest::Approx(kPi));
    }
    SUBCASE("forward then backward by 40 recovers the state") {
        const auto there = evolve(g, 40.0, kModes);
        const auto back = evolve(there, -40.0, kModes);
        CHECK(max_abs_diff(back, g) < 1e-12);
        CHECK(std::abs(back.time()) < 1e-12);
    }
    SUBCASE("norm is preserved") {
        CHECK(std::abs(norm_squared(evolve(g, 40.0, kModes)) - 1.0) < 1e-12);
    }
    SUBCASE("composition") {
        const auto a = evolve(evolve(g, 13.0, kModes), 27.0, kModes);
        CHECK(max_abs_diff(a, evolve(g, 40.0, kModes)) < 1e-12);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(evolve(gaussian_initial(Grid1D(1024, 256.0)), 1.0, kModes), ConfigError);
        CHECK_THROWS_AS(evolve(g, std::nan(""), kModes), DomainError);
    }
}

TEST_CASE("evolve is unitary on random fields for dt in [-40, 40]") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dt(-40.0, 40.0);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto psi = random_packet_field2(kGrid, seed);
        const double step = dt(rng);
        CAPTURE(step);
        CHECK(std::abs(norm_squared(evolve(psi, step, kModes)) - 1.0) < 1e-12);
    }
}

TEST_CASE("positive energy is the exp(-i omega t) branch") {
    for (long m : {0L, 3L, -7L, 40L}) {
        const std::size_t i = slot(m);
        CAPTURE(m);
        const double t = 2.5;
        const auto up = SpinorField2::plane_wave(kGrid, i, eigenvector(i, EnergySign::positive));
        const auto down = SpinorField2::plane_wave(kGrid, i, eigenvector(i, EnergySign::negative));
        const Complex phase(std::cos(kModes.omega(i) * t), -std::sin(kModes.omega(i) * t));
        CHECK(max_abs_diff(evolve(up, t, kModes), phase * up) < 1e-13);
        CHECK(max_abs_diff(evolve(down, t, kModes), std::conj(phase) * down) < 1e-13);
    }
}

TEST_CASE("mode unitary matches the Taylor oracle") {
    for (long m : {0L, 1L, -5L, 100L}) {
        const std::size_t i = slot(m);
        CHECK(max_abs_diff(kModes.unitary(i, 0.7), oracle::taylor_exp(kModes.hamiltonian(i), 0.7, 60)) < 1e-12);
    }
}

TEST_CASE("energy projections") {
    const auto g = gaussian_initial(kGrid);
    const auto plus = project_positive(g, kModes);
    const auto minus = project_negative(g, kModes);

    CHECK(std::abs(norm_squared(plus) - 0.5) < 1e-12);
    CHECK(std::abs(norm_squared(plus) + norm_squared(minus) - 1.0) < 1e-12);
    CHECK(std::abs(inner_product(plus, minus)) < 1e-13);
    CHECK(max_abs_diff(plus + minus, g) < 1e-13);
    CHECK(max_abs_diff(project_positive(plus, kModes), plus) < 1e-13);
    CHECK(max_abs(project_negative(plus, kModes)) < 1e-13);
    CHECK(max_abs_diff(project(g, EnergySign::negative, kModes), minus) == 0.0);

    SUBCASE("a rest-frame lower spinor is purely negative energy") {
        const auto w = SpinorField2::plane_wave(kGrid, 0, {0.0, 1.0});
        CHECK(max_abs_diff(project_negative(w, kModes), w) < 1e-15);
    }
    SUBCASE("projection commutes with evolution") {
        const auto psi = random_packet_field2(kGrid, 4);
        const auto a = project_positive(evolve(psi, 11.0, kModes), kModes);
        const auto b = evolve(project_positive(psi, kModes), 11.0, kModes);
        CHECK(max_abs_diff(a, b) < 1e-13);
    }
}

TEST_CASE("EvolutionPlan validation") {
    EvolutionPlan plan{kGrid, 1.0, 0.0, 40.0, {0.0, 10.0, 40.0}};
    CHECK_NOTHROW(plan.validate());
    plan.snapshot_times = {10.0, 5.0};
    CHECK_THROWS_AS(plan.validate(), ConfigError);
    plan.snapshot_times = {41.0};
    CHECK_THROWS_AS(plan.validate(), ConfigError);
}
