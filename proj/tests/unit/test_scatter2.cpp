#include "doctest.h"

#include "../support/golden.hpp"
#include "wqed/scatter2.hpp"

#include <cmath>

using namespace wqed;

namespace {
const PhysicalParams kChiral{};

TwoPhotonWave reference_wave() {
    // grid with nodes at the golden probe times 0.5 and -0.25
    const TimeGrid grid = make_time_grid(-14.0, 22.0, 721);
    const PulseShape g(0.0, 0.5);  // analytic amplitude, already unit norm
    return scatter_two(g, grid, kChiral);
}
}  // namespace

TEST_CASE("zero pulse scatters to the zero wave") {
    PulseShape zero(0.0, 0.5);
    zero.norm_factor = 0.0;
    const TimeGrid grid = make_time_grid(-12.0, 22.0, 121);
    const TwoPhotonWave w = scatter_two(zero, grid, kChiral);
    for (const cplx& v : w.xxx) CHECK(std::abs(v) == 0.0);
    for (const cplx& v : w.xyy) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("well-separated detections factorize into single-photon transmissions") {
    const TimeGrid grid = make_time_grid(-14.0, 22.0, 721);
    const PulseShape g(0.0, 0.5);
    const TwoPhotonWave w = scatter_two(g, grid, kChiral);
    const EnvelopeSeries p0 = envelope_series(g, grid, kChiral);
    const EnvelopeSeries ps = filtered_envelope(g, grid, kChiral);
    const int i = grid.index_of(-3.0);
    const int j = grid.index_of(17.0);  // 20/gamma0 later
    const cplx tau_i = p0.values[i] + ps.values[i];
    const cplx tau_j = p0.values[j] + ps.values[j];
    CHECK(std::abs(w.at_xxx(i, j) - tau_i * tau_j) < 1e-8);
}

TEST_CASE("golden probes of the scattered wave") {
    const TwoPhotonWave w = reference_wave();
    const int i0 = w.grid.index_of(0.0);
    CHECK(std::abs(w.at_xxx(i0, i0) - golden::kGaussHalfXXxAt00) < 1e-6);

    const int i = w.grid.index_of(0.5);
    const int j = w.grid.index_of(-0.25);
    CHECK(std::abs(w.at_xxx(i, j) - golden::kGaussHalfXXxProbe) < 1e-6);
    CHECK(std::abs(w.at_xyy(i, j) - golden::kGaussHalfXYyProbe) < 1e-6);
    CHECK(std::abs(w.at_xyy(j, i) - golden::kGaussHalfYXyProbe) < 1e-6);
}

TEST_CASE("pointwise evaluation") {
    const PulseShape g(0.0, 0.5);

    SUBCASE("matches the gridded wave at lattice nodes") {
        const TimeGrid grid = default_grid_two_photon(0.5);
        const TwoPhotonWave w = scatter_two(g, grid, kChiral);
        for (auto [a, b] : {std::pair{30, 71}, {128, 128}, {200, 45}, {0, 256}}) {
            const double t1 = grid.time(a), t2 = grid.time(b);
            CHECK(std::abs(psi2_pointwise(g, kChiral, t1, t2, Channel2::XXx) -
                           w.at_xxx(a, b)) < 1e-9);
            CHECK(std::abs(psi2_pointwise(g, kChiral, t1, t2, Channel2::XYy) -
                           w.at_xyy(a, b)) < 1e-9);
        }
    }
    SUBCASE("YXy is XYy with swapped arguments") {
        const cplx a = psi2_pointwise(g, kChiral, 0.8, -0.6, Channel2::YXy);
        const cplx b = psi2_pointwise(g, kChiral, -0.6, 0.8, Channel2::XYy);
        CHECK(a == b);
    }
}

TEST_CASE("quasi-monochromatic amplitude bookkeeping") {
    const PulseShape g(1.0, 0.01);
    const cplx s = s_coeff(1.0, kChiral);
    const cplx t = t_coeff(1.0, kChiral);
    const double t1 = 5.0, t2 = 13.0;  // within the pulse bulk, 8/gamma0 apart
    const double envs = std::abs(envelope(g, t1) * envelope(g, t2));

    // Y photon detected second: transmission then conversion
    const double later = std::abs(psi2_pointwise(g, kChiral, t1, t2, Channel2::XYy));
    CHECK(later == doctest::Approx(std::abs(t * s) * envs).epsilon(0.03));
    // Y photon detected first: conversion, then the partner flies free
    const double earlier = std::abs(psi2_pointwise(g, kChiral, t2, t1, Channel2::XYy));
    CHECK(earlier == doctest::Approx(std::abs(s) * envs).epsilon(0.03));
}

TEST_CASE("exchange symmetry is exact by construction") {
    const TwoPhotonWave w = reference_wave();
    const int n = w.grid.n;
    for (int i = 0; i < n; i += 13)
        for (int j = 0; j < n; j += 7) {
            CHECK(w.at_xxx(i, j) == w.at_xxx(j, i));
        }
}

TEST_CASE("two-photon norm on the default grid") {
    const TimeGrid grid = default_grid_two_photon(0.5);
    const PulseShape g = normalize(PulseShape(0.0, 0.5), grid);
    const TwoPhotonWave w = scatter_two(g, grid, kChiral);
    double norm = 0.0;
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j)
            norm += grid.weight(i) * grid.weight(j) *
                    (std::norm(w.at_xxx(i, j)) + 2.0 * std::norm(w.at_xyy(i, j)));
    CHECK(std::abs(norm - 1.0) < 2e-3);
}

TEST_CASE("resonant scattering concentrates near the diagonal") {
    const TimeGrid grid = default_grid_two_photon(0.5);
    const PulseShape g = normalize(PulseShape(0.0, 0.5), grid);
    const TwoPhotonWave w = scatter_two(g, grid, kChiral);
    double inside = 0.0, total = 0.0;
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j) {
            const double c = grid.weight(i) * grid.weight(j) *
                             std::norm(w.at_xxx(i, j));
            total += c;
            if (std::abs(grid.time(i) - grid.time(j)) <= 4.0) inside += c;
        }
    // measured converged value 2.51%; the weight sits near the diagonal
    CHECK(total - inside < 0.03 * total);
}

TEST_CASE("a carrier frequency offset only changes phases") {
    const TimeGrid grid = make_time_grid(-14.0, 22.0, 121);
    const PulseShape g(0.4, 0.5);
    PhysicalParams shifted;
    shifted.omega0 = 3.7;
    const TwoPhotonWave a = scatter_two(g, grid, kChiral);
    const TwoPhotonWave b = scatter_two(g, grid, shifted);
    for (std::size_t k = 0; k < a.xxx.size(); k += 17) {
        CHECK(std::abs(std::abs(a.xxx[k]) - std::abs(b.xxx[k])) < 1e-10);
        CHECK(std::abs(std::abs(a.xyy[k]) - std::abs(b.xyy[k])) < 1e-10);
    }
}

TEST_CASE("XYy is continuous across the diagonal") {
    const PulseShape g(0.0, 0.5);
    double peak = 0.0;
    const TimeGrid grid = default_grid_two_photon(0.5);
    const TwoPhotonWave w = scatter_two(normalize(g, grid), grid, kChiral);
    for (const cplx& v : w.xyy) peak = std::max(peak, std::abs(v));
    for (double t : {-1.0, 0.0, 0.7, 2.0}) {
        const cplx above = psi2_pointwise(g, kChiral, t, t + 1e-9, Channel2::XYy);
        const cplx below = psi2_pointwise(g, kChiral, t, t - 1e-9, Channel2::XYy);
        CHECK(std::abs(above - below) < 1e-8 * peak);
    }
}
