#include "doctest.h"

#include "../support/golden.hpp"
#include "../support/oracle.hpp"
#include "wqed/pulse.hpp"

#include <cmath>
#include <random>

using namespace wqed;

namespace {
const PhysicalParams kChiral{};
}

TEST_CASE("Gaussian envelope peak and even modulus") {
    const PulseShape g(0.0, 1.0);
    CHECK(std::abs(envelope(g, 0.0) - std::sqrt(1.0) / std::pow(M_PI, 0.25)) <
          1e-14);
    const PulseShape d(1.3, 0.7);
    for (double t : {0.3, 1.7, 4.2})
        CHECK(std::abs(envelope(d, t)) ==
              doctest::Approx(std::abs(envelope(d, -t))).epsilon(1e-13));
}

TEST_CASE("Hermite-augmented envelope against the high-precision oracle") {
    PulseShape s(0.8984, 1.0143,
                 {cplx(0.0, 0.0294), cplx(0.0062, 0.0147), cplx(0.0024, 0.0)});
    const TimeGrid grid = make_time_grid(-14.0, 14.0, 2801);
    s = normalize(s, grid);
    CHECK(std::abs(envelope(s, 0.0) - golden::kHermiteEnvAt0) < 1e-8);
    CHECK(std::abs(envelope(s, 0.7) - golden::kHermiteEnvAt07) < 1e-8);
}

TEST_CASE("pulse validation") {
    CHECK_THROWS_AS(PulseShape(0.0, -1.0), validation_error);
    CHECK_THROWS_AS(PulseShape(0.0, 1.0, {cplx(0.1, 0.0)}), validation_error);
    CHECK_NOTHROW(PulseShape(0.0, 1.0, {cplx(0.0, 0.1)}));
}

TEST_CASE("normalization") {
    const TimeGrid grid = make_time_grid(-14.0, 22.0, 721);
    const PulseShape g(0.0, 0.5);

    SUBCASE("analytic Gaussian amplitude is already unit norm") {
        const PulseShape n = normalize(g, grid);
        CHECK(std::abs(n.norm_factor - g.norm_factor) < 1e-8 * g.norm_factor);
    }
    SUBCASE("doubling the amplitude halves norm_factor") {
        PulseShape big = g;
        big.norm_factor *= 2.0;
        const PulseShape n = normalize(big, grid);
        CHECK(n.norm_factor == doctest::Approx(normalize(g, grid).norm_factor)
                                   .epsilon(1e-15));
    }
    SUBCASE("zero amplitude is rejected") {
        PulseShape zero = g;
        zero.norm_factor = 0.0;
        CHECK_THROWS_AS(normalize(zero, grid), validation_error);
    }
}

TEST_CASE("filtered envelope: zero input, window check") {
    const TimeGrid grid = make_time_grid(-14.0, 22.0, 361);
    PulseShape zero(0.0, 0.5);
    zero.norm_factor = 0.0;
    const EnvelopeSeries s = filtered_envelope(zero, grid, kChiral);
    for (const cplx& v : s.values) CHECK(std::abs(v) == 0.0);

    const PulseShape g(0.0, 0.5);
    CHECK_THROWS_AS(filtered_envelope(g, make_time_grid(-2.0, 22.0, 341), kChiral),
                    validation_error);
}

TEST_CASE("filtered envelope against the dual oracle") {
    // closed form (complex error function) vs adaptive quadrature of the
    // defining integral, then the RK4 series against both
    const PulseShape g(0.0, 0.5);
    const TimeGrid grid = make_time_grid(-14.0, 22.0, 3601);  // h = 0.01
    const EnvelopeSeries s = filtered_envelope(g, grid, kChiral);

    for (double t : {0.0, 2.0, -3.0, 5.5}) {
        const cplx closed = oracle::filtered_gaussian_closed_form(g, kChiral, t);
        const cplx quad =
            -kChiral.gamma0 *
            oracle::integrate_simpson(
                [&](double u) {
                    return envelope(g, u) * std::exp(-kChiral.gamma0 * (t - u));
                },
                -14.0, t, 1e-13);
        CHECK(std::abs(closed - quad) < 1e-10);
        CHECK(std::abs(s.values[grid.index_of(t)] - closed) < 1e-9);
    }
    // frozen 50-digit values of the same integral
    CHECK(std::abs(s.values[grid.index_of(0.0)] - golden::kGaussHalfPhisAt0) < 1e-9);
    CHECK(std::abs(s.values[grid.index_of(2.0)] - golden::kGaussHalfPhisAt2) < 1e-9);
    CHECK(std::abs(s.values[grid.index_of(-3.0)] - golden::kGaussHalfPhisAtM3) < 1e-9);
    CHECK(std::abs(oracle::filtered_gaussian_closed_form(g, kChiral, 0.0) -
                   golden::kGaussHalfPhisAt0) < 1e-12);
}

TEST_CASE("quasi-monochromatic pulse filters adiabatically") {
    const PulseShape g(1.0, 0.01);
    const TimeGrid grid = make_time_grid(-700.0, 710.0, 7051);
    const EnvelopeSeries fs = filtered_envelope(g, grid, kChiral);
    const cplx s = s_coeff(1.0, kChiral);
    for (double t = -50.0; t <= 50.0; t += 10.0) {
        const int i = grid.index_of(t);
        const cplx want = s * envelope(g, grid.time(i));
        CHECK(std::abs(fs.values[i] - want) < 0.02 * std::abs(want));
    }
}

TEST_CASE("transmitted envelope") {
    const TimeGrid grid = make_time_grid(-14.0, 22.0, 361);
    const PulseShape g(0.0, 0.5);
    const EnvelopeSeries p0 = envelope_series(g, grid, kChiral);
    const EnvelopeSeries ps = filtered_envelope(g, grid, kChiral);
    const EnvelopeSeries pt = transmitted_envelope(p0, ps);
    for (int i = 0; i < grid.n; ++i)
        CHECK(pt.values[i] == p0.values[i] + ps.values[i]);

    EnvelopeSeries zero{grid, std::vector<cplx>(grid.n, 0.0)};
    const EnvelopeSeries same = transmitted_envelope(p0, zero);
    for (int i = 0; i < grid.n; ++i) CHECK(same.values[i] == p0.values[i]);

    const TimeGrid other = make_time_grid(-14.0, 22.0, 363);
    EnvelopeSeries bad{other, std::vector<cplx>(other.n, 0.0)};
    CHECK_THROWS_AS(transmitted_envelope(p0, bad), validation_error);

    // resonant monochromatic transmission dies in the pulse bulk (t(0) = 0)
    const PulseShape mono(0.0, 0.01);
    const TimeGrid wide = make_time_grid(-700.0, 710.0, 7051);
    const EnvelopeSeries m0 = envelope_series(mono, wide, kChiral);
    const EnvelopeSeries mt = transmitted_envelope(
        m0, filtered_envelope(mono, wide, kChiral));
    const int mid = wide.index_of(0.0);
    CHECK(std::abs(mt.values[mid]) < 0.02 * std::abs(m0.values[mid]));
}

TEST_CASE("single-photon norm conservation for random pulses") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dd(0.0, 2.0), dg(0.2, 1.5),
        dc(-0.03, 0.03);
    for (int rep = 0; rep < 5; ++rep) {
        const double gamma = dg(rng);
        PulseShape s(dd(rng), gamma,
                     {cplx(0.0, dc(rng)), cplx(dc(rng), dc(rng))});
        const TimeGrid grid = default_grid(gamma, 513, 0.1);
        s = normalize(s, grid);
        const EnvelopeSeries p0 = envelope_series(s, grid, kChiral);
        const EnvelopeSeries ps = filtered_envelope(s, grid, kChiral);
        const EnvelopeSeries pt = transmitted_envelope(p0, ps);
        double total = 0.0, incident = 0.0;
        for (int i = 0; i < grid.n; ++i) {
            total += grid.weight(i) * (std::norm(pt.values[i]) + std::norm(ps.values[i]));
            incident += grid.weight(i) * std::norm(p0.values[i]);
        }
        CHECK(std::abs(total - incident) < 1e-6);
    }
}

TEST_CASE("RK4 filter is fourth order against the closed form") {
    const PulseShape g(0.0, 0.5);
    auto max_err = [&](int n) {
        const TimeGrid grid = make_time_grid(-14.0, 22.0, n);
        const EnvelopeSeries s = filtered_envelope(g, grid, kChiral);
        double e = 0.0;
        for (int i = 0; i < grid.n; ++i)
            e = std::max(e, std::abs(s.values[i] -
                                     oracle::filtered_gaussian_closed_form(
                                         g, kChiral, grid.time(i))));
        return e;
    };
    const double e_h10 = max_err(341);   // h = 0.1
    const double e_h05 = max_err(681);   // h = 0.05
    const double e_h025 = max_err(1361); // h = 0.025
    CHECK(e_h05 < 1e-7);
    CHECK(e_h10 / e_h05 > 8.0);
    CHECK(e_h05 / e_h025 > 8.0);
}

TEST_CASE("filter response is linear in the envelope") {
    const TimeGrid grid = make_time_grid(-14.0, 22.0, 361);
    const PulseShape base(0.3, 0.5);
    PulseShape doubled = base;
    doubled.norm_factor *= 2.0;
    const EnvelopeSeries a = filtered_envelope(base, grid, kChiral);
    const EnvelopeSeries b = filtered_envelope(doubled, grid, kChiral);
    for (int i = 0; i < grid.n; ++i)
        CHECK(std::abs(b.values[i] - 2.0 * a.values[i]) < 1e-12);

    // Hermite corrections enter additively: the +c and -c shapes average to
    // the plain Gaussian
    const PulseShape plus(0.3, 0.5, {cplx(0.0, 0.1), cplx(0.05, -0.02)});
    const PulseShape minus(0.3, 0.5, {cplx(0.0, -0.1), cplx(-0.05, 0.02)});
    const EnvelopeSeries fp = filtered_envelope(plus, grid, kChiral);
    const EnvelopeSeries fm = filtered_envelope(minus, grid, kChiral);
    for (int i = 0; i < grid.n; ++i)
        CHECK(std::abs(0.5 * (fp.values[i] + fm.values[i]) - a.values[i]) < 1e-12);
}

TEST_CASE("default grids honor the window rule") {
    const TimeGrid g2 = default_grid_two_photon(0.5);
    CHECK(g2.t_min <= -12.0);
    CHECK(g2.t_max >= 22.0);
    CHECK(g2.n >= 255);
    CHECK(g2.n % 2 == 1);
    CHECK(g2.index_of(0.0) >= 0);  // zero is a lattice node
    const TimeGrid fine = default_grid_two_photon(0.05);
    CHECK(fine.h <= 0.20001);
    CHECK(fine.index_of(0.0) >= 0);
    const TimeGrid g3 = default_grid_three_photon(0.2);
    CHECK(g3.index_of(0.0) >= 0);
}
