#include "doctest.h"

#include "wqed/smatrix.hpp"

#include <cmath>
#include <random>

using namespace wqed;

namespace {
const PhysicalParams kChiral{};
}

TEST_CASE("connected kernel at resonance and under rescaling") {
    CHECK(std::abs(s2_connected_kernel(0, 0, 0, 0, kChiral) - cplx(-4.0, 0.0)) <
          1e-14);
    // homogeneity: scaling all detunings with gamma0 scales the kernel by
    // 1/gamma0
    PhysicalParams fat;
    fat.gamma0 = 2.0;
    const cplx a = s2_connected_kernel(0.3, -0.7, 0.5, -0.9, kChiral);
    const cplx b = s2_connected_kernel(0.6, -1.4, 1.0, -1.8, fat);
    CHECK(std::abs(b - a / 2.0) < 1e-14);
}

TEST_CASE("pole terms cancel into the closed connected kernel") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dis(-3.0, 3.0);
    for (int k = 0; k < 200; ++k) {
        const double w1 = dis(rng), w2 = dis(rng), w1p = dis(rng);
        const double w2p = w1 + w2 - w1p;  // conserving tuple
        if (std::abs(w1 - w1p) < 0.05 || std::abs(w1 - w2p) < 0.05) continue;
        const cplx sum = s2_connected_kernel_pole_sum(w1, w2, w1p, w2p, kChiral);
        const cplx closed = s2_connected_kernel(w1, w2, w1p, w2p, kChiral);
        CHECK(std::abs(sum - closed) < 1e-10);
    }
}

TEST_CASE("the closed kernel stays finite across the former pole") {
    const double w1 = 0.4, w2 = -0.2;
    for (double x = -2.0; x <= 2.0; x += 1e-3) {
        const double w1p = w1 + x;  // crosses w1p = w1 at x = 0
        const double w2p = w1 + w2 - w1p;
        const double mag = std::abs(s2_connected_kernel(w1, w2, w1p, w2p, kChiral));
        CHECK(std::isfinite(mag));
        CHECK(mag < 10.0);
    }
}

TEST_CASE("two-photon time kernel limits") {
    SUBCASE("vanishing coupling leaves free plane waves") {
        PhysicalParams weak;
        weak.gamma0 = 1e-7;
        const double t1 = 0.3, t2 = -1.2, w1 = 0.9, w2 = -0.4;
        const cplx free2 =
            std::exp(cplx(0, -(w1 * t1 + w2 * t2))) +
            std::exp(cplx(0, -(w1 * t2 + w2 * t1)));
        CHECK(std::abs(s2_time_kernel(t1, t2, w1, w2, weak, Channel2::XXx) -
                       free2) < 1e-5);
        CHECK(std::abs(s2_time_kernel(t1, t2, w1, w2, weak, Channel2::XYy)) < 1e-5);
    }
    SUBCASE("widely separated detections drop the bounce term") {
        const double t1 = 0.0, t2 = 40.0, w1 = 0.9, w2 = -0.4;
        const cplx want = 2.0 * t_coeff(w1, kChiral) * t_coeff(w2, kChiral) *
                          std::cos((w2 - w1) * (t2 - t1) / 2.0) *
                          std::exp(cplx(0, -(w1 + w2) * (t1 + t2) / 2.0));
        CHECK(std::abs(s2_time_kernel(t1, t2, w1, w2, kChiral, Channel2::XXx) -
                       want) < 1e-12);
    }
    SUBCASE("degenerate frequencies at coincident times") {
        const double w = 0.7, t = 1.1;
        const cplx tc = t_coeff(w, kChiral), sc = s_coeff(w, kChiral);
        const cplx want = 2.0 * (tc * tc - sc * sc) *
                          std::exp(cplx(0, -2.0 * w * t));
        CHECK(std::abs(s2_time_kernel(t, t, w, w, kChiral, Channel2::XXx) - want) <
              1e-13);
    }
    SUBCASE("symmetric under both exchanges") {
        const double t1 = 0.3, t2 = -1.2, w1 = 0.9, w2 = -0.4;
        const cplx ref = s2_time_kernel(t1, t2, w1, w2, kChiral, Channel2::XXx);
        CHECK(std::abs(s2_time_kernel(t2, t1, w1, w2, kChiral, Channel2::XXx) -
                       ref) < 1e-12);
        CHECK(std::abs(s2_time_kernel(t1, t2, w2, w1, kChiral, Channel2::XXx) -
                       ref) < 1e-12);
    }
}

TEST_CASE("three-photon time kernel limits") {
    SUBCASE("vanishing coupling") {
        PhysicalParams weak;
        weak.gamma0 = 1e-7;
        const double w[3] = {0.5, -0.3, 1.1};
        const double t[3] = {0.2, 1.4, -0.9};
        cplx freesum = 0.0;
        const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                 {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        double T[3] = {t[0], t[1], t[2]};
        std::sort(T, T + 3);
        for (const auto& p : perms)
            freesum += std::exp(
                cplx(0, -(w[p[0]] * T[0] + w[p[1]] * T[1] + w[p[2]] * T[2])));
        CHECK(std::abs(s3_time_kernel(t[0], t[1], t[2], w[0], w[1], w[2], weak,
                                      Channel3::XXXx) -
                       freesum) < 1e-4);
        CHECK(std::abs(s3_time_kernel(t[0], t[1], t[2], w[0], w[1], w[2], weak,
                                      Channel3::XXYy)) < 1e-4);
    }
    SUBCASE("widely separated times factorize into transmissions") {
        const double w[3] = {0.5, -0.3, 1.1};
        const double T[3] = {-30.0, 0.0, 30.0};
        cplx want = 0.0;
        const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                 {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& p : perms)
            want += t_coeff(w[p[0]], kChiral) * t_coeff(w[p[1]], kChiral) *
                    t_coeff(w[p[2]], kChiral) *
                    std::exp(cplx(0, -(w[p[0]] * T[0] + w[p[1]] * T[1] +
                                       w[p[2]] * T[2])));
        CHECK(std::abs(s3_time_kernel(T[0], T[1], T[2], w[0], w[1], w[2], kChiral,
                                      Channel3::XXXx) -
                       want) < 1e-10);
    }
    SUBCASE("channel validation") {
        CHECK_THROWS_AS(s3_time_kernel(0, 1, 2, 0, 0, 0, kChiral, Channel3::XYXy),
                        validation_error);
    }
}

TEST_CASE("spectrum edge leakage is detected") {
    const TimeGrid grid = make_time_grid(-12.0, 22.0, 257);
    const PulseShape g(0.0, 0.5);
    const FrequencyGrid narrow = make_frequency_grid(-1.0, 1.0, 33);
    CHECK_THROWS_AS(pulse_spectrum(g, grid, narrow, kChiral), numeric_error);
    const FrequencyGrid wide = make_frequency_grid(-5.0, 5.0, 129);
    CHECK_NOTHROW(pulse_spectrum(g, grid, wide, kChiral));
}

TEST_CASE("two-photon spectral oracle reproduces the time-domain waves") {
    // one calibration constant, frozen at a single reference node, must
    // validate every node, the other channel, and a different pulse
    const TimeGrid grid = default_grid(0.5, 65, 0.0);
    const FrequencyGrid fg = make_frequency_grid(-5.0, 5.0, 161);
    const PulseShape ref = normalize(PulseShape(0.0, 0.5), grid);
    const cplx C = calibrate_two_photon_constant(ref, grid, fg, kChiral);

    auto check_agreement = [&](const PulseShape& s, const TimeGrid& g,
                               const FrequencyGrid& f) {
        const TwoPhotonWave td = scatter_two(s, g, kChiral);
        const TwoPhotonWave or2 = oracle_two_photon(s, g, f, kChiral, C);
        double peak = 0.0;
        for (const cplx& v : td.xxx) peak = std::max(peak, std::abs(v));
        double dxxx = 0.0, dxyy = 0.0;
        for (std::size_t k = 0; k < td.xxx.size(); ++k) {
            dxxx = std::max(dxxx, std::abs(td.xxx[k] - or2.xxx[k]));
            dxyy = std::max(dxyy, std::abs(td.xyy[k] - or2.xyy[k]));
        }
        CHECK(dxxx < 1e-3 * peak);
        CHECK(dxyy < 1e-3 * peak);
    };
    check_agreement(ref, grid, fg);

    const TimeGrid grid2 = default_grid(1.0, 65, 0.0);
    const FrequencyGrid fg2 = make_frequency_grid(1.0 - 10.0, 1.0 + 10.0, 161);
    check_agreement(normalize(PulseShape(1.0, 1.0), grid2), grid2, fg2);
}

TEST_CASE("monochromatic three-photon oracle") {
    const PulseShape g(1.0, 0.01);

    SUBCASE("bulk probes agree within a few percent") {
        const std::array<double, 3> cal{-3.0, 0.5, 4.0};
        for (Channel3 ch : {Channel3::XXXx, Channel3::XXYy}) {
            const cplx C = calibrate_three_photon_constant(g, kChiral, cal, ch);
            const std::vector<std::array<double, 3>> probes{
                {-5.0, -1.0, 3.0}, {2.0, 4.5, 7.0}, {-8.0, 2.0, 6.0}};
            const std::vector<cplx> got =
                oracle_three_photon_mono(g, kChiral, probes, ch, C);
            for (std::size_t k = 0; k < probes.size(); ++k) {
                const cplx want =
                    psi3_pointwise(g, kChiral, probes[k][0], probes[k][1],
                                   probes[k][2], ch);
                CHECK(std::abs(got[k] - want) < 0.03 * std::abs(want));
            }
        }
    }
    SUBCASE("resonant transmission dies at separated times") {
        const PulseShape res(0.0, 0.01);
        const cplx v = psi3_pointwise(res, kChiral, -4.0, 0.0, 4.0, Channel3::XXXx);
        const double scale = std::abs(envelope(res, -4.0) * envelope(res, 0.0) *
                                      envelope(res, 4.0));
        CHECK(std::abs(v) < 0.05 * scale);
    }
    SUBCASE("validation") {
        CHECK_THROWS_AS(
            oracle_three_photon_mono(g, kChiral, {{0.0, 1.0, 2.0}},
                                     Channel3::XYXy, 1.0),
            validation_error);
        CHECK_THROWS_AS(
            oracle_three_photon_mono(g, kChiral, {{500.0, 1.0, 2.0}},
                                     Channel3::XXXx, 1.0),
            validation_error);
        CHECK_THROWS_AS(
            oracle_three_photon_mono(PulseShape(0.0, 0.5), kChiral,
                                     {{0.0, 1.0, 2.0}}, Channel3::XXXx, 1.0),
            validation_error);
    }
}
