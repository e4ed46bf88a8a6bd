#include "wqed/smatrix.hpp"

#include "wqed/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace wqed {

FrequencyGrid make_frequency_grid(double omega_min, double omega_max, int m) {
    if (!(omega_max > omega_min))
        throw validation_error("frequency grid needs omega_max > omega_min");
    if (m < 16) throw validation_error("frequency grid needs m >= 16");
    FrequencyGrid g;
    g.omega_min = omega_min;
    g.omega_max = omega_max;
    g.m = m;
    g.spacing = (omega_max - omega_min) / (m - 1);
    return g;
}

cplx s2_connected_kernel(double w1, double w2, double w1p, double w2p,
                         const PhysicalParams& params) {
    params.validate();
    const double g0 = params.gamma0;
    const double chi2 = params.chirality * params.chirality;
    const cplx i(0.0, 1.0);
    return chi2 * 2.0 * i * g0 * g0 * (w1 + w2 + 2.0 * i * g0) /
           ((w1 + i * g0) * (w2 + i * g0) * (w1p + i * g0) * (w2p + i * g0));
}

cplx s2_connected_kernel_pole_sum(double w1, double w2, double w1p, double w2p,
                                  const PhysicalParams& params) {
    const cplx i(0.0, 1.0);
    auto s = [&](double w) { return s_coeff(w, params); };
    // single-pole terms of the XYy element plus the outgoing-label swap;
    // the 1/(w - w') singularities cancel on conserving tuples
    const cplx a = i * s(w1) * s(w2p) / (w1 - w1p) + i * s(w2) * s(w1p) / (w2 - w2p);
    const cplx b = i * s(w1) * s(w1p) / (w1 - w2p) + i * s(w2) * s(w2p) / (w2 - w1p);
    return a + b;
}

cplx s2_time_kernel(double t1, double t2, double w1, double w2,
                    const PhysicalParams& params, Channel2 channel) {
    const double g0 = params.gamma0;
    const cplx i(0.0, 1.0);
    const cplx s1 = s_coeff(w1, params), s2 = s_coeff(w2, params);
    const cplx tc1 = t_coeff(w1, params), tc2 = t_coeff(w2, params);
    const double dt = t2 - t1;
    const double adt = std::abs(dt);
    const double wsum = w1 + w2, wdif = w2 - w1;
    const cplx carrier = std::exp(-i * wsum * (t1 + t2) / 2.0);
    const cplx bounce = std::exp(-(g0 - i * wsum / 2.0) * adt);

    if (channel == Channel2::XXx)
        return 2.0 * (tc1 * tc2 * std::cos(wdif * dt / 2.0) - s1 * s2 * bounce) *
               carrier;
    if (channel != Channel2::XYy)
        throw validation_error("time kernel channels are XXx and XYy");

    const cplx ed = std::exp(-i * wdif * dt / 2.0);
    const double th_after = dt > 0 ? 1.0 : (dt == 0 ? 0.5 : 0.0);
    const double th_before = 1.0 - th_after;
    cplx out = 0.0;
    if (th_after > 0)
        out += th_after *
               (tc1 * s2 * ed + tc2 * s1 * std::conj(ed) - 2.0 * s1 * s2 * bounce);
    if (th_before > 0)
        out += th_before * (s2 * ed + s1 * std::conj(ed));
    return out * carrier;
}

namespace {

// one permutation bracket of the three-photon kernels; times sorted for the
// XXXx channel, (t_<, t_>, t3) bookkeeping for XXYy
cplx s3_bracket_xxxx(const std::array<double, 3>& T, cplx s1, cplx s2, cplx s3,
                     double w1, double w2, double w3, double g0) {
    const cplx i(0.0, 1.0);
    const cplx e1 = std::exp(-i * w1 * T[0]);
    const cplx e2 = std::exp(-i * w2 * T[1]);
    const cplx e3 = std::exp(-i * w3 * T[2]);
    const cplx irr = s1 * s2 * s3 *
                     (1.0 - std::exp((i * w2 - g0) * (T[1] - T[0]))) *
                     (1.0 - std::exp((i * w3 - g0) * (T[2] - T[1]))) * e1 * e2 * e3;
    const cplx p12 = s1 * s2 *
                     (e1 * e2 - e1 * std::exp(-i * w2 * T[0] - g0 * (T[1] - T[0]))) *
                     e3;
    const cplx p23 = s2 * s3 *
                     (e2 * e3 - e2 * std::exp(-i * w3 * T[1] - g0 * (T[2] - T[1]))) *
                     e1;
    const cplx p13 = s1 * s3 *
                     (e1 * e3 - e1 * std::exp(-i * w3 * T[0] - g0 * (T[2] - T[0]))) *
                     e2;
    const cplx single = (1.0 + s1 + s2 + s3) * e1 * e2 * e3;
    return irr + p12 + p23 + p13 + single;
}

cplx s3_bracket_xxyy(double tl, double tg, double t3, cplx s1, cplx s2, cplx s3,
                     double w1, double w2, double w3, double g0) {
    const cplx i(0.0, 1.0);
    auto th = [](double x) { return x > 0 ? 1.0 : (x == 0 ? 0.5 : 0.0); };
    std::array<double, 3> T{tl, tg, t3};
    std::sort(T.begin(), T.end());
    cplx out = 0.0;
    const double th_g = th(t3 - tg);
    if (th_g > 0) {
        out += th_g * s1 * s2 * s3 *
               (1.0 - std::exp((i * w2 - g0) * (T[1] - T[0]))) *
               (1.0 - std::exp((i * w3 - g0) * (T[2] - T[1]))) *
               std::exp(-i * (w1 * T[0] + w2 * T[1] + w3 * T[2]));
        out += th_g * s2 * s3 *
               (std::exp(-i * w2 * tg - i * w3 * t3) -
                std::exp(-i * w2 * tg - i * w3 * tg - g0 * (t3 - tg))) *
               std::exp(-i * w1 * tl);
    }
    const double th_l = th(t3 - tl);
    if (th_l > 0)
        out += th_l * s1 * s3 *
               (std::exp(-i * w1 * tl - i * w3 * t3) -
                std::exp(-i * w1 * tl - i * w3 * tl - g0 * (t3 - tl))) *
               std::exp(-i * w2 * tg);
    out += s3 * std::exp(-i * (w1 * tl + w2 * tg + w3 * t3));
    return out;
}

}  // namespace

cplx s3_time_kernel(double t1, double t2, double t3, double w1, double w2,
                    double w3, const PhysicalParams& params, Channel3 channel) {
    if (channel != Channel3::XXXx && channel != Channel3::XXYy)
        throw validation_error("time kernel channels are XXXx and XXYy");
    const double g0 = params.gamma0;
    const std::array<double, 3> w{w1, w2, w3};
    const std::array<cplx, 3> s{s_coeff(w1, params), s_coeff(w2, params),
                                s_coeff(w3, params)};
    std::array<double, 3> T{t1, t2, t3};
    std::sort(T.begin(), T.end());
    const double tl = std::min(t1, t2), tg = std::max(t1, t2);

    static constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                        {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    cplx out = 0.0;
    for (const auto& p : perms) {
        if (channel == Channel3::XXXx)
            out += s3_bracket_xxxx(T, s[p[0]], s[p[1]], s[p[2]], w[p[0]],
                                   w[p[1]], w[p[2]], g0);
        else
            out += s3_bracket_xxyy(tl, tg, t3, s[p[0]], s[p[1]], s[p[2]],
                                   w[p[0]], w[p[1]], w[p[2]], g0);
    }
    return out;
}

std::vector<cplx> pulse_spectrum(const PulseShape& shape, const TimeGrid& grid,
                                 const FrequencyGrid& fgrid,
                                 const PhysicalParams& params) {
    shape.validate();
    if (params.omega0 != 0.0)
        throw validation_error("spectral oracle works in the rotating frame");
    std::vector<cplx> F(fgrid.m, 0.0);
    const cplx i(0.0, 1.0);
    for (int m = 0; m < fgrid.m; ++m) {
        const double w = fgrid.omega(m);
        cplx acc = 0.0;
        for (int k = 0; k < grid.n; ++k) {
            const double t = grid.time(k);
            acc += grid.weight(k) * envelope(shape, t) * std::exp(i * w * t);
        }
        F[m] = acc;
    }
    double peak = 0.0;
    for (const cplx& v : F) peak = std::max(peak, std::abs(v));
    if (std::abs(F.front()) > 1e-6 * peak || std::abs(F.back()) > 1e-6 * peak)
        throw numeric_error("pulse spectrum leaks past the frequency window");
    return F;
}

TwoPhotonWave oracle_two_photon(const PulseShape& shape, const TimeGrid& grid,
                                const FrequencyGrid& fgrid,
                                const PhysicalParams& params,
                                cplx calibration) {
    const std::vector<cplx> F = pulse_spectrum(shape, grid, fgrid, params);
    const int n = grid.n;
    const int m = fgrid.m;
    const cplx i(0.0, 1.0);
    const double g0 = params.gamma0;

    std::vector<cplx> sF(m), tF(m);
    for (int k = 0; k < m; ++k) {
        sF[k] = s_coeff(fgrid.omega(k), params) * F[k];
        tF[k] = t_coeff(fgrid.omega(k), params) * F[k];
    }

    const double scale = fgrid.spacing / (2.0 * M_PI);
    TwoPhotonWave wave;
    wave.grid = grid;
    wave.xxx.assign(std::size_t(n) * n, 0.0);
    wave.xyy.assign(std::size_t(n) * n, 0.0);

    parallel_for(n, [&](std::size_t row) {
        const double t1 = grid.time(int(row));
        // per-(t1,t2) tables over the frequency-sum and frequency-difference
        // diagonals keep the inner double loop at a few multiplies
        std::vector<cplx> phase(2 * m), bounce(2 * m), ed(2 * m);
        for (int j = 0; j < n; ++j) {
            const double t2 = grid.time(j);
            const double dt = t2 - t1;
            const double adt = std::abs(dt);
            const double th_after = dt > 0 ? 1.0 : (dt == 0 ? 0.5 : 0.0);
            const double th_before = 1.0 - th_after;
            for (int q = 0; q < 2 * m - 1; ++q) {
                const double wsum = fgrid.omega(0) * 2 + fgrid.spacing * q;
                phase[q] = std::exp(-i * wsum * (t1 + t2) / 2.0);
                bounce[q] = std::exp(-(g0 - i * wsum / 2.0) * adt);
            }
            for (int d = 0; d < 2 * m - 1; ++d) {
                const double wdif = fgrid.spacing * (d - (m - 1));
                ed[d] = std::exp(-i * wdif * dt / 2.0);
            }
            cplx accx = 0.0, accy = 0.0;
            for (int m1 = 0; m1 < m; ++m1) {
                for (int m2 = 0; m2 < m; ++m2) {
                    const int q = m1 + m2;
                    const int d = m2 - m1 + (m - 1);
                    const cplx ss = sF[m1] * sF[m2];
                    accx += (tF[m1] * tF[m2] * ed[d].real() - ss * bounce[q]) *
                            phase[q];
                    cplx y = 0.0;
                    if (th_after > 0)
                        y += th_after * (tF[m1] * sF[m2] * ed[d] +
                                         tF[m2] * sF[m1] * std::conj(ed[d]) -
                                         2.0 * ss * bounce[q]);
                    if (th_before > 0)
                        y += th_before * (F[m1] * sF[m2] * ed[d] +
                                          F[m2] * sF[m1] * std::conj(ed[d]));
                    accy += y * phase[q];
                }
            }
            wave.xxx[row * n + j] = calibration * 2.0 * scale * scale * accx;
            wave.xyy[row * n + j] = calibration * scale * scale * accy;
        }
    });
    return wave;
}

cplx calibrate_two_photon_constant(const PulseShape& ref_shape,
                                   const TimeGrid& grid,
                                   const FrequencyGrid& fgrid,
                                   const PhysicalParams& params) {
    const TwoPhotonWave ref = scatter_two(ref_shape, grid, params);
    const TwoPhotonWave raw = oracle_two_photon(ref_shape, grid, fgrid, params, 1.0);
    // match at the largest |psi_XXx| node
    std::size_t best = 0;
    double mag = 0.0;
    for (std::size_t k = 0; k < ref.xxx.size(); ++k) {
        const double a = std::abs(ref.xxx[k]);
        if (a > mag) {
            mag = a;
            best = k;
        }
    }
    if (mag < 1e-12)
        throw numeric_error("reference wave is numerically zero; cannot calibrate");
    return ref.xxx[best] / raw.xxx[best];
}

std::vector<cplx> oracle_three_photon_mono(
    const PulseShape& shape, const PhysicalParams& params,
    const std::vector<std::array<double, 3>>& probes, Channel3 channel,
    cplx calibration) {
    shape.validate();
    if (channel != Channel3::XXXx && channel != Channel3::XXYy)
        throw validation_error("inconsistent channel request for the mono oracle");
    if (shape.gamma > 0.02)
        throw validation_error("mono oracle needs a quasi-monochromatic pulse "
                               "(gamma <= 0.02)");
    const cplx i(0.0, 1.0);
    const double peak = std::abs(envelope(shape, 0.0));
    std::vector<cplx> out;
    out.reserve(probes.size());
    for (const auto& p : probes) {
        cplx env = 1.0;
        for (double t : p) {
            const cplx e = envelope(shape, t) * std::exp(i * shape.delta * t);
            if (std::abs(e) < 1e-2 * peak)
                throw validation_error("probe time outside the pulse bulk");
            env *= e;
        }
        const cplx K = s3_time_kernel(p[0], p[1], p[2], shape.delta,
                                      shape.delta, shape.delta, params, channel);
        out.push_back(calibration * env * K);
    }
    return out;
}

cplx calibrate_three_photon_constant(const PulseShape& shape,
                                     const PhysicalParams& params,
                                     const std::array<double, 3>& probe,
                                     Channel3 channel) {
    const cplx impl =
        psi3_pointwise(shape, params, probe[0], probe[1], probe[2], channel);
    const cplx raw =
        oracle_three_photon_mono(shape, params, {probe}, channel, 1.0)[0];
    if (std::abs(raw) < 1e-14)
        throw numeric_error("oracle value at the calibration probe is zero");
    return impl / raw;
}

}  // namespace wqed
