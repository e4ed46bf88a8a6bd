#include "series.hpp"

#include "wqed/kernels.hpp"

#include <cmath>

namespace wqed::detail {

ScatterSeries build_series(const PulseShape& shape, const TimeGrid& grid,
                           const PhysicalParams& params) {
    shape.validate();
    params.validate();

    // phi_s on a refined lattice, downsampled onto the detection grid
    // ((n-1)*sub + 1 is odd because n is odd)
    const int sub = std::max(1, int(std::ceil(grid.h / 0.05)));
    const TimeGrid f =
        make_time_grid(grid.t_min, grid.t_max, (grid.n - 1) * sub + 1);

    PhysicalParams rotating = params;
    rotating.omega0 = 0.0;
    const EnvelopeSeries phis_fine = filtered_envelope(shape, f, rotating);

    ScatterSeries s;
    s.grid = grid;
    const int n = grid.n;
    s.phi0.resize(n);
    s.phis.resize(n);
    s.phitau.resize(n);
    s.ssq.resize(n);
    s.sdiff.resize(n);
    for (int i = 0; i < n; ++i) {
        s.phi0[i] = envelope(shape, grid.time(i));
        s.phis[i] = phis_fine.values[std::size_t(i) * sub];
        s.phitau[i] = s.phi0[i] + s.phis[i];
        s.ssq[i] = s.phis[i] * s.phis[i];
        s.sdiff[i] = s.phis[i] - s.phi0[i];
    }
    s.decay.resize(2 * n - 1);
    for (int d = -(n - 1); d <= n - 1; ++d)
        s.decay[std::size_t(n - 1 + d)] =
            std::exp(-params.gamma0 * grid.h * std::abs(d));
    return s;
}

namespace {
inline double dec(const ScatterSeries& s, int a, int b) {
    return s.decay[std::size_t(s.grid.n - 1 + (a - b))];
}
}  // namespace

// psi_XXXx(t_i, t_j, t_k) over k.  Split at a = min(i,j), b = max(i,j);
// within each k range the time ordering is fixed and the amplitude is a
// short linear combination of the precomputed series.
void xxxx_row(const ScatterSeries& s, int i, int j, cplx* out) {
    const auto& K = kernels::active();
    const int n = s.grid.n;
    const int a = std::min(i, j), b = std::max(i, j);
    const cplx* tau = s.phitau.data();
    const cplx* ssq = s.ssq.data();
    const cplx* sdf = s.sdiff.data();
    const double* Da = s.decay_at(a);
    const double* Db = s.decay_at(b);
    const double dab = dec(s, b, a);
    const cplx tij = tau[i] * tau[j];
    const cplx head = tij - ssq[a] * dab;

    // k <= a: ordering (k, a, b)
    K.row3_low(out, a + 1, head, tau, ssq, -tau[b], Da, sdf[a], Db);
    // a < k < b: ordering (a, k, b)
    if (b - a > 1)
        K.row3_mid(out + a + 1, b - a - 1, tij, tau + a + 1, -ssq[a] * tau[b],
                   Da + a + 1, -tau[a], ssq + a + 1, Db + a + 1, ssq[a] * dab,
                   sdf + a + 1);
    // k >= b: ordering (a, b, k)
    const int h0 = std::max(a + 1, b);
    K.row3(out + h0, n - h0, head, tau + h0, -ssq[b] * tau[a], Db + h0,
           ssq[a] * sdf[b], Da + h0);
}

// psi_XXYy(t_i, t_j, t_k) over k: the Y photon time scans.
void xxyy_row(const ScatterSeries& s, int i, int j, cplx* out) {
    const auto& K = kernels::active();
    const int n = s.grid.n;
    const int a = std::min(i, j), b = std::max(i, j);
    const cplx* phi0 = s.phi0.data();
    const cplx* phis = s.phis.data();
    const cplx* tau = s.phitau.data();
    const double* Da = s.decay_at(a);
    const double* Db = s.decay_at(b);
    const double dab = dec(s, b, a);

    // Y before both X photons
    K.row3(out, a + 1, phi0[a] * phi0[b], phis, 0.0, nullptr, 0.0, nullptr);
    // Y between
    if (b - a > 1)
        K.row3(out + a + 1, b - a - 1, phi0[b] * tau[a], phis + a + 1,
               -phi0[b] * s.ssq[a], Da + a + 1, 0.0, nullptr);
    // Y after both
    const int h0 = std::max(a + 1, b);
    K.row3(out + h0, n - h0, tau[a] * tau[b] - s.ssq[a] * dab, phis + h0,
           -s.ssq[b] * tau[a], Db + h0, s.ssq[a] * s.sdiff[b], Da + h0);
}

// psi_XXYy(t_u, t_k, t_v) over k: one X photon time scans, the Y time t_v
// is fixed.
void xxyy_perm_row(const ScatterSeries& s, int u, int v, cplx* out) {
    const auto& K = kernels::active();
    const int n = s.grid.n;
    const cplx* phi0 = s.phi0.data();
    const cplx* tau = s.phitau.data();
    const cplx* ssq = s.ssq.data();
    const cplx* sdf = s.sdiff.data();
    const cplx c = s.phis[v];
    const double* Du = s.decay_at(u);
    const double* Dv = s.decay_at(v);

    if (u < v) {
        const double dvu = dec(s, v, u);
        const cplx tail = tau[u] * c - ssq[u] * dvu;
        // k <= u: X pair is (k, u), both before Y
        K.row3_low(out, u + 1, tail, tau, ssq, -c, Du, sdf[u], Dv);
        // u < k < v: X pair is (u, k), still before Y
        if (v - u > 1)
            K.row3_mid(out + u + 1, v - u - 1, tau[u] * c, tau + u + 1,
                       -ssq[u] * c, Du + u + 1, -tau[u], ssq + u + 1,
                       Dv + u + 1, ssq[u] * dvu, sdf + u + 1);
        // k >= v: scanning photon arrives after the conversion
        K.row3(out + v, n - v, tail, phi0 + v, 0.0, nullptr, 0.0, nullptr);
    } else {
        // Y not later than the fixed X photon (v <= u)
        // k < v: scanning photon earliest, conversion in the middle
        if (v > 0)
            K.row3_low(out, v, phi0[u] * c, tau, ssq, -phi0[u], Dv, 0.0,
                       nullptr);
        // k >= v: conversion happened first
        K.row3(out + v, n - v, phi0[u] * c, phi0 + v, 0.0, nullptr, 0.0,
               nullptr);
    }
}

cplx phis_at(const PulseShape& shape, const PhysicalParams& params,
             const ScatterSeries& s, double t) {
    const TimeGrid& g = s.grid;
    if (t <= g.t_min) return 0.0;
    const double x = (t - g.t_min) / g.h;
    const int i = int(std::lround(x));
    if (i >= 0 && i < g.n && std::abs(x - i) < 1e-9) return s.phis[i];

    const double g0 = params.gamma0;
    const double drive = params.chirality * g0;
    const int sub = std::max(1, int(std::ceil(g.h / 0.05)));
    const double hf = g.h / sub;
    auto rk4 = [&](double t0, double h, cplx yy) {
        const cplx f1 = -g0 * yy - drive * envelope(shape, t0);
        const cplx y2 = yy + 0.5 * h * f1;
        const cplx f2 = -g0 * y2 - drive * envelope(shape, t0 + 0.5 * h);
        const cplx y3 = yy + 0.5 * h * f2;
        const cplx f3 = -g0 * y3 - drive * envelope(shape, t0 + 0.5 * h);
        const cplx y4 = yy + h * f3;
        const cplx f4 = -g0 * y4 - drive * envelope(shape, t0 + h);
        return yy + h / 6.0 * (f1 + 2.0 * f2 + 2.0 * f3 + f4);
    };
    cplx y = 0.0;
    double tc = g.t_min;
    const long steps = long((std::min(t, g.t_max) - g.t_min) / hf);
    for (long k = 0; k < steps; ++k, tc += hf) y = rk4(tc, hf, y);
    if (t - tc > 1e-14) y = rk4(tc, t - tc, y);
    return y;
}

}  // namespace wqed::detail
