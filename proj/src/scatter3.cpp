#include "wqed/scatter3.hpp"

#include "series.hpp"
#include "wqed/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace wqed {

using detail::ScatterSeries;

cplx ThreePhotonWave::channel(Channel3 c, int i, int j, int k) const {
    switch (c) {
        case Channel3::XXXx: return at_xxxx(i, j, k);
        case Channel3::XXYy: return at_xxyy(i, j, k);
        case Channel3::XYXy: return at_xxyy(i, k, j);
        case Channel3::YXXy: return at_xxyy(j, k, i);
    }
    throw validation_error("unknown three-photon channel");
}

ThreePhotonWave scatter_three(const PulseShape& shape, const TimeGrid& grid,
                              const PhysicalParams& params,
                              std::size_t memory_budget) {
    const int n = grid.n;
    const std::size_t bytes = 2 * std::size_t(n) * n * n * sizeof(cplx);
    if (bytes > memory_budget)
        throw validation_error(
            "three-photon tensors need " + std::to_string(bytes >> 20) +
            " MiB, over the budget of " + std::to_string(memory_budget >> 20) +
            " MiB");

    const ScatterSeries s = detail::build_series(shape, grid, params);
    ThreePhotonWave wave;
    wave.grid = grid;
    wave.xxxx.resize(std::size_t(n) * n * n);
    wave.xxyy.resize(std::size_t(n) * n * n);

    // fill i <= j (both tensors are symmetric in the first index pair)
    parallel_for(n, [&](std::size_t row) {
        const int i = int(row);
        for (int j = i; j < n; ++j) {
            detail::xxxx_row(s, i, j, wave.xxxx.data() + wave.idx(i, j, 0));
            detail::xxyy_row(s, i, j, wave.xxyy.data() + wave.idx(i, j, 0));
        }
    });
    parallel_for(n, [&](std::size_t row) {
        const int i = int(row);
        for (int j = 0; j < i; ++j) {
            std::copy_n(wave.xxxx.data() + wave.idx(j, i, 0), n,
                        wave.xxxx.data() + wave.idx(i, j, 0));
            std::copy_n(wave.xxyy.data() + wave.idx(j, i, 0), n,
                        wave.xxyy.data() + wave.idx(i, j, 0));
        }
    });

    if (params.omega0 != 0.0) {
        parallel_for(n, [&](std::size_t row) {
            const int i = int(row);
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const cplx ph = std::exp(cplx(
                        0.0, -params.omega0 * (grid.time(i) + grid.time(j) +
                                               grid.time(k))));
                    wave.xxxx[wave.idx(i, j, k)] *= ph;
                    wave.xxyy[wave.idx(i, j, k)] *= ph;
                }
        });
    }
    return wave;
}

namespace {

struct P3 {
    cplx phi0, phis, tau;
};

// literal transcription of the output amplitudes for arbitrary times; the
// gridded fill assembles the same quantities per segment, so agreement at
// lattice nodes is a real consistency check
cplx xxxx_direct(const P3& p1, const P3& p2, const P3& p3, double t1,
                 double t2, double t3, double g0) {
    struct Tp {
        double t;
        const P3* p;
    };
    std::array<Tp, 3> o{{{t1, &p1}, {t2, &p2}, {t3, &p3}}};
    std::sort(o.begin(), o.end(), [](const Tp& a, const Tp& b) { return a.t < b.t; });
    const cplx s1 = o[0].p->phis, s2 = o[1].p->phis;
    return p1.tau * p2.tau * p3.tau -
           s1 * s1 * o[2].p->tau * std::exp(-g0 * (o[1].t - o[0].t)) -
           s2 * s2 * o[0].p->tau * std::exp(-g0 * (o[2].t - o[1].t)) +
           s1 * s1 * (o[1].p->phis - o[1].p->phi0) *
               std::exp(-g0 * (o[2].t - o[0].t));
}

cplx xxyy_direct(const P3& px1, const P3& px2, const P3& py, double tx1,
                 double tx2, double ty, double g0) {
    const P3& pl = (tx1 <= tx2) ? px1 : px2;
    const P3& pg = (tx1 <= tx2) ? px2 : px1;
    const double tl = std::min(tx1, tx2), tg = std::max(tx1, tx2);
    auto theta = [](double x) { return x > 0 ? 1.0 : (x == 0 ? 0.5 : 0.0); };
    if (tl == ty && tg == ty)  // triple coincidence: continuous limit
        return pl.phi0 * pg.phi0 * py.phis;
    cplx out = 0.0;
    const double th1 = theta(tl - ty);
    if (th1 > 0) out += th1 * pl.phi0 * pg.phi0 * py.phis;
    const double th2 = theta(ty - tg);
    if (th2 > 0)
        out += th2 * (pl.tau * pg.tau * py.phis -
                      pl.phis * pl.phis * py.phis * std::exp(-g0 * (tg - tl)) -
                      pg.phis * pg.phis * pl.tau * std::exp(-g0 * (ty - tg)) +
                      pl.phis * pl.phis * (pg.phis - pg.phi0) *
                          std::exp(-g0 * (ty - tl)));
    const double th3 = theta(tg - ty) * theta(ty - tl);
    if (th3 > 0)
        out += th3 * pg.phi0 *
               (pl.tau * py.phis -
                pl.phis * pl.phis * std::exp(-g0 * (ty - tl)));
    return out;
}

}  // namespace

cplx psi3_pointwise(const PulseShape& shape, const PhysicalParams& params,
                    double t1, double t2, double t3, Channel3 channel) {
    // channel permutations: the Y photon sits at t3 / t2 / t1
    if (channel == Channel3::XYXy)
        return psi3_pointwise(shape, params, t1, t3, t2, Channel3::XXYy);
    if (channel == Channel3::YXXy)
        return psi3_pointwise(shape, params, t2, t3, t1, Channel3::XXYy);

    TimeGrid g = default_grid_three_photon(shape.gamma);
    const double t_need = std::max(t1, std::max(t2, t3));
    if (t_need > g.t_max) {
        const int extra = int(std::ceil((t_need - g.t_max) / g.h));
        const int n = g.n + extra + (extra % 2);
        g = make_time_grid(g.t_min, g.t_min + g.h * (n - 1), n);
    }
    const ScatterSeries s = detail::build_series(shape, g, params);

    auto probe = [&](double t) -> P3 {
        P3 p;
        p.phi0 = envelope(shape, t);
        p.phis = detail::phis_at(shape, params, s, t);
        p.tau = p.phi0 + p.phis;
        return p;
    };

    const P3 p1 = probe(t1), p2 = probe(t2), p3 = probe(t3);
    cplx out;
    if (channel == Channel3::XXXx)
        out = xxxx_direct(p1, p2, p3, t1, t2, t3, params.gamma0);
    else
        out = xxyy_direct(p1, p2, p3, t1, t2, t3, params.gamma0);
    if (params.omega0 != 0.0)
        out *= std::exp(cplx(0.0, -params.omega0 * (t1 + t2 + t3)));
    return out;
}

}  // namespace wqed
