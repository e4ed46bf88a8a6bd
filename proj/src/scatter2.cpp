#include "wqed/scatter2.hpp"

#include "series.hpp"
#include "wqed/kernels.hpp"
#include "wqed/parallel.hpp"

#include <cmath>

namespace wqed {

using detail::ScatterSeries;

TwoPhotonWave scatter_two(const PulseShape& shape, const TimeGrid& grid,
                          const PhysicalParams& params) {
    const ScatterSeries s = detail::build_series(shape, grid, params);
    const auto& K = kernels::active();
    const int n = grid.n;

    TwoPhotonWave wave;
    wave.grid = grid;
    wave.xxx.resize(std::size_t(n) * n);
    wave.xyy.resize(std::size_t(n) * n);

    const cplx* phi0 = s.phi0.data();
    const cplx* phis = s.phis.data();
    const cplx* tau = s.phitau.data();

    parallel_for(n, [&](std::size_t row) {
        const int i = int(row);
        const double* Di = s.decay_at(i);
        cplx* xr = wave.xxx.data() + row * n;
        cplx* yr = wave.xyy.data() + row * n;
        // upper triangle of xxx; the lower one is mirrored afterwards
        K.row3(xr + i, n - i, tau[i], tau + i, -s.ssq[i], Di + i, 0.0, nullptr);
        K.row3(yr, i + 1, phi0[i], phis, 0.0, nullptr, 0.0, nullptr);
        if (i + 1 < n)
            K.row3(yr + i + 1, n - i - 1, tau[i], phis + i + 1, -s.ssq[i],
                   Di + i + 1, 0.0, nullptr);
    });
    parallel_for(n, [&](std::size_t row) {
        const int i = int(row);
        for (int j = 0; j < i; ++j)
            wave.xxx[row * n + j] = wave.xxx[std::size_t(j) * n + i];
    });

    if (params.omega0 != 0.0) {
        parallel_for(n, [&](std::size_t row) {
            const int i = int(row);
            for (int j = 0; j < n; ++j) {
                const cplx ph =
                    std::exp(cplx(0.0, -params.omega0 * (grid.time(i) + grid.time(j))));
                wave.xxx[row * n + j] *= ph;
                wave.xyy[row * n + j] *= ph;
            }
        });
    }
    return wave;
}

namespace {

// phi0 and phi_s at an arbitrary time, sharing the canonical lattice of the
// pulse so that on-lattice probes reproduce the gridded series bitwise.
struct PointProbe {
    cplx phi0;
    cplx phis;
};

PointProbe probe_at(const PulseShape& shape, const PhysicalParams& params,
                    const ScatterSeries& s, double t) {
    return PointProbe{envelope(shape, t), detail::phis_at(shape, params, s, t)};
}

TimeGrid canonical_grid(const PulseShape& shape, double t_need) {
    TimeGrid g = default_grid_two_photon(shape.gamma);
    if (t_need > g.t_max) {
        const int extra = int(std::ceil((t_need - g.t_max) / g.h));
        const int n = g.n + extra + (extra % 2);
        g = make_time_grid(g.t_min, g.t_min + g.h * (n - 1), n);
    }
    return g;
}

}  // namespace

cplx psi2_pointwise(const PulseShape& shape, const PhysicalParams& params,
                    double t1, double t2, Channel2 channel) {
    if (channel == Channel2::YXy)
        return psi2_pointwise(shape, params, t2, t1, Channel2::XYy);

    const TimeGrid g = canonical_grid(shape, std::max(t1, t2));
    const ScatterSeries s = detail::build_series(shape, g, params);
    const PointProbe p1 = probe_at(shape, params, s, t1);
    const PointProbe p2 = probe_at(shape, params, s, t2);

    cplx out;
    if (channel == Channel2::XXx) {
        const cplx sl = (t1 <= t2) ? p1.phis : p2.phis;
        out = (p1.phi0 + p1.phis) * (p2.phi0 + p2.phis) -
              sl * sl * std::exp(-params.gamma0 * std::abs(t2 - t1));
    } else {
        out = p1.phi0 * p2.phis;
        if (t2 > t1)
            out += p1.phis * (p2.phis - p1.phis *
                              std::exp(-params.gamma0 * (t2 - t1)));
    }
    if (params.omega0 != 0.0)
        out *= std::exp(cplx(0.0, -params.omega0 * (t1 + t2)));
    return out;
}

}  // namespace wqed
