#pragma once

// Internal: rotating-frame envelope series shared by the scattering fills.
// phi_s is integrated on a refined lattice (spacing <= 0.05/gamma0) and
// downsampled onto the detection grid, so wave accuracy does not degrade on
// coarse detection grids.  Carrier phases for omega0 != 0 are applied by the
// callers as one factor exp(-i omega0 sum(t)) per amplitude.

#include "wqed/pulse.hpp"

#include <vector>

namespace wqed::detail {

struct ScatterSeries {
    TimeGrid grid;
    std::vector<cplx> phi0;
    std::vector<cplx> phis;
    std::vector<cplx> phitau;
    std::vector<cplx> ssq;    // phis^2
    std::vector<cplx> sdiff;  // phis - phi0
    std::vector<double> decay;  // decay[n-1+d] = exp(-gamma0*h*|d|)

    // slice such that decay_at(c)[k] == exp(-gamma0*h*|k-c|)
    const double* decay_at(int center) const {
        return decay.data() + (grid.n - 1 - center);
    }
};

ScatterSeries build_series(const PulseShape& shape, const TimeGrid& grid,
                           const PhysicalParams& params);

// Row generators over the scan index k (all in the rotating frame).
// xxxx_row:  psi_XXXx(t_i, t_j, t_k)
// xxyy_row:  psi_XXYy(t_i, t_j, t_k)      (Y photon time scans)
// xxyy_perm_row: psi_XXYy(t_u, t_k, t_v)  (one X photon time scans)
void xxxx_row(const ScatterSeries& s, int i, int j, cplx* out);
void xxyy_row(const ScatterSeries& s, int i, int j, cplx* out);
void xxyy_perm_row(const ScatterSeries& s, int u, int v, cplx* out);

// phi_s at an arbitrary time: snaps to the series lattice when t is a node,
// otherwise walks the RK4 integration to t at the refined spacing.
cplx phis_at(const PulseShape& shape, const PhysicalParams& params,
             const ScatterSeries& s, double t);

}  // namespace wqed::detail
