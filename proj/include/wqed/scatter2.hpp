#pragma once

#include "wqed/pulse.hpp"

namespace wqed {

enum class Channel2 { XXx, XYy, YXy };

// Two-photon output state on the detection grid.  xxx holds psi_XXx(t1,t2)
// (symmetric), xyy holds psi_XYy(t1,t2) with the second argument the
// Y-polarized photon.  The YXy channel is xyy with swapped arguments and is
// not stored.
struct TwoPhotonWave {
    TimeGrid grid;
    std::vector<cplx> xxx;
    std::vector<cplx> xyy;

    cplx at_xxx(int i, int j) const { return xxx[std::size_t(i) * grid.n + j]; }
    cplx at_xyy(int i, int j) const { return xyy[std::size_t(i) * grid.n + j]; }
};

TwoPhotonWave scatter_two(const PulseShape& shape, const TimeGrid& grid,
                          const PhysicalParams& params);

// Grid-free evaluation at arbitrary times.  Uses the canonical default grid
// of the pulse (extended to cover the probe times) for the phi_s
// integration, so probes on canonical lattice points reproduce scatter_two
// exactly.
cplx psi2_pointwise(const PulseShape& shape, const PhysicalParams& params,
                    double t1, double t2, Channel2 channel);

}  // namespace wqed
