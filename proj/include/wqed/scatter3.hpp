#pragma once

#include "wqed/pulse.hpp"

namespace wqed {

enum class Channel3 { XXXx, XXYy, XYXy, YXXy };

// Three-photon output state.  xxxx is fully symmetric; xxyy is symmetric in
// its first two (X photon) indices, the third index is the Y photon.  The
// XYXy and YXXy channels are index permutations of xxyy:
//   XYXy(t1,t2,t3) = XXYy(t1,t3,t2)   (Y photon at t2)
//   YXXy(t1,t2,t3) = XXYy(t2,t3,t1)   (Y photon at t1)
struct ThreePhotonWave {
    TimeGrid grid;
    std::vector<cplx> xxxx;
    std::vector<cplx> xxyy;

    std::size_t idx(int i, int j, int k) const {
        return (std::size_t(i) * grid.n + j) * grid.n + k;
    }
    cplx at_xxxx(int i, int j, int k) const { return xxxx[idx(i, j, k)]; }
    cplx at_xxyy(int i, int j, int k) const { return xxyy[idx(i, j, k)]; }
    cplx channel(Channel3 c, int i, int j, int k) const;
};

// Default memory budget for the two complex tensors (bytes).
inline constexpr std::size_t kDefaultTensorBudget = std::size_t(1) << 30;

ThreePhotonWave scatter_three(const PulseShape& shape, const TimeGrid& grid,
                              const PhysicalParams& params,
                              std::size_t memory_budget = kDefaultTensorBudget);

cplx psi3_pointwise(const PulseShape& shape, const PhysicalParams& params,
                    double t1, double t2, double t3, Channel3 channel);

}  // namespace wqed
