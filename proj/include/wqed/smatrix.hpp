#pragma once

#include "wqed/scatter2.hpp"
#include "wqed/scatter3.hpp"

#include <array>
#include <optional>

// Frequency-domain and time-frequency scattering-matrix kernels.  These are
// an independent route to the same output states: the time-domain
// wavefunctions are cross-validated against numerical convolutions of these
// kernels with the pulse spectrum.

namespace wqed {

struct FrequencyGrid {
    double omega_min = 0.0;
    double omega_max = 0.0;
    int m = 0;
    double spacing = 0.0;

    double omega(int k) const { return omega_min + spacing * k; }
};

FrequencyGrid make_frequency_grid(double omega_min, double omega_max, int m);

// Connected (energy-conserving) part of the two-photon XXx -> XXx element:
// the coefficient of 2*pi*delta(w1+w2-w1p-w2p).  Callers supply conserving
// tuples; the expression itself is finite for all real arguments.
cplx s2_connected_kernel(double w1, double w2, double w1p, double w2p,
                         const PhysicalParams& params);

// Same quantity assembled from the unsimplified single-pole terms, summed
// over the outgoing-label symmetrization.  The 1/(w - w') poles cancel in
// the sum; kept as the cross-check for the closed form above.
cplx s2_connected_kernel_pole_sum(double w1, double w2, double w1p, double w2p,
                                  const PhysicalParams& params);

// Two-photon kernels with outgoing legs Fourier-transformed to detection
// times (already symmetrized over the incoming frequencies).
cplx s2_time_kernel(double t1, double t2, double w1, double w2,
                    const PhysicalParams& params, Channel2 channel);

// Three-photon analogue; the printed single-permutation bracket summed over
// all 6 permutations of (w1,w2,w3).
cplx s3_time_kernel(double t1, double t2, double t3, double w1, double w2,
                    double w3, const PhysicalParams& params, Channel3 channel);

// Pulse spectrum by direct DFT of the sampled envelope; errors out if the
// spectrum has not decayed at the fgrid edges.
std::vector<cplx> pulse_spectrum(const PulseShape& shape, const TimeGrid& grid,
                                 const FrequencyGrid& fgrid,
                                 const PhysicalParams& params);

// One-point calibration of the combinatorial constant relating the
// symmetrized kernels to identical-photon wavefunction amplitudes.  The
// constant must then validate every other grid point, pulse and channel.
cplx calibrate_two_photon_constant(const PulseShape& ref_shape,
                                   const TimeGrid& grid,
                                   const FrequencyGrid& fgrid,
                                   const PhysicalParams& params);

TwoPhotonWave oracle_two_photon(const PulseShape& shape, const TimeGrid& grid,
                                const FrequencyGrid& fgrid,
                                const PhysicalParams& params,
                                cplx calibration);

// Monochromatic-limit oracle for three photons: kernel at the degenerate
// carrier frequency times slowly-varying envelope factors.  Requires
// gamma <= 0.02 and probe times in the pulse bulk.  channel must be XXXx or
// XXYy.
std::vector<cplx> oracle_three_photon_mono(
    const PulseShape& shape, const PhysicalParams& params,
    const std::vector<std::array<double, 3>>& probes, Channel3 channel,
    cplx calibration);

cplx calibrate_three_photon_constant(const PulseShape& shape,
                                     const PhysicalParams& params,
                                     const std::array<double, 3>& probe,
                                     Channel3 channel);

}  // namespace wqed
