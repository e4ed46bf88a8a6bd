#pragma once

#include "wqed/core.hpp"

namespace wqed {

// Incident pulse: Gaussian carrier at detuning delta with spectral width
// gamma, optionally augmented by physicists' Hermite polynomial corrections
//   norm_factor * [1 + sum_{n>=2} c_n H_n(gamma t)] exp(-i delta t - gamma^2 t^2 / 2)
// hermite[k] is c_{k+2}; c_2 must be purely imaginary (a real c_2 would be
// a width variation, already covered by gamma).
struct PulseShape {
    double delta = 0.0;
    double gamma = 1.0;
    std::vector<cplx> hermite;
    double norm_factor = 1.0;

    PulseShape() = default;
    PulseShape(double delta_, double gamma_, std::vector<cplx> hermite_ = {});

    void validate() const;
};

struct EnvelopeSeries {
    TimeGrid grid;
    std::vector<cplx> values;
};

cplx envelope(const PulseShape& shape, double t);

// Rescales norm_factor so that the trapezoid L2 norm of the envelope on
// grid equals 1.  Throws on an identically-zero envelope.
PulseShape normalize(const PulseShape& shape, const TimeGrid& grid);

// Atom-filtered envelope phi_s: response of the decaying dipole to the
// incident envelope,
//   d phi_s / dt = -gamma0 phi_s - chirality * gamma0 * phi0(t),
// integrated by classical RK4 at the grid spacing from phi_s(t_min) = 0.
// The grid window must contain the pulse support.  A nonzero omega0 only
// multiplies the result by the carrier phase exp(-i omega0 t).
EnvelopeSeries filtered_envelope(const PulseShape& shape, const TimeGrid& grid,
                                 const PhysicalParams& params);

// phi_tau = phi0 + phi_s, the transmitted single-photon envelope.
EnvelopeSeries transmitted_envelope(const EnvelopeSeries& phi0,
                                    const EnvelopeSeries& phis);

// Sampled incident envelope on a grid (with omega0 carrier phase applied).
EnvelopeSeries envelope_series(const PulseShape& shape, const TimeGrid& grid,
                               const PhysicalParams& params);

// Default detection window/grid for a pulse of width gamma: six envelope
// widths on both sides plus 10/gamma0 on the right for the reemission tail.
// n is the larger of base_n and what keeps the spacing below h_max.
TimeGrid default_grid(double gamma, int base_n, double h_max);
TimeGrid default_grid_two_photon(double gamma);    // base 257, h <= 0.12
TimeGrid default_grid_three_photon(double gamma);  // base 129, h <= 0.28

}  // namespace wqed
