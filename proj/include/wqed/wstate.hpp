#pragma once

#include "wqed/scatter2.hpp"
#include "wqed/scatter3.hpp"

#include <array>

namespace wqed {

// Result of a pulse-averaged W-conversion probability.  norm is the
// denominator (the final-state norm, ~1 for a normalized pulse) and is kept
// as a diagnostic rather than silently renormalizing.
struct EntanglementReport {
    double average = 0.0;
    double norm = 0.0;
    double pointwise_max = 0.0;
    std::vector<double> argmax;

    std::string to_json() const;
};

// Conversion probability to the canonical N-partite W state given detection
// at the probe times: N * min(channel weights) / sum(channel weights).
double pw3_pointwise(const TwoPhotonWave& wave, double t1, double t2);
double pw4_pointwise(const ThreePhotonWave& wave, double t1, double t2,
                     double t3);

EntanglementReport pw3_average(const TwoPhotonWave& wave);
EntanglementReport pw4_average(const ThreePhotonWave& wave);

// Same average without materializing the rank-3 tensors: rows are generated
// on the fly per (t1,t2) pair.  Used when n^3 storage would exceed the
// memory budget (quasi-monochromatic pulses).
EntanglementReport pw4_average_streamed(const PulseShape& shape,
                                        const TimeGrid& grid,
                                        const PhysicalParams& params);

// Monochromatic closed forms.
double pw3_mono(double delta, const PhysicalParams& params);
double pw4_mono(double delta, const PhysicalParams& params);

}  // namespace wqed
