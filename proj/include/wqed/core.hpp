#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wqed {

using cplx = std::complex<double>;

// Thrown on bad user input (grids, shapes, configs).  CLI maps it to exit 2.
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a computed diagnostic is out of band (norm drift, spectral
// leakage).  CLI maps it to exit 3.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Atom and coupling constants.  gamma0 is the global frequency unit (1 by
// convention); omega0 enters results only as an overall carrier phase, all
// internal frequencies are detunings.  chirality is 1 for a chiral waveguide
// and 0.5 for symmetric coupling, where the conversion amplitude is halved.
struct PhysicalParams {
    double omega0 = 0.0;
    double gamma0 = 1.0;
    double chirality = 1.0;

    void validate() const {
        if (!(gamma0 > 0.0))
            throw validation_error("gamma0 must be positive");
        if (chirality != 1.0 && chirality != 0.5)
            throw validation_error("chirality must be exactly 1.0 or 0.5");
    }
};

// Uniform detection-time lattice.  n is kept odd so that symmetric windows
// contain t = 0 as a lattice point.
struct TimeGrid {
    double t_min = 0.0;
    double t_max = 0.0;
    int n = 0;
    double h = 0.0;

    double time(int i) const { return t_min + h * i; }
    // trapezoid weight of node i
    double weight(int i) const { return (i == 0 || i == n - 1) ? 0.5 * h : h; }
    std::vector<double> weights() const;
    // index of the node nearest to t; throws if t is off-lattice by more
    // than tol*h
    int index_of(double t, double tol = 1e-9) const;
};

TimeGrid make_time_grid(double t_min, double t_max, int n);

// Single-photon transmission coefficients at detuning delta (in gamma0
// units).  s is the polarization-converting amplitude, t = 1 + s the
// elastic one.
cplx s_coeff(double delta, const PhysicalParams& params);
cplx t_coeff(double delta, const PhysicalParams& params);

}  // namespace wqed
