#include "wqed/pulse.hpp"

#include <algorithm>
#include <cmath>

namespace wqed {

PulseShape::PulseShape(double delta_, double gamma_, std::vector<cplx> hermite_)
    : delta(delta_), gamma(gamma_), hermite(std::move(hermite_)) {
    validate();
    norm_factor = std::sqrt(gamma) / std::pow(M_PI, 0.25);
}

void PulseShape::validate() const {
    if (!(gamma > 0.0)) throw validation_error("pulse gamma must be positive");
    if (!(norm_factor >= 0.0) || !std::isfinite(norm_factor))
        throw validation_error("pulse norm_factor must be finite and >= 0");
    if (!hermite.empty() && hermite[0].real() != 0.0)
        throw validation_error("Hermite c_2 must be purely imaginary");
    if (hermite.size() > 10)
        throw validation_error("Hermite correction order capped at n = 12");
}

cplx envelope(const PulseShape& shape, double t) {
    const double x = shape.gamma * t;
    cplx poly = 1.0;
    if (!shape.hermite.empty()) {
        double hm1 = 1.0, hn = 2.0 * x;  // H_1
        for (std::size_t k = 0; k < shape.hermite.size(); ++k) {
            const int n = int(k) + 2;
            const double next = 2.0 * x * hn - 2.0 * (n - 1) * hm1;
            hm1 = hn;
            hn = next;
            poly += shape.hermite[k] * hn;
        }
    }
    const cplx carrier = std::exp(cplx(-0.5 * x * x, -shape.delta * t));
    return shape.norm_factor * poly * carrier;
}

PulseShape normalize(const PulseShape& shape, const TimeGrid& grid) {
    shape.validate();
    double acc = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const cplx v = envelope(shape, grid.time(i));
        acc += grid.weight(i) * std::norm(v);
    }
    if (!(acc > 1e-300)) throw validation_error("degenerate pulse: zero norm");
    PulseShape out = shape;
    out.norm_factor = shape.norm_factor / std::sqrt(acc);
    return out;
}

namespace {

// RK4 for y' = -gamma0 y - chirality gamma0 phi0(t) in the rotating frame.
// Returns y at every grid node, y(t_min) = 0.
std::vector<cplx> integrate_filter(const PulseShape& shape, const TimeGrid& grid,
                                   const PhysicalParams& params) {
    const double g0 = params.gamma0;
    const double drive = params.chirality * g0;
    std::vector<cplx> out(grid.n);
    cplx y = 0.0;
    out[0] = y;
    const double h = grid.h;
    for (int i = 0; i + 1 < grid.n; ++i) {
        const double t = grid.time(i);
        const cplx f1 = -g0 * y - drive * envelope(shape, t);
        const cplx y2 = y + 0.5 * h * f1;
        const cplx f2 = -g0 * y2 - drive * envelope(shape, t + 0.5 * h);
        const cplx y3 = y + 0.5 * h * f2;
        const cplx f3 = -g0 * y3 - drive * envelope(shape, t + 0.5 * h);
        const cplx y4 = y + h * f3;
        const cplx f4 = -g0 * y4 - drive * envelope(shape, t + h);
        y += h / 6.0 * (f1 + 2.0 * f2 + 2.0 * f3 + f4);
        out[i + 1] = y;
    }
    return out;
}

void check_window(const PulseShape& shape, const TimeGrid& grid) {
    double peak = 0.0;
    for (int i = 0; i < grid.n; ++i)
        peak = std::max(peak, std::abs(envelope(shape, grid.time(i))));
    if (peak > 0.0 && std::abs(envelope(shape, grid.t_min)) > 1e-8 * peak)
        throw validation_error("window too small: pulse support reaches t_min");
}

void apply_carrier_phase(const TimeGrid& grid, double omega0,
                         std::vector<cplx>& values) {
    if (omega0 == 0.0) return;
    for (int i = 0; i < grid.n; ++i)
        values[i] *= std::exp(cplx(0.0, -omega0 * grid.time(i)));
}

}  // namespace

EnvelopeSeries filtered_envelope(const PulseShape& shape, const TimeGrid& grid,
                                 const PhysicalParams& params) {
    shape.validate();
    params.validate();
    check_window(shape, grid);
    EnvelopeSeries out{grid, integrate_filter(shape, grid, params)};
    // exact lab-frame transformation for a nonzero carrier frequency
    apply_carrier_phase(grid, params.omega0, out.values);
    return out;
}

EnvelopeSeries transmitted_envelope(const EnvelopeSeries& phi0,
                                    const EnvelopeSeries& phis) {
    if (phi0.grid.n != phis.grid.n || phi0.grid.t_min != phis.grid.t_min ||
        phi0.grid.t_max != phis.grid.t_max)
        throw validation_error("envelope grids do not match");
    EnvelopeSeries out{phi0.grid, phi0.values};
    for (int i = 0; i < out.grid.n; ++i) out.values[i] += phis.values[i];
    return out;
}

EnvelopeSeries envelope_series(const PulseShape& shape, const TimeGrid& grid,
                               const PhysicalParams& params) {
    EnvelopeSeries out{grid, std::vector<cplx>(grid.n)};
    for (int i = 0; i < grid.n; ++i) out.values[i] = envelope(shape, grid.time(i));
    apply_carrier_phase(grid, params.omega0, out.values);
    return out;
}

TimeGrid default_grid(double gamma, int base_n, double h_max) {
    if (!(gamma > 0.0)) throw validation_error("gamma must be positive");
    if (base_n < 3) throw validation_error("base_n must be >= 3");
    // seven envelope widths keep the edge amplitude under the support check
    // even with Hermite corrections of a few percent
    const double left = 7.0 / gamma;
    const double right = 7.0 / gamma + 10.0;
    double h = (left + right) / (base_n - 1);
    if (h_max > 0.0) h = std::min(h, h_max);
    // integer step counts on both sides keep t = 0 on the lattice
    int n_left = int(std::ceil(left / h));
    int n_right = int(std::ceil(right / h));
    if ((n_left + n_right) % 2 != 0) ++n_right;
    return make_time_grid(-n_left * h, n_right * h, n_left + n_right + 1);
}

TimeGrid default_grid_two_photon(double gamma) {
    return default_grid(gamma, 257, 0.12);
}

TimeGrid default_grid_three_photon(double gamma) {
    return default_grid(gamma, 129, 0.28);
}

}  // namespace wqed
