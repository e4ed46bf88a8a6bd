#include "wqed/core.hpp"

#include <cmath>

namespace wqed {

std::vector<double> TimeGrid::weights() const {
    std::vector<double> w(n, h);
    w.front() = 0.5 * h;
    w.back() = 0.5 * h;
    return w;
}

int TimeGrid::index_of(double t, double tol) const {
    const double x = (t - t_min) / h;
    const int i = int(std::lround(x));
    if (i < 0 || i >= n || std::abs(x - i) > tol)
        throw validation_error("time " + std::to_string(t) + " is not a grid node");
    return i;
}

TimeGrid make_time_grid(double t_min, double t_max, int n) {
    if (!(t_max > t_min))
        throw validation_error("time grid needs t_max > t_min");
    if (n < 3 || n % 2 == 0)
        throw validation_error("time grid point count must be odd and >= 3");
    TimeGrid g;
    g.t_min = t_min;
    g.t_max = t_max;
    g.n = n;
    g.h = (t_max - t_min) / (n - 1);
    return g;
}

cplx s_coeff(double delta, const PhysicalParams& params) {
    params.validate();
    return params.chirality * cplx(0.0, -params.gamma0) /
           cplx(delta, params.gamma0);
}

cplx t_coeff(double delta, const PhysicalParams& params) {
    return 1.0 + s_coeff(delta, params);
}

}  // namespace wqed
