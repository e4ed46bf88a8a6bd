#include "wqed/wstate.hpp"
#include <cstdio>

using namespace wqed;

int main() {
    const PhysicalParams p{};
    const TimeGrid grid = make_time_grid(-14.0, 24.0, 121);
    const PulseShape g = normalize(PulseShape(0.87, 1.33), grid);
    const ThreePhotonWave w = scatter_three(g, grid, p);

    // brute force from the tensors
    double num = 0.0, den = 0.0;
    for (int i = 0; i < grid.n; ++i)
        for (int j = 0; j < grid.n; ++j)
            for (int k = 0; k < grid.n; ++k) {
                const double wgt =
                    grid.weight(i) * grid.weight(j) * grid.weight(k);
                const double a = std::norm(w.at_xxxx(i, j, k));
                const double b = std::norm(w.at_xxyy(i, j, k));
                const double c = std::norm(w.at_xxyy(i, k, j));
                const double d = std::norm(w.at_xxyy(j, k, i));
                num += wgt * 4.0 *
                       std::min(std::min(a, b), std::min(c, d));
                den += wgt * (a + 3.0 * b);
            }
    std::printf("brute   : avg=%.6f norm=%.6f\n", num / den, den);

    const EntanglementReport rep = pw4_average(w);
    std::printf("pw4_avg : avg=%.6f norm=%.6f\n", rep.average, rep.norm);

    const EntanglementReport sr = pw4_average_streamed(g, grid, p);
    std::printf("streamed: avg=%.6f norm=%.6f\n", sr.average, sr.norm);

    // a couple of raw tensor probes for cross-checking against the prototype
    const int i0 = 44;  // t = -0.2666... fine for probing
    std::printf("xxxx(0,0,0) = %.6f %+.6fi\n", w.at_xxxx(i0, i0, i0).real(),
                w.at_xxxx(i0, i0, i0).imag());
    const int ia = grid.index_of(grid.time(40));
    const int ib = grid.index_of(grid.time(70));
    std::printf("xxyy(-1.13,1.4,0) = %.6f %+.6fi\n",
                w.at_xxyy(ia, ib, i0).real(), w.at_xxyy(ia, ib, i0).imag());
    std::printf("xxxx(-1.13,1.4,0) = %.6f %+.6fi\n",
                w.at_xxxx(ia, ib, i0).real(), w.at_xxxx(ia, ib, i0).imag());
    return 0;
}
