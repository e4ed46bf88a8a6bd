#include "wqed/scatter3.hpp"
#include <cstdio>
using namespace wqed;
int main() {
    const PhysicalParams p{};
    const TimeGrid grid = make_time_grid(-14.0, 24.0, 121);
    const PulseShape g = normalize(PulseShape(0.87, 1.33), grid);
    const ThreePhotonWave w = scatter_three(g, grid, p);
    FILE* f = fopen("/tmp/cxx_xxyy.txt", "w");
    for (int i = 0; i < 121; i += 3)
        for (int j = 0; j < 121; j += 3)
            for (int k = 0; k < 121; k += 3) {
                const cplx a = w.at_xxyy(i, j, k);
                const cplx b = w.at_xxxx(i, j, k);
                fprintf(f, "%d %d %d %.12e %.12e %.12e %.12e\n", i, j, k,
                        a.real(), a.imag(), b.real(), b.imag());
            }
    fclose(f);
    return 0;
}
