#include "wqed/wstate.hpp"

#include "series.hpp"
#include "wqed/kernels.hpp"
#include "wqed/parallel.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>

namespace wqed {

namespace {
constexpr double kZeroFloor = 1e-300;

double min_ratio(std::initializer_list<double> weights) {
    double lo = 0.0, sum = 0.0;
    bool first = true;
    for (double w : weights) {
        sum += w;
        lo = first ? w : std::min(lo, w);
        first = false;
    }
    if (sum < kZeroFloor) return 0.0;
    return double(weights.size()) * lo / sum;
}

void check_norm_band(double norm) {
    if (norm < 0.9 || norm > 1.1)
        throw numeric_error(
            "final-state norm " + std::to_string(norm) +
            " is outside [0.9, 1.1]: grid under-resolved or pulse unnormalized");
}
}  // namespace

std::string EntanglementReport::to_json() const {
    nlohmann::json j;
    j["average"] = average;
    j["norm"] = norm;
    j["pointwise_max"] = pointwise_max;
    j["argmax"] = argmax;
    return j.dump(2);
}

double pw3_pointwise(const TwoPhotonWave& wave, double t1, double t2) {
    const int i = wave.grid.index_of(t1);
    const int j = wave.grid.index_of(t2);
    return min_ratio({std::norm(wave.at_xxx(i, j)), std::norm(wave.at_xyy(i, j)),
                      std::norm(wave.at_xyy(j, i))});
}

double pw4_pointwise(const ThreePhotonWave& wave, double t1, double t2,
                     double t3) {
    const int i = wave.grid.index_of(t1);
    const int j = wave.grid.index_of(t2);
    const int k = wave.grid.index_of(t3);
    return min_ratio({std::norm(wave.at_xxxx(i, j, k)),
                      std::norm(wave.at_xxyy(i, j, k)),
                      std::norm(wave.at_xxyy(i, k, j)),
                      std::norm(wave.at_xxyy(j, k, i))});
}

EntanglementReport pw3_average(const TwoPhotonWave& wave) {
    const auto& K = kernels::active();
    const int n = wave.grid.n;
    const std::vector<double> w = wave.grid.weights();

    std::vector<double> A(std::size_t(n) * n), B(std::size_t(n) * n),
        BT(std::size_t(n) * n);
    parallel_for(n, [&](std::size_t i) {
        K.abs2(wave.xxx.data() + i * n, A.data() + i * n, n);
        K.abs2(wave.xyy.data() + i * n, B.data() + i * n, n);
    });
    parallel_for(n, [&](std::size_t i) {
        for (int j = 0; j < n; ++j) BT[i * n + j] = B[std::size_t(j) * n + i];
    });

    std::vector<double> num(n), den(n), rowmax(n);
    std::vector<int> rowarg(n);
    parallel_for(n, [&](std::size_t i) {
        const double* a = A.data() + i * n;
        const double* b = B.data() + i * n;
        const double* bt = BT.data() + i * n;
        num[i] = w[i] * 3.0 * K.wmin3(w.data(), a, b, bt, n);
        den[i] = w[i] * K.waxpby(w.data(), a, b, 2.0, n);
        double mx = 0.0;
        int arg = 0;
        for (int j = 0; j < n; ++j) {
            const double sum = a[j] + b[j] + bt[j];
            if (sum < kZeroFloor) continue;
            const double p = 3.0 * std::min(a[j], std::min(b[j], bt[j])) / sum;
            if (p > mx) {
                mx = p;
                arg = j;
            }
        }
        rowmax[i] = mx;
        rowarg[i] = arg;
    });

    EntanglementReport rep;
    double nsum = 0.0, dsum = 0.0;
    int besti = 0;
    for (int i = 0; i < n; ++i) {
        nsum += num[i];
        dsum += den[i];
        if (rowmax[i] > rowmax[besti]) besti = i;
    }
    check_norm_band(dsum);
    rep.average = nsum / dsum;
    rep.norm = dsum;
    rep.pointwise_max = rowmax[besti];
    rep.argmax = {wave.grid.time(besti), wave.grid.time(rowarg[besti])};
    return rep;
}

EntanglementReport pw4_average(const ThreePhotonWave& wave) {
    const auto& K = kernels::active();
    const int n = wave.grid.n;
    const std::vector<double> w = wave.grid.weights();
    const std::size_t nn = std::size_t(n) * n;

    // |xxyy|^2 is materialized once; the two permuted channel rows are
    // gathered per (i,j) from it
    std::vector<double> B(nn * n);
    parallel_for(n, [&](std::size_t i) {
        K.abs2(wave.xxyy.data() + i * nn, B.data() + i * nn, int(nn));
    });

    std::vector<double> num(n, 0.0), den(n, 0.0), rowmax(n, 0.0);
    std::vector<std::array<int, 2>> rowarg(n, {0, 0});
    parallel_for(n, [&](std::size_t i) {
        std::vector<double> a(n), p1(n), p2(n);
        for (int j = 0; j < n; ++j) {
            K.abs2(wave.xxxx.data() + (i * n + j) * n, a.data(), n);
            const double* b = B.data() + (i * n + j) * n;
            for (int k = 0; k < n; ++k) {
                p1[k] = B[(i * n + k) * n + j];           // Y photon at t2
                p2[k] = B[(std::size_t(j) * n + k) * n + i];  // Y photon at t1
            }
            num[i] += w[j] * 4.0 *
                      K.wmin4(w.data(), a.data(), b, p1.data(), p2.data(), n);
            den[i] += w[j] * K.waxpby(w.data(), a.data(), b, 3.0, n);
            for (int k = 0; k < n; ++k) {
                const double sum = a[k] + b[k] + p1[k] + p2[k];
                if (sum < kZeroFloor) continue;
                const double p =
                    4.0 * std::min(std::min(a[k], b[k]), std::min(p1[k], p2[k])) /
                    sum;
                if (p > rowmax[i]) {
                    rowmax[i] = p;
                    rowarg[i] = {j, k};
                }
            }
        }
        num[i] *= w[i];
        den[i] *= w[i];
    });

    EntanglementReport rep;
    double nsum = 0.0, dsum = 0.0;
    int besti = 0;
    for (int i = 0; i < n; ++i) {
        nsum += num[i];
        dsum += den[i];
        if (rowmax[i] > rowmax[besti]) besti = i;
    }
    check_norm_band(dsum);
    rep.average = nsum / dsum;
    rep.norm = dsum;
    rep.pointwise_max = rowmax[besti];
    rep.argmax = {wave.grid.time(besti), wave.grid.time(rowarg[besti][0]),
                  wave.grid.time(rowarg[besti][1])};
    return rep;
}

EntanglementReport pw4_average_streamed(const PulseShape& shape,
                                        const TimeGrid& grid,
                                        const PhysicalParams& params) {
    const auto& K = kernels::active();
    const detail::ScatterSeries s = detail::build_series(shape, grid, params);
    const int n = grid.n;
    const std::vector<double> w = grid.weights();

    std::vector<double> num(n, 0.0), den(n, 0.0), rowmax(n, 0.0);
    std::vector<std::array<int, 2>> rowarg(n, {0, 0});
    parallel_for(n, [&](std::size_t row) {
        const int i = int(row);
        std::vector<cplx> c0(n), c1(n), c2(n), c3(n);
        std::vector<double> a(n), b(n), p1(n), p2(n);
        for (int j = 0; j < n; ++j) {
            detail::xxxx_row(s, i, j, c0.data());
            detail::xxyy_row(s, i, j, c1.data());       // Y at t3
            detail::xxyy_perm_row(s, i, j, c2.data());  // Y at t2
            detail::xxyy_perm_row(s, j, i, c3.data());  // Y at t1
            K.abs2(c0.data(), a.data(), n);
            K.abs2(c1.data(), b.data(), n);
            K.abs2(c2.data(), p1.data(), n);
            K.abs2(c3.data(), p2.data(), n);
            num[row] += w[j] * 4.0 * K.wmin4(w.data(), a.data(), b.data(),
                                             p1.data(), p2.data(), n);
            den[row] += w[j] * K.waxpby(w.data(), a.data(), b.data(), 3.0, n);
            for (int k = 0; k < n; ++k) {
                const double sum = a[k] + b[k] + p1[k] + p2[k];
                if (sum < kZeroFloor) continue;
                const double p =
                    4.0 * std::min(std::min(a[k], b[k]), std::min(p1[k], p2[k])) /
                    sum;
                if (p > rowmax[row]) {
                    rowmax[row] = p;
                    rowarg[row] = {j, k};
                }
            }
        }
        num[row] *= w[i];
        den[row] *= w[i];
    });

    EntanglementReport rep;
    double nsum = 0.0, dsum = 0.0;
    int besti = 0;
    for (int i = 0; i < n; ++i) {
        nsum += num[i];
        dsum += den[i];
        if (rowmax[i] > rowmax[besti]) besti = i;
    }
    check_norm_band(dsum);
    rep.average = nsum / dsum;
    rep.norm = dsum;
    rep.pointwise_max = rowmax[besti];
    rep.argmax = {grid.time(besti), grid.time(rowarg[besti][0]),
                  grid.time(rowarg[besti][1])};
    return rep;
}

double pw3_mono(double delta, const PhysicalParams& params) {
    const double t2 = std::norm(t_coeff(delta, params));
    const double s2 = std::norm(s_coeff(delta, params));
    return 3.0 * t2 * std::min(t2, s2);
}

double pw4_mono(double delta, const PhysicalParams& params) {
    const double t2 = std::norm(t_coeff(delta, params));
    const double s2 = std::norm(s_coeff(delta, params));
    return 4.0 * t2 * t2 * std::min(t2, s2);
}

}  // namespace wqed
