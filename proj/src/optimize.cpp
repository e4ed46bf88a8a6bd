#include "wqed/optimize.hpp"

#include "wqed/parallel.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace wqed {

namespace {

std::vector<double> linspace(const Range& r) {
    if (r.count < 1) throw validation_error("range needs at least one point");
    if (r.count == 1) return {r.min};
    if (!(r.max > r.min)) throw validation_error("range needs max > min");
    std::vector<double> v(r.count);
    for (int i = 0; i < r.count; ++i)
        v[i] = r.min + (r.max - r.min) * i / (r.count - 1);
    return v;
}

struct CellResult {
    double value = 0.0;
    bool valid = false;
    int n = 0;
};

// One objective evaluation: normalized Gaussian/Hermite pulse -> <P_W>.
// Cells where the norm diagnostic trips are reported invalid.
CellResult evaluate_cell(int photons, const PulseShape& raw, int base_n,
                         double h_max, std::size_t budget,
                         const PhysicalParams& params) {
    CellResult r;
    try {
        const TimeGrid grid = default_grid(raw.gamma, base_n, h_max);
        r.n = grid.n;
        const PulseShape shape = normalize(raw, grid);
        if (photons == 2) {
            const TwoPhotonWave wave = scatter_two(shape, grid, params);
            r.value = pw3_average(wave).average;
        } else {
            const std::size_t bytes =
                2 * std::size_t(grid.n) * grid.n * grid.n * sizeof(cplx);
            if (bytes > budget) {
                r.value = pw4_average_streamed(shape, grid, params).average;
            } else {
                const ThreePhotonWave wave =
                    scatter_three(shape, grid, params, budget);
                r.value = pw4_average(wave).average;
            }
        }
        r.valid = true;
    } catch (const numeric_error&) {
        r.valid = false;
    } catch (const validation_error&) {
        // window/support trouble for this parameter combination
        r.valid = false;
    }
    return r;
}

}  // namespace

std::string SweepResult::to_json() const {
    nlohmann::json j;
    j["photons"] = photons;
    j["delta_axis"] = delta_axis;
    j["gamma_axis"] = gamma_axis;
    j["values"] = values;
    std::vector<int> v(valid.begin(), valid.end());
    j["valid"] = v;
    j["cell_n"] = cell_n;
    return j.dump(2);
}

std::string SweepResult::to_csv() const {
    std::string out = "delta,gamma,value,valid,n\n";
    char buf[128];
    for (std::size_t i = 0; i < delta_axis.size(); ++i)
        for (std::size_t j = 0; j < gamma_axis.size(); ++j) {
            const std::size_t c = i * gamma_axis.size() + j;
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d,%d\n",
                          delta_axis[i], gamma_axis[j], values[c],
                          int(valid[c]), cell_n[c]);
            out += buf;
        }
    return out;
}

SweepResult sweep(int photons, const Range& delta_range, const Range& gamma_range,
                  const SweepOptions& options, const PhysicalParams& params) {
    if (photons != 2 && photons != 3)
        throw validation_error("photons must be 2 or 3");
    if (!(gamma_range.min > 0.0))
        throw validation_error("gamma range must be strictly positive");
    params.validate();

    SweepResult res;
    res.photons = photons;
    res.delta_axis = linspace(delta_range);
    res.gamma_axis = linspace(gamma_range);
    const std::size_t cells = res.delta_axis.size() * res.gamma_axis.size();
    res.values.assign(cells, 0.0);
    res.valid.assign(cells, 0);
    res.cell_n.assign(cells, 0);

    parallel_for(cells, [&](std::size_t c) {
        const double delta = res.delta_axis[c / res.gamma_axis.size()];
        const double gamma = res.gamma_axis[c % res.gamma_axis.size()];
        const CellResult cell =
            evaluate_cell(photons, PulseShape(delta, gamma), options.base_n,
                          options.h_max, options.memory_budget, params);
        res.values[c] = cell.value;
        res.valid[c] = cell.valid ? 1 : 0;
        res.cell_n[c] = cell.n;
    });
    return res;
}

std::string OptimumReport::to_json() const {
    nlohmann::json j;
    j["kind"] = kind;
    j["photons"] = photons;
    j["delta"] = delta;
    j["gamma"] = gamma;
    nlohmann::json coeffs = nlohmann::json::array();
    for (std::size_t k = 0; k < hermite.size(); ++k)
        coeffs.push_back({{"n", int(k) + 2},
                          {"a", hermite[k].real()},
                          {"b", hermite[k].imag()}});
    j["hermite"] = coeffs;
    j["objective"] = objective;
    j["iterations"] = iterations;
    j["converged"] = converged;
    j["method"] = method;
    return j.dump(2);
}

namespace {

// Nelder-Mead with the standard coefficients and a deterministic axis-step
// initial simplex.
struct Simplex {
    std::vector<std::vector<double>> x;
    std::vector<double> f;
};

double diameter(const Simplex& s) {
    double d = 0.0;
    for (std::size_t a = 1; a < s.x.size(); ++a)
        for (std::size_t c = 0; c < s.x[a].size(); ++c)
            d = std::max(d, std::abs(s.x[a][c] - s.x[0][c]));
    return d;
}

template <class F>
int nelder_mead(Simplex& s, F&& objective, double tol, int max_iter) {
    const std::size_t dim = s.x[0].size();
    int iter = 0;
    auto order = [&] {
        std::vector<std::size_t> idx(s.x.size());
        for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = k;
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
        Simplex t;
        for (std::size_t k : idx) {
            t.x.push_back(s.x[k]);
            t.f.push_back(s.f[k]);
        }
        s = std::move(t);
    };
    order();
    for (; iter < max_iter; ++iter) {
        if (diameter(s) < tol) break;
        std::vector<double> centroid(dim, 0.0);
        for (std::size_t v = 0; v + 1 < s.x.size(); ++v)
            for (std::size_t c = 0; c < dim; ++c) centroid[c] += s.x[v][c];
        for (double& c : centroid) c /= double(dim);

        auto blend = [&](double alpha) {
            std::vector<double> p(dim);
            for (std::size_t c = 0; c < dim; ++c)
                p[c] = centroid[c] + alpha * (centroid[c] - s.x.back()[c]);
            return p;
        };
        const std::vector<double> xr = blend(1.0);
        const double fr = objective(xr);
        if (fr < s.f[0]) {
            const std::vector<double> xe = blend(2.0);
            const double fe = objective(xe);
            if (fe < fr) {
                s.x.back() = xe;
                s.f.back() = fe;
            } else {
                s.x.back() = xr;
                s.f.back() = fr;
            }
        } else if (fr < s.f[s.f.size() - 2]) {
            s.x.back() = xr;
            s.f.back() = fr;
        } else {
            const bool outside = fr < s.f.back();
            const std::vector<double> xc = blend(outside ? 0.5 : -0.5);
            const double fc = objective(xc);
            if (fc < (outside ? fr : s.f.back())) {
                s.x.back() = xc;
                s.f.back() = fc;
            } else {
                for (std::size_t v = 1; v < s.x.size(); ++v) {
                    for (std::size_t c = 0; c < dim; ++c)
                        s.x[v][c] = s.x[0][c] + 0.5 * (s.x[v][c] - s.x[0][c]);
                    s.f[v] = objective(s.x[v]);
                }
            }
        }
        order();
    }
    return iter;
}

PulseShape shape_from_vector(const std::vector<double>& x) {
    std::vector<cplx> coeffs;
    if (x.size() > 2) {
        coeffs.push_back(cplx(0.0, x[2]));
        for (std::size_t k = 3; k + 1 < x.size(); k += 2)
            coeffs.push_back(cplx(x[k], x[k + 1]));
    }
    return PulseShape(x[0], x[1], std::move(coeffs));
}

}  // namespace

OptimumReport refine_max(int photons, double start_delta, double start_gamma,
                         const SimplexOptions& options,
                         const PhysicalParams& params) {
    if (photons != 2 && photons != 3)
        throw validation_error("photons must be 2 or 3");
    if (!(start_gamma > 0.0))
        throw validation_error("refinement start needs gamma > 0");

    const double h_max = photons == 2 ? 0.20 : 0.30;
    auto objective = [&](const std::vector<double>& x) {
        const double gamma = x[1];
        if (gamma < 0.02) return 1.0;  // off the physical domain
        const CellResult cell = evaluate_cell(
            photons, PulseShape(x[0], gamma), options.eval_n, h_max,
            kDefaultTensorBudget, params);
        return cell.valid ? -cell.value : 1.0;
    };

    Simplex s;
    s.x = {{start_delta, start_gamma},
           {start_delta + options.initial_step, start_gamma},
           {start_delta, start_gamma + options.initial_step}};
    for (auto& v : s.x) s.f.push_back(objective(v));
    const int iters =
        nelder_mead(s, objective, options.tolerance, options.max_iterations);

    OptimumReport rep;
    rep.kind = "gaussian";
    rep.photons = photons;
    rep.delta = s.x[0][0];
    rep.gamma = s.x[0][1];
    rep.objective = -s.f[0];
    rep.iterations = iters;
    rep.converged = iters < options.max_iterations;
    rep.method = "nelder-mead simplex, deterministic axis-step init";
    return rep;
}

OptimumReport optimize_pulse_shape(int photons, int n_max,
                                   const OptimumReport& start,
                                   const SimplexOptions& options,
                                   const PhysicalParams& params) {
    if (photons != 2 && photons != 3)
        throw validation_error("photons must be 2 or 3");
    if (n_max < 2) throw validation_error("n_max must be >= 2");

    // x = (delta, gamma, b2, a3, b3, ..., a_nmax, b_nmax)
    std::vector<double> x0{start.delta, start.gamma};
    x0.push_back(start.hermite.empty() ? 0.0 : start.hermite[0].imag());
    for (int nn = 3; nn <= n_max; ++nn) {
        const std::size_t k = std::size_t(nn) - 2;
        x0.push_back(k < start.hermite.size() ? start.hermite[k].real() : 0.0);
        x0.push_back(k < start.hermite.size() ? start.hermite[k].imag() : 0.0);
    }

    const double h_max = photons == 2 ? 0.20 : 0.30;
    const int eval_n = options.eval_n;
    auto objective = [&](const std::vector<double>& x) {
        if (x[1] < 0.02) return 1.0;
        const CellResult cell =
            evaluate_cell(photons, shape_from_vector(x), eval_n, h_max,
                          kDefaultTensorBudget, params);
        return cell.valid ? -cell.value : 1.0;
    };

    Simplex s;
    s.x.push_back(x0);
    for (std::size_t c = 0; c < x0.size(); ++c) {
        std::vector<double> v = x0;
        v[c] += (c < 2) ? 0.5 * options.initial_step : 0.01;
        s.x.push_back(v);
    }
    for (auto& v : s.x) s.f.push_back(objective(v));
    const int iters =
        nelder_mead(s, objective, options.tolerance, options.max_iterations);

    const PulseShape best = shape_from_vector(s.x[0]);
    OptimumReport rep;
    rep.kind = "hermite";
    rep.photons = photons;
    rep.delta = best.delta;
    rep.gamma = best.gamma;
    rep.hermite = best.hermite;
    rep.objective = -s.f[0];
    rep.iterations = iters;
    rep.converged = iters < options.max_iterations && -s.f[0] >= start.objective;
    rep.method = "nelder-mead simplex, deterministic axis-step init";
    return rep;
}

}  // namespace wqed
