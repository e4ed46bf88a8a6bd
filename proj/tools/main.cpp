// lambda-scatter: few-photon scattering on a waveguide-coupled lambda atom.
// Subcommands: coeffs, wavefunction, sweep, optimize, oracle-check.

#include "wqed/optimize.hpp"
#include "wqed/parallel.hpp"
#include "wqed/smatrix.hpp"
#include "wqed/kernels.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wqed;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Config {
    PulseShape pulse{0.0, 0.5};
    bool grid_set = false;
    double t_min = 0.0, t_max = 0.0;
    int grid_n = 0;
    int photons = 2;
    unsigned threads = 0;
    std::string output;
    PhysicalParams params;
    // slice plane for three-photon output
    double slice_sum = 0.0, slice_extent = 6.0;
    int slice_count = 61;
    // sweep
    Range sweep_delta{0.0, 2.0, 41};
    Range sweep_gamma{0.05, 2.0, 41};
    int cell_n = 97;
    double cell_h_max = 0.0;
    // optimize
    std::string opt_mode = "gaussian";
    int opt_nmax = 4;
    double opt_start_delta = 1.0, opt_start_gamma = 1.0;
    int opt_eval_n = 129;
    int opt_max_iter = 300;
    double opt_tol = 1e-3;
    // oracle
    int oracle_n = 65;
    int oracle_m = 193;

    json effective() const;
};

json Config::effective() const {
    json hermite = json::array();
    for (const cplx& c : pulse.hermite) hermite.push_back({c.real(), c.imag()});
    json j;
    j["pulse"] = {{"delta", pulse.delta}, {"gamma", pulse.gamma}, {"hermite", hermite}};
    if (grid_set)
        j["grid"] = {{"t_min", t_min}, {"t_max", t_max}, {"n", grid_n}};
    j["photons"] = photons;
    j["threads"] = threads;
    j["output"] = output;
    j["omega0"] = params.omega0;
    j["chirality"] = params.chirality;
    j["slice"] = {{"sum", slice_sum}, {"extent", slice_extent}, {"count", slice_count}};
    j["sweep"] = {{"delta_min", sweep_delta.min}, {"delta_max", sweep_delta.max},
                  {"delta_count", sweep_delta.count}, {"gamma_min", sweep_gamma.min},
                  {"gamma_max", sweep_gamma.max}, {"gamma_count", sweep_gamma.count},
                  {"cell_n", cell_n}, {"h_max", cell_h_max}};
    j["optimize"] = {{"mode", opt_mode}, {"n_max", opt_nmax},
                     {"start_delta", opt_start_delta}, {"start_gamma", opt_start_gamma},
                     {"eval_n", opt_eval_n}, {"max_iterations", opt_max_iter},
                     {"tolerance", opt_tol}};
    j["oracle"] = {{"grid_n", oracle_n}, {"fgrid_m", oracle_m}};
    return j;
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok)
            throw validation_error("unknown config key \"" + it.key() + "\" in " +
                                   where);
    }
}

void load_config(const std::string& path, Config& cfg) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw validation_error(std::string("malformed config: ") + e.what());
    }
    reject_unknown(j, {"pulse", "grid", "photons", "threads", "output", "omega0",
                       "chirality", "slice", "sweep", "optimize", "oracle"},
                   "top level");
    if (j.contains("pulse")) {
        const json& p = j["pulse"];
        reject_unknown(p, {"delta", "gamma", "hermite"}, "pulse");
        const double delta = p.value("delta", 0.0);
        const double gamma = p.value("gamma", 0.5);
        std::vector<cplx> herm;
        if (p.contains("hermite")) {
            for (const auto& e : p["hermite"]) {
                if (!e.is_array() || e.size() != 2)
                    throw validation_error("pulse.hermite entries must be [a_n, b_n]");
                herm.emplace_back(e[0].get<double>(), e[1].get<double>());
            }
        }
        cfg.pulse = PulseShape(delta, gamma, herm);
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        reject_unknown(g, {"t_min", "t_max", "n"}, "grid");
        cfg.grid_set = true;
        cfg.t_min = g.at("t_min").get<double>();
        cfg.t_max = g.at("t_max").get<double>();
        cfg.grid_n = g.at("n").get<int>();
    }
    if (j.contains("photons")) cfg.photons = j["photons"].get<int>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<unsigned>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("omega0")) cfg.params.omega0 = j["omega0"].get<double>();
    if (j.contains("chirality")) cfg.params.chirality = j["chirality"].get<double>();
    if (j.contains("slice")) {
        const json& s = j["slice"];
        reject_unknown(s, {"sum", "extent", "count"}, "slice");
        cfg.slice_sum = s.value("sum", 0.0);
        cfg.slice_extent = s.value("extent", 6.0);
        cfg.slice_count = s.value("count", 61);
    }
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        reject_unknown(s,
                       {"delta_min", "delta_max", "delta_count", "gamma_min",
                        "gamma_max", "gamma_count", "cell_n", "h_max"},
                       "sweep");
        cfg.sweep_delta = {s.value("delta_min", 0.0), s.value("delta_max", 2.0),
                           s.value("delta_count", 41)};
        cfg.sweep_gamma = {s.value("gamma_min", 0.05), s.value("gamma_max", 2.0),
                           s.value("gamma_count", 41)};
        cfg.cell_n = s.value("cell_n", 97);
        cfg.cell_h_max = s.value("h_max", 0.0);
    }
    if (j.contains("optimize")) {
        const json& o = j["optimize"];
        reject_unknown(o,
                       {"mode", "n_max", "start_delta", "start_gamma", "eval_n",
                        "max_iterations", "tolerance"},
                       "optimize");
        cfg.opt_mode = o.value("mode", "gaussian");
        cfg.opt_nmax = o.value("n_max", 4);
        cfg.opt_start_delta = o.value("start_delta", 1.0);
        cfg.opt_start_gamma = o.value("start_gamma", 1.0);
        cfg.opt_eval_n = o.value("eval_n", 129);
        cfg.opt_max_iter = o.value("max_iterations", 300);
        cfg.opt_tol = o.value("tolerance", 1e-3);
    }
    if (j.contains("oracle")) {
        const json& o = j["oracle"];
        reject_unknown(o, {"grid_n", "fgrid_m"}, "oracle");
        cfg.oracle_n = o.value("grid_n", 65);
        cfg.oracle_m = o.value("fgrid_m", 193);
    }
}

fs::path require_output(const Config& cfg) {
    if (cfg.output.empty())
        throw validation_error("an output directory is required (--output)");
    std::error_code ec;
    fs::create_directories(cfg.output, ec);
    if (ec) throw io_error("cannot create output directory " + cfg.output);
    return cfg.output;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw io_error("cannot write " + p.string());
    out << text;
    if (!out) throw io_error("short write to " + p.string());
}

struct Manifest {
    std::string command;
    json config;
    json grids = json::object();
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void write(const fs::path& dir) const {
        json j;
        j["command"] = command;
        j["version"] = kVersion;
        j["config"] = config;
        j["grids"] = grids;
        j["kernel_lane"] = kernels::active().name;
        j["threads"] = thread_count();
        j["wall_time_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        write_file(dir / "manifest.json", j.dump(2) + "\n");
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

TimeGrid grid_for(const Config& cfg) {
    if (cfg.grid_set) return make_time_grid(cfg.t_min, cfg.t_max, cfg.grid_n);
    const TimeGrid d = cfg.photons == 2 ? default_grid_two_photon(cfg.pulse.gamma)
                                        : default_grid_three_photon(cfg.pulse.gamma);
    if (cfg.grid_n > 0) return make_time_grid(d.t_min, d.t_max, cfg.grid_n);
    return d;
}

int cmd_coeffs(const std::vector<double>& deltas, const Config& cfg) {
    std::printf("delta,s_re,s_im,t_re,t_im,abs_s2,abs_t2\n");
    for (double d : deltas) {
        const cplx s = s_coeff(d, cfg.params);
        const cplx t = t_coeff(d, cfg.params);
        std::printf("%s,%s,%s,%s,%s,%s,%s\n", fmt(d).c_str(), fmt(s.real()).c_str(),
                    fmt(s.imag()).c_str(), fmt(t.real()).c_str(),
                    fmt(t.imag()).c_str(), fmt(std::norm(s)).c_str(),
                    fmt(std::norm(t)).c_str());
    }
    return 0;
}

int cmd_wavefunction(const Config& cfg) {
    const fs::path dir = require_output(cfg);
    Manifest man{"wavefunction", cfg.effective()};
    const TimeGrid grid = grid_for(cfg);
    man.grids["n"] = grid.n;
    man.grids["t_min"] = grid.t_min;
    man.grids["t_max"] = grid.t_max;
    const PulseShape shape = normalize(cfg.pulse, grid);
    int exit_code = 0;

    if (cfg.photons == 2) {
        const TwoPhotonWave wave = scatter_two(shape, grid, cfg.params);
        std::string xxx = "t1,t2,re,im\n", xyy = "t1,t2,re,im\n",
                    pw = "t1,t2,value\n";
        for (int i = 0; i < grid.n; ++i)
            for (int j = 0; j < grid.n; ++j) {
                const std::string t1 = fmt(grid.time(i)), t2 = fmt(grid.time(j));
                const cplx a = wave.at_xxx(i, j), b = wave.at_xyy(i, j);
                xxx += t1 + "," + t2 + "," + fmt(a.real()) + "," + fmt(a.imag()) + "\n";
                xyy += t1 + "," + t2 + "," + fmt(b.real()) + "," + fmt(b.imag()) + "\n";
                pw += t1 + "," + t2 + "," +
                      fmt(pw3_pointwise(wave, grid.time(i), grid.time(j))) + "\n";
            }
        write_file(dir / "xxx.csv", xxx);
        write_file(dir / "xyy.csv", xyy);
        write_file(dir / "pw3.csv", pw);
        try {
            const EntanglementReport rep = pw3_average(wave);
            write_file(dir / "report.json", rep.to_json() + "\n");
        } catch (const numeric_error& e) {
            std::cerr << "warning: " << e.what() << "\n";
            exit_code = 3;
        }
    } else if (cfg.photons == 3) {
        // cross-section of the plane t1+t2+t3 = slice_sum, orthonormal
        // in-plane axes u ~ (1,-1,0), v ~ (1,1,-2)
        const double c = cfg.slice_sum / 3.0;
        const double e1[3] = {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0};
        const double e2[3] = {1.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0),
                              -2.0 / std::sqrt(6.0)};
        std::string fx = "u,v,t1,t2,t3,re,im\n", fy = fx, fpw = "u,v,t1,t2,t3,value\n";
        const int cnt = cfg.slice_count;
        for (int a = 0; a < cnt; ++a)
            for (int b = 0; b < cnt; ++b) {
                const double u = -cfg.slice_extent +
                                 2.0 * cfg.slice_extent * a / (cnt - 1);
                const double v = -cfg.slice_extent +
                                 2.0 * cfg.slice_extent * b / (cnt - 1);
                const double t1 = c + u * e1[0] + v * e2[0];
                const double t2 = c + u * e1[1] + v * e2[1];
                const double t3 = c + u * e1[2] + v * e2[2];
                const cplx ax = psi3_pointwise(shape, cfg.params, t1, t2, t3,
                                               Channel3::XXXx);
                const cplx ay = psi3_pointwise(shape, cfg.params, t1, t2, t3,
                                               Channel3::XXYy);
                const cplx a2 = psi3_pointwise(shape, cfg.params, t1, t2, t3,
                                               Channel3::XYXy);
                const cplx a1 = psi3_pointwise(shape, cfg.params, t1, t2, t3,
                                               Channel3::YXXy);
                const double ws[4] = {std::norm(ax), std::norm(ay), std::norm(a2),
                                      std::norm(a1)};
                const double sum = ws[0] + ws[1] + ws[2] + ws[3];
                const double pwv =
                    sum < 1e-300 ? 0.0
                                 : 4.0 * std::min(std::min(ws[0], ws[1]),
                                                  std::min(ws[2], ws[3])) / sum;
                const std::string head = fmt(u) + "," + fmt(v) + "," + fmt(t1) +
                                         "," + fmt(t2) + "," + fmt(t3) + ",";
                fx += head + fmt(ax.real()) + "," + fmt(ax.imag()) + "\n";
                fy += head + fmt(ay.real()) + "," + fmt(ay.imag()) + "\n";
                fpw += head + fmt(pwv) + "\n";
            }
        write_file(dir / "xxxx_slice.csv", fx);
        write_file(dir / "xxyy_slice.csv", fy);
        write_file(dir / "pw4_slice.csv", fpw);
    } else {
        throw validation_error("photons must be 2 or 3");
    }
    man.write(dir);
    return exit_code;
}

int cmd_sweep(const Config& cfg) {
    const fs::path dir = require_output(cfg);
    Manifest man{"sweep", cfg.effective()};
    SweepOptions opt;
    opt.base_n = cfg.cell_n;
    opt.h_max = cfg.cell_h_max;
    const SweepResult res =
        sweep(cfg.photons, cfg.sweep_delta, cfg.sweep_gamma, opt, cfg.params);
    write_file(dir / "sweep.csv", res.to_csv());
    write_file(dir / "sweep.json", res.to_json() + "\n");
    man.write(dir);
    return 0;
}

int cmd_optimize(const Config& cfg) {
    const fs::path dir = require_output(cfg);
    Manifest man{"optimize", cfg.effective()};
    SimplexOptions opt;
    opt.eval_n = cfg.opt_eval_n;
    opt.max_iterations = cfg.opt_max_iter;
    opt.tolerance = cfg.opt_tol;
    OptimumReport rep = refine_max(cfg.photons, cfg.opt_start_delta,
                                   cfg.opt_start_gamma, opt, cfg.params);
    if (cfg.opt_mode == "shape") {
        rep = optimize_pulse_shape(cfg.photons, cfg.opt_nmax, rep, opt, cfg.params);
    } else if (cfg.opt_mode != "gaussian") {
        throw validation_error("optimize mode must be gaussian or shape");
    }
    write_file(dir / "optimum.json", rep.to_json() + "\n");
    man.write(dir);
    std::printf("objective %.6f at delta=%.4f gamma=%.4f (%s)\n", rep.objective,
                rep.delta, rep.gamma, rep.converged ? "converged" : "not converged");
    return 0;
}

int cmd_oracle_check(const Config& cfg) {
    const PhysicalParams& params = cfg.params;
    const PulseShape ref(0.0, 0.5);
    const PulseShape other(1.0, 1.0);
    const TimeGrid grid = default_grid(0.5, cfg.oracle_n, 0.0);
    const TimeGrid grid2 = default_grid(1.0, cfg.oracle_n, 0.0);

    const FrequencyGrid f1 =
        make_frequency_grid(-10.0 * 0.5, 10.0 * 0.5, cfg.oracle_m);
    const FrequencyGrid f2 =
        make_frequency_grid(1.0 - 10.0, 1.0 + 10.0, cfg.oracle_m);

    const PulseShape refn = normalize(ref, grid);
    const PulseShape othern = normalize(other, grid2);
    const cplx C = calibrate_two_photon_constant(refn, grid, f1, params);

    auto deviation = [&](const PulseShape& s, const TimeGrid& g,
                         const FrequencyGrid& f) {
        const TwoPhotonWave a = scatter_two(s, g, params);
        const TwoPhotonWave b = oracle_two_photon(s, g, f, params, C);
        double peak = 0.0, dev = 0.0;
        for (std::size_t k = 0; k < a.xxx.size(); ++k) {
            peak = std::max(peak, std::abs(a.xxx[k]));
            dev = std::max(dev, std::abs(a.xxx[k] - b.xxx[k]));
            dev = std::max(dev, std::abs(a.xyy[k] - b.xyy[k]));
        }
        return dev / peak;
    };
    const double d1 = deviation(refn, grid, f1);
    const double d2 = deviation(othern, grid2, f2);
    std::printf("calibration constant: %.12g%+.12gi\n", C.real(), C.imag());
    std::printf("reference pulse relative deviation: %.3e\n", d1);
    std::printf("second pulse relative deviation:    %.3e\n", d2);
    const bool ok = d1 < 1e-3 && d2 < 1e-3;
    std::printf("%s\n", ok ? "OK" : "MISMATCH");
    if (!ok) throw numeric_error("scattering-matrix oracle disagrees");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"few-photon scattering and W-state entanglement on a "
                 "waveguide-coupled lambda atom"};
    app.set_version_flag("--version", kVersion);

    Config cfg;
    if (const char* env = std::getenv("LAMBDA_SCATTER_THREADS"))
        cfg.threads = unsigned(std::atoi(env));

    std::string config_path;
    double delta = 0.0, gamma = 0.5;
    bool delta_set = false, gamma_set = false;
    std::vector<double> coeff_deltas;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--threads", cfg.threads, "worker thread count (0 = auto)");
    app.add_option("--output", cfg.output, "output directory");
    app.add_option("--chirality", cfg.params.chirality,
                   "coupling factor: 1.0 chiral, 0.5 symmetric");
    app.add_option("--omega0", cfg.params.omega0, "carrier frequency offset");

    CLI::App* coeffs =
        app.add_subcommand("coeffs", "single-photon transmission coefficients");
    coeffs->add_option("delta", coeff_deltas, "detunings to tabulate");
    coeffs->fallthrough();

    CLI::App* wf = app.add_subcommand(
        "wavefunction", "output-state amplitudes and P_W maps on a grid");
    wf->add_option("--delta", delta, "pulse carrier detuning")
        ->each([&](const std::string&) { delta_set = true; });
    wf->add_option("--gamma", gamma, "pulse spectral width")
        ->each([&](const std::string&) { gamma_set = true; });
    wf->add_option("--photons", cfg.photons, "2 or 3");
    wf->add_option("--grid-n", cfg.grid_n, "detection grid points (odd)");
    wf->add_option("--slice-sum", cfg.slice_sum, "t1+t2+t3 of the 3-photon slice");
    wf->add_option("--slice-count", cfg.slice_count, "slice lattice points per axis");
    wf->fallthrough();

    CLI::App* sw = app.add_subcommand("sweep", "<P_W> landscape over (delta, gamma)");
    sw->add_option("--photons", cfg.photons, "2 or 3");
    sw->add_option("--delta-min", cfg.sweep_delta.min);
    sw->add_option("--delta-max", cfg.sweep_delta.max);
    sw->add_option("--delta-count", cfg.sweep_delta.count);
    sw->add_option("--gamma-min", cfg.sweep_gamma.min);
    sw->add_option("--gamma-max", cfg.sweep_gamma.max);
    sw->add_option("--gamma-count", cfg.sweep_gamma.count);
    sw->add_option("--cell-n", cfg.cell_n, "per-cell grid baseline");
    sw->add_option("--h-max", cfg.cell_h_max, "per-cell spacing cap (0 = off)");
    sw->fallthrough();

    CLI::App* op = app.add_subcommand("optimize", "locate and refine <P_W> maxima");
    op->add_option("--photons", cfg.photons, "2 or 3");
    op->add_option("--mode", cfg.opt_mode, "gaussian | shape");
    op->add_option("--n-max", cfg.opt_nmax, "highest Hermite order");
    op->add_option("--start-delta", cfg.opt_start_delta);
    op->add_option("--start-gamma", cfg.opt_start_gamma);
    op->add_option("--eval-n", cfg.opt_eval_n, "objective grid baseline");
    op->add_option("--max-iterations", cfg.opt_max_iter);
    op->add_option("--tolerance", cfg.opt_tol);
    op->fallthrough();

    CLI::App* oc = app.add_subcommand("oracle-check",
                                      "cross-validate against the spectral kernels");
    oc->add_option("--grid-n", cfg.oracle_n);
    oc->add_option("--fgrid-m", cfg.oracle_m);
    oc->fallthrough();

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        if (!config_path.empty()) load_config(config_path, cfg);
        if (delta_set || gamma_set)
            cfg.pulse = PulseShape(delta_set ? delta : cfg.pulse.delta,
                                   gamma_set ? gamma : cfg.pulse.gamma,
                                   cfg.pulse.hermite);
        set_thread_count(cfg.threads);
        cfg.params.validate();

        if (*coeffs) return cmd_coeffs(coeff_deltas, cfg);
        if (*wf) return cmd_wavefunction(cfg);
        if (*sw) return cmd_sweep(cfg);
        if (*op) return cmd_optimize(cfg);
        if (*oc) return cmd_oracle_check(cfg);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numeric_error& e) {
        std::cerr << "numerical diagnostic: " << e.what() << "\n";
        return 3;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
