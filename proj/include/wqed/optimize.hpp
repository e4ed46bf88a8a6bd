#pragma once

#include "wqed/wstate.hpp"

namespace wqed {

struct Range {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
};

struct SweepOptions {
    int base_n = 97;        // per-cell grid baseline
    double h_max = 0.0;     // 0 = no spacing-driven upsize
    std::size_t memory_budget = kDefaultTensorBudget;
};

// <P_W> landscape over Gaussian pulse parameters.  Cells whose final-state
// norm drifts outside [0.9, 1.1] are flagged invalid instead of being kept.
struct SweepResult {
    int photons = 2;
    std::vector<double> delta_axis;
    std::vector<double> gamma_axis;
    std::vector<double> values;  // row-major [delta][gamma]
    std::vector<char> valid;
    std::vector<int> cell_n;

    double value(int i, int j) const { return values[std::size_t(i) * gamma_axis.size() + j]; }
    bool is_valid(int i, int j) const { return valid[std::size_t(i) * gamma_axis.size() + j] != 0; }
    std::string to_json() const;
    std::string to_csv() const;
};

SweepResult sweep(int photons, const Range& delta_range, const Range& gamma_range,
                  const SweepOptions& options = {},
                  const PhysicalParams& params = {});

struct SimplexOptions {
    double initial_step = 0.15;
    double tolerance = 1e-3;   // simplex diameter
    int max_iterations = 200;
    int eval_n = 129;          // quadrature baseline during refinement
};

struct OptimumReport {
    std::string kind;  // "gaussian" or "hermite"
    int photons = 2;
    double delta = 0.0;
    double gamma = 0.0;
    std::vector<cplx> hermite;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    std::string method;

    std::string to_json() const;
};

// Nelder-Mead descent on -<P_W> over (delta, gamma) from a start point.
OptimumReport refine_max(int photons, double start_delta, double start_gamma,
                         const SimplexOptions& options = {},
                         const PhysicalParams& params = {});

// Hermite pulse-shape optimization over (delta, gamma, b2, a3, b3, ...,
// a_nmax, b_nmax); a1, b1, a2 stay fixed at zero.  The pulse is
// renormalized on every evaluation.  Never returns an objective below the
// Gaussian start (the start is a vertex of the initial simplex).
OptimumReport optimize_pulse_shape(int photons, int n_max,
                                   const OptimumReport& start,
                                   const SimplexOptions& options = {},
                                   const PhysicalParams& params = {});

}  // namespace wqed
