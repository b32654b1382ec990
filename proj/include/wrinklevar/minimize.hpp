#pragma once

#include <string>
#include <vector>

#include "wrinklevar/analysis.hpp"
#include "wrinklevar/energy.hpp"

// Feasibility-preserving limited-memory quasi-Newton descent on the discrete
// energy, plus continuation in the boundary stretch. Accepted iterates have
// nonincreasing energy and keep every nodal area ratio above the floor, so a
// run is a finite minimizing sequence inside the admissible set.

namespace wrinklevar {

struct MinimizerConfig {
    // tolerance = max(gtol_rel * |g0|, gtol_floor); |g0| is the 2-norm of the
    // free-dof gradient at the starting state. The relative factor stays well
    // above the double-precision energy-comparison floor sqrt(eps |E|).
    double gtol_rel = 1e-5;
    double gtol_floor = 1e-10;
    int max_iterations = 5000;
    int memory = 10;           // quasi-Newton pair count
    double backtrack_factor = 0.5;
    double armijo_c = 1e-4;
    double j_min = 1e-8;       // hard feasibility floor for nodal J
    double perturb_delta_rel = 1e-4;  // out-of-plane seed amplitude, relative to Ly
    int perturb_mode = 4;
    bool freeze_w = false;     // keep the planar branch (w dofs never move)

    void validate() const;
};

struct TraceRow {
    int iter = 0;
    double energy = 0.0;
    double gradnorm = 0.0;
    double step = 0.0;
    double min_j = 0.0;
};

struct RunTrace {
    std::vector<TraceRow> rows;
    bool converged = false;
    double gtol = 0.0;
    std::string diagnostic;  // set when not converged
};

struct MinimizeResult {
    DeformationState state;
    EnergyBreakdown energy;
    RunTrace trace;
};

// Backtracking line search along a descent direction: a trial step is
// rejected when any nodal J falls to j_min or the Armijo test fails.
// Throws std::invalid_argument for a non-descent direction and
// std::runtime_error on step underflow below 1e-16.
std::pair<double, DeformationState> feasible_line_search(
    const DeformationState& s, const std::vector<double>& direction, const MaterialParams& p,
    const LoadSpec& loads, const BoundarySpec& bc, const MinimizerConfig& cfg);

// Descent from an admissible start until the gradient norm reaches the
// tolerance or the iteration cap. extra_fixed, when given, marks additional
// dofs the minimizer must not move (3 per node, interleaved).
MinimizeResult minimize(const DeformationState& s0, const MaterialParams& p,
                        const LoadSpec& loads, const BoundarySpec& bc,
                        const MinimizerConfig& cfg,
                        const std::vector<std::uint8_t>* extra_fixed = nullptr);

// Adds delta * sin(mode pi x2 / Ly) * bump(x1) to w; the bump vanishes with
// its slope at the x1 extremes. h (and so J) is untouched.
DeformationState perturb_out_of_plane(const DeformationState& s, double delta, int mode);

struct SweepEntry {
    double lambda = 0.0;
    MinimizeResult result;
    WrinkleMetrics metrics;
};

// Uniform stretch schedule; each step warm-starts from the previous state,
// restretches the boundary and reseeds the out-of-plane perturbation.
// Non-converged steps are flagged and the sweep continues.
std::vector<SweepEntry> continuation_sweep(double lambda_from, double lambda_to, int steps,
                                           const MaterialParams& p, const LoadSpec& loads,
                                           BoundarySpec bc, const MinimizerConfig& cfg,
                                           const GridSpec& grid);

}  // namespace wrinklevar
