#include "wrinklevar/minimize.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace wrinklevar {

namespace {

double dot_flat(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm_flat(const std::vector<double>& a) { return std::sqrt(dot_flat(a, a)); }

DeformationState advance(const DeformationState& s, double t, const std::vector<double>& d) {
    DeformationState out = s;
    const int n = s.grid.num_nodes();
    for (int i = 0; i < n; ++i) {
        out.h[i].x += t * d[3 * i + 0];
        out.h[i].y += t * d[3 * i + 1];
        out.w[i] += t * d[3 * i + 2];
    }
    return out;
}

struct LineSearchOutcome {
    double step = 0.0;
    DeformationState state;
    EnergyBreakdown energy;
    double min_j = 0.0;
};

LineSearchOutcome backtrack(const DeformationState& s, const std::vector<double>& d,
                            double e0, double slope, const MaterialParams& p,
                            const LoadSpec& loads, const BoundarySpec& bc,
                            const MinimizerConfig& cfg) {
    double t = 1.0;
    while (t >= 1e-16) {
        DeformationState trial = advance(s, t, d);
        const double mj = min_area_ratio(trial);
        if (mj > cfg.j_min) {
            const EnergyBreakdown e = assemble_energy(trial, p, loads, bc);
            // Strict decrease as well: once the predicted Armijo decrease
            // underflows the energy's ulp, equal-energy steps are rejected so
            // the search terminates instead of crawling.
            if (e.total < e0 && e.total <= e0 + cfg.armijo_c * t * slope)
                return {t, std::move(trial), e, mj};
        }
        t *= cfg.backtrack_factor;
    }
    throw std::runtime_error("line search failed: step underflow below 1e-16");
}

struct PairHistory {
    std::deque<std::vector<double>> s, y;
    std::deque<double> rho;
    int capacity;

    explicit PairHistory(int m) : capacity(m) {}

    int size() const { return static_cast<int>(s.size()); }

    void push(std::vector<double> si, std::vector<double> yi) {
        const double sy = dot_flat(si, yi);
        if (!(sy > 1e-14 * norm_flat(si) * norm_flat(yi))) return;  // curvature guard
        s.push_back(std::move(si));
        y.push_back(std::move(yi));
        rho.push_back(1.0 / sy);
        if (static_cast<int>(s.size()) > capacity) {
            s.pop_front();
            y.pop_front();
            rho.pop_front();
        }
    }

    // Two-loop recursion for -H g.
    std::vector<double> direction(const std::vector<double>& g) const {
        std::vector<double> q = g;
        const int m = static_cast<int>(s.size());
        std::vector<double> alpha(static_cast<std::size_t>(m));
        for (int i = m - 1; i >= 0; --i) {
            alpha[i] = rho[i] * dot_flat(s[i], q);
            for (std::size_t k = 0; k < q.size(); ++k) q[k] -= alpha[i] * y[i][k];
        }
        if (m > 0) {
            const double gamma = 1.0 / (rho[m - 1] * dot_flat(y[m - 1], y[m - 1]));
            for (double& v : q) v *= gamma;
        }
        for (int i = 0; i < m; ++i) {
            const double beta = rho[i] * dot_flat(y[i], q);
            for (std::size_t k = 0; k < q.size(); ++k) q[k] += (alpha[i] - beta) * s[i][k];
        }
        for (double& v : q) v = -v;
        return q;
    }
};

}  // namespace

void MinimizerConfig::validate() const {
    if (!(gtol_rel > 0.0) || !(gtol_floor > 0.0))
        throw std::invalid_argument("minimizer tolerances must be positive");
    if (max_iterations < 0) throw std::invalid_argument("minimizer.max_iterations must be >= 0");
    if (memory < 1) throw std::invalid_argument("minimizer.memory must be >= 1");
    if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
        throw std::invalid_argument("minimizer.backtrack_factor must lie in (0,1)");
    if (!(armijo_c > 0.0)) throw std::invalid_argument("minimizer.armijo_c must be > 0");
    if (!(j_min > 0.0)) throw std::invalid_argument("minimizer.j_min must be > 0");
    if (perturb_delta_rel < 0.0)
        throw std::invalid_argument("minimizer.perturb_delta_rel must be >= 0");
    if (perturb_mode < 1) throw std::invalid_argument("minimizer.perturb_mode must be >= 1");
}

std::pair<double, DeformationState> feasible_line_search(
    const DeformationState& s, const std::vector<double>& direction, const MaterialParams& p,
    const LoadSpec& loads, const BoundarySpec& bc, const MinimizerConfig& cfg) {
    if (direction.size() != static_cast<std::size_t>(3 * s.grid.num_nodes()))
        throw std::invalid_argument("feasible_line_search: direction size mismatch");
    const EnergyBreakdown e0 = assemble_energy(s, p, loads, bc);
    const std::vector<double> g = assemble_gradient(s, p, loads, bc);
    const double slope = dot_flat(g, direction);
    if (!(slope < 0.0))
        throw std::invalid_argument("feasible_line_search: direction is not a descent direction");
    LineSearchOutcome out = backtrack(s, direction, e0.total, slope, p, loads, bc, cfg);
    return {out.step, std::move(out.state)};
}

MinimizeResult minimize(const DeformationState& s0, const MaterialParams& p,
                        const LoadSpec& loads, const BoundarySpec& bc,
                        const MinimizerConfig& cfg,
                        const std::vector<std::uint8_t>* extra_fixed) {
    cfg.validate();
    auto [state, mask] = apply_boundary(s0, bc);
    if (extra_fixed) {
        if (extra_fixed->size() != mask.fixed.size())
            throw std::invalid_argument("minimize: extra_fixed size mismatch");
        for (std::size_t i = 0; i < mask.fixed.size(); ++i)
            if ((*extra_fixed)[i]) mask.fixed[i] = 1;
    }
    if (cfg.freeze_w)
        for (int i = 0; i < state.grid.num_nodes(); ++i) mask.fixed[3 * i + 2] = 1;

    const auto masked_gradient = [&](const DeformationState& st) {
        std::vector<double> g = assemble_gradient(st, p, loads, bc);
        for (std::size_t i = 0; i < g.size(); ++i)
            if (mask.fixed[i]) g[i] = 0.0;
        return g;
    };

    MinimizeResult res;
    res.state = std::move(state);
    double min_j = min_area_ratio(res.state);
    if (!(min_j > cfg.j_min))
        throw FeasibilityError("minimize: initial state violates the area-ratio floor");

    res.energy = assemble_energy(res.state, p, loads, bc);
    std::vector<double> g = masked_gradient(res.state);
    double gnorm = norm_flat(g);
    res.trace.gtol = std::max(cfg.gtol_rel * gnorm, cfg.gtol_floor);
    res.trace.rows.push_back({0, res.energy.total, gnorm, 0.0, min_j});

    PairHistory history(cfg.memory);
    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        if (gnorm <= res.trace.gtol) {
            res.trace.converged = true;
            return res;
        }
        std::vector<double> d = history.direction(g);
        double slope = dot_flat(g, d);
        bool fresh_descent = history.size() == 0;
        if (!(slope < 0.0) || !std::isfinite(slope)) {
            d = g;
            for (double& v : d) v = -v;
            slope = -gnorm * gnorm;
            history = PairHistory(cfg.memory);
            fresh_descent = true;
        }
        LineSearchOutcome ls;
        try {
            ls = backtrack(res.state, d, res.energy.total, slope, p, loads, bc, cfg);
        } catch (const std::runtime_error&) {
            if (fresh_descent) {
                // Even the raw gradient cannot make measurable progress.
                res.trace.converged = gnorm <= res.trace.gtol;
                if (!res.trace.converged)
                    res.trace.diagnostic = "line search failed: step underflow below 1e-16";
                return res;
            }
            // Quasi-Newton direction exhausted; retry from steepest descent.
            history = PairHistory(cfg.memory);
            d = g;
            for (double& v : d) v = -v;
            slope = -gnorm * gnorm;
            try {
                ls = backtrack(res.state, d, res.energy.total, slope, p, loads, bc, cfg);
            } catch (const std::runtime_error&) {
                res.trace.converged = gnorm <= res.trace.gtol;
                if (!res.trace.converged)
                    res.trace.diagnostic = "line search failed: step underflow below 1e-16";
                return res;
            }
        }
        std::vector<double> g_new = masked_gradient(ls.state);
        std::vector<double> step_vec(d.size()), y_vec(d.size());
        for (std::size_t k = 0; k < d.size(); ++k) {
            step_vec[k] = ls.step * d[k];
            y_vec[k] = g_new[k] - g[k];
        }
        history.push(std::move(step_vec), std::move(y_vec));
        res.state = std::move(ls.state);
        res.energy = ls.energy;
        g = std::move(g_new);
        gnorm = norm_flat(g);
        res.trace.rows.push_back({iter, res.energy.total, gnorm, ls.step, ls.min_j});
    }
    if (gnorm <= res.trace.gtol)
        res.trace.converged = true;
    else
        res.trace.diagnostic = "iteration cap reached";
    return res;
}

DeformationState perturb_out_of_plane(const DeformationState& s, double delta, int mode) {
    if (delta < 0.0) throw std::invalid_argument("perturb_out_of_plane: delta must be >= 0");
    if (mode < 1) throw std::invalid_argument("perturb_out_of_plane: mode must be >= 1");
    if (delta == 0.0) return s;
    const GridSpec& g = s.grid;
    const double pi = 3.14159265358979323846;
    DeformationState out = s;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double x1 = g.x1(i);
            const double bump = 4.0 * x1 * (g.Lx - x1) / (g.Lx * g.Lx);
            out.w[g.node(i, j)] +=
                delta * std::sin(mode * pi * g.x2(j) / g.Ly) * bump * bump;
        }
    }
    return out;
}

std::vector<SweepEntry> continuation_sweep(double lambda_from, double lambda_to, int steps,
                                           const MaterialParams& p, const LoadSpec& loads,
                                           BoundarySpec bc, const MinimizerConfig& cfg,
                                           const GridSpec& grid) {
    if (steps < 1) throw std::invalid_argument("continuation_sweep: steps must be >= 1");
    std::vector<SweepEntry> entries;
    entries.reserve(static_cast<std::size_t>(steps));
    DeformationState carry;
    for (int t = 0; t < steps; ++t) {
        const double lambda =
            steps == 1 ? lambda_from
                       : lambda_from + (lambda_to - lambda_from) * t / (steps - 1);
        bc.lambda = lambda;
        DeformationState start = t == 0 ? state_from_boundary_maps(grid, bc) : carry;
        start = apply_boundary(start, bc).first;
        if (!(min_area_ratio(start) > cfg.j_min))
            start = state_from_boundary_maps(grid, bc);  // warm start collapsed; restart fresh
        if (!cfg.freeze_w)
            start = perturb_out_of_plane(start, cfg.perturb_delta_rel * grid.Ly,
                                         cfg.perturb_mode);
        SweepEntry entry;
        entry.lambda = lambda;
        entry.result = minimize(start, p, loads, bc, cfg);
        entry.metrics = wrinkle_metrics(entry.result.state);
        carry = entry.result.state;
        entries.push_back(std::move(entry));
    }
    return entries;
}

}  // namespace wrinklevar
