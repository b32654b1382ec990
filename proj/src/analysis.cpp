#include "wrinklevar/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "wrinklevar/rng.hpp"

namespace wrinklevar {

WrinkleMetrics wrinkle_metrics(const DeformationState& s) {
    s.check_consistent();
    const GridSpec& g = s.grid;
    const int i_mid = (g.nx - 1) / 2;

    WrinkleMetrics m;
    for (int j = 0; j < g.ny; ++j)
        m.amplitude = std::max(m.amplitude, std::fabs(s.w[g.node(i_mid, j)]));
    if (m.amplitude == 0.0) return m;

    const double band = 1e-12 * m.amplitude;
    std::vector<double> crossings;
    int prev_sign = 0;
    int prev_j = -1;
    for (int j = 0; j < g.ny; ++j) {
        const double v = s.w[g.node(i_mid, j)];
        const int sign = v > band ? 1 : (v < -band ? -1 : 0);
        if (sign == 0) continue;
        if (prev_sign != 0 && sign != prev_sign) {
            const double v0 = s.w[g.node(i_mid, prev_j)];
            const double x0 = g.x2(prev_j);
            const double x1 = g.x2(j);
            crossings.push_back(x0 + (x1 - x0) * v0 / (v0 - v));
            ++m.sign_changes;
        }
        prev_sign = sign;
        prev_j = j;
    }
    if (crossings.size() >= 2) {
        double mean_gap = 0.0;
        for (std::size_t t = 1; t < crossings.size(); ++t)
            mean_gap += crossings[t] - crossings[t - 1];
        mean_gap /= static_cast<double>(crossings.size() - 1);
        m.wavelength = 2.0 * mean_gap;
    }
    return m;
}

std::vector<std::uint8_t> omega_n_marks(const DeformationState& s, const MaterialParams& p,
                                        const BoundarySpec& bc, int n) {
    if (n < 1) throw std::invalid_argument("omega_n_marks: n must be >= 1");
    const StressFields st = stress_fields(s, p, bc);
    std::vector<std::uint8_t> marks(st.j.size(), 0);
    for (std::size_t i = 0; i < st.j.size(); ++i) {
        const double mag = frob(st.wK[i]) + frob(st.wF[i]);
        marks[i] = (mag <= static_cast<double>(n) && st.j[i] >= 1.0 / n) ? 1 : 0;
    }
    return marks;
}

ScalarField admissible_test_function(const GridSpec& g, const BoundarySpec& bc,
                                     std::uint64_t seed, std::uint64_t index) {
    SplitMix64 rng = substream(seed, index);
    double a[4][4];
    for (auto& row : a)
        for (double& v : row) v = rng.uniform(-1.0, 1.0);

    const double pi = 3.14159265358979323846;
    ScalarField eta(g.num_nodes());
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double x1 = g.x1(i);
            const double x2 = g.x2(j);
            // Quadratic clamping factors per side: zero value and slope on Gamma.
            double base = 1.0;
            if (bc.is_clamped(Side::Left)) base *= (x1 / g.Lx) * (x1 / g.Lx);
            if (bc.is_clamped(Side::Right)) {
                const double t = (g.Lx - x1) / g.Lx;
                base *= t * t;
            }
            if (bc.is_clamped(Side::Bottom)) base *= (x2 / g.Ly) * (x2 / g.Ly);
            if (bc.is_clamped(Side::Top)) {
                const double t = (g.Ly - x2) / g.Ly;
                base *= t * t;
            }
            double mod = 0.0;
            for (int pp = 0; pp < 4; ++pp)
                for (int qq = 0; qq < 4; ++qq)
                    mod += a[pp][qq] * std::cos(pp * pi * x1 / g.Lx) * std::cos(qq * pi * x2 / g.Ly);
            eta[g.node(i, j)] = base * mod;
        }
    }
    return eta;
}

double weak_form_pairing(const DeformationState& s, const MaterialParams& p,
                         const BoundarySpec& bc, const std::vector<std::uint8_t>& marks,
                         const ScalarField& eta) {
    const GridSpec& g = s.grid;
    detail::check_field(eta, g, "weak_form_pairing eta");
    if (marks.size() != eta.size())
        throw std::invalid_argument("weak_form_pairing: marks size mismatch");
    const StressFields st = stress_fields(s, p, bc);
    const Vec2Field geta = grad_scalar(eta, g);
    const SymMat2Field heta = hessian_scalar(eta, g, bc.clamped_ends());
    double value = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int node = g.node(i, j);
            if (!marks[node]) continue;
            value += quadrature_weight(g, i, j) *
                     (ddot(st.wK[node], heta[node]) + dot(third_row(st.wF[node]), geta[node]));
        }
    }
    return value;
}

ResidualReport equilibrium_residual(const DeformationState& s, const MaterialParams& p,
                                    const BoundarySpec& bc, int n, int test_set_size,
                                    std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("equilibrium_residual: n must be >= 1");
    if (test_set_size < 0) throw std::invalid_argument("equilibrium_residual: bad test set size");
    const GridSpec& g = s.grid;
    const StressFields st = stress_fields(s, p, bc);

    std::vector<std::uint8_t> marks(st.j.size(), 0);
    double measure = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int node = g.node(i, j);
            const double mag = frob(st.wK[node]) + frob(st.wF[node]);
            if (mag <= static_cast<double>(n) && st.j[node] >= 1.0 / n) {
                marks[node] = 1;
                measure += quadrature_weight(g, i, j);
            }
        }
    }

    ResidualReport report;
    report.n = n;
    report.measure_fraction = measure / (g.Lx * g.Ly);
    if (measure == 0.0) return report;

    report.residuals.assign(static_cast<std::size_t>(test_set_size), 0.0);
#pragma omp parallel for schedule(static)
    for (int t = 0; t < test_set_size; ++t) {
        const ScalarField eta = admissible_test_function(g, bc, seed, static_cast<std::uint64_t>(t));
        const Vec2Field geta = grad_scalar(eta, g);
        const SymMat2Field heta = hessian_scalar(eta, g, bc.clamped_ends());
        double value = 0.0, norm_h = 0.0, norm_g = 0.0;
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const int node = g.node(i, j);
                const double w = quadrature_weight(g, i, j);
                norm_h += w * frob2(heta[node]);
                norm_g += w * dot(geta[node], geta[node]);
                if (!marks[node]) continue;
                value += w * (ddot(st.wK[node], heta[node]) +
                              dot(third_row(st.wF[node]), geta[node]));
            }
        }
        report.residuals[static_cast<std::size_t>(t)] =
            value / (std::sqrt(norm_h) + std::sqrt(norm_g));
    }
    for (double r : report.residuals) report.max_abs = std::max(report.max_abs, std::fabs(r));
    return report;
}

}  // namespace wrinklevar
