#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "wrinklevar/io.hpp"
#include "wrinklevar/minimize.hpp"

using namespace wrinklevar;

namespace {

bool trace_monotone(const RunTrace& t) {
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        if (t.rows[i].energy > t.rows[i - 1].energy) return false;
    return true;
}

bool trace_feasible(const RunTrace& t, double j_min) {
    for (const TraceRow& r : t.rows)
        if (!(r.min_j > j_min)) return false;
    return true;
}

}  // namespace

TEST_SUITE("minimize") {

TEST_CASE("identity problem converges at iteration zero") {
    const GridSpec g{9, 9, 1.0, 1.0};
    const BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.0);
    const MinimizeResult r = minimize(DeformationState::reference(g), MaterialParams{},
                                      LoadSpec::zero(g), bc, MinimizerConfig{});
    CHECK(r.trace.converged);
    CHECK(r.trace.rows.size() == 1);
    CHECK(r.trace.rows[0].iter == 0);
    CHECK(std::fabs(r.energy.total) <= 1e-14);
}

TEST_CASE("feasible line search accepts descent and guards the floor") {
    const GridSpec g{8, 8, 1.0, 1.0};
    const BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.15);
    const MaterialParams p;
    const LoadSpec loads = LoadSpec::zero(g);
    const MinimizerConfig cfg;
    const DeformationState s = state_from_boundary_maps(g, bc);

    // Steepest descent far from the barrier: a healthy step gets accepted.
    std::vector<double> d = assemble_gradient(s, p, loads, bc);
    for (double& v : d) v = -v;
    const auto [step, next] = feasible_line_search(s, d, p, loads, bc, cfg);
    CHECK(step > 0.0);
    CHECK(assemble_energy(next, p, loads, bc).total < assemble_energy(s, p, loads, bc).total);
    CHECK(min_area_ratio(next) > cfg.j_min);

    // A direction that collapses one interior node's orientation at step 1
    // must be cut back until the floor holds.
    std::vector<double> collapse(d.size(), 0.0);
    const int node = g.node(4, 4);
    collapse[3 * node] = -10.0;  // drives det grad h negative locally
    const std::vector<double> grad = assemble_gradient(s, p, loads, bc);
    double slope = 0.0;
    for (std::size_t i = 0; i < grad.size(); ++i) slope += grad[i] * collapse[i];
    if (slope < 0.0) {
        const auto [t2, s2] = feasible_line_search(s, collapse, p, loads, bc, cfg);
        CHECK(t2 < 1.0);
        CHECK(min_area_ratio(s2) > cfg.j_min);
    }

    // Zero direction violates the descent precondition.
    const std::vector<double> zero(d.size(), 0.0);
    CHECK_THROWS_AS(feasible_line_search(s, zero, p, loads, bc, cfg),
                    std::invalid_argument);
}

TEST_CASE("descent run: monotone, feasible, below the initial energy") {
    const GridSpec g{17, 9, 2.0, 1.0};
    const BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.2);
    const MaterialParams p;
    const LoadSpec loads = LoadSpec::zero(g);
    MinimizerConfig cfg;
    const DeformationState s0 = state_from_boundary_maps(g, bc);
    const double e0 = assemble_energy(apply_boundary(s0, bc).first, p, loads, bc).total;

    const MinimizeResult r = minimize(s0, p, loads, bc, cfg);
    CHECK(r.trace.converged);
    CHECK(trace_monotone(r.trace));
    CHECK(trace_feasible(r.trace, cfg.j_min));
    CHECK(r.energy.total <= e0);
    CHECK(r.trace.rows.back().gradnorm <= r.trace.gtol);
}

TEST_CASE("w-frozen uniaxial solve matches the golden-section width oracle") {
    // Free lateral contraction: freeze h1 at 1.3 x1 and w at 0, minimize
    // over h2 only; the optimum is the homogeneous natural width.
    const GridSpec g{9, 9, 1.0, 1.0};
    const BoundarySpec bc = BoundarySpec::none();
    const MaterialParams p;
    const double lambda1 = 1.3;

    DeformationState s0 = DeformationState::reference(g);
    for (int n = 0; n < g.num_nodes(); ++n) s0.h[n].x *= lambda1;
    std::vector<std::uint8_t> fixed(static_cast<std::size_t>(3 * g.num_nodes()), 0);
    for (int n = 0; n < g.num_nodes(); ++n) {
        fixed[3 * n + 0] = 1;
        fixed[3 * n + 2] = 1;
    }
    MinimizerConfig cfg;
    const MinimizeResult r = minimize(s0, p, LoadSpec::zero(g), bc, cfg, &fixed);
    CHECK(r.trace.converged);

    // Oracle: minimize the membrane density of C = diag(lambda1^2, s) over s.
    const double s_star = oracles::golden_section_min(
        [&](double s) {
            const double tr = lambda1 * lambda1 + s;
            const double dc = lambda1 * lambda1 * s;
            return p.c1 * (tr + 1.0 / dc - 3.0) + p.c2 * (dc + tr / dc - 3.0);
        },
        0.1, 2.0);
    const double lambda2_star = std::sqrt(s_star);
    CHECK(lambda2_star == doctest::Approx(1.0 / std::sqrt(lambda1)).epsilon(1e-6));

    const Mat2Field gh = grad_vec2(r.state.h, g);
    double mean = 0.0;
    for (const Mat2& m : gh) mean += m.a22;
    mean /= gh.size();
    CHECK(mean == doctest::Approx(lambda2_star).epsilon(1e-4));
}

TEST_CASE("perturbation seeds w without touching feasibility") {
    const GridSpec g{17, 9, 2.0, 1.0};
    const DeformationState s = DeformationState::reference(g);
    const DeformationState same = perturb_out_of_plane(s, 0.0, 4);
    for (int n = 0; n < g.num_nodes(); ++n) CHECK(same.w[n] == s.w[n]);

    const DeformationState pert = perturb_out_of_plane(s, 1e-3, 4);
    CHECK(min_area_ratio(pert) == min_area_ratio(s));  // J depends only on h
    // Vanishes with slope at the clamped x1 extremes.
    for (int j = 0; j < g.ny; ++j) {
        CHECK(pert.w[g.node(0, j)] == 0.0);
        CHECK(pert.w[g.node(g.nx - 1, j)] == 0.0);
    }
    CHECK_THROWS_AS(perturb_out_of_plane(s, -1.0, 4), std::invalid_argument);
}

TEST_CASE("perturbation energy is quadratic with positive coefficient") {
    const GridSpec g{17, 9, 2.0, 1.0};
    const BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.0);
    const MaterialParams p;
    const LoadSpec loads = LoadSpec::zero(g);
    const DeformationState flat = DeformationState::reference(g);

    double e[3];
    int idx = 0;
    for (double delta : {1e-4, 2e-4, 4e-4}) {
        e[idx++] = assemble_energy(perturb_out_of_plane(flat, delta, 4), p, loads, bc).total;
    }
    CHECK(e[0] > 0.0);
    CHECK(e[1] / e[0] == doctest::Approx(4.0).epsilon(0.02));
    CHECK(e[2] / e[1] == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("single-step sweep at unit stretch is the identity solution") {
    const GridSpec g{9, 9, 1.0, 1.0};
    const std::vector<SweepEntry> entries =
        continuation_sweep(1.0, 1.0, 1, MaterialParams{}, LoadSpec::zero(g),
                           BoundarySpec::uniaxial_stretch(1.0), MinimizerConfig{}, g);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].result.trace.converged);
    CHECK(std::fabs(entries[0].result.energy.total) <= 1e-10);
}

TEST_CASE("flat-branch energies are nondecreasing in the stretch") {
    const GridSpec g{17, 9, 2.0, 1.0};
    MinimizerConfig cfg;
    cfg.freeze_w = true;
    const std::vector<SweepEntry> entries =
        continuation_sweep(1.0, 1.3, 5, MaterialParams{}, LoadSpec::zero(g),
                           BoundarySpec::uniaxial_stretch(1.0), cfg, g);
    REQUIRE(entries.size() == 5);
    for (std::size_t t = 1; t < entries.size(); ++t) {
        CHECK(entries[t].result.trace.converged);
        CHECK(entries[t].result.energy.total >= entries[t - 1].result.energy.total);
        CHECK(entries[t].metrics.amplitude == 0.0);
    }
}

TEST_CASE("mirror image of a converged state has equal energy") {
    const GridSpec g{17, 9, 2.0, 1.0};
    const BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.15);
    const MaterialParams p;
    const LoadSpec loads = LoadSpec::zero(g);
    MinimizerConfig cfg;
    DeformationState s0 = perturb_out_of_plane(state_from_boundary_maps(g, bc), 1e-4, 3);
    const MinimizeResult r = minimize(s0, p, loads, bc, cfg);

    DeformationState mirror = r.state;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int src = g.node(i, g.ny - 1 - j);
            mirror.h[g.node(i, j)] = {r.state.h[src].x, g.Ly - r.state.h[src].y};
            mirror.w[g.node(i, j)] = r.state.w[src];
        }
    }
    const double ea = assemble_energy(r.state, p, loads, bc).total;
    const double eb = assemble_energy(mirror, p, loads, bc).total;
    CHECK(eb == doctest::Approx(ea).epsilon(1e-10));
}

TEST_CASE("identical runs produce bit-identical traces") {
    const GridSpec g{17, 9, 2.0, 1.0};
    const BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.2);
    const DeformationState s0 =
        perturb_out_of_plane(state_from_boundary_maps(g, bc), 1e-4, 4);
    const MinimizeResult a = minimize(s0, MaterialParams{}, LoadSpec::zero(g), bc, MinimizerConfig{});
    const MinimizeResult b = minimize(s0, MaterialParams{}, LoadSpec::zero(g), bc, MinimizerConfig{});
    CHECK(trace_csv_text(a.trace) == trace_csv_text(b.trace));
}

}  // TEST_SUITE
