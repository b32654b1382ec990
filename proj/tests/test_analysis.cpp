#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "wrinklevar/analysis.hpp"
#include "wrinklevar/minimize.hpp"

using namespace wrinklevar;

TEST_SUITE("analysis") {

TEST_CASE("wrinkle metrics of trivial and synthetic sections") {
    const GridSpec g{17, 33, 2.0, 1.0};
    DeformationState s = DeformationState::reference(g);
    WrinkleMetrics m = wrinkle_metrics(s);
    CHECK(m.amplitude == 0.0);
    CHECK(m.sign_changes == 0);
    CHECK_FALSE(m.wavelength.has_value());

    const double amp = 0.02, ell = 0.25;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            s.w[g.node(i, j)] = amp * std::sin(2.0 * 3.14159265358979323846 * g.x2(j) / ell);
    m = wrinkle_metrics(s);
    CHECK(m.amplitude == doctest::Approx(amp).epsilon(0.02));
    REQUIRE(m.wavelength.has_value());
    CHECK(*m.wavelength == doctest::Approx(ell).epsilon(g.hy() / ell));
    const int expected = static_cast<int>(2.0 * g.Ly / ell);
    CHECK(m.sign_changes >= expected - 1);
    CHECK(m.sign_changes <= expected + 1);

    // Depends only on the w section: translating h changes nothing.
    DeformationState shifted = s;
    for (int n = 0; n < g.num_nodes(); ++n) shifted.h[n].x += 17.0;
    const WrinkleMetrics m2 = wrinkle_metrics(shifted);
    CHECK(m2.amplitude == m.amplitude);
    CHECK(m2.sign_changes == m.sign_changes);
}

TEST_CASE("residual vanishes at the flat unstretched clamped state") {
    const GridSpec g{17, 9, 2.0, 1.0};
    const BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.0);
    const DeformationState s = DeformationState::reference(g);
    const ResidualReport r = equilibrium_residual(s, MaterialParams{}, bc, 1000, 8, 3);
    CHECK(r.measure_fraction == doctest::Approx(1.0));
    REQUIRE(r.residuals.size() == 8);
    for (double v : r.residuals) CHECK(std::fabs(v) <= 1e-12);
}

TEST_CASE("residual separates converged from perturbed states") {
    const GridSpec g{17, 9, 2.0, 1.0};
    const BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.2);
    const MaterialParams p;
    const LoadSpec loads = LoadSpec::zero(g);
    const MinimizeResult res =
        minimize(state_from_boundary_maps(g, bc), p, loads, bc, MinimizerConfig{});
    REQUIRE(res.trace.converged);
    const ResidualReport at_min = equilibrium_residual(res.state, p, bc, 1000000, 12, 3);
    CHECK(at_min.measure_fraction == doctest::Approx(1.0));

    DeformationState rough = res.state;
    SplitMix64 rng(9);
    for (int n = 0; n < g.num_nodes(); ++n) rough.w[n] += 1e-2 * rng.uniform(-1, 1);
    const ResidualReport off = equilibrium_residual(rough, p, bc, 1000000, 12, 3);
    CHECK(off.max_abs >= 100.0 * at_min.max_abs);
}

TEST_CASE("residual is linear in the test function") {
    const GridSpec g{17, 9, 2.0, 1.0};
    const BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.2);
    const MaterialParams p;
    const DeformationState s = oracles::random_feasible_state(g, bc, 8, 0.005, 0.02);
    const std::vector<std::uint8_t> marks = omega_n_marks(s, p, bc, 1000000);

    const ScalarField e1 = admissible_test_function(g, bc, 5, 0);
    const ScalarField e2 = admissible_test_function(g, bc, 5, 1);
    ScalarField combo(e1.size());
    const double a = 0.7, b = -1.3;
    for (std::size_t n = 0; n < e1.size(); ++n) combo[n] = a * e1[n] + b * e2[n];

    const double v1 = weak_form_pairing(s, p, bc, marks, e1);
    const double v2 = weak_form_pairing(s, p, bc, marks, e2);
    const double vc = weak_form_pairing(s, p, bc, marks, combo);
    CHECK(vc == doctest::Approx(a * v1 + b * v2).epsilon(1e-12));
}

TEST_CASE("test functions satisfy the clamped conditions") {
    const GridSpec g{33, 17, 2.0, 1.0};
    const BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.1);
    for (std::uint64_t idx : {0ull, 3ull}) {
        const ScalarField eta = admissible_test_function(g, bc, 11, idx);
        double peak = 0.0;
        for (double v : eta) peak = std::max(peak, std::fabs(v));
        REQUIRE(peak > 0.0);
        // Nodal values vanish exactly on Gamma.
        for (int j = 0; j < g.ny; ++j) {
            CHECK(eta[g.node(0, j)] == 0.0);
            CHECK(eta[g.node(g.nx - 1, j)] == 0.0);
        }
        // Zero normal slope: the first off-edge value shrinks quadratically
        // under refinement (ratio ~ 1/4 when the mesh halves).
        const GridSpec fine{2 * g.nx - 1, g.ny, g.Lx, g.Ly};
        const ScalarField eta_f = admissible_test_function(fine, bc, 11, idx);
        double edge_c = 0.0, edge_f = 0.0;
        for (int j = 0; j < g.ny; ++j) {
            edge_c = std::max(edge_c, std::fabs(eta[g.node(1, j)]));
            edge_f = std::max(edge_f, std::fabs(eta_f[fine.node(1, j)]));
        }
        CHECK(edge_f <= 0.5 * edge_c);
    }
}

TEST_CASE("restriction sets grow with the cutoff") {
    const GridSpec g{17, 9, 2.0, 1.0};
    const BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.25);
    const MaterialParams p;
    const DeformationState s = state_from_boundary_maps(g, bc);

    std::vector<std::uint8_t> prev;
    double prev_fraction = -1.0;
    for (int n : {1, 2, 4, 100}) {
        const std::vector<std::uint8_t> marks = omega_n_marks(s, p, bc, n);
        if (!prev.empty())
            for (std::size_t i = 0; i < marks.size(); ++i)
                if (prev[i]) CHECK(marks[i]);
        const ResidualReport r = equilibrium_residual(s, p, bc, n, 2, 1);
        CHECK(r.measure_fraction >= prev_fraction);
        prev_fraction = r.measure_fraction;
        prev = marks;
    }
}

TEST_CASE("empty restriction set reports zero measure and no residuals") {
    const GridSpec g{9, 9, 1.0, 1.0};
    const BoundarySpec bc = BoundarySpec::none();
    DeformationState s = DeformationState::reference(g);
    for (int n = 0; n < g.num_nodes(); ++n) s.h[n] = 3.0 * s.h[n];  // |W_F| >> 1 everywhere
    const ResidualReport r = equilibrium_residual(s, MaterialParams{}, bc, 1, 5, 1);
    CHECK(r.measure_fraction == 0.0);
    CHECK(r.residuals.empty());
    CHECK(r.max_abs == 0.0);
}

}  // TEST_SUITE
